#pragma once

#include <functional>
#include <string>
#include <utility>

#include <httplib.h>
#include <json.hpp>

#include "siting/app.hpp"
#include "siting/error.hpp"

namespace siting::app {

/// Read-only HTTP front end over one immutable dataset snapshot.
///
///   GET  /api/weights                  global weights, category totals, chi
///   GET  /api/ranking?group=&mode=     ranking document (group table if set)
///   GET  /api/sites                    site metadata
///   POST /api/whatif {"overrides": {}} what-if report
///
/// Bodies are the same bytes the command line writes for the same inputs.
class Service {
public:
    using Logger = std::function<void(const std::string&)>;

    Service(Dataset dataset, GroupMode default_mode, Logger log = {})
        : data_(std::move(dataset)), mode_(default_mode), log_(std::move(log)) {
        routes();
    }

    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    /// Binds to `host:port` (port 0 picks a free one) and returns the bound
    /// port, or -1 on failure.
    int bind(const std::string& host, int port) {
        return port == 0 ? server_.bind_to_any_port(host) : (server_.bind_to_port(host, port) ? port : -1);
    }

    /// Blocks until stop() is called.
    bool listen() { return server_.listen_after_bind(); }

    void stop() { server_.stop(); }
    void wait_until_ready() const { server_.wait_until_ready(); }

    const Dataset& dataset() const noexcept { return data_; }

private:
    static constexpr const char* kJson = "application/json";

    static void reply(httplib::Response& res, int status, const nlohmann::json& doc) {
        res.status = status;
        res.set_content(dump(doc), kJson);
    }

    static nlohmann::json error_doc(int status, const std::string& message, const std::string& field = {}) {
        nlohmann::json err = {{"status", status}, {"message", message}};
        if (!field.empty())
            err["field"] = field;
        return {{"schema_version", kSchemaVersion}, {"error", err}};
    }

    void routes() {
        server_.Get("/api/weights", [this](const httplib::Request&, httplib::Response& res) {
            reply(res, 200, weights_summary_document(data_));
        });

        server_.Get("/api/sites", [this](const httplib::Request&, httplib::Response& res) {
            reply(res, 200, sites_document(data_));
        });

        server_.Get("/api/ranking", [this](const httplib::Request& req, httplib::Response& res) {
            GroupMode mode = mode_;
            if (req.has_param("mode") && !req.get_param_value("mode").empty()) {
                try {
                    mode = parse_group_mode(req.get_param_value("mode"));
                } catch (const DomainError& e) {
                    return reply(res, 400, error_doc(400, e.what(), "mode"));
                }
            }
            const auto group = req.has_param("group") ? req.get_param_value("group") : std::string();
            if (group.empty())
                return reply(res, 200, ranking_document(data_, mode));
            const auto cat = parse_category(group);
            if (!cat)
                return reply(res, 400, error_doc(400, "unknown group '" + group + "'", "group"));
            reply(res, 200, group_document(data_, *cat, mode));
        });

        server_.Post("/api/whatif", [this](const httplib::Request& req, httplib::Response& res) {
            nlohmann::json body;
            try {
                body = req.body.empty() ? nlohmann::json::object() : nlohmann::json::parse(req.body);
            } catch (const nlohmann::json::exception& e) {
                return reply(res, 400, error_doc(400, std::string("malformed JSON: ") + e.what(), "body"));
            }
            if (!body.is_object())
                return reply(res, 400, error_doc(400, "body must be a JSON object", "body"));
            std::map<std::string, double> overrides;
            if (body.contains("overrides")) {
                const auto& ov = body.at("overrides");
                if (!ov.is_object())
                    return reply(res, 400, error_doc(400, "'overrides' must be an object", "overrides"));
                for (const auto& [code, v] : ov.items()) {
                    if (!v.is_number())
                        return reply(res, 400, error_doc(400, "override weight must be a number",
                                                         "overrides." + code));
                    overrides[code] = v.get<double>();
                }
            }
            try {
                reply(res, 200, whatif_document(data_, overrides));
            } catch (const LookupError& e) {
                reply(res, 422, error_doc(422, e.what(), "overrides"));
            } catch (const DomainError& e) {
                reply(res, 422, error_doc(422, e.what(), "overrides"));
            }
        });

        server_.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
            if (res.status == 404)
                res.set_content(dump(error_doc(404, "no route for " + req.method + " " + req.path)), kJson);
        });

        server_.set_exception_handler(
            [](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
                std::string msg = "internal error";
                try {
                    std::rethrow_exception(ep);
                } catch (const std::exception& e) {
                    msg = e.what();
                } catch (...) {
                }
                res.status = 500;
                res.set_content(dump(error_doc(500, msg)), kJson);
            });

        if (log_)
            server_.set_logger([this](const httplib::Request& req, const httplib::Response& res) {
                log_(req.method + " " + req.path + " -> " + std::to_string(res.status));
            });
    }

    const Dataset data_;
    const GroupMode mode_;
    Logger log_;
    httplib::Server server_;
};

}  // namespace siting::app
