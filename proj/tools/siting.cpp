// Command-line front end: weights, rank, whatif, serve.
//
// Exit codes: 0 success, 2 input error, 3 internal or solver error.

#include <csignal>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "siting/app.hpp"
#include "siting/service.hpp"

namespace {

constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

siting::app::Service* g_service = nullptr;

void on_signal(int) {
    if (g_service)
        g_service->stop();
}

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("siting");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    spdlog::set_level(spdlog::level::warn);
    if (const char* lvl = std::getenv("SITING_LOG_LEVEL"))
        spdlog::set_level(spdlog::level::from_str(lvl));
}

}  // namespace

int main(int argc, char** argv) {
    using namespace siting;
    using app::RunConfig;
    setup_logging();

    CLI::App cli{"Fusion site suitability: FUCOM/F-FUCOM criteria weights and weighted-sum ranking"};
    cli.require_subcommand(1);

    RunConfig cfg;
    std::string normalization = "minmax";
    std::string mode = "overall";
    std::string group;
    std::string adjust;

    auto add_rank_inputs = [&](CLI::App* sub) {
        sub->add_option("--sites", cfg.sites, "Site table (CSV)")->required();
        sub->add_option("--registry", cfg.registry, "Criteria registry (JSON); built-in if omitted");
        sub->add_option("--weights", cfg.weights, "Weight document (JSON)")->required();
        sub->add_option("--normalization", normalization, "minmax | vector")
            ->check(CLI::IsMember({"minmax", "vector"}));
        sub->add_option("--mode", mode, "Group score mode: overall | renormalized")
            ->check(CLI::IsMember({"overall", "renormalized"}));
    };

    auto* weights = cli.add_subcommand("weights", "Derive per-expert and global weights");
    weights->add_option("--surveys", cfg.surveys, "Expert survey file (JSON)")->required();
    weights->add_option("--scale", cfg.scale, "Linguistic scale (JSON); built-in if omitted");
    weights->add_option("--registry", cfg.registry, "Criteria registry (JSON); built-in if omitted");
    weights->add_option("--crisp-threshold", cfg.thresholds.crisp, "Crisp consistency threshold");
    weights->add_option("--fuzzy-threshold", cfg.thresholds.fuzzy, "Fuzzy consistency threshold");
    weights->add_option("--out", cfg.out, "Output file (stdout if omitted)");

    auto* rank = cli.add_subcommand("rank", "Rank sites by weighted-sum suitability");
    add_rank_inputs(rank);
    rank->add_option("--group", group, "Emit a single-group table")
        ->check(CLI::IsMember({"SP", "FP", "RHM", "CSF"}));
    rank->add_option("--out", cfg.out, "Output file (stdout if omitted)");

    auto* whatif = cli.add_subcommand("whatif", "Re-rank with overridden weights");
    add_rank_inputs(whatif);
    whatif->add_option("--adjust", adjust, "Overrides CODE=W[,CODE=W...]");
    whatif->add_option("--out", cfg.out, "Output file (stdout if omitted)");

    auto* serve = cli.add_subcommand("serve", "Serve weights, rankings and what-if over HTTP");
    add_rank_inputs(serve);
    std::string host = "127.0.0.1";
    serve->add_option("--port", cfg.port, "Listen port")->check(CLI::Range(1, 65535));
    serve->add_option("--host", host, "Listen address");

    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = cli.exit(e);
        return rc == 0 ? 0 : kExitInput;
    }

    try {
        cfg.normalization = parse_normalization(normalization);
        cfg.group_mode = parse_group_mode(mode);
        if (!group.empty())
            cfg.group = category_or_throw(group);

        if (*weights) {
            cfg.validate(RunConfig::Command::Weights);
            const auto doc = app::run_weights(cfg);
            for (const auto& [expert, chis] : doc.at("chi").items())
                spdlog::info("expert {}: category chi {}", expert, chis.at("categories").dump());
            app::write_output(cfg.out, app::dump(doc), std::cout);
        } else if (*rank) {
            cfg.validate(RunConfig::Command::Rank);
            const auto data = app::Dataset::load(cfg);
            spdlog::info("loaded {} sites", data.sites.sites.size());
            const auto doc = cfg.group ? app::group_document(data, *cfg.group, cfg.group_mode)
                                       : app::ranking_document(data, cfg.group_mode);
            app::write_output(cfg.out, app::dump(doc), std::cout);
        } else if (*whatif) {
            cfg.validate(RunConfig::Command::WhatIf);
            const auto overrides = app::parse_overrides(adjust);
            const auto data = app::Dataset::load(cfg);
            app::write_output(cfg.out, app::dump(app::whatif_document(data, overrides)), std::cout);
        } else if (*serve) {
            cfg.validate(RunConfig::Command::Serve);
            app::Service service(app::Dataset::load(cfg), cfg.group_mode,
                                 [](const std::string& line) { spdlog::info("{}", line); });
            if (service.bind(host, cfg.port) < 0) {
                spdlog::error("cannot bind {}:{}", host, cfg.port);
                return kExitInput;
            }
            g_service = &service;
            std::signal(SIGINT, on_signal);
            std::signal(SIGTERM, on_signal);
            spdlog::warn("serving on http://{}:{}", host, cfg.port);
            service.listen();
            g_service = nullptr;
        }
    } catch (const SolverError& e) {
        spdlog::error("{}", e.what());
        std::cerr << "model:\n" << e.model_dump();
        return kExitInternal;
    } catch (const InternalError& e) {
        spdlog::error("internal error: {}", e.what());
        return kExitInternal;
    } catch (const Error& e) {
        spdlog::error("{}", e.what());
        return kExitInput;
    } catch (const std::exception& e) {
        spdlog::error("unexpected: {}", e.what());
        return kExitInternal;
    }
    return 0;
}
