#pragma once

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "siting/criteria.hpp"
#include "siting/decision_matrix.hpp"
#include "siting/error.hpp"
#include "siting/fucom.hpp"
#include "siting/fuzzy.hpp"
#include "siting/survey.hpp"
#include "siting/weights.hpp"
#include "siting/wsm.hpp"

// Document builders shared by the command line and the HTTP service, so both
// always emit the same bytes for the same inputs.

namespace siting::app {

struct RunConfig {
    std::string surveys;
    std::string scale;  // empty: built-in default scale
    std::string registry;  // empty: built-in registry
    std::string sites;
    std::string weights;
    std::string out;  // empty: stdout
    NormalizationMethod normalization = NormalizationMethod::MinMax;
    GroupMode group_mode = GroupMode::Overall;
    std::optional<Category> group;
    ConsistencyThresholds thresholds;
    int port = 8080;

    enum class Command { Weights, Rank, WhatIf, Serve };

    void validate(Command cmd) const {
        if (!(thresholds.crisp > 0.0) || !(thresholds.fuzzy > 0.0))
            throw InputError("consistency thresholds must be positive");
        if (cmd == Command::Serve && (port < 1 || port > 65535))
            throw InputError("port must be in 1..65535");
        auto need = [](const std::string& v, const char* flag) {
            if (v.empty())
                throw InputError(std::string("missing required path ") + flag);
        };
        if (cmd == Command::Weights) {
            need(surveys, "--surveys");
        } else {
            need(sites, "--sites");
            need(weights, "--weights");
        }
    }
};

/// Serialized form of every document: two-space indent, trailing newline.
inline std::string dump(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

inline void write_output(const std::string& path, const std::string& text, std::ostream& fallback) {
    if (path.empty() || path == "-") {
        fallback << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError("cannot write output file '" + path + "'");
    out << text;
}

inline Registry registry_for(const RunConfig& c) {
    return c.registry.empty() ? Registry::builtin() : load_registry(c.registry);
}

inline LinguisticScale scale_for(const RunConfig& c) {
    return c.scale.empty() ? LinguisticScale::default_scale() : load_scale(c.scale);
}

/// surveys -> per-expert solutions -> global table -> weight document.
inline nlohmann::json run_weights(const RunConfig& c) {
    const auto registry = registry_for(c);
    const auto scale = scale_for(c);
    const auto surveys = load_surveys(c.surveys, registry);
    auto table = global_weights(all_expert_weights(surveys, registry, scale, c.thresholds), registry);
    return weight_document(table);
}

/// Immutable inputs of ranking and what-if evaluation.
struct Dataset {
    Registry registry;
    SiteTable sites;
    DecisionMatrix normalized;
    LoadedWeights weights;
    NormalizationMethod normalization = NormalizationMethod::MinMax;

    static Dataset load(const RunConfig& c) {
        Dataset d;
        d.registry = registry_for(c);
        d.sites = load_sites(c.sites, d.registry);
        if (d.sites.sites.empty())
            throw InputError("site table has no sites");
        d.normalization = c.normalization;
        d.normalized = normalize(d.sites.matrix, d.registry, c.normalization);
        d.weights = load_weights(c.weights, d.registry);
        return d;
    }
};

inline nlohmann::json weights_json(const std::vector<CodedWeight>& w) {
    auto arr = nlohmann::json::array();
    for (const auto& g : w)
        arr.push_back(
            {{"code", g.code}, {"category", std::string(to_string(g.category))}, {"weight", g.weight}});
    return arr;
}

inline nlohmann::json site_head(const SiteInfo& s) {
    return {{"site_id", s.id}, {"name", s.name}, {"state", s.state}};
}

/// Overall ranking with per-group scores and ranks, best site first.
inline nlohmann::json ranking_document(const Dataset& d, GroupMode mode) {
    const auto& w = d.weights.global;
    const auto& ids = d.normalized.site_ids();
    const auto overall = score(d.normalized, w);
    const auto display = display_normalize(overall);
    const auto ranking = rank(overall, ids);

    std::map<Category, std::pair<std::vector<double>, Ranking>> groups;
    for (auto c : kCategories) {
        auto g = group_scores(d.normalized, w, c, mode);
        auto r = rank(g, ids);
        groups.emplace(c, std::make_pair(std::move(g), std::move(r)));
    }

    auto sites = nlohmann::json::array();
    for (auto i : ranking.listing) {
        auto row = site_head(d.sites.sites[i]);
        row["score"] = overall[i];
        row["score_display"] = display[i];
        row["rank"] = ranking.rank[i];
        row["tied"] = static_cast<bool>(ranking.tied[i]);
        nlohmann::json gj = nlohmann::json::object();
        for (const auto& [c, g] : groups)
            gj[std::string(to_string(c))] = {{"score", g.first[i]}, {"rank", g.second.rank[i]}};
        row["groups"] = gj;
        sites.push_back(std::move(row));
    }
    return {{"schema_version", kSchemaVersion},
            {"normalization", std::string(to_string(d.normalization))},
            {"group_mode", std::string(to_string(mode))},
            {"sites", sites},
            {"weights_used", weights_json(w)},
            {"chi_summary", d.weights.chi}};
}

/// Single-group table, best site in the group first.
inline nlohmann::json group_document(const Dataset& d, Category c, GroupMode mode) {
    const auto& w = d.weights.global;
    const auto g = group_scores(d.normalized, w, c, mode);
    const auto display = display_normalize(g);
    const auto ranking = rank(g, d.normalized.site_ids());
    auto sites = nlohmann::json::array();
    for (auto i : ranking.listing) {
        auto row = site_head(d.sites.sites[i]);
        row["score"] = g[i];
        row["score_display"] = display[i];
        row["rank"] = ranking.rank[i];
        row["tied"] = static_cast<bool>(ranking.tied[i]);
        sites.push_back(std::move(row));
    }
    std::vector<CodedWeight> used;
    for (const auto& cw : w)
        if (cw.category == c)
            used.push_back(cw);
    return {{"schema_version", kSchemaVersion},
            {"normalization", std::string(to_string(d.normalization))},
            {"group", std::string(to_string(c))},
            {"group_mode", std::string(to_string(mode))},
            {"sites", sites},
            {"weights_used", weights_json(used)},
            {"chi_summary", d.weights.chi}};
}

inline nlohmann::json whatif_document(const Dataset& d, const std::map<std::string, double>& overrides) {
    const auto report = whatif(d.weights.global, overrides, d.normalized);
    const auto display = display_normalize(report.scores);
    const auto& ids = d.normalized.site_ids();

    auto sites = nlohmann::json::array();
    for (auto i : report.ranking.listing) {
        auto row = site_head(d.sites.sites[i]);
        row["score"] = report.scores[i];
        row["score_display"] = display[i];
        row["rank"] = report.ranking.rank[i];
        row["baseline_rank"] = report.baseline_ranking.rank[i];
        row["rank_change"] = report.baseline_ranking.rank[i] - report.ranking.rank[i];
        sites.push_back(std::move(row));
    }
    auto reversals = nlohmann::json::array();
    for (const auto& [i, j] : report.reversals) {
        // Site ahead in the baseline first.
        const bool i_ahead = report.baseline_scores[i] > report.baseline_scores[j];
        reversals.push_back({i_ahead ? ids[i] : ids[j], i_ahead ? ids[j] : ids[i]});
    }
    nlohmann::json ov = nlohmann::json::object();
    for (const auto& [code, v] : overrides)
        ov[code] = v;
    return {{"schema_version", kSchemaVersion},
            {"normalization", std::string(to_string(d.normalization))},
            {"overrides", ov},
            {"weights", weights_json(report.weights)},
            {"reversal_count", report.reversal_count()},
            {"reversals", reversals},
            {"sites", sites}};
}

inline nlohmann::json sites_document(const Dataset& d) {
    auto sites = nlohmann::json::array();
    for (const auto& s : d.sites.sites) {
        auto row = site_head(s);
        row["lat"] = s.lat;
        row["lon"] = s.lon;
        sites.push_back(std::move(row));
    }
    return {{"schema_version", kSchemaVersion}, {"sites", sites}};
}

inline nlohmann::json weights_summary_document(const Dataset& d) {
    nlohmann::json totals = nlohmann::json::object();
    for (auto c : kCategories)
        totals[std::string(to_string(c))] = d.weights.category_total(c);
    return {{"schema_version", kSchemaVersion},
            {"global", weights_json(d.weights.global)},
            {"category_totals", totals},
            {"chi", d.weights.chi}};
}

/// Parses "CODE=W[,CODE=W...]". Syntax errors throw InputError; codes are
/// checked later against the weight set.
inline std::map<std::string, double> parse_overrides(std::string_view text) {
    std::map<std::string, double> out;
    if (text.empty())
        return out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = std::min(text.find(',', start), text.size());
        const auto item = csv::trim(text.substr(start, end - start));
        const auto eq = item.find('=');
        if (eq == std::string_view::npos || eq == 0)
            throw InputError("invalid override '" + std::string(item) + "' (expected CODE=WEIGHT)");
        const std::string code(csv::trim(item.substr(0, eq)));
        double v = 0.0;
        if (!csv::parse_double(item.substr(eq + 1), v))
            throw InputError("invalid override weight in '" + std::string(item) + "'");
        if (!out.emplace(code, v).second)
            throw InputError("override for '" + code + "' given twice");
        start = end + 1;
    }
    return out;
}

}  // namespace siting::app
