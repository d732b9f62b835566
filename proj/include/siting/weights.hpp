#pragma once

#include <array>
#include <cmath>
#include <fstream>
#include <future>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include <json.hpp>

#include "siting/criteria.hpp"
#include "siting/error.hpp"
#include "siting/fucom.hpp"
#include "siting/survey.hpp"

namespace siting {

inline constexpr int kSchemaVersion = 1;

/// All weights derived from a single expert.
struct ExpertWeights {
    std::string id;
    CrispSolution categories;  // codes are "SP", "FP", "RHM", "CSF"
    std::map<Category, FuzzySolution> fuzzy_local;
    std::map<Category, CrispSolution> local;  // defuzzified, sums to 1 per category

    double category_weight(Category c) const { return categories.at(std::string(to_string(c))); }
};

/// Crisp FUCOM across the four categories, F-FUCOM + GMIR within each one.
inline ExpertWeights per_expert_weights(const ExpertSurvey& s, const Registry& registry,
                                        const LinguisticScale& scale,
                                        const ConsistencyThresholds& thresholds = {}) {
    ExpertWeights out;
    out.id = s.id;
    std::string stage = "categories";
    try {
        out.categories = solve_fucom_crisp(category_chain(s), thresholds);
        for (auto c : kCategories) {
            stage = std::string(to_string(c));
            const auto chain =
                sub_attribute_chain(s.sub_attributes.at(c), registry.codes(c), scale);
            auto fuzzy = solve_ffucom(chain, thresholds);
            out.local[c] = defuzzify_weights(fuzzy);
            out.fuzzy_local[c] = std::move(fuzzy);
        }
    } catch (const SolverError& e) {
        throw SolverError("expert '" + s.id + "', " + stage + ": " + e.what(), e.model_dump());
    } catch (const LookupError& e) {
        throw LookupError("expert '" + s.id + "', " + stage + ": " + e.what());
    } catch (const InputError& e) {
        throw InputError("expert '" + s.id + "', " + stage + ": " + e.what());
    } catch (const DomainError& e) {
        throw DomainError("expert '" + s.id + "', " + stage + ": " + e.what());
    }
    return out;
}

/// Runs per_expert_weights for every survey concurrently; results keep the
/// survey order.
inline std::vector<ExpertWeights> all_expert_weights(const std::vector<ExpertSurvey>& surveys,
                                                     const Registry& registry,
                                                     const LinguisticScale& scale,
                                                     const ConsistencyThresholds& thresholds = {}) {
    std::vector<std::future<ExpertWeights>> jobs;
    for (const auto& s : surveys)
        jobs.push_back(std::async(std::launch::async, [&s, &registry, &scale, &thresholds] {
            return per_expert_weights(s, registry, scale, thresholds);
        }));
    std::vector<ExpertWeights> out;
    for (auto& j : jobs)
        out.push_back(j.get());
    return out;
}

struct GlobalWeightTable {
    std::vector<ExpertWeights> per_expert;
    /// Registry order; sums to 1.
    std::vector<CodedWeight> global;
    /// Sum of member global weights per category.
    std::array<double, 4> category_totals{};
    /// Mean of the per-expert category weights (an independent route to the
    /// same totals).
    std::array<double, 4> mean_category_weights{};

    double total(Category c) const { return category_totals[static_cast<std::size_t>(c)]; }

    double weight(const std::string& code) const {
        for (const auto& g : global)
            if (g.code == code)
                return g.weight;
        throw LookupError("no global weight for '" + code + "'");
    }
};

/// global(sub) = local(sub) * weight(category) per expert, then the (by default
/// unweighted) mean across experts, renormalized to sum to one.
inline GlobalWeightTable global_weights(std::vector<ExpertWeights> experts,
                                        const Registry& registry,
                                        std::vector<double> expert_weights = {}) {
    if (experts.empty())
        throw DomainError("global weights need at least one expert");
    if (expert_weights.empty())
        expert_weights.assign(experts.size(), 1.0);
    if (expert_weights.size() != experts.size())
        throw DomainError("expert weighting does not match the number of experts");
    const double ew_total = std::accumulate(expert_weights.begin(), expert_weights.end(), 0.0);
    for (double v : expert_weights)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw DomainError("expert weights must be nonnegative");
    if (!(ew_total > 0.0))
        throw DomainError("expert weights sum to zero");

    GlobalWeightTable table;
    const auto& specs = registry.specs();
    std::vector<double> acc(specs.size(), 0.0);
    for (std::size_t e = 0; e < experts.size(); ++e) {
        const auto& ex = experts[e];
        const double share = expert_weights[e] / ew_total;
        for (std::size_t j = 0; j < specs.size(); ++j) {
            const auto& spec = specs[j];
            const auto it = ex.local.find(spec.category);
            if (it == ex.local.end())
                throw InputError("expert '" + ex.id + "' has no weights for category " +
                                 std::string(to_string(spec.category)));
            if (it->second.codes.size() != registry.codes(spec.category).size())
                throw InputError("expert '" + ex.id + "' covers a different set of " +
                                 std::string(to_string(spec.category)) + " sub-attributes");
            double local = 0.0;
            try {
                local = it->second.at(spec.code);
            } catch (const LookupError&) {
                throw InputError("expert '" + ex.id + "' has no weight for '" + spec.code + "'");
            }
            acc[j] += share * local * ex.category_weight(spec.category);
        }
        for (auto c : kCategories)
            table.mean_category_weights[static_cast<std::size_t>(c)] +=
                share * ex.category_weight(c);
    }

    const double total = std::accumulate(acc.begin(), acc.end(), 0.0);
    if (!(total > 0.0))
        throw DomainError("all global weights are zero");
    for (std::size_t j = 0; j < specs.size(); ++j) {
        const double w = acc[j] / total;
        table.global.push_back({specs[j].code, specs[j].category, w});
        table.category_totals[static_cast<std::size_t>(specs[j].category)] += w;
    }
    const double cat_total =
        std::accumulate(table.mean_category_weights.begin(), table.mean_category_weights.end(), 0.0);
    for (auto& v : table.mean_category_weights)
        v /= cat_total;
    table.per_expert = std::move(experts);
    return table;
}

// ---------------------------------------------------------------------------
// Weight document

inline nlohmann::json solution_json(const CrispSolution& s) {
    nlohmann::json w = nlohmann::json::object();
    for (std::size_t i = 0; i < s.codes.size(); ++i)
        w[s.codes[i]] = s.weights[i];
    return {{"order", s.codes}, {"weights", w}, {"chi", s.chi}, {"consistent", s.consistent}};
}

inline nlohmann::json weight_document(const GlobalWeightTable& t) {
    using nlohmann::json;
    json per_expert = json::array();
    json chi = json::object();
    for (const auto& ex : t.per_expert) {
        json subs = json::object();
        json chi_ex = {{"categories", ex.categories.chi}};
        for (auto c : kCategories) {
            const auto& fuzzy = ex.fuzzy_local.at(c);
            json fw = json::object();
            for (std::size_t i = 0; i < fuzzy.codes.size(); ++i) {
                const auto& tfn = fuzzy.weights[i];
                fw[fuzzy.codes[i]] = {tfn.l(), tfn.m(), tfn.u()};
            }
            auto entry = solution_json(ex.local.at(c));
            entry["fuzzy_weights"] = fw;
            subs[std::string(to_string(c))] = entry;
            chi_ex[std::string(to_string(c))] = fuzzy.chi;
        }
        per_expert.push_back({{"id", ex.id},
                              {"categories", solution_json(ex.categories)},
                              {"sub_attributes", subs}});
        chi[ex.id] = chi_ex;
    }
    json global = json::array();
    for (const auto& g : t.global)
        global.push_back(
            {{"code", g.code}, {"category", std::string(to_string(g.category))}, {"weight", g.weight}});
    json totals = json::object();
    for (auto c : kCategories)
        totals[std::string(to_string(c))] = t.total(c);
    return {{"schema_version", kSchemaVersion},
            {"per_expert", per_expert},
            {"global", global},
            {"category_totals", totals},
            {"chi", chi}};
}

/// What the ranking side needs from a weight document.
struct LoadedWeights {
    std::vector<CodedWeight> global;  // registry order, renormalized to sum 1
    nlohmann::json chi = nlohmann::json::object();

    double weight(const std::string& code) const {
        for (const auto& g : global)
            if (g.code == code)
                return g.weight;
        throw LookupError("no global weight for '" + code + "'");
    }

    double category_total(Category c) const {
        double s = 0.0;
        for (const auto& g : global)
            if (g.category == c)
                s += g.weight;
        return s;
    }
};

/// Reads the `global` table of a weight document. Every registry code must
/// appear exactly once; weights are renormalized, so documents carrying
/// rounded published percentages load as proper weight vectors.
inline LoadedWeights weights_from_document(const nlohmann::json& doc, const Registry& registry) {
    if (!doc.is_object() || !doc.contains("global") || !doc.at("global").is_array())
        throw InputError("weight document: expected an object with a 'global' array");
    std::map<std::string, double> by_code;
    std::size_t i = 0;
    for (const auto& g : doc.at("global")) {
        const std::string where = "weight document: global[" + std::to_string(i++) + "]";
        if (!g.is_object() || !g.contains("code") || !g.at("code").is_string() ||
            !g.contains("weight") || !g.at("weight").is_number())
            throw InputError(where + ": needs 'code' and numeric 'weight'");
        const auto code = g.at("code").get<std::string>();
        const auto* spec = registry.find(code);
        if (!spec)
            throw InputError(where + ": unknown criterion code '" + code + "'");
        if (g.contains("category") &&
            g.at("category") != nlohmann::json(std::string(to_string(spec->category))))
            throw InputError(where + ": category of '" + code + "' disagrees with the registry");
        const double w = g.at("weight").get<double>();
        if (!(w >= 0.0) || !std::isfinite(w))
            throw InputError(where + ": weight must be nonnegative");
        if (!by_code.emplace(code, w).second)
            throw InputError(where + ": duplicate code '" + code + "'");
    }
    LoadedWeights out;
    double total = 0.0;
    for (const auto& spec : registry.specs()) {
        const auto it = by_code.find(spec.code);
        if (it == by_code.end())
            throw InputError("weight document: missing weight for '" + spec.code + "'");
        out.global.push_back({spec.code, spec.category, it->second});
        total += it->second;
    }
    if (!(total > 0.0))
        throw InputError("weight document: weights sum to zero");
    for (auto& g : out.global)
        g.weight /= total;
    if (doc.contains("chi"))
        out.chi = doc.at("chi");
    return out;
}

inline LoadedWeights load_weights(const std::string& path, const Registry& registry) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open weight document '" + path + "'");
    try {
        return weights_from_document(nlohmann::json::parse(in), registry);
    } catch (const nlohmann::json::exception& e) {
        throw InputError("weight document '" + path + "': " + e.what());
    }
}

}  // namespace siting
