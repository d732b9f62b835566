#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "siting/criteria.hpp"
#include "siting/error.hpp"
#include "siting/fucom.hpp"

namespace siting {

/// Importance ratings on the 1 (not important) .. 5 (extremely important) scale.
inline constexpr int kMinRating = 1;
inline constexpr int kMaxRating = 5;

/// Category-level input: either a rating per category or a directly supplied
/// crisp comparative chain.
using CategoryRatings = std::map<Category, int>;
using CategoryInput = std::variant<CategoryRatings, CrispChain>;

/// One sub-attribute line of a survey. Exactly one of the two input styles is
/// used within a category:
///  - linguistic: `rank` (1 = most significant) and, for all but the last
///    ranked entry, `term` = significance over the next-ranked entry;
///  - rating: `rating` on the 1..5 scale.
struct SubAttributeEntry {
    std::string code;
    std::optional<int> rank;
    std::optional<std::string> term;
    std::optional<int> rating;
};

struct ExpertSurvey {
    std::string id;
    CategoryInput categories;
    std::map<Category, std::vector<SubAttributeEntry>> sub_attributes;
};

namespace detail {

inline int rating_at(const nlohmann::json& v, const std::string& where) {
    if (!v.is_number_integer())
        throw InputError(where + ": rating must be an integer");
    const auto r = v.get<long long>();
    if (r < kMinRating || r > kMaxRating)
        throw InputError(where + ": rating out of range (" + std::to_string(r) + ", expected " +
                         std::to_string(kMinRating) + ".." + std::to_string(kMaxRating) + ")");
    return static_cast<int>(r);
}

inline CategoryInput parse_categories(const nlohmann::json& j, const std::string& where) {
    if (!j.is_object())
        throw InputError(where + ": expected an object");
    if (j.contains("order") || j.contains("phi")) {
        if (!j.contains("order") || !j.at("order").is_array() || !j.contains("phi") ||
            !j.at("phi").is_array())
            throw InputError(where + ": a direct chain needs 'order' and 'phi' arrays");
        CrispChain chain;
        std::set<Category> seen;
        for (const auto& c : j.at("order")) {
            if (!c.is_string() || !parse_category(c.get<std::string>()))
                throw InputError(where + ".order: unknown category " + c.dump());
            if (!seen.insert(*parse_category(c.get<std::string>())).second)
                throw InputError(where + ".order: duplicate category " + c.dump());
            chain.order.push_back(c.get<std::string>());
        }
        if (seen.size() != kCategories.size())
            throw InputError(where + ".order: must list SP, FP, RHM and CSF");
        for (const auto& v : j.at("phi")) {
            if (!v.is_number())
                throw InputError(where + ".phi: significances must be numbers");
            chain.significance.push_back(v.get<double>());
        }
        try {
            chain.validate();
        } catch (const DomainError& e) {
            throw InputError(where + ": " + e.what());
        }
        return chain;
    }
    CategoryRatings ratings;
    for (const auto& [key, value] : j.items()) {
        const auto cat = parse_category(key);
        if (!cat)
            throw InputError(where + ": unknown category '" + key + "'");
        ratings[*cat] = rating_at(value, where + "." + key);
    }
    for (auto c : kCategories)
        if (!ratings.count(c))
            throw InputError(where + ": missing rating for category " + std::string(to_string(c)));
    return ratings;
}

inline std::vector<SubAttributeEntry> parse_sub_attributes(const nlohmann::json& arr,
                                                           const std::vector<std::string>& codes,
                                                           const std::string& where) {
    if (!arr.is_array())
        throw InputError(where + ": expected an array");
    std::vector<SubAttributeEntry> out;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto& item = arr[i];
        const std::string at = where + "[" + std::to_string(i) + "]";
        if (!item.is_object() || !item.contains("code") || !item.at("code").is_string())
            throw InputError(at + ": missing string field 'code'");
        SubAttributeEntry e;
        e.code = item.at("code").get<std::string>();
        if (std::find(codes.begin(), codes.end(), e.code) == codes.end())
            throw InputError(at + ".code: unknown criterion code '" + e.code + "' for this category");
        if (!seen.insert(e.code).second)
            throw InputError(at + ".code: duplicate criterion code '" + e.code + "'");
        if (item.contains("rating"))
            e.rating = rating_at(item.at("rating"), at + ".rating");
        if (item.contains("rank")) {
            if (!item.at("rank").is_number_integer() || item.at("rank").get<long long>() < 1)
                throw InputError(at + ".rank: rank must be a positive integer");
            e.rank = static_cast<int>(item.at("rank").get<long long>());
        }
        if (item.contains("term")) {
            if (!item.at("term").is_string())
                throw InputError(at + ".term: expected a string");
            e.term = item.at("term").get<std::string>();
        }
        if (e.rating && (e.rank || e.term))
            throw InputError(at + ": use either 'rating' or 'rank'/'term', not both");
        if (!e.rating && !e.rank)
            throw InputError(at + ": needs 'rating' or 'rank'");
        out.push_back(std::move(e));
    }
    for (const auto& c : codes)
        if (!seen.count(c))
            throw InputError(where + ": missing sub-attribute '" + c + "'");
    const bool rated = out.front().rating.has_value();
    for (std::size_t i = 0; i < out.size(); ++i)
        if (out[i].rating.has_value() != rated)
            throw InputError(where + "[" + std::to_string(i) +
                             "]: all entries of a category must use the same input style");
    return out;
}

}  // namespace detail

/// Parses and validates the survey document against the registry.
inline std::vector<ExpertSurvey> parse_surveys(const nlohmann::json& doc, const Registry& registry) {
    if (!doc.is_object() || !doc.contains("experts") || !doc.at("experts").is_array())
        throw InputError("surveys: expected an object with an 'experts' array");
    const auto& experts = doc.at("experts");
    if (experts.empty())
        throw InputError("surveys: no experts");

    std::vector<ExpertSurvey> out;
    for (std::size_t i = 0; i < experts.size(); ++i) {
        const auto& e = experts[i];
        const std::string where = "experts[" + std::to_string(i) + "]";
        if (!e.is_object())
            throw InputError(where + ": expected an object");
        if (!e.contains("id") || !e.at("id").is_string() || e.at("id").get<std::string>().empty())
            throw InputError(where + ".id: missing expert id");
        ExpertSurvey s;
        s.id = e.at("id").get<std::string>();
        for (const auto& prev : out)
            if (prev.id == s.id)
                throw InputError(where + ".id: duplicate expert id '" + s.id + "'");
        if (!e.contains("categories"))
            throw InputError(where + ".categories: missing");
        s.categories = detail::parse_categories(e.at("categories"), where + ".categories");
        if (!e.contains("sub_attributes") || !e.at("sub_attributes").is_object())
            throw InputError(where + ".sub_attributes: missing");
        const auto& subs = e.at("sub_attributes");
        for (const auto& [key, value] : subs.items())
            if (!parse_category(key))
                throw InputError(where + ".sub_attributes: unknown category '" + key + "'");
        for (auto c : kCategories) {
            const std::string cat(to_string(c));
            if (!subs.contains(cat))
                throw InputError(where + ".sub_attributes." + cat + ": missing");
            s.sub_attributes[c] = detail::parse_sub_attributes(
                subs.at(cat), registry.codes(c), where + ".sub_attributes." + cat);
        }
        out.push_back(std::move(s));
    }
    return out;
}

inline std::vector<ExpertSurvey> load_surveys(const std::string& path, const Registry& registry) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open survey file '" + path + "'");
    try {
        return parse_surveys(nlohmann::json::parse(in), registry);
    } catch (const nlohmann::json::exception& e) {
        throw InputError("survey file '" + path + "': " + e.what());
    }
}

/// Crisp category chain of a survey: ratings are used as priorities.
inline CrispChain category_chain(const ExpertSurvey& s) {
    if (const auto* chain = std::get_if<CrispChain>(&s.categories))
        return *chain;
    const auto& ratings = std::get<CategoryRatings>(s.categories);
    std::vector<std::string> codes;
    std::vector<double> priorities;
    for (auto c : kCategories) {
        codes.emplace_back(to_string(c));
        priorities.push_back(ratings.at(c));
    }
    return chain_from_priorities(codes, priorities);
}

/// Fuzzy sub-attribute chain of one category. Rated entries become a crisp
/// ratio chain lifted to degenerate TFNs; ranked entries are ordered by rank
/// (registry order on ties) and read their significances from the scale.
inline FuzzyChain sub_attribute_chain(const std::vector<SubAttributeEntry>& entries,
                                      const std::vector<std::string>& registry_order,
                                      const LinguisticScale& scale) {
    if (entries.empty())
        throw DomainError("no sub-attributes to weigh");
    auto declared = [&](const std::string& code) {
        return std::find(registry_order.begin(), registry_order.end(), code) -
               registry_order.begin();
    };
    std::vector<const SubAttributeEntry*> sorted;
    for (const auto& e : entries)
        sorted.push_back(&e);
    std::stable_sort(sorted.begin(), sorted.end(), [&](auto* a, auto* b) {
        return declared(a->code) < declared(b->code);
    });

    if (sorted.front()->rating) {
        std::vector<std::string> codes;
        std::vector<double> priorities;
        for (const auto* e : sorted) {
            codes.push_back(e->code);
            priorities.push_back(*e->rating);
        }
        return to_fuzzy(chain_from_priorities(codes, priorities));
    }

    std::stable_sort(sorted.begin(), sorted.end(),
                     [](auto* a, auto* b) { return *a->rank < *b->rank; });
    FuzzyChain chain;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        const auto* e = sorted[k];
        chain.order.push_back(e->code);
        if (k + 1 == sorted.size()) {
            if (e->term)
                throw InputError("sub-attribute '" + e->code +
                                 "' is ranked last and cannot carry a significance term");
            break;
        }
        if (!e->term)
            throw InputError("sub-attribute '" + e->code +
                             "' needs a significance term over the next-ranked entry");
        chain.significance.push_back(scale.lookup(*e->term));
    }
    chain.validate();
    return chain;
}

}  // namespace siting
