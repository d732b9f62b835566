#pragma once

#include <array>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "siting/error.hpp"

namespace siting {

enum class Category { SP, FP, RHM, CSF };

inline constexpr std::array<Category, 4> kCategories = {Category::SP, Category::FP, Category::RHM,
                                                       Category::CSF};

inline constexpr std::string_view to_string(Category c) noexcept {
    switch (c) {
    case Category::SP: return "SP";
    case Category::FP: return "FP";
    case Category::RHM: return "RHM";
    case Category::CSF: return "CSF";
    }
    return "?";
}

inline std::optional<Category> parse_category(std::string_view s) noexcept {
    for (auto c : kCategories)
        if (to_string(c) == s)
            return c;
    return std::nullopt;
}

inline Category category_or_throw(std::string_view s) {
    if (auto c = parse_category(s))
        return *c;
    throw DomainError("unknown category '" + std::string(s) + "' (expected SP, FP, RHM or CSF)");
}

/// Sub-attribute counts of the standard taxonomy.
inline constexpr std::size_t standard_size(Category c) noexcept {
    switch (c) {
    case Category::SP: return 6;
    case Category::FP: return 3;
    case Category::RHM: return 8;
    case Category::CSF: return 5;
    }
    return 0;
}

enum class ValueKind { Numeric, Binary };
enum class Direction { Benefit, Cost };

struct CriterionSpec {
    std::string code;
    Category category;
    std::string name;
    ValueKind kind = ValueKind::Numeric;
    Direction direction = Direction::Benefit;
    std::string rationale;
};

/// A criterion code with its category and a weight.
struct CodedWeight {
    std::string code;
    Category category;
    double weight;
};

/// Ordered, uniquely-coded list of criteria.
class Registry {
public:
    Registry() = default;

    explicit Registry(std::vector<CriterionSpec> specs) : specs_(std::move(specs)) {
        for (std::size_t i = 0; i < specs_.size(); ++i) {
            if (specs_[i].code.empty())
                throw InputError("registry: empty criterion code");
            for (std::size_t j = 0; j < i; ++j)
                if (specs_[j].code == specs_[i].code)
                    throw InputError("registry: duplicate criterion code '" + specs_[i].code + "'");
        }
    }

    const std::vector<CriterionSpec>& specs() const noexcept { return specs_; }
    std::size_t size() const noexcept { return specs_.size(); }

    const CriterionSpec* find(std::string_view code) const noexcept {
        for (const auto& s : specs_)
            if (s.code == code)
                return &s;
        return nullptr;
    }

    const CriterionSpec& at(std::string_view code) const {
        if (const auto* s = find(code))
            return *s;
        throw LookupError("unknown criterion code '" + std::string(code) + "'");
    }

    /// Codes of one category in declaration order.
    std::vector<std::string> codes(Category c) const {
        std::vector<std::string> out;
        for (const auto& s : specs_)
            if (s.category == c)
                out.push_back(s.code);
        return out;
    }

    std::vector<std::string> codes() const {
        std::vector<std::string> out;
        for (const auto& s : specs_)
            out.push_back(s.code);
        return out;
    }

    /// Throws unless the registry has the SP x6, FP x3, RHM x8, CSF x5 layout.
    void require_standard_layout() const {
        for (auto c : kCategories) {
            const auto n = codes(c).size();
            if (n != standard_size(c))
                throw InputError("registry: category " + std::string(to_string(c)) + " has " +
                                 std::to_string(n) + " sub-attributes, expected " +
                                 std::to_string(standard_size(c)));
        }
    }

    /// The shipped 22-criterion registry.
    ///
    /// SP5, RHM2, RHM5, RHM7 and RHM8 have placeholder names. Directions: hazard
    /// and restriction metrics are costs; incentives, demand, prices and
    /// infrastructure access are benefits. All of it is overridable through a
    /// registry file.
    static Registry builtin() {
        using enum Category;
        using enum ValueKind;
        using enum Direction;
        return Registry({
            {"SP1", SP, "Nuclear Restrictions", Binary, Cost,
             "state restrictions on nuclear construction hinder deployment"},
            {"SP2", SP, "Nuclear Inclusive Policies", Binary, Benefit,
             "clean-energy standards that count nuclear/fusion help deployment"},
            {"SP3", SP, "Energy Price", Numeric, Benefit,
             "higher retail prices improve the competitiveness of new generation"},
            {"SP4", SP, "Market Regulation", Binary, Benefit,
             "regulated markets allow cost recovery for first-of-a-kind plants"},
            {"SP5", SP, "State Policy 5", Numeric, Benefit, "placeholder name; benefit by default"},
            {"SP6", SP, "Coal Retirement", Numeric, Benefit,
             "a state retiring more coal capacity has more replacement demand"},
            {"FP1", FP, "Net Electricity Imports", Numeric, Benefit,
             "importing states need in-state generation"},
            {"FP2", FP, "Hydrogen Demand", Numeric, Benefit,
             "hydrogen demand is an offtake market for fusion output"},
            {"FP3", FP, "Federal Incentives", Numeric, Benefit,
             "incentives reduce deployment cost"},
            {"RHM1", RHM, "Protected Lands", Binary, Cost, "protected land complicates permitting"},
            {"RHM2", RHM, "Risk & Hazard Metric 2", Binary, Cost,
             "placeholder name; hazards are costs"},
            {"RHM3", RHM, "Fault Lines", Numeric, Cost, "seismic hazard"},
            {"RHM4", RHM, "Landslide Hazards", Numeric, Cost, "geotechnical hazard"},
            {"RHM5", RHM, "Risk & Hazard Metric 5", Binary, Cost,
             "placeholder name; hazards are costs"},
            {"RHM6", RHM, "100-year Flood", Binary, Cost, "flooding hazard"},
            {"RHM7", RHM, "Risk & Hazard Metric 7", Numeric, Cost,
             "placeholder name; hazards are costs"},
            {"RHM8", RHM, "Risk & Hazard Metric 8", Numeric, Cost,
             "placeholder name; hazards are costs"},
            {"CSF1", CSF, "Population", Numeric, Cost,
             "dense surrounding population is a siting constraint"},
            {"CSF2", CSF, "Transportation", Numeric, Benefit,
             "access to transport for large components"},
            {"CSF3", CSF, "Operating Nuclear Facilities", Numeric, Benefit,
             "nearby nuclear workforce and supply chain"},
            {"CSF4", CSF, "Nuclear R&D", Numeric, Benefit, "nearby research institutions"},
            {"CSF5", CSF, "Substation", Numeric, Benefit, "grid interconnection capacity"},
        });
    }

private:
    std::vector<CriterionSpec> specs_;
};

inline nlohmann::json registry_to_json(const Registry& r) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : r.specs())
        arr.push_back({{"code", s.code},
                       {"category", std::string(to_string(s.category))},
                       {"name", s.name},
                       {"kind", s.kind == ValueKind::Binary ? "binary" : "numeric"},
                       {"direction", s.direction == Direction::Cost ? "cost" : "benefit"},
                       {"rationale", s.rationale}});
    return {{"schema_version", 1}, {"criteria", arr}};
}

inline Registry registry_from_json(const nlohmann::json& doc, bool require_standard = true) {
    if (!doc.is_object() || !doc.contains("criteria") || !doc.at("criteria").is_array())
        throw InputError("registry: expected an object with a 'criteria' array");
    std::vector<CriterionSpec> specs;
    std::size_t i = 0;
    for (const auto& item : doc.at("criteria")) {
        const std::string where = "registry: criteria[" + std::to_string(i++) + "]";
        auto str = [&](const char* key) -> std::string {
            if (!item.contains(key) || !item.at(key).is_string())
                throw InputError(where + ": missing string field '" + key + "'");
            return item.at(key).get<std::string>();
        };
        CriterionSpec s;
        s.code = str("code");
        const auto cat = parse_category(str("category"));
        if (!cat)
            throw InputError(where + ": unknown category '" + str("category") + "'");
        s.category = *cat;
        s.name = item.contains("name") ? str("name") : s.code;
        const auto kind = item.contains("kind") ? str("kind") : std::string("numeric");
        if (kind == "numeric")
            s.kind = ValueKind::Numeric;
        else if (kind == "binary")
            s.kind = ValueKind::Binary;
        else
            throw InputError(where + ": kind must be 'numeric' or 'binary'");
        const auto dir = item.contains("direction") ? str("direction") : std::string("benefit");
        if (dir == "benefit")
            s.direction = Direction::Benefit;
        else if (dir == "cost")
            s.direction = Direction::Cost;
        else
            throw InputError(where + ": direction must be 'benefit' or 'cost'");
        if (item.contains("rationale"))
            s.rationale = str("rationale");
        specs.push_back(std::move(s));
    }
    Registry r(std::move(specs));
    if (require_standard)
        r.require_standard_layout();
    return r;
}

inline Registry load_registry(const std::string& path, bool require_standard = true) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open registry file '" + path + "'");
    try {
        return registry_from_json(nlohmann::json::parse(in), require_standard);
    } catch (const nlohmann::json::exception& e) {
        throw InputError("registry '" + path + "': " + e.what());
    }
}

}  // namespace siting
