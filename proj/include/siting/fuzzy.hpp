#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "siting/error.hpp"

namespace siting {

/// Triangular fuzzy number (l, m, u) with 0 <= l <= m <= u.
///
/// Only nonnegative numbers are representable: every quantity the weighting
/// model handles (weights, comparative significances) is nonnegative.
class Tfn {
public:
    /// Crisp unit (1, 1, 1).
    constexpr Tfn() noexcept = default;

    /// Validating constructor. Throws DomainError naming the violated bound.
    Tfn(double l, double m, double u) : l_(l), m_(m), u_(u) {
        if (!std::isfinite(l) || !std::isfinite(m) || !std::isfinite(u))
            throw DomainError("triangular fuzzy number components must be finite");
        if (l > m)
            throw DomainError("invalid triangular fuzzy number: l > m (" + fmt(l) + " > " +
                              fmt(m) + ")");
        if (m > u)
            throw DomainError("invalid triangular fuzzy number: m > u (" + fmt(m) + " > " +
                              fmt(u) + ")");
        if (l < 0.0)
            throw DomainError("invalid triangular fuzzy number: l < 0 (" + fmt(l) + ")");
    }

    static Tfn crisp(double c) { return Tfn(c, c, c); }

    constexpr double l() const noexcept { return l_; }
    constexpr double m() const noexcept { return m_; }
    constexpr double u() const noexcept { return u_; }

    constexpr bool is_crisp() const noexcept { return l_ == m_ && m_ == u_; }
    constexpr double spread() const noexcept { return u_ - l_; }

    friend constexpr bool operator==(const Tfn&, const Tfn&) = default;

private:
    static std::string fmt(double v) {
        std::ostringstream os;
        os << v;
        return os.str();
    }

    double l_ = 1.0;
    double m_ = 1.0;
    double u_ = 1.0;
};

/// Componentwise product; exact for nonnegative triangular numbers.
inline Tfn operator*(const Tfn& a, const Tfn& b) {
    return Tfn(a.l() * b.l(), a.m() * b.m(), a.u() * b.u());
}

/// Graded mean integration representation, (l + 4m + u) / 6.
constexpr double gmir(const Tfn& t) noexcept { return (t.l() + 4.0 * t.m() + t.u()) / 6.0; }

/// Reporting order: by GMIR, ties broken by modal value.
inline std::partial_ordering report_order(const Tfn& a, const Tfn& b) noexcept {
    if (auto c = gmir(a) <=> gmir(b); c != 0)
        return c;
    return a.m() <=> b.m();
}

/// Ordered table of linguistic significance terms.
class LinguisticScale {
public:
    struct Entry {
        std::string term;
        Tfn value;
    };

    LinguisticScale() = default;

    /// Entries must have unique names and be strictly increasing in reporting
    /// order (GMIR, then modal value). Equally and Weakly Significant share a
    /// modal value of 1 in the default table, so modal alone cannot order them.
    explicit LinguisticScale(std::vector<Entry> entries) : entries_(std::move(entries)) {
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            if (entries_[i].term.empty())
                throw InputError("linguistic scale: empty term name");
            for (std::size_t j = 0; j < i; ++j)
                if (entries_[j].term == entries_[i].term)
                    throw InputError("linguistic scale: duplicate term '" + entries_[i].term + "'");
            if (i > 0 && !(report_order(entries_[i - 1].value, entries_[i].value) < 0))
                throw InputError("linguistic scale: terms must be strictly increasing ('" +
                                 entries_[i - 1].term + "' then '" + entries_[i].term + "')");
        }
    }

    /// The shipped default: Equally, Weakly, Moderately, Very and Absolutely
    /// Significant.
    static LinguisticScale default_scale() {
        return LinguisticScale({
            {"Equally Significant", Tfn(1.0, 1.0, 1.0)},
            {"Weakly Significant", Tfn(2.0 / 3.0, 1.0, 3.0 / 2.0)},
            {"Moderately Significant", Tfn(3.0 / 2.0, 2.0, 5.0 / 2.0)},
            {"Very Significant", Tfn(5.0 / 2.0, 3.0, 7.0 / 2.0)},
            {"Absolutely Significant", Tfn(7.0 / 2.0, 4.0, 9.0 / 2.0)},
        });
    }

    const std::vector<Entry>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }

    bool contains(std::string_view term) const noexcept {
        return std::any_of(entries_.begin(), entries_.end(),
                           [&](const Entry& e) { return e.term == term; });
    }

    /// Throws LookupError listing the valid terms when `term` is unknown.
    const Tfn& lookup(std::string_view term) const {
        for (const auto& e : entries_)
            if (e.term == term)
                return e.value;
        std::string valid;
        for (const auto& e : entries_) {
            if (!valid.empty())
                valid += ", ";
            valid += "'" + e.term + "'";
        }
        throw LookupError("unknown linguistic term '" + std::string(term) + "'; valid terms: " +
                          valid);
    }

private:
    std::vector<Entry> entries_;
};

inline const Tfn& linguistic_to_tfn(std::string_view term, const LinguisticScale& scale) {
    return scale.lookup(term);
}

// Scale file: { "terms": { "<name>": [l, m, u], ... } }. Object key order is
// not significant; entries are put in reporting order.
inline LinguisticScale scale_from_json(const nlohmann::json& doc) {
    const nlohmann::json* terms = &doc;
    if (doc.is_object() && doc.contains("terms"))
        terms = &doc.at("terms");
    if (!terms->is_object() || terms->empty())
        throw InputError("linguistic scale: expected a non-empty object of term -> [l, m, u]");

    std::vector<LinguisticScale::Entry> entries;
    for (const auto& [name, triple] : terms->items()) {
        if (!triple.is_array() || triple.size() != 3 ||
            !std::all_of(triple.begin(), triple.end(), [](const auto& v) { return v.is_number(); }))
            throw InputError("linguistic scale: term '" + name + "' must map to [l, m, u]");
        try {
            entries.push_back({name, Tfn(triple[0].get<double>(), triple[1].get<double>(),
                                         triple[2].get<double>())});
        } catch (const DomainError& e) {
            throw InputError("linguistic scale: term '" + name + "': " + e.what());
        }
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const auto& a, const auto& b) { return report_order(a.value, b.value) < 0; });
    return LinguisticScale(std::move(entries));
}

inline nlohmann::json scale_to_json(const LinguisticScale& scale) {
    nlohmann::json terms = nlohmann::json::object();
    for (const auto& e : scale.entries())
        terms[e.term] = {e.value.l(), e.value.m(), e.value.u()};
    return {{"schema_version", 1}, {"terms", terms}};
}

inline LinguisticScale load_scale(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open linguistic scale file '" + path + "'");
    try {
        return scale_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
        throw InputError("linguistic scale '" + path + "': " + e.what());
    }
}

}  // namespace siting
