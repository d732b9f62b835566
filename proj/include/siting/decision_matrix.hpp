#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "siting/criteria.hpp"
#include "siting/error.hpp"

namespace siting {

/// Sites x criteria grid, row-major.
class DecisionMatrix {
public:
    DecisionMatrix() = default;

    DecisionMatrix(std::vector<std::string> site_ids, std::vector<std::string> codes,
                   std::vector<double> values, bool normalized = false)
        : site_ids_(std::move(site_ids)),
          codes_(std::move(codes)),
          values_(std::move(values)),
          normalized_(normalized) {
        if (values_.size() != site_ids_.size() * codes_.size())
            throw DomainError("decision matrix: value count does not match sites x criteria");
    }

    std::size_t rows() const noexcept { return site_ids_.size(); }
    std::size_t cols() const noexcept { return codes_.size(); }
    bool empty() const noexcept { return site_ids_.empty() || codes_.empty(); }
    bool normalized() const noexcept { return normalized_; }

    const std::vector<std::string>& site_ids() const noexcept { return site_ids_; }
    const std::vector<std::string>& codes() const noexcept { return codes_; }
    const std::vector<double>& values() const noexcept { return values_; }

    double operator()(std::size_t i, std::size_t j) const { return values_[i * cols() + j]; }
    double& operator()(std::size_t i, std::size_t j) { return values_[i * cols() + j]; }

    std::vector<double> column(std::size_t j) const {
        std::vector<double> out(rows());
        for (std::size_t i = 0; i < rows(); ++i)
            out[i] = (*this)(i, j);
        return out;
    }

    std::size_t column_index(std::string_view code) const {
        for (std::size_t j = 0; j < codes_.size(); ++j)
            if (codes_[j] == code)
                return j;
        throw LookupError("decision matrix has no column '" + std::string(code) + "'");
    }

    void set_normalized(bool v) noexcept { normalized_ = v; }

private:
    std::vector<std::string> site_ids_;
    std::vector<std::string> codes_;
    std::vector<double> values_;
    bool normalized_ = false;
};

struct SiteInfo {
    std::string id;
    std::string name;
    std::string state;
    double lat = 0.0;
    double lon = 0.0;
};

/// Site metadata plus the raw (coerced) decision matrix, in file row order.
struct SiteTable {
    std::vector<SiteInfo> sites;
    DecisionMatrix matrix;
};

/// true -> 1, false -> 0.
constexpr double coerce_binary(bool value) noexcept { return value ? 1.0 : 0.0; }

namespace csv {

// RFC 4180 style: comma separated, double quotes for fields containing commas
// or quotes, "" as an escaped quote. CR before LF is dropped.
inline std::vector<std::string> split_line(std::string_view line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (quoted)
        throw InputError("site table line " + std::to_string(line_no) + ": unterminated quote");
    fields.push_back(std::move(cur));
    return fields;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

inline bool parse_double(std::string_view s, double& out) {
    s = trim(s);
    if (s.empty())
        return false;
    if (s.front() == '+')
        s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

}  // namespace csv

/// Reads the site table: header `site_id,name,state,lat,lon,<codes...>` where
/// the criterion columns may appear in any order but must cover the registry
/// exactly. Binary criteria take `true`/`false`; numeric ones a '.'-decimal
/// number. Missing or malformed cells are errors.
inline SiteTable load_sites(std::istream& in, const Registry& registry) {
    static constexpr std::array<std::string_view, 5> kMeta = {"site_id", "name", "state", "lat",
                                                             "lon"};
    std::string line;
    std::size_t line_no = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            if (line_no == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0)
                line.erase(0, 3);
            if (!csv::trim(line).empty())
                return true;
        }
        return false;
    };

    if (!next_line())
        throw InputError("site table is empty");
    auto header = csv::split_line(line, line_no);
    for (auto& h : header)
        h = std::string(csv::trim(h));
    for (std::size_t k = 0; k < kMeta.size(); ++k)
        if (header.size() <= k || header[k] != kMeta[k])
            throw InputError("site table header: column " + std::to_string(k + 1) + " must be '" +
                             std::string(kMeta[k]) + "'");

    // Registry column j lives at file column col_of[j].
    std::vector<std::size_t> col_of(registry.size(), 0);
    std::vector<bool> seen(registry.size(), false);
    for (std::size_t c = kMeta.size(); c < header.size(); ++c) {
        bool found = false;
        for (std::size_t j = 0; j < registry.size(); ++j) {
            if (registry.specs()[j].code == header[c]) {
                if (seen[j])
                    throw InputError("site table header: duplicate column '" + header[c] + "'");
                seen[j] = true;
                col_of[j] = c;
                found = true;
            }
        }
        if (!found)
            throw InputError("site table header: unknown criterion column '" + header[c] + "'");
    }
    for (std::size_t j = 0; j < registry.size(); ++j)
        if (!seen[j])
            throw InputError("site table header: missing criterion column '" +
                             registry.specs()[j].code + "'");

    SiteTable table;
    std::vector<std::string> ids;
    std::vector<double> values;
    while (next_line()) {
        const auto fields = csv::split_line(line, line_no);
        const std::string where = "site table line " + std::to_string(line_no);
        if (fields.size() != header.size())
            throw InputError(where + ": expected " + std::to_string(header.size()) +
                             " fields, got " + std::to_string(fields.size()));
        SiteInfo site;
        site.id = std::string(csv::trim(fields[0]));
        if (site.id.empty())
            throw InputError(where + ", column site_id: empty site id");
        if (std::find(ids.begin(), ids.end(), site.id) != ids.end())
            throw InputError(where + ", column site_id: duplicate site id '" + site.id + "'");
        site.name = std::string(csv::trim(fields[1]));
        site.state = std::string(csv::trim(fields[2]));
        if (!csv::parse_double(fields[3], site.lat) || !csv::parse_double(fields[4], site.lon))
            throw InputError(where + ": unparseable lat/lon");

        for (std::size_t j = 0; j < registry.size(); ++j) {
            const auto& spec = registry.specs()[j];
            const auto cell = csv::trim(fields[col_of[j]]);
            const std::string at = where + ", column " + spec.code + " (site " + site.id + ")";
            if (cell.empty())
                throw InputError(at + ": missing value");
            if (spec.kind == ValueKind::Binary) {
                if (cell == "true")
                    values.push_back(coerce_binary(true));
                else if (cell == "false")
                    values.push_back(coerce_binary(false));
                else
                    throw InputError(at + ": binary criterion expects true/false, got '" +
                                     std::string(cell) + "'");
            } else {
                double v = 0.0;
                if (!csv::parse_double(cell, v))
                    throw InputError(at + ": unparseable number '" + std::string(cell) + "'");
                values.push_back(v);
            }
        }
        ids.push_back(site.id);
        table.sites.push_back(std::move(site));
    }
    table.matrix = DecisionMatrix(std::move(ids), registry.codes(), std::move(values));
    return table;
}

inline SiteTable load_sites(const std::string& path, const Registry& registry) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open site table '" + path + "'");
    return load_sites(in, registry);
}

enum class NormalizationMethod { MinMax, Vector };

inline NormalizationMethod parse_normalization(std::string_view s) {
    if (s == "minmax")
        return NormalizationMethod::MinMax;
    if (s == "vector")
        return NormalizationMethod::Vector;
    throw DomainError("unknown normalization method '" + std::string(s) +
                      "' (expected minmax or vector)");
}

inline constexpr std::string_view to_string(NormalizationMethod m) noexcept {
    return m == NormalizationMethod::MinMax ? "minmax" : "vector";
}

/// Maps every column to [0, 1] according to its criterion direction.
///
/// MinMax: benefit (x - min) / (max - min), cost (max - x) / (max - min).
/// Vector: benefit x / ||x||, cost 1 - x / ||x||; needs nonnegative columns.
/// Degenerate columns (constant, or zero norm) become 0.5 everywhere.
inline DecisionMatrix normalize(const DecisionMatrix& raw, const Registry& registry,
                                NormalizationMethod method = NormalizationMethod::MinMax) {
    if (raw.empty())
        throw DomainError("cannot normalize an empty decision matrix");
    DecisionMatrix out = raw;
    for (std::size_t j = 0; j < raw.cols(); ++j) {
        const auto& spec = registry.at(raw.codes()[j]);
        const bool cost = spec.direction == Direction::Cost;
        const auto col = raw.column(j);
        if (method == NormalizationMethod::MinMax) {
            const auto [lo, hi] = std::minmax_element(col.begin(), col.end());
            const double min = *lo, range = *hi - *lo;
            for (std::size_t i = 0; i < raw.rows(); ++i) {
                double v = 0.5;
                if (range > 0.0) {
                    v = cost ? (*hi - col[i]) / range : (col[i] - min) / range;
                    v = std::clamp(v, 0.0, 1.0);
                }
                out(i, j) = v;
            }
        } else {
            double sq = 0.0;
            for (double x : col) {
                if (x < 0.0)
                    throw DomainError("vector normalization needs nonnegative values (column " +
                                      spec.code + ")");
                sq += x * x;
            }
            const double norm = std::sqrt(sq);
            for (std::size_t i = 0; i < raw.rows(); ++i) {
                double v = 0.5;
                if (norm > 0.0) {
                    v = col[i] / norm;
                    v = std::clamp(cost ? 1.0 - v : v, 0.0, 1.0);
                }
                out(i, j) = v;
            }
        }
    }
    out.set_normalized(true);
    return out;
}

}  // namespace siting
