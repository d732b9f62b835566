#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "siting/decision_matrix.hpp"

using namespace siting;

namespace {

const Registry& reg() {
    static const Registry r = Registry::builtin();
    return r;
}

// Two-criterion registry for small normalization cases.
Registry pair_registry() {
    return Registry({
        {"B1", Category::SP, "benefit", ValueKind::Numeric, Direction::Benefit, ""},
        {"C1", Category::SP, "cost", ValueKind::Numeric, Direction::Cost, ""},
    });
}

std::string header() {
    std::string h = "site_id,name,state,lat,lon";
    for (const auto& c : reg().codes())
        h += "," + c;
    return h;
}

std::string row(const std::string& id, const std::string& override_code = {},
                const std::string& override_value = {}) {
    std::string r = id + ",\"Plant, " + id + "\",TX,31.0,-97.0";
    for (const auto& spec : reg().specs()) {
        std::string v = spec.kind == ValueKind::Binary ? "false" : "1.5";
        if (spec.code == override_code)
            v = override_value;
        r += "," + v;
    }
    return r;
}

std::string load_error(const std::string& text) {
    std::istringstream in(text);
    try {
        load_sites(in, reg());
    } catch (const InputError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST(Registry, BuiltinLayout) {
    EXPECT_EQ(reg().size(), 22u);
    EXPECT_EQ(reg().codes(Category::SP).size(), 6u);
    EXPECT_EQ(reg().codes(Category::FP).size(), 3u);
    EXPECT_EQ(reg().codes(Category::RHM).size(), 8u);
    EXPECT_EQ(reg().codes(Category::CSF).size(), 5u);
    EXPECT_EQ(reg().at("CSF1").direction, Direction::Cost);
    EXPECT_EQ(reg().at("SP2").kind, ValueKind::Binary);
    EXPECT_NO_THROW(reg().require_standard_layout());
    EXPECT_THROW(reg().at("XX1"), LookupError);
}

TEST(Registry, ShippedFileMatchesBuiltin) {
    const auto file = load_registry(SITING_DATA_DIR "/registry.json");
    EXPECT_EQ(registry_to_json(file), registry_to_json(reg()));
}

TEST(Registry, RejectsBrokenLayouts) {
    auto doc = registry_to_json(reg());
    doc["criteria"].erase(0);
    EXPECT_THROW(registry_from_json(doc), InputError);
    EXPECT_NO_THROW(registry_from_json(doc, false));

    auto dup = registry_to_json(reg());
    dup["criteria"][1]["code"] = "SP1";
    EXPECT_THROW(registry_from_json(dup, false), InputError);

    auto bad = registry_to_json(reg());
    bad["criteria"][0]["direction"] = "sideways";
    EXPECT_THROW(registry_from_json(bad, false), InputError);
}

TEST(Coercion, BinaryValues) {
    static_assert(coerce_binary(true) == 1.0);
    static_assert(coerce_binary(false) == 0.0);
}

TEST(LoadSites, ReadsQuotedFieldsAndAnyColumnOrder) {
    std::istringstream in(header() + "\n" + row("A", "SP1", "true") + "\n" + row("B") + "\n");
    const auto t = load_sites(in, reg());
    ASSERT_EQ(t.sites.size(), 2u);
    EXPECT_EQ(t.sites[0].name, "Plant, A");
    EXPECT_EQ(t.matrix(0, t.matrix.column_index("SP1")), 1.0);
    EXPECT_EQ(t.matrix(1, t.matrix.column_index("SP1")), 0.0);
    EXPECT_EQ(t.matrix(0, t.matrix.column_index("CSF5")), 1.5);

    // Reverse the criterion columns.
    std::string h = "site_id,name,state,lat,lon";
    std::string r = "A,A,TX,31,-97";
    const auto codes = reg().codes();
    for (auto it = codes.rbegin(); it != codes.rend(); ++it) {
        h += "," + *it;
        r += "," + std::string(reg().at(*it).kind == ValueKind::Binary ? "true" : "2");
    }
    std::istringstream rev(h + "\n" + r + "\n");
    const auto t2 = load_sites(rev, reg());
    EXPECT_EQ(t2.matrix.codes(), codes);
    EXPECT_EQ(t2.matrix(0, 0), 1.0);
}

TEST(LoadSites, MissingColumnIsNamed) {
    auto h = header();
    h.erase(h.rfind(",CSF5"));
    EXPECT_NE(load_error(h + "\n").find("missing criterion column 'CSF5'"), std::string::npos);
}

TEST(LoadSites, ErrorsCarryLineColumnAndSite) {
    auto msg = load_error(header() + "\n" + row("A") + "\n" + row("A") + "\n");
    EXPECT_NE(msg.find("duplicate site id 'A'"), std::string::npos) << msg;
    EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;

    msg = load_error(header() + "\n" + row("A", "SP2", "yes") + "\n");
    EXPECT_NE(msg.find("column SP2"), std::string::npos) << msg;
    EXPECT_NE(msg.find("site A"), std::string::npos) << msg;

    msg = load_error(header() + "\n" + row("A", "FP1", "1,5") + "\n");
    EXPECT_FALSE(msg.empty());

    msg = load_error(header() + "\n" + row("A", "CSF2", "") + "\n");
    EXPECT_NE(msg.find("missing value"), std::string::npos) << msg;

    msg = load_error(header() + ",EXTRA\n");
    EXPECT_NE(msg.find("unknown criterion column 'EXTRA'"), std::string::npos) << msg;

    EXPECT_NE(load_error("").find("empty"), std::string::npos);
}

TEST(LoadSites, SyntheticFixtureShape) {
    const auto t = load_sites(std::string(SITING_DATA_DIR "/sites_synthetic.csv"), reg());
    EXPECT_EQ(t.matrix.rows(), 220u);
    EXPECT_EQ(t.matrix.cols(), 22u);
    for (const auto& spec : reg().specs()) {
        if (spec.kind != ValueKind::Binary)
            continue;
        for (double v : t.matrix.column(t.matrix.column_index(spec.code)))
            EXPECT_TRUE(v == 0.0 || v == 1.0);
    }
}

TEST(Normalize, MinMaxBenefitAndCost) {
    DecisionMatrix m({"a", "b", "c"}, {"B1", "C1"}, {2, 2, 4, 4, 6, 6});
    const auto n = normalize(m, pair_registry());
    EXPECT_TRUE(n.normalized());
    EXPECT_DOUBLE_EQ(n(0, 0), 0.0);
    EXPECT_DOUBLE_EQ(n(1, 0), 0.5);
    EXPECT_DOUBLE_EQ(n(2, 0), 1.0);
    EXPECT_DOUBLE_EQ(n(0, 1), 1.0);
    EXPECT_DOUBLE_EQ(n(1, 1), 0.5);
    EXPECT_DOUBLE_EQ(n(2, 1), 0.0);
}

TEST(Normalize, ConstantColumnIsHalf) {
    DecisionMatrix m({"a", "b"}, {"B1", "C1"}, {3, 1, 3, 2});
    const auto n = normalize(m, pair_registry());
    EXPECT_EQ(n(0, 0), 0.5);
    EXPECT_EQ(n(1, 0), 0.5);
    const auto v = normalize(DecisionMatrix({"a"}, {"B1", "C1"}, {0, 0}), pair_registry(),
                             NormalizationMethod::Vector);
    EXPECT_EQ(v(0, 0), 0.5);
}

TEST(Normalize, VectorMethod) {
    DecisionMatrix m({"a", "b"}, {"B1", "C1"}, {3, 3, 4, 4});
    const auto n = normalize(m, pair_registry(), NormalizationMethod::Vector);
    EXPECT_NEAR(n(0, 0), 0.6, 1e-15);
    EXPECT_NEAR(n(1, 0), 0.8, 1e-15);
    EXPECT_NEAR(n(0, 1), 0.4, 1e-15);
    EXPECT_NEAR(n(1, 1), 0.2, 1e-15);
    DecisionMatrix neg({"a", "b"}, {"B1", "C1"}, {-1, 1, 2, 2});
    EXPECT_THROW(normalize(neg, pair_registry(), NormalizationMethod::Vector), DomainError);
}

TEST(Normalize, MethodNames) {
    EXPECT_EQ(parse_normalization("minmax"), NormalizationMethod::MinMax);
    EXPECT_EQ(parse_normalization("vector"), NormalizationMethod::Vector);
    EXPECT_THROW(parse_normalization("zscore"), DomainError);
}

TEST(Normalize, MinMaxIsInvariantUnderPositiveAffineMaps) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> d(-50.0, 50.0), a(0.1, 10.0);
    for (int t = 0; t < 50; ++t) {
        const std::size_t rows = 30;
        std::vector<double> vals(rows * 2), mapped(rows * 2);
        const double scale = a(rng), shift = d(rng);
        for (std::size_t k = 0; k < vals.size(); ++k) {
            vals[k] = d(rng);
            mapped[k] = scale * vals[k] + shift;
        }
        std::vector<std::string> ids(rows);
        for (std::size_t i = 0; i < rows; ++i)
            ids[i] = "s" + std::to_string(i);
        const auto n1 = normalize(DecisionMatrix(ids, {"B1", "C1"}, vals), pair_registry());
        const auto n2 = normalize(DecisionMatrix(ids, {"B1", "C1"}, mapped), pair_registry());
        for (std::size_t k = 0; k < vals.size(); ++k)
            EXPECT_NEAR(n1.values()[k], n2.values()[k], 1e-12);
        for (double v : n1.values()) {
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, 1.0);
        }
    }
}

TEST(DecisionMatrix, ShapeChecks) {
    EXPECT_THROW(DecisionMatrix({"a"}, {"B1", "C1"}, {1.0}), DomainError);
    DecisionMatrix m({"a"}, {"B1"}, {1.0});
    EXPECT_THROW(m.column_index("Z"), LookupError);
    EXPECT_THROW(normalize(DecisionMatrix(), pair_registry()), DomainError);
}
