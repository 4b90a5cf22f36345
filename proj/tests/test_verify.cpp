#include <gtest/gtest.h>

#include <json.hpp>

#include "heis/verify.hpp"

using namespace heis;

namespace {

CyclotomicData cd(const char* f) { return CyclotomicData(Poly::parse(f)); }

const CaseResult* find(const CheckReport& r, const std::string& prefix) {
    for (const auto& c : r.cases)
        if (c.name.rfind(prefix, 0) == 0) return &c;
    return nullptr;
}

Relation relation(const std::vector<Relation>& rs, const std::string& name) {
    for (const auto& r : rs)
        if (r.name == name) return r;
    throw std::out_of_range(name);
}

}  // namespace

TEST(Defining, LevelOne) {
    CheckReport r = check_defining(cd("u"), 2);
    EXPECT_TRUE(r.ok()) << r.str();
    EXPECT_NE(find(r, "hecke: braid"), nullptr);
    EXPECT_NE(find(r, "mackey map invertible"), nullptr);
}

TEST(Defining, LevelTwo) {
    CheckReport r = check_defining(cd("u^2"), 3);
    EXPECT_TRUE(r.ok()) << r.str();
}

TEST(Defining, CorruptedCrossingIsCaught) {
    Functor f(cd("u^2"));
    f.corrupt_for_testing({Letter::Up, Letter::Up});
    CheckReport r = check_defining(f, 4);
    EXPECT_FALSE(r.ok());
    int caught = 0;
    for (const auto& c : r.cases)
        if (!c.pass) {
            ++caught;
            EXPECT_FALSE(c.witness.empty()) << c.name;
        }
    EXPECT_GT(caught, 0);
}

TEST(Derived, LevelOneCli) {
    CheckReport r = check_derived(cd("u"), 2);
    EXPECT_TRUE(r.ok()) << r.str();
}

TEST(Derived, ChargeMinusTwo) {
    CheckReport r = check_derived(cd("(u-1)*(u+2)"), 2);
    EXPECT_TRUE(r.ok()) << r.str();
}

TEST(Derived, GrassmannianProductVanishes) {
    CategoryParams p;
    p.k = -1;
    Relation r = relation(derived_relations(-1), "infinite grassmannian: product t=3");
    EXPECT_TRUE(r.rhs.empty());
    EXPECT_EQ(compare_sides(r.lhs, r.rhs, p), "");
}

TEST(Derived, InverseAtChargeZero) {
    Relation r = relation(derived_relations(0), "inverse crossings: t' t");
    ASSERT_EQ(r.rhs.size(), 1u);
    CategoryParams p;
    p.k = 0;
    EXPECT_EQ(compare_sides(r.lhs, r.rhs, p), "");
}

TEST(Derived, AlternatingBraidVanishesForSmallCharge) {
    for (int k = -1; k <= 1; ++k) {
        Relation r = relation(derived_relations(k), "alternating braid");
        EXPECT_TRUE(r.rhs.empty());
        CategoryParams p;
        p.k = k;
        EXPECT_EQ(compare_sides(r.lhs, {}, p), "") << k;
    }
    for (int k : {-2, 2}) EXPECT_FALSE(relation(derived_relations(k), "alternating braid").rhs.empty());
}

TEST(Derived, WrongSideIsDetected) {
    CategoryParams p;
    p.k = 1;
    Relation r = relation(derived_relations(1), "inverse crossings: t t'");
    TermSum wrong = r.rhs;
    wrong.pop_back();
    EXPECT_NE(compare_sides(r.lhs, wrong, p), "");
}

TEST(Khovanov, AllPass) {
    CheckReport r = check_khovanov();
    EXPECT_TRUE(r.ok()) << r.str();
    EXPECT_NE(find(r, "khovanov: undotted bubble = 1"), nullptr);
    EXPECT_NE(find(r, "khovanov: left curl = 0"), nullptr);
    EXPECT_NE(find(r, "khovanov: right curl = dot ["), nullptr);
}

TEST(Independence, SingleStrand) {
    CheckReport r = check_independence({Letter::Up}, {Letter::Up}, 2, {cd("u"), cd("u+1"), cd("u^2")});
    EXPECT_TRUE(r.ok()) << r.str();
    EXPECT_NE(r.cases[0].name.find("3 basis"), std::string::npos);
}

TEST(Independence, UnitObject) {
    CheckReport r = check_independence({}, {}, 2, {cd("u"), cd("u+1")});
    EXPECT_TRUE(r.ok()) << r.str();
    EXPECT_NE(r.cases[0].name.find("1 basis"), std::string::npos);
}

TEST(Independence, TwoStrands) {
    CheckReport r = check_independence({Letter::Up, Letter::Down}, {Letter::Down, Letter::Up}, 1, {cd("u"), cd("u+1"), cd("u^2")});
    EXPECT_TRUE(r.ok()) << r.str();
    EXPECT_NE(r.cases[0].name.find("8 basis"), std::string::npos);
}

TEST(Independence, NeedsTwoData) {
    CheckReport r = check_independence({Letter::Up}, {Letter::Up}, 0, {cd("u")});
    EXPECT_FALSE(r.ok());
}

TEST(Fuzz, SeedOnePasses) {
    CheckReport r = fuzz_normalizer(1, 200, FuzzCaps{}, {cd("u"), cd("u^2")});
    EXPECT_TRUE(r.ok()) << r.str();
    EXPECT_EQ(r.cases.size(), 200u);
    EXPECT_TRUE(r.cases[0].pass);
}

TEST(Fuzz, Deterministic) {
    CheckReport a = fuzz_normalizer(4, 30, FuzzCaps{}, {cd("u+1")});
    CheckReport b = fuzz_normalizer(4, 30, FuzzCaps{}, {cd("u+1")});
    EXPECT_EQ(a.to_json(), b.to_json());
}

TEST(Fuzz, RandomTermsRespectCaps) {
    std::mt19937_64 rng(2);
    FuzzCaps caps;
    for (int i = 0; i < 300; ++i) {
        DiagramTerm t = random_term(rng, caps);
        EXPECT_LE(t.crossings(), caps.max_crossings);
        EXPECT_LE(t.dots(), caps.max_dots);
        EXPECT_LE(static_cast<int>(t.source().size()), caps.max_width);
        EXPECT_LE(static_cast<int>(validate(t).size()), caps.max_width);
    }
}

TEST(Report, JsonSchema) {
    CheckReport r;
    r.suite = "demo";
    r.params = {{"f", "u"}};
    r.seed = 3;
    r.add("good", true);
    r.add("bad", false, "lhs 1 rhs 2");
    auto j = nlohmann::json::parse(r.to_json());
    EXPECT_EQ(j["suite"], "demo");
    EXPECT_EQ(j["seed"], 3);
    EXPECT_EQ(j["params"]["f"], "u");
    ASSERT_EQ(j["cases"].size(), 2u);
    EXPECT_EQ(j["cases"][0]["status"], "pass");
    EXPECT_FALSE(j["cases"][0].contains("witness"));
    EXPECT_EQ(j["cases"][1]["witness"], "lhs 1 rhs 2");
    EXPECT_EQ(r.failures(), 1);
}
