#include <gtest/gtest.h>

#include <random>

#include "heis/errors.hpp"
#include "heis/normalform.hpp"
#include "heis/verify.hpp"

using namespace heis;

constexpr Letter U = Letter::Up;
constexpr Letter D = Letter::Down;

namespace heis {
void PrintTo(const NormalMorphism& m, std::ostream* os) { *os << m.str(); }
}  // namespace heis

namespace {

CategoryParams charge(int k) {
    CategoryParams p;
    p.k = k;
    return p;
}

NormalMorphism basis_elem(const ObjectWord& x, const ObjectWord& y, Matching m, std::vector<int> dots, const SymPoly& c = 1) {
    NormalMorphism out(x, y);
    out.add({std::move(m), std::move(dots)}, c);
    return out;
}

Matching ident(int n) {
    Matching m;
    for (int i = 0; i < n; ++i) m.pairs.emplace_back(i, n + i);
    return m;
}

}  // namespace

TEST(Matchings, Counts) {
    EXPECT_EQ(enumerate_matchings({}, {}).size(), 1u);
    EXPECT_EQ(enumerate_matchings({U, D}, {U, D}).size(), 2u);
    EXPECT_EQ(enumerate_matchings({U, U, U}, {U, U, U}).size(), 6u);
    EXPECT_EQ(enumerate_matchings({U}, {D}).size(), 0u);
    EXPECT_EQ(enumerate_matchings({}, {D, U, U, D}).size(), 2u);
}

TEST(Basis, Counts) {
    EXPECT_EQ(enumerate_basis({}, {}, 3).size(), 1u);
    EXPECT_EQ(enumerate_basis({U}, {U}, 2).size(), 3u);
    EXPECT_EQ(enumerate_basis({U, D}, {U, D}, 1).size(), 8u);
    EXPECT_EQ(enumerate_basis({U, D}, {D, U}, 0).size(), 2u);
}

TEST(ReducedLift, Examples) {
    EXPECT_EQ(reduced_lift(ident(1), {U}, {U}), DiagramTerm::identity({U}));
    auto cup = enumerate_matchings({}, {D, U});
    ASSERT_EQ(cup.size(), 1u);
    EXPECT_EQ(reduced_lift(cup[0], {}, {D, U}), DiagramTerm({}, {Slice::cup(0, Ward::RightWard)}));
    Matching swap{{{0, 3}, {1, 2}}};
    DiagramTerm s = reduced_lift(swap, {U, U}, {U, U});
    EXPECT_EQ(s.crossings(), 1);
    EXPECT_EQ(s.slices().size(), 1u);
}

TEST(ReducedLift, CrossingCountIsMinimal) {
    // the number of crossings equals the number of pairwise intersections forced by the matching
    for (const auto& [x, y] : std::vector<std::pair<ObjectWord, ObjectWord>>{{{U, U, U}, {U, U, U}}, {{U, D}, {D, U}}, {{U, D, U}, {U, D, U}}}) {
        for (const auto& m : enumerate_matchings(x, y)) {
            DiagramTerm t = reduced_lift(m, x, y);
            EXPECT_EQ(validate(t), y);
            NormalMorphism nm = normalize(t, charge(-1));
            ASSERT_EQ(nm.terms().size(), 1u) << render(t);
            EXPECT_EQ(nm.terms().begin()->first.matching, m);
        }
    }
}

TEST(Normalize, SpecExamples) {
    EXPECT_EQ(normalize(parse_term("up up | s@0 ; s@0"), charge(-1)), basis_elem({U, U}, {U, U}, ident(2), {0, 0}));
    EXPECT_EQ(normalize(parse_term("up | cup_r@1 ; cap_r@0"), charge(-1)), basis_elem({U}, {U}, ident(1), {0}));
    NormalMorphism id = normalize(DiagramTerm::identity({U, D}), charge(-1));
    EXPECT_EQ(id.str(), "[0->2:0, 3->1:0]");
    EXPECT_EQ(normalize(parse_term("up down | t@0 ; t'@0"), charge(-1)), id);
    EXPECT_EQ(normalize(parse_term(". | cup_r@0 ; cap_l@0"), charge(-1)).str(), "1");
    EXPECT_EQ(normalize(left_curl(0), charge(-1)).str(), "0");
    EXPECT_EQ(normalize(parse_term(". | cup_l@0 ; cap_r@0"), charge(-1)).str(), "-e[2]");
}

TEST(Normalize, DotsCompose) {
    EXPECT_EQ(normalize(parse_term("up | dot@0 ; dot@0"), charge(0)), basis_elem({U}, {U}, ident(1), {2}));
}

TEST(Normalize, StepCap) {
    CategoryParams p = charge(2);
    p.max_steps = 1;
    EXPECT_THROW(normalize(parse_term("up down up | t@0 ; s@1 ; t'@0 ; t@0 ; t'@0"), p), ResourceLimit);
}

TEST(Morphisms, ComposeTensorScale) {
    CategoryParams p = charge(-1);
    NormalMorphism m = normalize(parse_term("up down | t@0 ; dot'@0"), p);
    NormalMorphism id = normalize(DiagramTerm::identity(m.target()), p);
    EXPECT_EQ(mor_compose(id, m, p), m);

    NormalMorphism e1(ObjectWord{}, ObjectWord{});
    e1.add({Matching{}, {}}, SymPoly::e(1));
    EXPECT_EQ(mor_tensor(m, e1, p), mor_scale(m, SymPoly::e(1)));
    EXPECT_EQ(mor_add(m, mor_scale(m, -1)), NormalMorphism(m.source(), m.target()));

    NormalMorphism x = normalize(parse_term("up | dot@0"), p);
    EXPECT_EQ(mor_compose(x, x, p), basis_elem({U}, {U}, ident(1), {2}));
}

TEST(Morphisms, ComposeMatchesDiagramComposition) {
    std::mt19937_64 rng(21);
    FuzzCaps caps;
    caps.max_width = 3;
    CategoryParams p = charge(1);
    int done = 0;
    for (int i = 0; i < 400 && done < 40; ++i) {
        DiagramTerm a = random_term(rng, caps), b = random_term(rng, caps);
        if (validate(a) != b.source()) continue;
        ++done;
        EXPECT_EQ(mor_compose(normalize(b, p), normalize(a, p), p), normalize(compose(b, a), p)) << render(a) << " then " << render(b);
        EXPECT_EQ(mor_tensor(normalize(a, p), normalize(b, p), p), normalize(tensor(a, b), p));
    }
    EXPECT_GT(done, 5);
}

TEST(Json, RoundTrip) {
    CategoryParams p = charge(2);
    std::mt19937_64 rng(5);
    FuzzCaps caps;
    for (int i = 0; i < 30; ++i) {
        NormalMorphism m = normalize(random_term(rng, caps), p);
        EXPECT_EQ(normal_morphism_from_json(to_json(m)), m);
    }
    EXPECT_THROW(normal_morphism_from_json("{"), ParseError);
    EXPECT_THROW(normal_morphism_from_json(R"({"source": "up"})"), ParseError);
}

TEST(Spanning, SupportInsideTruncatedBasis) {
    std::mt19937_64 rng(33);
    FuzzCaps caps;
    for (int k : {-2, 0, 1}) {
        for (int i = 0; i < 40; ++i) {
            DiagramTerm t = random_term(rng, caps);
            NormalMorphism m = normalize(t, charge(k));
            auto basis = enumerate_basis(t.source(), validate(t), 8);
            for (const auto& [d, c] : m.terms()) {
                EXPECT_FALSE(c.is_zero());
                EXPECT_TRUE(std::binary_search(basis.begin(), basis.end(), d)) << render(t);
            }
        }
    }
}

TEST(Omega, TransportsNormalForms) {
    for (int k : {-1, 0, 2}) {
        CheckReport r = omega_transport(9, 60, FuzzCaps{}, k);
        EXPECT_TRUE(r.ok()) << r.str();
    }
}
