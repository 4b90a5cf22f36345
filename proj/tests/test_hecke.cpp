#include <gtest/gtest.h>

#include <random>

#include "heis/hecke.hpp"

using namespace heis;

namespace {

HeckeElem random_elem(std::mt19937& rng, int n) {
    std::uniform_int_distribution<int> c(-3, 3), e(0, 2);
    HeckeElem out(n);
    for (int t = 0; t < 3; ++t) {
        std::vector<int> a(static_cast<std::size_t>(n));
        for (auto& x : a) x = e(rng);
        Perm w = identity_perm(n);
        std::shuffle(w.begin(), w.end(), rng);
        out += HeckeElem::term(n, a, w, c(rng));
    }
    return out;
}

long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

}  // namespace

TEST(Hecke, GroupRelations) {
    HeckeElem s1 = HeckeElem::s(3, 1), s2 = HeckeElem::s(3, 2);
    EXPECT_EQ(s1 * s1, HeckeElem::one(3));
    EXPECT_EQ(s1 * s2 * s1, s2 * s1 * s2);
}

TEST(Hecke, CrossRelation) {
    HeckeElem x1 = HeckeElem::x(2, 1), x2 = HeckeElem::x(2, 2), s1 = HeckeElem::s(2, 1);
    EXPECT_EQ(x2 * s1, s1 * x1 + HeckeElem::one(2));
    EXPECT_EQ(x1 * x2, x2 * x1);
    EXPECT_EQ(s1 * x2, x1 * s1 + HeckeElem::one(2));
}

TEST(Hecke, Associative) {
    std::mt19937 rng(5);
    for (int i = 0; i < 10; ++i) {
        HeckeElem a = random_elem(rng, 3), b = random_elem(rng, 3), c = random_elem(rng, 3);
        EXPECT_EQ((a * b) * c, a * (b * c));
    }
}

TEST(Hecke, LeftMultiplicationHelpers) {
    std::mt19937 rng(9);
    HeckeElem b = random_elem(rng, 3);
    EXPECT_EQ(left_mul_s(2, b), HeckeElem::s(3, 2) * b);
    EXPECT_EQ(left_mul_x(3, b), HeckeElem::x(3, 3) * b);
    EXPECT_EQ(embed(HeckeElem::s(2, 1), 3), HeckeElem::s(3, 1));
}

TEST(Perm, ReducedWords) {
    Perm w{3, 1, 4, 2};
    HeckeElem prod = HeckeElem::one(4);
    for (int j : reduced_word(w)) prod = prod * HeckeElem::s(4, j);
    EXPECT_EQ(prod, HeckeElem::term(4, {0, 0, 0, 0}, w));
    EXPECT_EQ(perm_compose(w, perm_inverse(w)), identity_perm(4));
}

TEST(Cyclotomic, LevelOneKillsDots) {
    CyclotomicData c(Poly::parse("u"));
    EXPECT_TRUE(cyc_reduce(HeckeElem::x(3, 1), c).is_zero());
    // x_2 = s_1 x_1 s_1 + s_1
    EXPECT_EQ(cyc_reduce(HeckeElem::x(3, 2), c), HeckeElem::s(3, 1));
    EXPECT_EQ(cyc_reduce(HeckeElem::x(3, 1) * HeckeElem::s(3, 1), c), HeckeElem(3));
}

TEST(Cyclotomic, LevelTwoOneStrand) {
    CyclotomicData c(Poly::parse("u^2"));
    EXPECT_TRUE(cyc_reduce(HeckeElem::x(1, 1, 2), c).is_zero());
    auto basis = pbw_basis(1, c);
    ASSERT_EQ(basis.size(), 2u);
    EXPECT_EQ(basis[0].a, std::vector<int>{0});
    EXPECT_EQ(basis[1].a, std::vector<int>{1});
}

TEST(Cyclotomic, ReduceIsIdempotentAndKillsIdeal) {
    CyclotomicData c(Poly::parse("u^2-u+2"));
    std::mt19937 rng(2);
    for (int i = 0; i < 8; ++i) {
        HeckeElem a = random_elem(rng, 3), b = random_elem(rng, 3);
        HeckeElem r = cyc_reduce(a, c);
        EXPECT_EQ(cyc_reduce(r, c), r);
        EXPECT_TRUE(cyc_reduce(b * f_of_x1(3, c) * a, c).is_zero());
    }
}

TEST(Cyclotomic, Dimensions) {
    for (const char* f : {"u", "u^2+1", "u^3-u"}) {
        CyclotomicData c(Poly::parse(f));
        long ln = 1;
        for (int n = 0; n <= 4; ++n) {
            EXPECT_EQ(dim(n, c), ln * factorial(n)) << f << " n=" << n;
            EXPECT_EQ(static_cast<long>(pbw_basis(n, c).size()), dim(n, c));
            ln *= c.ell;
        }
    }
    EXPECT_EQ(dim(0, CyclotomicData(Poly::parse("u^2"))), 1);
    EXPECT_EQ(dim(2, CyclotomicData(Poly::parse("u^2"))), 8);
    EXPECT_EQ(dim(3, CyclotomicData(Poly::parse("u"))), 6);
}
