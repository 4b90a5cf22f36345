#include <gtest/gtest.h>

#include "heis/functor.hpp"
#include "heis/normalform.hpp"

using namespace heis;

constexpr Letter U = Letter::Up;
constexpr Letter D = Letter::Down;

namespace {

CyclotomicData cd(const char* f) { return CyclotomicData(Poly::parse(f)); }

Matrix m1(const Rational& v) {
    Matrix m(1, 1);
    m.set(0, 0, v);
    return m;
}

}  // namespace

TEST(Matrix, InverseAndRank) {
    Matrix a(2, 2);
    a.set(0, 0, 2);
    a.set(0, 1, 1);
    a.set(1, 0, 4);
    a.set(1, 1, 3);
    auto inv = a.inverse();
    ASSERT_TRUE(inv);
    EXPECT_EQ(a * *inv, Matrix::identity(2));
    Matrix b(2, 2);
    b.set(0, 0, 1);
    b.set(1, 0, 2);
    EXPECT_FALSE(b.inverse());
    EXPECT_EQ(b.rank(), 1);
    EXPECT_EQ(kron(Matrix::identity(2), a).rank(), 4);
}

TEST(Spaces, Dimensions) {
    EXPECT_EQ(build_space({U}, cd("u^2")).dim, 2);
    EXPECT_EQ(build_space({D}, cd("u^2")).dim, 0);
    EXPECT_EQ(build_space({U, U}, cd("u")).dim, 2);
    EXPECT_EQ(build_space({}, cd("u^3")).dim, 1);
    // down after two ups at level two: H_1 as a module over H_2
    EXPECT_EQ(build_space({D, U, U}, cd("u^2")).dim, 2 * 8 / 2);
}

TEST(Generators, DotIsMinusZ1) {
    EXPECT_EQ(gen_matrix(Slice::dot(0, U, 1), {U}, cd("u+2")).matrix, m1(-2));
    EXPECT_EQ(eval_term(parse_term("up | dot@0"), cd("u+7/3")).matrix, m1(Rational(-7, 3)));
}

TEST(Generators, CrossingOnRegularRepresentation) {
    Matrix s = gen_matrix(Slice::crossing(0, CrossKind::UpUp), {U, U}, cd("u")).matrix;
    Matrix want(2, 2);
    want.set(0, 1, 1);
    want.set(1, 0, 1);
    EXPECT_EQ(s, want);
}

TEST(Generators, UndottedBubbleValue) {
    // the clockwise 0-dot bubble is 1 at level one and 0 above
    EXPECT_EQ(eval_term(clockwise_bubble(0), cd("u")).matrix, m1(1));
    EXPECT_EQ(eval_term(clockwise_bubble(0), cd("u^2-3")).matrix, m1(0));
    EXPECT_EQ(eval_term(clockwise_bubble(1), cd("u^2-3")).matrix, m1(1));
}

TEST(Generators, BubblesMatchSpecialization) {
    for (const char* f : {"u-1", "u^2+u+1", "(u-2)*(u+1)*u"}) {
        CyclotomicData c = cd(f);
        DeltaSeries d = delta_series(c.f, Poly::parse("1"), 12);
        for (int r = 0; r <= 4; ++r) {
            SymPoly cw = bubble_to_sym({Orientation::Clockwise, r, c.k});
            SymPoly ccw = bubble_to_sym({Orientation::CounterClockwise, r, c.k});
            EXPECT_EQ(eval_term(clockwise_bubble(r), c).matrix, m1(specialize(cw, d))) << f << " r=" << r;
            EXPECT_EQ(eval_term(counterclockwise_bubble(r), c).matrix, m1(specialize(ccw, d))) << f << " r=" << r;
        }
    }
}

TEST(Eval, Identity) { EXPECT_EQ(eval_term(DiagramTerm::identity({U, U}), cd("u^2")).matrix, Matrix::identity(8)); }

TEST(Eval, HeckeCrossRelation) {
    for (const char* f : {"u", "u^2", "u^2-u+1"}) {
        CyclotomicData c = cd(f);
        Matrix lhs = eval_term(parse_term("up up | s@0 ; dot@0"), c).matrix - eval_term(parse_term("up up | dot@1 ; s@0"), c).matrix;
        EXPECT_EQ(lhs, eval_term(DiagramTerm::identity({U, U}), c).matrix) << f;
    }
}

TEST(Mackey, BaseCaseIsChangeOfBasis) {
    for (const char* f : {"u", "u^2+1", "u^3-2*u"}) {
        LinMap m = mackey_map(0, cd(f));
        ASSERT_EQ(m.matrix.rows(), m.matrix.cols());
        EXPECT_EQ(m.matrix.rank(), m.matrix.rows());
    }
}

TEST(Mackey, DimensionBookkeeping) {
    for (const char* f : {"u", "u^2", "u^3+1"}) {
        CyclotomicData c = cd(f);
        for (int n = 0; n <= 2; ++n) {
            long l = c.ell, dn = dim(n, c);
            LinMap m = mackey_map(n, c);
            LinMap inv = mackey_inverse(n, c);
            EXPECT_EQ(m.matrix.cols(), l * n * dn + l * dn);
            EXPECT_EQ(m.matrix.rows(), dim(n + 1, c));
            EXPECT_EQ(m.matrix * inv.matrix, Matrix::identity(m.matrix.rows()));
            EXPECT_EQ(inv.matrix * m.matrix, Matrix::identity(m.matrix.cols()));
        }
    }
}

TEST(Mackey, TPrimeIsFirstBlockOfInverse) {
    CyclotomicData c = cd("u^2");
    for (int n = 0; n <= 2; ++n) {
        ObjectWord base(static_cast<std::size_t>(n), U), src{D, U};
        src.insert(src.end(), base.begin(), base.end());
        Matrix inv = mackey_inverse(n, c).matrix;
        Matrix tp = gen_matrix(Slice::crossing(0, CrossKind::LeftWard), src, c).matrix;
        EXPECT_EQ(inv.block(0, 0, tp.rows(), tp.cols()), tp);
    }
}

TEST(Induction, RankEqualsDimension) {
    for (const char* f : {"u", "u^2", "u^2+u-1"}) {
        Functor F(cd(f));
        for (int m = 0; m <= 2; ++m) EXPECT_EQ(F.induction_rank(m), dim(m + 1, F.data())) << f;
    }
}

TEST(PhiPsi, RoundTripOnPbwBasis) {
    for (const char* f : {"u", "u+3", "u^2", "u^2-u+2"}) {
        CyclotomicData c = cd(f);
        auto F = functor_for(c);
        for (int n = 0; n <= 3; ++n)
            for (const PBWKey& k : pbw_basis(n, c)) {
                HeckeElem back = psi_n(F->eval(phi_n(k)), n, c);
                EXPECT_EQ(back, HeckeElem::term(n, k.a, k.w)) << f << " " << back.str();
            }
    }
}

TEST(PhiPsi, Multiplicative) {
    CyclotomicData c = cd("u^2");
    auto F = functor_for(c);
    auto basis = pbw_basis(2, c);
    for (const auto& a : basis)
        for (const auto& b : basis) {
            HeckeElem prod = cyc_reduce(HeckeElem::term(2, a.a, a.w) * HeckeElem::term(2, b.a, b.w), c);
            HeckeElem viaMatrices = psi_n(F->eval(phi_n(b)) * F->eval(phi_n(a)), 2, c);
            EXPECT_EQ(viaMatrices, prod) << viaMatrices.str() << " vs " << prod.str();
        }
}

TEST(EvalMorphism, AgreesWithEvalOnLifts) {
    CyclotomicData c = cd("u^2+1");
    CategoryParams p;
    p.k = c.k;
    for (const char* text : {"up down | t@0 ; t'@0", "down up | t'@0 ; t@0 ; dot'@0", "up | dot@0^3", ". | cup_l@0 ; cap_r@0"}) {
        DiagramTerm t = parse_term(text);
        EXPECT_EQ(eval_morphism(normalize(t, p), c).matrix, eval_term(t, c).matrix) << text;
    }
}
