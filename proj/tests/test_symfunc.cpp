#include <gtest/gtest.h>

#include <functional>

#include "heis/errors.hpp"
#include "heis/symfunc.hpp"

using namespace heis;

namespace {

const std::vector<Rational> kVars{1, 2, -3, Rational(1, 2)};

// Brute-force elementary and complete symmetric polynomials in kVars.
Rational brute(int r, bool complete) {
    if (r < 0) return 0;
    Rational total = 0;
    std::function<void(std::size_t, int, Rational)> go = [&](std::size_t i, int left, Rational acc) {
        if (left == 0) {
            total += acc;
            return;
        }
        if (i == kVars.size()) return;
        go(i + 1, left, acc);
        if (complete) {
            Rational p = acc;
            for (int m = 1; m <= left; ++m) {
                p *= kVars[i];
                go(i + 1, left - m, p);
            }
        } else {
            go(i + 1, left - 1, acc * kVars[i]);
        }
    };
    go(0, r, 1);
    return total;
}

Rational at_vars(const SymPoly& p) {
    Rational out = 0;
    for (const auto& [m, c] : p.terms()) {
        Rational v = c;
        for (int part : m) v *= brute(part, false);
        out += v;
    }
    return out;
}

}  // namespace

TEST(SymPoly, Arithmetic) {
    SymPoly e1 = SymPoly::e(1), e2 = SymPoly::e(2);
    SymPoly sq = e1 * e1;
    ASSERT_EQ(sq.terms().size(), 1u);
    EXPECT_EQ(sq.terms().begin()->first, (EMono{1, 1}));
    EXPECT_EQ(sq.terms().begin()->second, 1);
    SymPoly p = e1 * Rational(3) + e2;
    EXPECT_TRUE((p + p * Rational(-1)).is_zero());
    EXPECT_EQ((e1 + e2) * e1, sym_add(sq, e1 * e2));
    EXPECT_EQ(sym_scale(e2, 2), sym_mul(e2, SymPoly(2)));
}

TEST(SymPoly, ParsePrint) {
    SymPoly p = SymPoly::parse("-2*e[1]^2*e[3] + e[2]");
    EXPECT_EQ(SymPoly::parse(p.str()), p);
    EXPECT_EQ(p.degree(), 5);
    EXPECT_EQ(SymPoly().str(), "0");
}

TEST(SymPoly, GradedOrder) {
    GradedLess lt;
    EXPECT_TRUE(lt(EMono{3}, EMono{1, 3}));
    EXPECT_TRUE(lt(EMono{1, 1}, EMono{2}));
    EXPECT_EQ(mono_degree(EMono{1, 2, 2}), 5);
}

TEST(HInE, SmallCases) {
    EXPECT_EQ(h_in_e(0), SymPoly(1));
    EXPECT_EQ(h_in_e(1), SymPoly::e(1));
    EXPECT_EQ(h_in_e(2), SymPoly::e(1) * SymPoly::e(1) - SymPoly::e(2));
    EXPECT_TRUE(h_in_e(-3).is_zero());
}

TEST(HInE, AgreesWithBruteForceInFourVariables) {
    for (int r = 0; r <= 7; ++r) EXPECT_EQ(at_vars(h_in_e(r)), brute(r, true)) << "r=" << r;
}

TEST(HInE, GeneratingFunctionIdentity) {
    EXPECT_TRUE(series_identity_check(0));
    EXPECT_TRUE(series_identity_check(6));
}

TEST(Bubbles, BelowChargeValues) {
    using O = Orientation;
    for (int k = -3; k <= 3; ++k) {
        for (int r = -4; r < -k; ++r)
            EXPECT_EQ(bubble_to_sym({O::Clockwise, r, k}), SymPoly(r == -k - 1 ? 1 : 0)) << k << " " << r;
        for (int r = -4; r < k; ++r)
            EXPECT_EQ(bubble_to_sym({O::CounterClockwise, r, k}), SymPoly(r == k - 1 ? -1 : 0)) << k << " " << r;
    }
}

TEST(Bubbles, FirstNontrivial) {
    for (int k = 0; k <= 3; ++k) EXPECT_EQ(bubble_to_sym({Orientation::CounterClockwise, k, k}), -SymPoly::e(1));
    // r - k - 1 dots on the clockwise bubble give (-1)^r h_r
    for (int k = -2; k <= 2; ++k)
        for (int r = 0; r <= 3; ++r)
            EXPECT_EQ(bubble_to_sym({Orientation::Clockwise, r - k - 1, k}), h_in_e(r) * Rational(r % 2 ? -1 : 1));
}

TEST(Specialize, Basics) {
    DeltaSeries d = delta_series(Poly::parse("u+5"), Poly::parse("1"), 6);
    EXPECT_EQ(specialize(SymPoly(1), d), 1);
    EXPECT_EQ(specialize(SymPoly::e(1), d), 5);
    SymPoly p = SymPoly::parse("e[1] + 2*e[2]");
    EXPECT_EQ(specialize(p * p, d), specialize(p, d) * specialize(p, d));
}

TEST(Specialize, CompleteGoesToSignedDelta) {
    DeltaSeries d = delta_series(Poly::parse("u^2-u+3"), Poly::parse("1"), 6);
    for (int r = 0; r <= 5; ++r) EXPECT_EQ(specialize(h_in_e(r), d), d[r] * Rational(r % 2 ? -1 : 1));
}

TEST(Omega, Involution) {
    SymPoly p = SymPoly::parse("e[1]^2*e[3] - 4*e[2] + 1");
    EXPECT_EQ(sym_omega(sym_omega(p)), p);
    EXPECT_EQ(sym_omega(SymPoly::e(2)), h_in_e(2));
    EXPECT_EQ(sym_omega(SymPoly::e(1)), -SymPoly::e(1));
}

TEST(Slide, LeftThenRightIsIdentity) {
    for (const char* text : {"e[1]", "e[2]", "e[1]^2 - e[3]", "3"}) {
        SymPoly p = SymPoly::parse(text);
        XSym out = slide_left_to_right(p);
        std::vector<SymPoly> back;
        for (std::size_t i = 0; i < out.size(); ++i) {
            XSym again = slide_right_to_left(out[i]);
            for (std::size_t j = 0; j < again.size(); ++j) {
                if (back.size() <= i + j) back.resize(i + j + 1);
                back[i + j] += again[j];
            }
        }
        ASSERT_FALSE(back.empty());
        EXPECT_EQ(back[0], p) << text;
        for (std::size_t i = 1; i < back.size(); ++i) EXPECT_TRUE(back[i].is_zero()) << text << " x^" << i;
    }
}

TEST(DegreeCap, Enforced) {
    int old = degree_cap();
    set_degree_cap(4);
    EXPECT_THROW(SymPoly::e(3) * SymPoly::e(2), ResourceLimit);
    EXPECT_THROW(h_in_e(5), ResourceLimit);
    set_degree_cap(old);
}
