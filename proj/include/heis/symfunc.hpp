#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "heis/coeffs.hpp"

namespace heis {

/// Multiset of part indices, sorted ascending; the part r stands for e_r.
using EMono = std::vector<int>;

int mono_degree(const EMono& m);

/// Graded order, then lexicographic on the sorted parts.
struct GradedLess {
    bool operator()(const EMono& a, const EMono& b) const;
};

/// Element of Sym in the e-basis with exact rational coefficients.
class SymPoly {
public:
    using Terms = std::map<EMono, Rational, GradedLess>;

    SymPoly() = default;
    SymPoly(const Rational& c);  // NOLINT: scalars embed implicitly
    SymPoly(int c) : SymPoly(Rational(c)) {}

    static SymPoly e(int r);

    bool is_zero() const { return terms_.empty(); }
    bool is_scalar() const;
    Rational scalar() const;  // constant term
    int degree() const;       // -1 for zero
    const Terms& terms() const { return terms_; }
    void add_term(const EMono& m, const Rational& c);

    SymPoly& operator+=(const SymPoly& o);
    SymPoly& operator-=(const SymPoly& o);
    SymPoly& operator*=(const Rational& s);
    friend SymPoly operator+(SymPoly a, const SymPoly& b) { return a += b; }
    friend SymPoly operator-(SymPoly a, const SymPoly& b) { return a -= b; }
    friend SymPoly operator-(SymPoly a) { return a *= Rational(-1); }
    friend SymPoly operator*(const SymPoly& a, const SymPoly& b);
    friend SymPoly operator*(SymPoly a, const Rational& s) { return a *= s; }
    friend SymPoly operator*(const Rational& s, SymPoly a) { return a *= s; }
    friend bool operator==(const SymPoly& a, const SymPoly& b) { return a.terms_ == b.terms_; }

    /// `-2*e[1]^2*e[3] + e[2]`; the zero element prints as `0`.
    std::string str() const;
    static SymPoly parse(std::string_view text);

private:
    Terms terms_;
};

SymPoly sym_add(const SymPoly& a, const SymPoly& b);
SymPoly sym_mul(const SymPoly& a, const SymPoly& b);
SymPoly sym_scale(const SymPoly& a, const Rational& s);

/// Degree bound enforced by multiplication (ResourceLimit when exceeded).
int degree_cap();
void set_degree_cap(int cap);

SymPoly h_in_e(int r);
SymPoly e_sym(int r);

/// Checks sum_{r+s=t} (-1)^s e_r h_s = [t = 0] for t <= order.
bool series_identity_check(int order);

/// Clockwise: cup_r then cap_l (the bubble whose r-k-1 dotted form is (-1)^r h_r).
/// CounterClockwise: cup_l then cap_r (r+k-1 dots give -e_r).
enum class Orientation { Clockwise, CounterClockwise };

struct BubbleSymbol {
    Orientation orientation;
    int dots;
    int k;
};

SymPoly bubble_to_sym(const BubbleSymbol& b);

/// Ring map Sym -> Q with h_r -> (-1)^r d_r, equivalently e_r -> (d^{-1})_r.
Rational specialize(const SymPoly& p, const DeltaSeries& d);

/// e_j -> (-1)^j h_j.
SymPoly sym_omega(const SymPoly& p);

/// Polynomial in one dot variable x with Sym coefficients, index = power of x.
using XSym = std::vector<SymPoly>;

/// Moves a coefficient sitting left of a strand (relative to its direction of travel) to its right.
XSym slide_left_to_right(const SymPoly& p);
/// Moves a coefficient sitting right of a strand to its left.
XSym slide_right_to_left(const SymPoly& p);

}  // namespace heis
