#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace heis {

using Rational = mpq_class;

std::string to_string(const Rational& q);

/// Dense univariate polynomial in `u` with rational coefficients, lowest degree first.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rational> coeffs);
    static Poly constant(const Rational& c);
    static Poly monomial(int degree, const Rational& c = 1);

    /// Parses `u^2 + 3*u - 1/2`, `(u-1)*(u-2)` and similar.
    static Poly parse(std::string_view text);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    Rational coeff(int i) const;
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational eval(const Rational& x) const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a);
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    std::string str() const;

private:
    void trim();
    std::vector<Rational> c_;
};

/// Quotient and remainder of `a` by the monic `b`; throws std::invalid_argument otherwise.
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b);

/// Truncated power series c_0 + c_1 w + ... + c_order w^order.
struct DeltaSeries {
    std::vector<Rational> c;

    int order() const { return static_cast<int>(c.size()) - 1; }
    const Rational& operator[](int i) const { return c.at(static_cast<std::size_t>(i)); }
    friend bool operator==(const DeltaSeries&, const DeltaSeries&) = default;
};

/// Coefficients of u^{-k} f'(u)/f(u) in powers of u^{-1}, with k = deg f' - deg f.
DeltaSeries delta_series(const Poly& f, const Poly& fprime, int order);

/// Coefficients of -u^k f(u)/f'(u), so that delta(u) delta'(u) = -1.
DeltaSeries deltap_series(const Poly& f, const Poly& fprime, int order);
DeltaSeries series_mul(const DeltaSeries& a, const DeltaSeries& b);
DeltaSeries series_inv(const DeltaSeries& a);
DeltaSeries series_scale(const DeltaSeries& a, const Rational& s);

}  // namespace heis
