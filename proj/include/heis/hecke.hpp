#pragma once

#include <map>
#include <string>
#include <vector>

#include "heis/coeffs.hpp"

namespace heis {

/// Monic f(u) = u^l + z_1 u^{l-1} + ... + z_l with l >= 1; the functor realises charge k = -l.
struct CyclotomicData {
    Poly f;
    int ell = 0;
    int k = 0;

    explicit CyclotomicData(Poly poly);
    static CyclotomicData parse(const std::string& text) { return CyclotomicData(Poly::parse(text)); }
    /// z_i, the coefficient of u^{l-i}.
    Rational z(int i) const { return f.coeff(ell - i); }
};

/// Permutation in one-line notation on 1..n.
using Perm = std::vector<int>;

struct PBWKey {
    std::vector<int> a;  // exponents of x_1..x_n
    Perm w;
    friend auto operator<=>(const PBWKey&, const PBWKey&) = default;
};

/// Element of the degenerate affine Hecke algebra H_n in PBW form x^a w.
class HeckeElem {
public:
    using Terms = std::map<PBWKey, Rational>;

    explicit HeckeElem(int n = 0) : n_(n) {}
    static HeckeElem one(int n);
    static HeckeElem x(int n, int i, int power = 1);
    static HeckeElem s(int n, int j);
    static HeckeElem term(int n, std::vector<int> a, Perm w, const Rational& c = 1);

    int n() const { return n_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(const PBWKey& key, const Rational& c);
    int total_degree() const;

    HeckeElem& operator+=(const HeckeElem& o);
    HeckeElem& operator-=(const HeckeElem& o);
    friend HeckeElem operator+(HeckeElem a, const HeckeElem& b) { return a += b; }
    friend HeckeElem operator-(HeckeElem a, const HeckeElem& b) { return a -= b; }
    friend HeckeElem operator*(HeckeElem a, const Rational& s);
    friend HeckeElem operator*(const HeckeElem& a, const HeckeElem& b);
    friend bool operator==(const HeckeElem& a, const HeckeElem& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

    /// `3*x1^1*x3^2*[2,1,3]`.
    std::string str() const;

private:
    int n_;
    Terms terms_;
};

Perm identity_perm(int n);
Perm perm_compose(const Perm& v, const Perm& w);  // (vw)(i) = v(w(i))
Perm perm_inverse(const Perm& w);
/// Reduced word j_1 ... j_r with w = s_{j_1} ... s_{j_r}.
std::vector<int> reduced_word(const Perm& w);

HeckeElem haff_mul(const HeckeElem& a, const HeckeElem& b);
HeckeElem left_mul_s(int j, const HeckeElem& b);
HeckeElem left_mul_x(int i, const HeckeElem& b);
/// Includes H_m into H_n (m <= n) on the first m strands.
HeckeElem embed(const HeckeElem& a, int n);

/// f(x_1) in H_n.
HeckeElem f_of_x1(int n, const CyclotomicData& c);

/// Normal form modulo the two-sided ideal generated by f(x_1): all exponents < l.
HeckeElem cyc_reduce(const HeckeElem& a, const CyclotomicData& c);

std::vector<PBWKey> pbw_basis(int n, const CyclotomicData& c);
long dim(int n, const CyclotomicData& c);

}  // namespace heis
