#include "heis/symfunc.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <mutex>
#include <numeric>

#include "heis/errors.hpp"

namespace heis {

namespace {
std::atomic<int> g_degree_cap{32};
}

int degree_cap() { return g_degree_cap.load(); }
void set_degree_cap(int cap) { g_degree_cap.store(cap); }

int mono_degree(const EMono& m) { return std::accumulate(m.begin(), m.end(), 0); }

bool GradedLess::operator()(const EMono& a, const EMono& b) const {
    int da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da < db;
    return a < b;
}

SymPoly::SymPoly(const Rational& c) {
    if (c != 0) terms_.emplace(EMono{}, c);
}

SymPoly SymPoly::e(int r) {
    if (r < 0) return {};
    if (r == 0) return SymPoly(1);
    SymPoly p;
    p.terms_.emplace(EMono{r}, Rational(1));
    return p;
}

bool SymPoly::is_scalar() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

Rational SymPoly::scalar() const {
    auto it = terms_.find(EMono{});
    return it == terms_.end() ? Rational(0) : it->second;
}

int SymPoly::degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, mono_degree(m));
    return d;
}

void SymPoly::add_term(const EMono& m, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

SymPoly& SymPoly::operator+=(const SymPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

SymPoly& SymPoly::operator-=(const SymPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

SymPoly& SymPoly::operator*=(const Rational& s) {
    if (s == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
}

SymPoly operator*(const SymPoly& a, const SymPoly& b) {
    SymPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    if (a.degree() + b.degree() > degree_cap())
        throw ResourceLimit("Sym degree cap " + std::to_string(degree_cap()) + " exceeded");
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            EMono m;
            m.reserve(ma.size() + mb.size());
            std::merge(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(m));
            r.add_term(m, ca * cb);
        }
    return r;
}

std::string SymPoly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c0] : terms_) {
        Rational c = c0;
        bool neg = c < 0;
        if (neg) c = -c;
        out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
        std::string mono;
        for (std::size_t i = 0; i < m.size();) {
            std::size_t j = i;
            while (j < m.size() && m[j] == m[i]) ++j;
            if (!mono.empty()) mono += "*";
            mono += "e[" + std::to_string(m[i]) + "]";
            if (j - i > 1) mono += "^" + std::to_string(j - i);
            i = j;
        }
        if (mono.empty())
            out += c.get_str();
        else if (c == 1)
            out += mono;
        else
            out += c.get_str() + "*" + mono;
    }
    return out;
}

SymPoly SymPoly::parse(std::string_view s) {
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    };
    auto integer = [&]() -> long {
        skip();
        std::size_t st = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (st == pos) throw ParseError("sym: expected integer", pos);
        return std::stol(std::string(s.substr(st, pos - st)));
    };
    SymPoly out;
    skip();
    if (s.substr(pos) == "0") return out;
    bool first = true;
    while (true) {
        skip();
        if (pos >= s.size()) break;
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (!first) {
            throw ParseError("sym: expected '+' or '-'", pos);
        }
        first = false;
        Rational c = 1;
        EMono m;
        bool need = true;
        while (need) {
            skip();
            if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                mpz_class num(std::to_string(integer()));
                mpz_class den = 1;
                skip();
                if (pos < s.size() && s[pos] == '/') {
                    ++pos;
                    den = mpz_class(std::to_string(integer()));
                    if (den == 0) throw ParseError("sym: zero denominator", pos);
                }
                c *= Rational(num, den);
            } else if (pos + 1 < s.size() && s[pos] == 'e' && s[pos + 1] == '[') {
                pos += 2;
                long r = integer();
                skip();
                if (pos >= s.size() || s[pos] != ']') throw ParseError("sym: expected ']'", pos);
                ++pos;
                long mult = 1;
                skip();
                if (pos < s.size() && s[pos] == '^') {
                    ++pos;
                    mult = integer();
                }
                if (r <= 0) throw ParseError("sym: part must be positive", pos);
                for (long i = 0; i < mult; ++i) m.push_back(static_cast<int>(r));
            } else {
                throw ParseError("sym: expected coefficient or e[r]", pos);
            }
            skip();
            need = pos < s.size() && s[pos] == '*';
            if (need) ++pos;
        }
        std::sort(m.begin(), m.end());
        c.canonicalize();
        out.add_term(m, sign * c);
    }
    return out;
}

SymPoly sym_add(const SymPoly& a, const SymPoly& b) { return a + b; }
SymPoly sym_mul(const SymPoly& a, const SymPoly& b) { return a * b; }
SymPoly sym_scale(const SymPoly& a, const Rational& s) { return a * s; }

SymPoly e_sym(int r) { return SymPoly::e(r); }

SymPoly h_in_e(int r) {
    static std::mutex mu;
    static std::vector<SymPoly> memo{SymPoly(1)};
    if (r < 0) return {};
    if (r > degree_cap()) throw ResourceLimit("h_in_e: degree above cap");
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(memo.size()) <= r) {
        int n = static_cast<int>(memo.size());
        SymPoly h;
        for (int i = 1; i <= n; ++i) {
            SymPoly t = SymPoly::e(i) * memo[static_cast<std::size_t>(n - i)];
            if (i % 2 == 1)
                h += t;
            else
                h -= t;
        }
        memo.push_back(std::move(h));
    }
    return memo[static_cast<std::size_t>(r)];
}

bool series_identity_check(int order) {
    for (int t = 0; t <= order; ++t) {
        SymPoly sum;
        for (int s = 0; s <= t; ++s) {
            SymPoly term = SymPoly::e(t - s) * h_in_e(s);
            if (s % 2 == 0)
                sum += term;
            else
                sum -= term;
        }
        if (!(sum == SymPoly(t == 0 ? 1 : 0))) return false;
    }
    return true;
}

SymPoly bubble_to_sym(const BubbleSymbol& b) {
    if (b.orientation == Orientation::Clockwise) {
        int r = b.dots + b.k + 1;
        if (r < 0) return {};
        SymPoly h = h_in_e(r);
        return r % 2 == 0 ? h : -h;
    }
    int r = b.dots - b.k + 1;
    if (r < 0) return {};
    return -SymPoly::e(r);
}

Rational specialize(const SymPoly& p, const DeltaSeries& d) {
    int need = 0;
    for (const auto& [m, c] : p.terms())
        for (int part : m) need = std::max(need, part);
    if (d.order() < need) throw std::invalid_argument("specialize: series order too small");
    if (p.is_zero()) return 0;
    DeltaSeries inv = series_inv(d);
    Rational out = 0;
    for (const auto& [m, c] : p.terms()) {
        Rational v = c;
        for (int part : m) v *= inv[part];
        out += v;
    }
    return out;
}

SymPoly sym_omega(const SymPoly& p) {
    SymPoly out;
    for (const auto& [m, c] : p.terms()) {
        SymPoly v(c);
        for (int part : m) {
            SymPoly h = h_in_e(part);
            v = v * (part % 2 == 0 ? h : -h);
        }
        out += v;
    }
    return out;
}

namespace {

void xsym_add(XSym& acc, std::size_t power, const SymPoly& p) {
    if (p.is_zero()) return;
    if (acc.size() <= power) acc.resize(power + 1);
    acc[power] += p;
}

XSym xsym_mul(const XSym& a, const XSym& b) {
    XSym r;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j].is_zero()) continue;
            xsym_add(r, i + j, a[i] * b[j]);
        }
    }
    return r;
}

void xsym_trim(XSym& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

// Image of one generator e_j as a polynomial in x.
XSym slide_generator(int j, bool left_to_right) {
    XSym r;
    if (left_to_right) {
        xsym_add(r, 0, SymPoly::e(j));
        for (int s = 0; s <= j - 2; ++s) xsym_add(r, static_cast<std::size_t>(s), SymPoly::e(j - 2 - s) * Rational(-(s + 1)));
        return r;
    }
    // G(w) = sum_n w^{2n} (1 - x w)^{-2n}; coefficient of w^m as a polynomial in x.
    static std::mutex mu;
    static std::vector<Poly> g{Poly::constant(1)};
    std::vector<Poly> gm;
    {
        std::lock_guard<std::mutex> lock(mu);
        while (static_cast<int>(g.size()) <= j) {
            int m = static_cast<int>(g.size());
            Poly acc;
            for (int n = 1; 2 * n <= m; ++n) {
                int i = m - 2 * n;
                // coefficient of w^i in (1 - x w)^{-2n} is binom(2n+i-1, i) x^i
                mpz_class b;
                mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(2 * n + i - 1), static_cast<unsigned long>(i));
                acc = acc + Poly::monomial(i, Rational(b));
            }
            g.push_back(acc);
        }
        gm.assign(g.begin(), g.begin() + j + 1);
    }
    for (int m = 0; m <= j; ++m) {
        const Poly& p = gm[static_cast<std::size_t>(m)];
        for (int i = 0; i <= p.degree(); ++i)
            if (p.coeff(i) != 0) xsym_add(r, static_cast<std::size_t>(i), SymPoly::e(j - m) * p.coeff(i));
    }
    return r;
}

XSym slide(const SymPoly& p, bool left_to_right) {
    XSym out;
    for (const auto& [m, c] : p.terms()) {
        XSym v{SymPoly(c)};
        for (int part : m) v = xsym_mul(v, slide_generator(part, left_to_right));
        for (std::size_t i = 0; i < v.size(); ++i) xsym_add(out, i, v[i]);
    }
    xsym_trim(out);
    return out;
}

}  // namespace

XSym slide_left_to_right(const SymPoly& p) { return slide(p, true); }
XSym slide_right_to_left(const SymPoly& p) { return slide(p, false); }

}  // namespace heis
