#include "heis/coeffs.hpp"

#include <cctype>
#include <stdexcept>

#include "heis/errors.hpp"

namespace heis {

std::string to_string(const Rational& q) { return q.get_str(); }

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
    for (auto& x : c_) x.canonicalize();
    trim();
}

Poly Poly::constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }

Poly Poly::monomial(int degree, const Rational& c) {
    std::vector<Rational> v(static_cast<std::size_t>(degree) + 1);
    v.back() = c;
    return Poly(std::move(v));
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Poly::coeff(int i) const {
    if (i < 0 || i > degree()) return 0;
    return c_[static_cast<std::size_t>(i)];
}

Rational Poly::eval(const Rational& x) const {
    Rational r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
}

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
    return Poly(std::move(v));
}

Poly operator-(const Poly& a) {
    std::vector<Rational> v(a.c_);
    for (auto& x : v) x = -x;
    return Poly(std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(v));
}

std::string Poly::str() const {
    if (c_.empty()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        Rational a = c_[static_cast<std::size_t>(i)];
        if (a == 0) continue;
        bool neg = a < 0;
        if (neg) a = -a;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        if (i == 0) {
            out += a.get_str();
            continue;
        }
        if (a != 1) out += a.get_str() + "*";
        out += "u";
        if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
}

namespace {

class PolyParser {
public:
    explicit PolyParser(std::string_view s) : s_(s) {}

    Poly run() {
        Poly p = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) { throw ParseError("polynomial: " + msg, pos_); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char ch) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == ch) {
            ++pos_;
            return true;
        }
        return false;
    }

    Poly expr() {
        Poly p;
        bool neg = eat('-');
        if (!neg) eat('+');
        p = neg ? -term() : term();
        for (;;) {
            if (eat('+'))
                p = p + term();
            else if (eat('-'))
                p = p - term();
            else
                return p;
        }
    }

    Poly term() {
        Poly p = factor();
        for (;;) {
            skip();
            if (eat('*')) {
                p = p * factor();
            } else if (pos_ < s_.size() && (s_[pos_] == '(' || s_[pos_] == 'u')) {
                p = p * factor();
            } else {
                return p;
            }
        }
    }

    Poly factor() {
        Poly base = atom();
        if (eat('^')) {
            long e = integer();
            if (e < 0 || e > 4096) fail("bad exponent");
            Poly r = Poly::constant(1);
            for (long i = 0; i < e; ++i) r = r * base;
            return r;
        }
        return base;
    }

    long integer() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return std::stol(std::string(s_.substr(start, pos_ - start)));
    }

    Poly atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char ch = s_[pos_];
        if (ch == 'u') {
            ++pos_;
            return Poly::monomial(1);
        }
        if (ch == '(') {
            ++pos_;
            Poly p = expr();
            if (!eat(')')) fail("expected ')'");
            return p;
        }
        if (ch == '-') {
            ++pos_;
            return -factor();
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            mpz_class num(std::string(s_.substr(start, pos_ - start)));
            mpz_class den = 1;
            skip();
            if (pos_ < s_.size() && s_[pos_] == '/') {
                ++pos_;
                skip();
                std::size_t ds = pos_;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
                if (ds == pos_) fail("expected denominator");
                den = mpz_class(std::string(s_.substr(ds, pos_ - ds)));
                if (den == 0) fail("zero denominator");
            }
            return Poly::constant(Rational(num, den));
        }
        fail(std::string("unexpected '") + ch + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

Poly Poly::parse(std::string_view text) { return PolyParser(text).run(); }

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
    if (!b.is_monic()) throw std::invalid_argument("poly_divmod: divisor must be monic");
    std::vector<Rational> r = a.coeffs();
    int db = b.degree();
    int dq = a.degree() - db;
    if (dq < 0) return {Poly(), a};
    std::vector<Rational> q(static_cast<std::size_t>(dq) + 1);
    for (int i = a.degree(); i >= db; --i) {
        Rational lead = r[static_cast<std::size_t>(i)];
        if (lead == 0) continue;
        q[static_cast<std::size_t>(i - db)] = lead;
        for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= lead * b.coeff(j);
    }
    r.resize(static_cast<std::size_t>(db));
    return {Poly(std::move(q)), Poly(std::move(r))};
}

namespace {

// 1 + z_1 w + z_2 w^2 + ... for monic p of degree d: p(u) = u^d * rev(1/u).
DeltaSeries reversed(const Poly& p, int order) {
    DeltaSeries s;
    s.c.assign(static_cast<std::size_t>(order) + 1, Rational(0));
    int d = p.degree();
    for (int i = 0; i <= std::min(d, order); ++i) s.c[static_cast<std::size_t>(i)] = p.coeff(d - i);
    return s;
}

}  // namespace

DeltaSeries delta_series(const Poly& f, const Poly& fprime, int order) {
    if (!f.is_monic() || !fprime.is_monic()) throw std::invalid_argument("delta_series: f and f' must be monic");
    if (order < 0) throw std::invalid_argument("delta_series: negative order");
    return series_mul(reversed(fprime, order), series_inv(reversed(f, order)));
}

DeltaSeries deltap_series(const Poly& f, const Poly& fprime, int order) {
    return series_scale(delta_series(fprime, f, order), Rational(-1));
}

DeltaSeries series_mul(const DeltaSeries& a, const DeltaSeries& b) {
    int n = std::min(a.order(), b.order());
    DeltaSeries r;
    r.c.assign(static_cast<std::size_t>(n) + 1, Rational(0));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; i + j <= n; ++j) r.c[static_cast<std::size_t>(i + j)] += a[i] * b[j];
    return r;
}

DeltaSeries series_inv(const DeltaSeries& a) {
    if (a.c.empty() || a[0] == 0) throw std::invalid_argument("series_inv: leading coefficient not invertible");
    int n = a.order();
    DeltaSeries r;
    r.c.assign(static_cast<std::size_t>(n) + 1, Rational(0));
    Rational inv0 = 1 / a[0];
    r.c[0] = inv0;
    for (int t = 1; t <= n; ++t) {
        Rational s = 0;
        for (int i = 1; i <= t; ++i) s += a[i] * r[t - i];
        r.c[static_cast<std::size_t>(t)] = -s * inv0;
    }
    return r;
}

DeltaSeries series_scale(const DeltaSeries& a, const Rational& s) {
    DeltaSeries r = a;
    for (auto& x : r.c) x *= s;
    return r;
}

}  // namespace heis
