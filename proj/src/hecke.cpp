#include "heis/hecke.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "heis/errors.hpp"

namespace heis {

CyclotomicData::CyclotomicData(Poly poly) : f(std::move(poly)) {
    if (!f.is_monic() || f.degree() < 1) throw std::invalid_argument("cyclotomic datum must be monic of degree >= 1");
    ell = f.degree();
    k = -ell;
}

Perm identity_perm(int n) {
    Perm p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 1);
    return p;
}

Perm perm_compose(const Perm& v, const Perm& w) {
    Perm r(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) r[i] = v[static_cast<std::size_t>(w[i] - 1)];
    return r;
}

Perm perm_inverse(const Perm& w) {
    Perm r(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) r[static_cast<std::size_t>(w[i] - 1)] = static_cast<int>(i) + 1;
    return r;
}

std::vector<int> reduced_word(const Perm& w0) {
    Perm w = w0;
    std::vector<int> word;
    for (;;) {
        Perm pos = perm_inverse(w);
        int j = 0;
        for (std::size_t v = 1; v < pos.size(); ++v)
            if (pos[v] < pos[v - 1]) {
                j = static_cast<int>(v);
                break;
            }
        if (j == 0) return word;
        word.push_back(j);
        std::swap(w[static_cast<std::size_t>(pos[static_cast<std::size_t>(j - 1)] - 1)],
                  w[static_cast<std::size_t>(pos[static_cast<std::size_t>(j)] - 1)]);
    }
}

HeckeElem HeckeElem::one(int n) { return term(n, std::vector<int>(static_cast<std::size_t>(n), 0), identity_perm(n)); }

HeckeElem HeckeElem::x(int n, int i, int power) {
    std::vector<int> a(static_cast<std::size_t>(n), 0);
    a.at(static_cast<std::size_t>(i - 1)) = power;
    return term(n, std::move(a), identity_perm(n));
}

HeckeElem HeckeElem::s(int n, int j) {
    if (j < 1 || j >= n) throw std::invalid_argument("s_j out of range");
    Perm w = identity_perm(n);
    std::swap(w[static_cast<std::size_t>(j - 1)], w[static_cast<std::size_t>(j)]);
    return term(n, std::vector<int>(static_cast<std::size_t>(n), 0), std::move(w));
}

HeckeElem HeckeElem::term(int n, std::vector<int> a, Perm w, const Rational& c) {
    HeckeElem h(n);
    h.add_term(PBWKey{std::move(a), std::move(w)}, c);
    return h;
}

void HeckeElem::add_term(const PBWKey& key, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(key, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

int HeckeElem::total_degree() const {
    int d = -1;
    for (const auto& [k, c] : terms_) d = std::max(d, std::accumulate(k.a.begin(), k.a.end(), 0));
    return d;
}

HeckeElem& HeckeElem::operator+=(const HeckeElem& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

HeckeElem& HeckeElem::operator-=(const HeckeElem& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
}

HeckeElem operator*(HeckeElem a, const Rational& s) {
    if (s == 0) return HeckeElem(a.n_);
    for (auto& [k, c] : a.terms_) c *= s;
    return a;
}

HeckeElem operator*(const HeckeElem& a, const HeckeElem& b) { return haff_mul(a, b); }

std::string HeckeElem::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [k, c0] : terms_) {
        Rational c = c0;
        bool neg = c < 0;
        if (neg) c = -c;
        out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
        out += c.get_str();
        for (std::size_t i = 0; i < k.a.size(); ++i)
            if (k.a[i] > 0) out += "*x" + std::to_string(i + 1) + "^" + std::to_string(k.a[i]);
        out += "*[";
        for (std::size_t i = 0; i < k.w.size(); ++i) out += (i ? "," : "") + std::to_string(k.w[i]);
        out += "]";
    }
    return out;
}

HeckeElem left_mul_x(int i, const HeckeElem& b) {
    HeckeElem r(b.n());
    for (const auto& [k, c] : b.terms()) {
        PBWKey nk = k;
        ++nk.a.at(static_cast<std::size_t>(i - 1));
        r.add_term(nk, c);
    }
    return r;
}

HeckeElem left_mul_s(int j, const HeckeElem& b) {
    HeckeElem r(b.n());
    auto uj = static_cast<std::size_t>(j - 1);
    for (const auto& [k, c] : b.terms()) {
        PBWKey sw = k;
        std::swap(sw.a[uj], sw.a[uj + 1]);
        for (auto& v : sw.w)
            if (v == j)
                v = j + 1;
            else if (v == j + 1)
                v = j;
        r.add_term(sw, c);
        // subtract the divided difference of x^a, times w
        int p = k.a[uj], q = k.a[uj + 1];
        if (p == q) continue;
        int hi = std::max(p, q), lo = std::min(p, q);
        Rational sign = p > q ? c : Rational(-c);
        for (int t = 0; t <= hi - lo - 1; ++t) {
            PBWKey d = k;
            d.a[uj] = lo + (hi - lo - 1 - t);
            d.a[uj + 1] = lo + t;
            r.add_term(d, -sign);
        }
    }
    return r;
}

HeckeElem haff_mul(const HeckeElem& a, const HeckeElem& b) {
    if (a.n() != b.n()) throw std::invalid_argument("haff_mul: strand counts differ");
    HeckeElem r(a.n());
    std::map<Perm, HeckeElem> cache;
    for (const auto& [ka, ca] : a.terms()) {
        auto it = cache.find(ka.w);
        if (it == cache.end()) {
            HeckeElem wb = b;
            auto word = reduced_word(ka.w);
            for (auto jt = word.rbegin(); jt != word.rend(); ++jt) wb = left_mul_s(*jt, wb);
            it = cache.emplace(ka.w, std::move(wb)).first;
        }
        for (const auto& [kb, cb] : it->second.terms()) {
            PBWKey k = kb;
            for (std::size_t i = 0; i < k.a.size(); ++i) k.a[i] += ka.a[i];
            r.add_term(k, ca * cb);
        }
    }
    return r;
}

HeckeElem embed(const HeckeElem& a, int n) {
    if (n < a.n()) throw std::invalid_argument("embed: target smaller than source");
    HeckeElem r(n);
    for (const auto& [k, c] : a.terms()) {
        PBWKey nk = k;
        nk.a.resize(static_cast<std::size_t>(n), 0);
        for (int i = a.n() + 1; i <= n; ++i) nk.w.push_back(i);
        r.add_term(nk, c);
    }
    return r;
}

HeckeElem f_of_x1(int n, const CyclotomicData& c) {
    HeckeElem r(n);
    for (int d = 0; d <= c.ell; ++d) r += HeckeElem::x(n, 1, d) * c.f.coeff(d);
    return r;
}

namespace {

using FunnelCache = std::map<std::pair<std::string, int>, HeckeElem>;

// T_i in H_i with f(x_i) = T_i modulo the ideal; T_1 = 0.
const HeckeElem& funnel_impl(int i, const CyclotomicData& c, FunnelCache& cache) {
    auto key = std::make_pair(c.f.str(), i);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    HeckeElem t(i);
    if (i > 1) {
        HeckeElem prev = embed(funnel_impl(i - 1, c, cache), i);
        HeckeElem s = HeckeElem::s(i, i - 1);
        t = haff_mul(haff_mul(s, prev), s);
        // (f(x_{i-1}) - f(x_i)) / (x_{i-1} - x_i) times s_{i-1}
        HeckeElem dd(i);
        for (int d = 1; d <= c.ell; ++d)
            for (int p = 0; p <= d - 1; ++p) {
                std::vector<int> a(static_cast<std::size_t>(i), 0);
                a[static_cast<std::size_t>(i - 2)] = p;
                a[static_cast<std::size_t>(i - 1)] = d - 1 - p;
                dd.add_term(PBWKey{a, identity_perm(i)}, c.f.coeff(d));
            }
        t += haff_mul(dd, s);
    }
    return cache.emplace(key, std::move(t)).first->second;
}

HeckeElem funnel(int i, const CyclotomicData& c) {
    static std::mutex mu;
    static FunnelCache cache;
    std::lock_guard<std::mutex> lock(mu);
    return funnel_impl(i, c, cache);
}

}  // namespace

HeckeElem cyc_reduce(const HeckeElem& a, const CyclotomicData& c) {
    int n = a.n();
    HeckeElem todo = a;
    HeckeElem done(n);
    long steps = 0;
    const long cap = 50'000'000;
    std::vector<HeckeElem> tails(static_cast<std::size_t>(n) + 1);
    std::vector<char> have(static_cast<std::size_t>(n) + 1, 0);
    while (!todo.is_zero()) {
        if (++steps > cap) throw ResourceLimit("cyc_reduce: step cap exceeded");
        auto it = todo.terms().begin();
        PBWKey k = it->first;
        Rational coef = it->second;
        todo.add_term(k, -coef);
        int i = 0;
        for (int p = 0; p < n; ++p)
            if (k.a[static_cast<std::size_t>(p)] >= c.ell) {
                i = p + 1;
                break;
            }
        if (i == 0) {
            done.add_term(k, coef);
            continue;
        }
        auto ui = static_cast<std::size_t>(i);
        if (!have[ui]) {
            // x_i^l - f(x_i) + T_i, embedded in H_n
            HeckeElem tail = embed(funnel(i, c), n);
            for (int d = 0; d < c.ell; ++d) tail -= HeckeElem::x(n, i, d) * c.f.coeff(d);
            tails[ui] = std::move(tail);
            have[ui] = 1;
        }
        std::vector<int> rest = k.a;
        rest[ui - 1] -= c.ell;
        for (const auto& [tk, tc] : tails[ui].terms()) {
            PBWKey nk;
            nk.a = tk.a;
            for (std::size_t p = 0; p < nk.a.size(); ++p) nk.a[p] += rest[p];
            nk.w = perm_compose(tk.w, k.w);
            todo.add_term(nk, coef * tc);
        }
    }
    return done;
}

std::vector<PBWKey> pbw_basis(int n, const CyclotomicData& c) {
    std::vector<PBWKey> out;
    std::vector<Perm> perms;
    Perm w = identity_perm(n);
    do perms.push_back(w);
    while (std::next_permutation(w.begin(), w.end()));
    std::vector<int> a(static_cast<std::size_t>(n), 0);
    for (;;) {
        for (const auto& p : perms) out.push_back({a, p});
        int i = n - 1;
        while (i >= 0 && a[static_cast<std::size_t>(i)] == c.ell - 1) a[static_cast<std::size_t>(i--)] = 0;
        if (i < 0) break;
        ++a[static_cast<std::size_t>(i)];
    }
    return out;
}

long dim(int n, const CyclotomicData& c) {
    long d = 1;
    for (int i = 1; i <= n; ++i) d *= c.ell * i;
    return d;
}

}  // namespace heis
