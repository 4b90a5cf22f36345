#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "heis/verify.hpp"

using namespace heis;

namespace {

CyclotomicData cd(const char* f) { return CyclotomicData(Poly::parse(f)); }

std::vector<CyclotomicData> pool(std::initializer_list<const char*> fs) {
    std::vector<CyclotomicData> out;
    for (const char* f : fs) out.push_back(cd(f));
    return out;
}

struct Tally {
    bool ok = true;
    std::string note;

    void take(const CheckReport& r, const std::string& label) {
        if (r.ok()) return;
        ok = false;
        for (const auto& c : r.cases)
            if (!c.pass) {
                fail(label + ": " + c.name);
                return;
            }
    }
    void fail(const std::string& why) {
        ok = false;
        if (note.empty()) note = why;
    }
};

int failed = 0;

template <class F>
void criterion(int n, const char* title, F body) {
    auto t0 = std::chrono::steady_clock::now();
    Tally t;
    try {
        body(t);
    } catch (const std::exception& e) {
        t.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!t.ok) ++failed;
    std::printf("criterion %d: %s %s (%.1fs)%s%s\n", n, t.ok ? "PASS" : "FAIL", title, secs, t.note.empty() ? "" : " ",
                t.note.c_str());
    std::fflush(stdout);
}

Poly random_monic(std::mt19937_64& rng, int deg) {
    std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
    std::vector<Rational> c;
    for (int i = 0; i < deg; ++i) {
        Rational q(num(rng), den(rng));
        q.canonicalize();
        c.push_back(q);
    }
    c.push_back(1);
    return Poly(c);
}

long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

}  // namespace

int main() {
    criterion(1, "defining relations and Mackey invertibility", [](Tally& t) {
        for (const char* f : {"u", "u+1", "u^2", "(u-1)*(u-2)"}) t.take(check_defining(cd(f), 3), f);
    });

    criterion(2, "derived relations, symbolic k=-2..2 and matrix k=-1,-2", [](Tally& t) {
        for (const char* f : {"u", "u^2", "(u-1)*(u+2)"}) t.take(check_derived(cd(f), 2), f);
        for (int k = -1; k <= 1; ++k)
            for (const auto& r : derived_relations(k))
                if (r.name == "alternating braid" && !r.rhs.empty()) t.fail("alternating braid rhs nonzero at k=" + std::to_string(k));
    });

    criterion(3, "khovanov presentation at k=-1", [](Tally& t) { t.take(check_khovanov(), "khovanov"); });

    criterion(4, "eval(normalize(t)) = eval(t) on 200 random terms", [](Tally& t) {
        CheckReport r = fuzz_normalizer(1, 200, FuzzCaps{}, pool({"u", "u+1", "u^2", "(u-1)*(u-2)"}));
        if (r.cases.size() < 200) t.fail("too few terms");
        t.take(r, "fuzz");
    });

    criterion(5, "independence of basis images", [](Tally& t) {
        constexpr Letter U = Letter::Up, D = Letter::Down;
        auto fs = pool({"u", "u+1", "u^2", "u^2+u"});
        for (const auto& [x, y] : std::vector<std::pair<ObjectWord, ObjectWord>>{{{U}, {U}}, {{U, D}, {D, U}}, {{}, {D, U}}})
            t.take(check_independence(x, y, 2, fs), word_str(x) + " -> " + word_str(y));
    });

    criterion(6, "Hecke dimensions and Mackey map sizes", [](Tally& t) {
        for (const char* f : {"u", "u^2+1", "u^3-u"}) {
            CyclotomicData c = cd(f);
            long l = c.ell;
            long ln = 1;
            for (int n = 0; n <= 4; ++n, ln *= l) {
                if (dim(n, c) != ln * factorial(n)) t.fail(std::string("dim H_") + std::to_string(n) + " for " + f);
                if (static_cast<long>(pbw_basis(n, c).size()) != dim(n, c)) t.fail(std::string("PBW basis size for ") + f);
            }
            for (int n = 0; n + 1 <= (l == 3 ? 2 : 3); ++n) {
                long a = 1;
                for (int i = 0; i <= n; ++i) a *= l;
                Matrix m = mackey_map(n, c).matrix;
                long want = a * factorial(n) * n + a * factorial(n);
                if (want != a * factorial(n + 1)) t.fail("dimension identity");
                if (m.cols() != want || m.rows() != a * factorial(n + 1)) t.fail(std::string("mackey shape for ") + f);
                if (m.rank() != m.rows()) t.fail(std::string("mackey rank for ") + f);
            }
        }
    });

    criterion(7, "series identities", [](Tally& t) {
        std::mt19937_64 rng(7);
        std::uniform_int_distribution<int> deg(0, 3);
        for (int i = 0; i < 5; ++i) {
            Poly f = random_monic(rng, deg(rng)), fp = random_monic(rng, deg(rng));
            DeltaSeries prod = series_mul(delta_series(f, fp, 8), deltap_series(f, fp, 8));
            for (int j = 0; j <= 8; ++j)
                if (prod[j] != (j == 0 ? -1 : 0)) t.fail("delta delta' for f=" + f.str() + " f'=" + fp.str());
        }
        for (int i = 0; i < 5; ++i) {
            Poly f = random_monic(rng, 1 + i % 3);
            int l = f.degree();
            DeltaSeries d = delta_series(f, Poly::constant(1), 8);
            for (int r = 1; r <= 8; ++r) {
                Rational s = 0;
                for (int j = 0; j <= l && j <= r; ++j) s += f.coeff(l - j) * d[r - j];
                if (s != 0) t.fail("z_s delta_{r-s} sum for f=" + f.str());
            }
        }
        if (!series_identity_check(6)) t.fail("e(u) h(-u) = 1");
    });

    criterion(8, "phi/psi round trip on PBW bases", [](Tally& t) {
        for (const char* f : {"u", "u-2", "u^2", "u^2+u-1"}) {
            CyclotomicData c = cd(f);
            auto F = functor_for(c);
            for (int n = 0; n <= 3; ++n)
                for (const PBWKey& k : pbw_basis(n, c))
                    if (psi_n(F->eval(phi_n(k)), n, c) != HeckeElem::term(n, k.a, k.w))
                        t.fail(std::string("round trip at n=") + std::to_string(n) + " for " + f);
        }
    });

    return failed == 0 ? 0 : 1;
}
