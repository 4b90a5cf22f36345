#include "heis/functor.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "heis/normalform.hpp"

namespace heis {

namespace {

int net(const ObjectWord& w) {
    int n = 0;
    for (auto l : w) n += l == Letter::Up ? 1 : -1;
    return n;
}

ObjectWord concat(const ObjectWord& a, const ObjectWord& b) {
    ObjectWord r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

// Up-step label counts of `w` read right to left, or empty optional-like flag when zero.
bool step_counts(const ObjectWord& w, int ell, std::vector<int>& counts) {
    counts.assign(w.size(), 1);
    int level = 0;
    for (std::size_t i = w.size(); i-- > 0;) {
        if (w[i] == Letter::Up) {
            counts[i] = ell * (level + 1);
            ++level;
        } else {
            if (level == 0) return false;
            --level;
        }
    }
    return true;
}

}  // namespace

Functor::Functor(CyclotomicData c) : c_(std::move(c)) {}

int Functor::dim(const ObjectWord& w) {
    std::vector<int> counts;
    if (!step_counts(w, c_.ell, counts)) return 0;
    long d = 1;
    for (int n : counts) d *= n;
    return static_cast<int>(d);
}

ModuleSpace Functor::space(const ObjectWord& w) {
    ModuleSpace sp;
    sp.word = w;
    std::vector<int> counts;
    if (!step_counts(w, c_.ell, counts)) return sp;
    sp.dim = dim(w);
    // level before each letter (counted from the right)
    std::vector<int> level_below(w.size());
    int level = 0;
    for (std::size_t i = w.size(); i-- > 0;) {
        level_below[i] = level;
        level += w[i] == Letter::Up ? 1 : -1;
    }
    for (int idx = 0; idx < sp.dim; ++idx) {
        std::vector<std::pair<int, int>> lab;
        int rest = idx;
        std::vector<int> digits(w.size(), 0);
        for (std::size_t i = w.size(); i-- > 0;) {
            digits[i] = rest % counts[i];
            rest /= counts[i];
        }
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i] == Letter::Up) {
                int m = level_below[i];
                lab.emplace_back(digits[i] / (m + 1), digits[i] % (m + 1) + 1);
            }
        sp.labels.push_back(std::move(lab));
    }
    return sp;
}

HeckeElem Functor::induction_basis(int m, int a, int j) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto key = std::make_tuple(m, a, j);
    auto it = bases_.find(key);
    if (it != bases_.end()) return it->second;
    HeckeElem b = HeckeElem::x(m + 1, m + 1, a);
    for (int i = m; i >= j; --i) b = left_mul_s(i, b);
    b = cyc_reduce(b, c_);
    return bases_.emplace(key, std::move(b)).first->second;
}

const HeckeElem& Functor::reduced_product(int m, int label, const PBWKey& k) {
    auto key = std::make_tuple(m, label, k);
    auto it = products_.find(key);
    if (it != products_.end()) return it->second;
    int a = label / (m + 1), j = label % (m + 1) + 1;
    HeckeElem rhs = embed(HeckeElem::term(m, k.a, k.w), m + 1);
    HeckeElem p = cyc_reduce(haff_mul(induction_basis(m, a, j), rhs), c_);
    return products_.emplace(key, std::move(p)).first->second;
}

std::vector<HeckeElem> Functor::decompose(const HeckeElem& h, int m) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    if (h.n() != m + 1) throw std::invalid_argument("decompose: element not in H_{m+1}");
    int nl = c_.ell * (m + 1);
    std::vector<HeckeElem> out(static_cast<std::size_t>(nl), HeckeElem(m));
    HeckeElem work = h;
    while (!work.is_zero()) {
        const PBWKey* lead = nullptr;
        int best = -1;
        for (const auto& [k, coef] : work.terms()) {
            int d = std::accumulate(k.a.begin(), k.a.end(), 0);
            if (d > best) {
                best = d;
                lead = &k;
            }
        }
        PBWKey big = *lead;
        Rational coef = work.terms().at(big);
        for (int e : big.a)
            if (e >= c_.ell) throw std::logic_error("decompose: element is not cyclotomically reduced");
        int j = big.w[static_cast<std::size_t>(m)];
        // cyc = s_j ... s_m: i -> i for i < j, i -> i+1 for j <= i <= m, m+1 -> j
        Perm cyc(static_cast<std::size_t>(m + 1));
        for (int i = 1; i <= m + 1; ++i) cyc[static_cast<std::size_t>(i - 1)] = i < j ? i : (i <= m ? i + 1 : j);
        Perm wp = perm_compose(perm_inverse(cyc), big.w);
        PBWKey small;
        small.w.assign(wp.begin(), wp.begin() + m);
        small.a.resize(static_cast<std::size_t>(m));
        for (int i = 1; i <= m; ++i)
            small.a[static_cast<std::size_t>(i - 1)] = big.a[static_cast<std::size_t>(cyc[static_cast<std::size_t>(i - 1)] - 1)];
        int a = big.a[static_cast<std::size_t>(j - 1)];
        int label = a * (m + 1) + (j - 1);
        out[static_cast<std::size_t>(label)].add_term(small, coef);
        const HeckeElem& prod = reduced_product(m, label, small);
        for (const auto& [k, v] : prod.terms()) work.add_term(k, -coef * v);
    }
    return out;
}

int Functor::induction_rank(int m) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto it = ranks_.find(m);
    if (it != ranks_.end()) return it->second;
    auto target = pbw_basis(m + 1, c_);
    std::map<PBWKey, int> col;
    for (std::size_t i = 0; i < target.size(); ++i) col[target[i]] = static_cast<int>(i);
    auto small = pbw_basis(m, c_);
    int nl = c_.ell * (m + 1);
    Matrix mat(nl * static_cast<int>(small.size()), static_cast<int>(target.size()));
    int r = 0;
    for (int L = 0; L < nl; ++L)
        for (const auto& k : small) {
            for (const auto& [tk, v] : reduced_product(m, L, k).terms()) mat.set(r, col.at(tk), v);
            ++r;
        }
    int rank = mat.rank();
    ranks_[m] = rank;
    return rank;
}

Functor::Module& Functor::module(const ObjectWord& w) {
    auto it = modules_.find(w);
    if (it != modules_.end()) return *it->second;
    auto mod = std::make_unique<Module>();
    if (w.empty()) {
        mod->level = 0;
        mod->dim = 1;
    } else {
        ObjectWord rest(w.begin() + 1, w.end());
        Module& inner = module(rest);
        int m = inner.level;
        if (w[0] == Letter::Up) {
            mod->level = m + 1;
            if (inner.dim > 0) {
                if (induction_rank(m) != dim(ObjectWord(static_cast<std::size_t>(m + 1), Letter::Up)))
                    throw std::logic_error("induction basis is not a basis");
                int nl = c_.ell * (m + 1);
                int dM = inner.dim;
                mod->dim = nl * dM;
                auto act = [&](auto left_mul, int g) {
                    Matrix out(mod->dim, mod->dim);
                    for (int L = 0; L < nl; ++L) {
                        HeckeElem h = cyc_reduce(left_mul(g, induction_basis(m, L / (m + 1), L % (m + 1) + 1)), c_);
                        auto dec = decompose(h, m);
                        for (int L2 = 0; L2 < nl; ++L2)
                            if (!dec[static_cast<std::size_t>(L2)].is_zero())
                                out.put_block(L2 * dM, L * dM, rho(inner, dec[static_cast<std::size_t>(L2)]));
                    }
                    return out;
                };
                for (int i = 1; i <= m + 1; ++i) mod->x.push_back(act(left_mul_x, i));
                for (int i = 1; i <= m; ++i) mod->s.push_back(act(left_mul_s, i));
            }
        } else {
            mod->level = m - 1;
            if (inner.dim > 0 && m > 0) {
                mod->dim = inner.dim;
                mod->x.assign(inner.x.begin(), inner.x.begin() + (m - 1));
                if (m >= 2) mod->s.assign(inner.s.begin(), inner.s.begin() + (m - 2));
            }
        }
    }
    return *modules_.emplace(w, std::move(mod)).first->second;
}

Matrix Functor::rho_mono(Module& M, const PBWKey& k) {
    auto it = M.rho.find(k);
    if (it != M.rho.end()) return it->second;
    Matrix r = Matrix::identity(M.dim);
    for (std::size_t i = 0; i < k.a.size(); ++i)
        for (int p = 0; p < k.a[i]; ++p) r = r * M.x[i];
    for (int j : reduced_word(k.w)) r = r * M.s[static_cast<std::size_t>(j - 1)];
    M.rho.emplace(k, r);
    return r;
}

Matrix Functor::rho(Module& M, const HeckeElem& h) {
    Matrix r(M.dim, M.dim);
    for (const auto& [k, v] : h.terms()) r += rho_mono(M, k) * v;
    return r;
}

int Functor::labels_of(const ObjectWord& prefix, int level) {
    long n = 1;
    for (std::size_t i = prefix.size(); i-- > 0;) {
        if (prefix[i] == Letter::Up) {
            n *= c_.ell * (level + 1);
            ++level;
        } else {
            if (level == 0) return 0;
            --level;
        }
    }
    return static_cast<int>(n);
}

Matrix Functor::eval_over(const DiagramTerm& t, const ObjectWord& base) {
    ObjectWord w = concat(t.source(), base);
    Matrix r = Matrix::identity(dim(w));
    for (const auto& s : t.slices()) {
        r = slice_matrix(s, w) * r;
        w = apply_slice(w, s);
    }
    return r;
}

Matrix Functor::slice_matrix(const Slice& s, const ObjectWord& w) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    ObjectWord w2 = apply_slice(w, s);
    int src = dim(w), tgt = dim(w2);
    if (src == 0 || tgt == 0) return Matrix(tgt, src);
    ObjectWord prefix(w.begin(), w.begin() + s.pos);
    ObjectWord base(w.begin() + s.pos + s.in_arity(), w.end());
    Matrix L = local(s, base);
    int level = module(base).level + net(s.source_letters());
    Matrix full = kron_identity(labels_of(prefix, level), L);
    if (full.rows() != tgt || full.cols() != src) throw std::logic_error("slice matrix shape mismatch");
    return full;
}

Matrix Functor::local(const Slice& s, const ObjectWord& base) {
    Slice key_slice = s;
    key_slice.pos = 0;
    auto key = std::make_pair(slice_str(key_slice), base);
    auto it = locals_.find(key);
    if (it != locals_.end()) return it->second;
    Matrix m = local_uncached(key_slice, base);
    locals_.emplace(key, m);
    return m;
}

Matrix Functor::local_uncached(const Slice& s, const ObjectWord& base) {
    ObjectWord src_word = concat(s.source_letters(), base);
    ObjectWord tgt_word = concat(s.target_letters(), base);
    int src = dim(src_word), tgt = dim(tgt_word);
    if (src == 0 || tgt == 0) return Matrix(tgt, src);
    Module& M = module(base);
    int m = M.level, dM = M.dim;
    int ell = c_.ell;
    DiagramTerm single(s.source_letters(), {s});
    switch (s.type) {
        case SliceType::Dot: {
            if (s.orient == Letter::Down) return eval_over(expand_macros(single), base);
            int nl = ell * (m + 1);
            Matrix out(src, src);
            for (int L = 0; L < nl; ++L) {
                HeckeElem h = induction_basis(m, L / (m + 1), L % (m + 1) + 1);
                for (int p = 0; p < s.mult; ++p) h = haff_mul(h, HeckeElem::x(m + 1, m + 1));
                auto dec = decompose(cyc_reduce(h, c_), m);
                for (int L2 = 0; L2 < nl; ++L2)
                    if (!dec[static_cast<std::size_t>(L2)].is_zero())
                        out.put_block(L2 * dM, L * dM, rho(M, dec[static_cast<std::size_t>(L2)]));
            }
            return out;
        }
        case SliceType::Cross: {
            if (s.cross == CrossKind::LeftWard) return mackey_inverse(base).block(0, 0, ell * m * dM, src);
            if (s.cross != CrossKind::UpUp) return eval_over(expand_macros(single), base);
            int n1 = ell * (m + 1), n2 = ell * (m + 2);
            Matrix out(src, src);
            HeckeElem sm = HeckeElem::s(m + 2, m + 1);
            for (int L2 = 0; L2 < n2; ++L2)
                for (int L1 = 0; L1 < n1; ++L1) {
                    HeckeElem b2 = induction_basis(m + 1, L2 / (m + 2), L2 % (m + 2) + 1);
                    HeckeElem b1 = embed(induction_basis(m, L1 / (m + 1), L1 % (m + 1) + 1), m + 2);
                    HeckeElem h = cyc_reduce(haff_mul(haff_mul(b2, b1), sm), c_);
                    auto outer = decompose(h, m + 1);
                    for (int P2 = 0; P2 < n2; ++P2) {
                        if (outer[static_cast<std::size_t>(P2)].is_zero()) continue;
                        auto inner = decompose(outer[static_cast<std::size_t>(P2)], m);
                        for (int P1 = 0; P1 < n1; ++P1)
                            if (!inner[static_cast<std::size_t>(P1)].is_zero())
                                out.put_block((P2 * n1 + P1) * dM, (L2 * n1 + L1) * dM,
                                              rho(M, inner[static_cast<std::size_t>(P1)]));
                    }
                }
            return out;
        }
        case SliceType::Cup: {
            if (s.ward == Ward::RightWard) {
                Matrix out(tgt, src);
                for (int v = 0; v < dM; ++v) out.set(m * dM + v, v, 1);
                return out;
            }
            Matrix tprime = local(Slice::crossing(0, CrossKind::LeftWard), base);
            DiagramTerm dotted({}, {Slice::cup(0, Ward::RightWard), Slice::dot(1, Letter::Up, ell)});
            return tprime * eval_over(dotted, base);
        }
        case SliceType::Cap: {
            if (s.ward == Ward::LeftWard)
                return mackey_inverse(base).block(ell * m * dM + (ell - 1) * dM, 0, dM, src);
            Matrix out(tgt, src);
            int nl = ell * m;
            for (int L = 0; L < nl; ++L) out.put_block(0, L * dM, rho(M, induction_basis(m - 1, L / m, L % m + 1)));
            return out;
        }
    }
    throw std::logic_error("unknown slice");
}

Matrix Functor::mackey_map(const ObjectWord& base) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    std::vector<Matrix> cols;
    cols.push_back(eval_over(DiagramTerm({Letter::Up, Letter::Down}, {Slice::crossing(0, CrossKind::RightWard)}), base));
    for (int r = 0; r < c_.ell; ++r) {
        std::vector<Slice> sl{Slice::cup(0, Ward::RightWard)};
        if (r > 0) sl.push_back(Slice::dot(1, Letter::Up, r));
        cols.push_back(eval_over(DiagramTerm({}, std::move(sl)), base));
    }
    return hstack(cols);
}

Matrix Functor::mackey_inverse(const ObjectWord& base) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto it = mackey_inv_.find(base);
    if (it != mackey_inv_.end()) return it->second;
    Matrix q = mackey_map(base);
    auto inv = q.inverse();
    if (!inv) throw std::logic_error("Mackey map is singular over '" + word_str(base) + "'");
    return mackey_inv_.emplace(base, std::move(*inv)).first->second;
}

Matrix Functor::eval(const DiagramTerm& t) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    return eval_over(t, {});
}

const DeltaSeries& Functor::delta(int order) {
    if (delta_.order() < order) delta_ = delta_series(c_.f, Poly::constant(1), std::max(order, 2 * delta_.order()));
    return delta_;
}

Rational Functor::scalar(const SymPoly& p) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    int need = 1;
    for (const auto& [m, c] : p.terms())
        for (int part : m) need = std::max(need, part);
    return specialize(p, delta(need));
}

Matrix Functor::eval_morphism(const NormalMorphism& nm) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    Matrix out(dim(nm.target()), dim(nm.source()));
    std::map<Matching, std::pair<std::size_t, Matrix>> lifts;
    for (const auto& [d, coef] : nm.terms()) {
        Rational s = scalar(coef);
        if (s == 0) continue;
        auto it = lifts.find(d.matching);
        if (it == lifts.end()) {
            DiagramTerm lift = reduced_lift(d.matching, nm.source(), nm.target());
            it = lifts.emplace(d.matching, std::pair(lift.slices().size(), eval(lift))).first;
        }
        // materialize adds dot slices below and above the lift
        DiagramTerm full = materialize(d, nm.source(), nm.target());
        const auto& slices = full.slices();
        std::size_t below = 0;
        while (below < slices.size() && slices[below].type == SliceType::Dot &&
               slices.size() - below > it->second.first)
            ++below;
        Matrix m = it->second.second;
        for (std::size_t i = 0; i < below; ++i) m = m * slice_matrix(slices[i], nm.source());
        for (std::size_t i = below + it->second.first; i < slices.size(); ++i) m = slice_matrix(slices[i], nm.target()) * m;
        out += m * s;
    }
    return out;
}

void Functor::corrupt_for_testing(const ObjectWord& word) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    Module& M = module(word);
    if (!M.s.empty()) M.s.front() = M.s.front() * Rational(-1);
    M.rho.clear();
    locals_.clear();
    mackey_inv_.clear();
    // modules built on top of this one keep stale data; drop them
    for (auto it = modules_.begin(); it != modules_.end();) {
        if (it->first.size() > word.size() && std::equal(word.begin(), word.end(), it->first.end() - static_cast<long>(word.size())))
            it = modules_.erase(it);
        else
            ++it;
    }
}

std::shared_ptr<Functor> functor_for(const CyclotomicData& c) {
    static std::mutex mu;
    static std::map<std::string, std::shared_ptr<Functor>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[c.f.str()];
    if (!slot) slot = std::make_shared<Functor>(c);
    return slot;
}

ModuleSpace build_space(const ObjectWord& x, const CyclotomicData& c) { return functor_for(c)->space(x); }

LinMap gen_matrix(const Slice& s, const ObjectWord& source, const CyclotomicData& c) {
    auto F = functor_for(c);
    return {source, apply_slice(source, s), F->slice_matrix(s, source)};
}

LinMap mackey_map(int n, const CyclotomicData& c) {
    ObjectWord base(static_cast<std::size_t>(n), Letter::Up);
    ObjectWord src{Letter::Up, Letter::Down};
    src.insert(src.end(), base.begin(), base.end());
    ObjectWord tgt{Letter::Down, Letter::Up};
    tgt.insert(tgt.end(), base.begin(), base.end());
    return {src, tgt, functor_for(c)->mackey_map(base)};
}

LinMap mackey_inverse(int n, const CyclotomicData& c) {
    LinMap m = mackey_map(n, c);
    ObjectWord base(static_cast<std::size_t>(n), Letter::Up);
    return {m.codomain, m.domain, functor_for(c)->mackey_inverse(base)};
}

LinMap eval_term(const DiagramTerm& t, const CyclotomicData& c) { return {t.source(), t.target(), functor_for(c)->eval(t)}; }

LinMap eval_morphism(const NormalMorphism& m, const CyclotomicData& c) {
    return {m.source(), m.target(), functor_for(c)->eval_morphism(m)};
}

DiagramTerm phi_n(const PBWKey& k) {
    int n = static_cast<int>(k.a.size());
    std::vector<Slice> slices;
    for (int i = 1; i <= n; ++i)
        if (k.a[static_cast<std::size_t>(i - 1)] > 0) slices.push_back(Slice::dot(n - i, Letter::Up, k.a[static_cast<std::size_t>(i - 1)]));
    for (int j : reduced_word(k.w)) slices.push_back(Slice::crossing(n - j - 1, CrossKind::UpUp));
    return DiagramTerm(ObjectWord(static_cast<std::size_t>(n), Letter::Up), std::move(slices));
}

HeckeElem psi_n(const Matrix& mat, int n, const CyclotomicData& c) {
    auto F = functor_for(c);
    ObjectWord w(static_cast<std::size_t>(n), Letter::Up);
    ModuleSpace sp = F->space(w);
    int one = -1;
    for (int i = 0; i < sp.dim; ++i) {
        bool all = true;
        for (std::size_t p = 0; p < sp.labels[static_cast<std::size_t>(i)].size(); ++p) {
            auto [a, j] = sp.labels[static_cast<std::size_t>(i)][p];
            int level = n - static_cast<int>(p);
            if (a != 0 || j != level) all = false;
        }
        if (all) one = i;
    }
    HeckeElem out(n);
    Matrix col = mat.block(0, one, sp.dim, 1);
    for (int i = 0; i < sp.dim; ++i) {
        Rational v = col.get(i, 0);
        if (v == 0) continue;
        HeckeElem prod = HeckeElem::one(n);
        for (std::size_t p = 0; p < sp.labels[static_cast<std::size_t>(i)].size(); ++p) {
            auto [a, j] = sp.labels[static_cast<std::size_t>(i)][p];
            int level = n - static_cast<int>(p);
            prod = haff_mul(prod, embed(F->induction_basis(level - 1, a, j), n));
        }
        out += cyc_reduce(prod, c) * v;
    }
    return out;
}

}  // namespace heis
