#include "heis/verify.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "heis/errors.hpp"
#include "heis/functor.hpp"

namespace heis {

bool CheckReport::ok() const { return failures() == 0; }

int CheckReport::failures() const {
    return static_cast<int>(std::count_if(cases.begin(), cases.end(), [](const CaseResult& c) { return !c.pass; }));
}

void CheckReport::add(std::string name, bool pass, std::string witness) {
    cases.push_back({std::move(name), pass, pass ? std::string() : std::move(witness)});
}

std::string CheckReport::to_json() const {
    nlohmann::json ps = nlohmann::json::object();
    for (const auto& [k, v] : params) ps[k] = v;
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& c : cases) {
        nlohmann::json j{{"name", c.name}, {"status", c.pass ? "pass" : "fail"}};
        if (!c.pass) j["witness"] = c.witness;
        cs.push_back(std::move(j));
    }
    return nlohmann::json{{"suite", suite}, {"params", ps}, {"seed", seed}, {"cases", cs}}.dump(2);
}

std::string CheckReport::str() const {
    std::ostringstream os;
    for (const auto& c : cases) {
        os << (c.pass ? "pass " : "FAIL ") << c.name << "\n";
        if (!c.pass && !c.witness.empty()) os << "  " << c.witness << "\n";
    }
    os << suite << ": " << cases.size() - static_cast<std::size_t>(failures()) << "/" << cases.size() << " passed\n";
    return os.str();
}

namespace {

using Sum = TermSum;

// Slices written against the running word.
class Draw {
public:
    explicit Draw(ObjectWord w) : src_(w), cur_(std::move(w)) {}
    Draw& dot(int p, int m = 1) {
        if (m > 0) push(Slice::dot(p, cur_[p], m));
        return *this;
    }
    Draw& cross(int p) {
        Letter a = cur_[p], b = cur_[p + 1];
        CrossKind k = a == Letter::Up ? (b == Letter::Up ? CrossKind::UpUp : CrossKind::RightWard)
                                      : (b == Letter::Up ? CrossKind::LeftWard : CrossKind::DownDown);
        return push(Slice::crossing(p, k));
    }
    Draw& cup(int p, Ward w) { return push(Slice::cup(p, w)); }
    Draw& cap(int p) { return push(Slice::cap(p, cur_[p] == Letter::Up ? Ward::RightWard : Ward::LeftWard)); }
    DiagramTerm done() const { return DiagramTerm(src_, sl_); }
    operator DiagramTerm() const { return done(); }  // NOLINT

private:
    Draw& push(Slice s) {
        cur_ = apply_slice(cur_, s);
        sl_.push_back(s);
        return *this;
    }
    ObjectWord src_, cur_;
    std::vector<Slice> sl_;
};

const Letter U = Letter::Up;
const Letter D = Letter::Down;

Sum one(const DiagramTerm& t, const SymPoly& c = SymPoly(1)) { return {{c, t}}; }

Sum neg(Sum s) {
    for (auto& [c, t] : s) c = -c;
    return s;
}

Sum cat(Sum a, const Sum& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

DiagramTerm up(int dots) { return Draw({U}).dot(0, dots); }

DiagramTerm bubble(Orientation o, int dots) {
    return o == Orientation::Clockwise ? clockwise_bubble(dots) : counterclockwise_bubble(dots);
}

SymPoly bval(Orientation o, int dots, int k) { return bubble_to_sym({o, dots, k}); }

// A bubble in the region right of an up strand with `s` dots.
Sum bubble_right(Orientation o, int m, int k, int s, const SymPoly& c = SymPoly(1)) {
    if (m >= 0) return one(tensor(up(s), bubble(o, m)), c);
    SymPoly v = bval(o, m, k);
    return v.is_zero() ? Sum{} : one(up(s), c * v);
}

// A bubble in the region left of an up strand with `s` dots.
Sum bubble_left(Orientation o, int m, int k, int s, const SymPoly& c = SymPoly(1)) {
    if (m >= 0) return one(tensor(bubble(o, m), up(s)), c);
    Sum out;
    XSym xs = slide_left_to_right(bval(o, m, k));
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (!xs[i].is_zero()) out.emplace_back(c * xs[i], up(s + static_cast<int>(i)));
    return out;
}

Sum bubble_alone(Orientation o, int m, int k) {
    if (m >= 0) return one(bubble(o, m));
    SymPoly v = bval(o, m, k);
    return v.is_zero() ? Sum{} : one(DiagramTerm::identity({}), v);
}

Sum times(const Sum& a, const Sum& b) {
    Sum out;
    for (const auto& [c1, t1] : a)
        for (const auto& [c2, t2] : b) out.emplace_back(c1 * c2, tensor(t1, t2));
    return out;
}

int count_up(const ObjectWord& w) { return static_cast<int>(std::count(w.begin(), w.end(), U)); }

Matrix eval_sum(Functor& f, const Sum& s, const ObjectWord& x, const ObjectWord& y) {
    Matrix m(f.dim(y), f.dim(x));
    for (const auto& [c, t] : s) {
        Rational v = f.scalar(c);
        if (v != 0) m += f.eval(t) * v;
    }
    return m;
}

// Appends up strands on the right, sliding each coefficient across them.
Sum tensor_right(const Sum& s, const ObjectWord& ctx) {
    Sum out;
    for (const auto& [c, t] : s) {
        std::vector<std::pair<SymPoly, std::vector<int>>> parts{{c, {}}};
        for (std::size_t p = 0; p < ctx.size(); ++p) {
            std::vector<std::pair<SymPoly, std::vector<int>>> next;
            for (const auto& [v, dots] : parts) {
                XSym xs = v.is_scalar() ? XSym{v} : slide_left_to_right(v);
                for (std::size_t i = 0; i < xs.size(); ++i) {
                    if (xs[i].is_zero()) continue;
                    next.emplace_back(xs[i], dots);
                    next.back().second.push_back(static_cast<int>(i));
                }
            }
            parts = std::move(next);
        }
        for (const auto& [v, dots] : parts) {
            Draw d(ctx);
            for (std::size_t p = 0; p < dots.size(); ++p) d.dot(static_cast<int>(p), dots[p]);
            out.emplace_back(v, tensor(t, d));
        }
    }
    return out;
}

std::string mismatch(const Matrix& a, const Matrix& b) {
    if (a.rows() * a.cols() <= 16) return "lhs " + a.str() + " rhs " + b.str();
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (a.get(i, j) != b.get(i, j))
                return std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " matrices differ at (" + std::to_string(i) +
                       ", " + std::to_string(j) + "): lhs " + a.get(i, j).get_str() + " rhs " + b.get(i, j).get_str();
    return {};
}

std::pair<ObjectWord, ObjectWord> ends_of(const Relation& r) {
    const DiagramTerm& t = r.lhs.empty() ? r.rhs.front().second : r.lhs.front().second;
    return {t.source(), validate(t)};
}

// Matrix identity on contexts up^j to the right, up to nmax up strands in all (at least the bare relation).
void matrix_case(CheckReport& rep, Functor& f, const Relation& r, int nmax) {
    if (r.lhs.empty() && r.rhs.empty()) return;
    auto [x, y] = ends_of(r);
    int top = std::max(0, nmax - std::max(count_up(x), count_up(y)));
    for (int j = 0; j <= top; ++j) {
        ObjectWord ctx(static_cast<std::size_t>(j), U);
        std::string label = r.name + " [f=" + f.data().f.str() + ", context up^" + std::to_string(j) + "]";
        try {
            ObjectWord cx = x, cy = y;
            cx.insert(cx.end(), ctx.begin(), ctx.end());
            cy.insert(cy.end(), ctx.begin(), ctx.end());
            Matrix a = eval_sum(f, tensor_right(r.lhs, ctx), cx, cy);
            Matrix b = eval_sum(f, tensor_right(r.rhs, ctx), cx, cy);
            rep.add(label, a == b, mismatch(a, b));
        } catch (const std::exception& e) {
            rep.add(label, false, e.what());
        }
    }
}

void symbolic_case(CheckReport& rep, const Relation& r, int k) {
    CategoryParams p;
    p.k = k;
    std::string label = r.name + " [k=" + std::to_string(k) + "]";
    try {
        std::string w = compare_sides(r.lhs, r.rhs, p);
        rep.add(label, w.empty(), w);
    } catch (const std::exception& e) {
        rep.add(label, false, e.what());
    }
}

std::vector<Relation> defining_relations() {
    std::vector<Relation> out;
    out.push_back({"hecke: s^2 = 1", one(Draw({U, U}).cross(0).cross(0)), one(DiagramTerm::identity({U, U}))});
    out.push_back({"hecke: braid", one(Draw({U, U, U}).cross(0).cross(1).cross(0)),
                   one(Draw({U, U, U}).cross(1).cross(0).cross(1))});
    out.push_back({"hecke: dot past crossing (right strand)",
                   cat(one(Draw({U, U}).cross(0).dot(0)), neg(one(Draw({U, U}).dot(1).cross(0)))),
                   one(DiagramTerm::identity({U, U}))});
    out.push_back({"hecke: dot past crossing (left strand)",
                   cat(one(Draw({U, U}).dot(0).cross(0)), neg(one(Draw({U, U}).cross(0).dot(1)))),
                   one(DiagramTerm::identity({U, U}))});
    out.push_back({"right adjunction: up zigzag", one(Draw({U}).cup(1, Ward::RightWard).cap(0)), one(DiagramTerm::identity({U}))});
    out.push_back(
        {"right adjunction: down zigzag", one(Draw({D}).cup(0, Ward::RightWard).cap(1)), one(DiagramTerm::identity({D}))});
    return out;
}

}  // namespace

std::vector<Relation> derived_relations(int k) {
    const auto CW = Orientation::Clockwise, CCW = Orientation::CounterClockwise;
    const int R = std::abs(k) + 3;
    std::vector<Relation> out;

    Sum pos = one(DiagramTerm::identity({U, D}));
    Sum neg_rhs = one(DiagramTerm::identity({D, U}));
    for (int r = 0; r <= R; ++r)
        for (int s = 0; s <= R; ++s) {
            SymPoly b = bval(CW, -r - s - 2, k);
            if (!b.is_zero()) pos.emplace_back(b, Draw({U, D}).dot(0, s).cap(0).cup(0, Ward::LeftWard).dot(0, r));
            SymPoly b2 = bval(CCW, -r - s - 2, k);
            if (!b2.is_zero()) neg_rhs.emplace_back(b2, Draw({D, U}).dot(1, r).cap(0).cup(0, Ward::RightWard).dot(1, s));
        }
    out.push_back({"inverse crossings: t' t", one(Draw({U, D}).cross(0).cross(0)), pos});
    out.push_back({"inverse crossings: t t'", one(Draw({D, U}).cross(0).cross(0)), neg_rhs});

    if (k >= 0) {
        out.push_back({"right curl", one(right_curl(0)), k == 0 ? one(DiagramTerm::identity({U})) : Sum{}});
        for (int r = 0; r < k; ++r)
            out.push_back({"dotted bubble below charge: counterclockwise r=" + std::to_string(r), one(counterclockwise_bubble(r)),
                           r == k - 1 ? one(DiagramTerm::identity({}), SymPoly(-1)) : Sum{}});
    }
    if (k <= 0) {
        out.push_back({"left curl", one(left_curl(0)), k == 0 ? one(DiagramTerm::identity({U})) : Sum{}});
        for (int r = 0; r < -k; ++r)
            out.push_back({"dotted bubble below charge: clockwise r=" + std::to_string(r), one(clockwise_bubble(r)),
                           r == -k - 1 ? one(DiagramTerm::identity({})) : Sum{}});
    }

    for (int r = -3; r < k; ++r) {
        Sum rhs = r == k - 1 ? one(DiagramTerm::identity({}), SymPoly(-1)) : Sum{};
        out.push_back({"infinite grassmannian: counterclockwise r=" + std::to_string(r), bubble_alone(CCW, r, k), rhs});
    }
    for (int r = -3; r < -k; ++r) {
        Sum rhs = r == -k - 1 ? one(DiagramTerm::identity({})) : Sum{};
        out.push_back({"infinite grassmannian: clockwise r=" + std::to_string(r), bubble_alone(CW, r, k), rhs});
    }
    for (int t = 0; t <= 3; ++t) {
        Sum lhs;
        for (int r = 0; r <= t; ++r) lhs = cat(lhs, times(bubble_alone(CCW, r + k - 1, k), bubble_alone(CW, t - r - k - 1, k)));
        out.push_back({"infinite grassmannian: product t=" + std::to_string(t), lhs,
                       t == 0 ? one(DiagramTerm::identity({}), SymPoly(-1)) : Sum{}});
    }

    out.push_back({"left adjunction: up zigzag", one(Draw({U}).cup(0, Ward::LeftWard).cap(1)), one(DiagramTerm::identity({U}))});
    out.push_back(
        {"left adjunction: down zigzag", one(Draw({D}).cup(1, Ward::LeftWard).cap(0)), one(DiagramTerm::identity({D}))});
    out.push_back({"cyclicity: dot", one(Draw({D}).cup(0, Ward::RightWard).dot(1).cap(1)),
                   one(Draw({D}).cup(1, Ward::LeftWard).dot(1).cap(0))});
    out.push_back({"cyclicity: crossing",
                   one(Draw({D, D}).cup(0, Ward::RightWard).cup(1, Ward::RightWard).cross(2).cap(3).cap(2)),
                   one(Draw({D, D}).cup(2, Ward::LeftWard).cup(3, Ward::LeftWard).cross(2).cap(1).cap(0))});

    for (int r = 0; r <= 2; ++r) {
        Sum left, right;
        for (int s = 0; s <= r + std::abs(k) + 2; ++s) {
            left = cat(left, bubble_left(CW, r - s - 1, k, s));
            right = cat(right, bubble_right(CCW, r - s - 1, k, s, SymPoly(-1)));
        }
        out.push_back({"curl: left r=" + std::to_string(r), one(left_curl(r)), left});
        out.push_back({"curl: right r=" + std::to_string(r), one(right_curl(r)), right});
    }

    for (int r = -2; r <= 2; ++r) {
        Sum rhs1 = bubble_left(CW, r, k, 0), rhs2 = bubble_right(CCW, r, k, 0);
        for (int s = 0; s <= r + std::abs(k) + 4; ++s) {
            rhs1 = cat(rhs1, bubble_left(CW, r - s - 2, k, s, SymPoly(-(s + 1))));
            rhs2 = cat(rhs2, bubble_right(CCW, r - s - 2, k, s, SymPoly(-(s + 1))));
        }
        out.push_back({"bubble slide: clockwise r=" + std::to_string(r), bubble_right(CW, r, k, 0), rhs1});
        out.push_back({"bubble slide: counterclockwise r=" + std::to_string(r), bubble_left(CCW, r, k, 0), rhs2});
    }

    Sum braid = cat(one(Draw({U, D, U}).cross(0).cross(1).cross(0)), neg(one(Draw({U, D, U}).cross(1).cross(0).cross(1))));
    Sum braid_rhs;
    for (int r = 0; r <= R; ++r)
        for (int s = 0; r + s <= R; ++s)
            for (int t = 0; r + s + t <= R; ++t) {
                int m = -r - s - t - 3;
                if (k >= 2) {
                    XSym xs = slide_left_to_right(bval(CW, m, k));
                    for (std::size_t i = 0; i < xs.size(); ++i)
                        if (!xs[i].is_zero())
                            braid_rhs.emplace_back(
                                xs[i], Draw({U, D, U}).dot(0, s).dot(2, t + static_cast<int>(i)).cap(0).cup(0, Ward::LeftWard).dot(0, r));
                } else if (k <= -2) {
                    SymPoly v = bval(CCW, m, k);
                    if (!v.is_zero())
                        braid_rhs.emplace_back(v, Draw({U, D, U}).dot(0, t).dot(2, s).cap(1).cup(1, Ward::RightWard).dot(2, r));
                }
            }
    out.push_back({"alternating braid", braid, braid_rhs});
    return out;
}

std::vector<Relation> khovanov_relations() {
    std::vector<Relation> out;
    out.push_back({"khovanov: t' t = 1", one(Draw({U, D}).cross(0).cross(0)), one(DiagramTerm::identity({U, D}))});
    out.push_back({"khovanov: t t' = 1 - c d'", one(Draw({D, U}).cross(0).cross(0)),
                   cat(one(DiagramTerm::identity({D, U})), neg(one(Draw({D, U}).cap(0).cup(0, Ward::RightWard))))});
    out.push_back({"khovanov: left curl = 0", one(left_curl(0)), {}});
    out.push_back({"khovanov: undotted bubble = 1", one(clockwise_bubble(0)), one(DiagramTerm::identity({}))});
    out.push_back({"khovanov: leftward cup from rightward cup", one(Draw({}).cup(0, Ward::RightWard).dot(1).cross(0)),
                   one(Draw({}).cup(0, Ward::LeftWard))});
    out.push_back({"khovanov: right curl = dot minus delta", one(right_curl(0)),
                   cat(one(up(1)), neg(one(tensor(up(0), clockwise_bubble(1)))))});
    return out;
}

std::string compare_sides(const Sum& lhs, const Sum& rhs, const CategoryParams& p) {
    if (lhs.empty() && rhs.empty()) return {};
    const DiagramTerm& t0 = lhs.empty() ? rhs.front().second : lhs.front().second;
    ObjectWord x = t0.source(), y = validate(t0);
    NormalMorphism a = lhs.empty() ? NormalMorphism(x, y) : normalize_sum(lhs, x, y, p);
    NormalMorphism b = rhs.empty() ? NormalMorphism(x, y) : normalize_sum(rhs, x, y, p);
    if (a == b) return {};
    return "lhs " + a.str() + " | rhs " + b.str();
}

DiagramTerm random_term(std::mt19937_64& rng, const FuzzCaps& caps) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    ObjectWord w;
    int width = pick(0, std::min(caps.max_width, 3));
    for (int i = 0; i < width; ++i) w.push_back(pick(0, 2) ? Letter::Up : Letter::Down);
    ObjectWord src = w;
    std::vector<Slice> slices;
    int crossings = 0, dots = 0;
    int len = pick(0, caps.max_slices);
    for (int step = 0; step < len; ++step) {
        int n = static_cast<int>(w.size());
        std::vector<Slice> options;
        if (n > 0 && dots < caps.max_dots) {
            int i = pick(0, n - 1);
            options.push_back(Slice::dot(i, w[i], 1));
        }
        if (n >= 2 && crossings < caps.max_crossings) {
            int i = pick(0, n - 2);
            CrossKind k = w[i] == Letter::Up ? (w[i + 1] == Letter::Up ? CrossKind::UpUp : CrossKind::RightWard)
                                             : (w[i + 1] == Letter::Up ? CrossKind::LeftWard : CrossKind::DownDown);
            options.push_back(Slice::crossing(i, k));
            options.push_back(Slice::crossing(i, k));
        }
        if (n + 2 <= caps.max_width) options.push_back(Slice::cup(pick(0, n), pick(0, 1) ? Ward::RightWard : Ward::LeftWard));
        std::vector<int> caps_at;
        for (int i = 0; i + 1 < n; ++i)
            if (w[i] != w[i + 1]) caps_at.push_back(i);
        if (!caps_at.empty()) {
            int i = caps_at[static_cast<std::size_t>(pick(0, static_cast<int>(caps_at.size()) - 1))];
            options.push_back(Slice::cap(i, w[i] == Letter::Up ? Ward::RightWard : Ward::LeftWard));
        }
        if (options.empty()) break;
        Slice s = options[static_cast<std::size_t>(pick(0, static_cast<int>(options.size()) - 1))];
        if (s.type == SliceType::Dot) ++dots;
        if (s.type == SliceType::Cross) ++crossings;
        w = apply_slice(w, s);
        slices.push_back(s);
    }
    return DiagramTerm(src, std::move(slices));
}

CheckReport fuzz_normalizer(std::uint64_t seed, int count, const FuzzCaps& caps, const std::vector<CyclotomicData>& pool) {
    CheckReport rep;
    rep.suite = "fuzz";
    rep.seed = seed;
    rep.params = {{"count", std::to_string(count)},
                  {"max_crossings", std::to_string(caps.max_crossings)},
                  {"max_dots", std::to_string(caps.max_dots)}};
    std::string fs;
    for (const auto& c : pool) fs += (fs.empty() ? "" : ", ") + c.f.str();
    rep.params.emplace_back("pool", fs);

    std::mt19937_64 rng(seed);
    std::vector<DiagramTerm> terms{DiagramTerm::identity({}), clockwise_bubble(0), counterclockwise_bubble(1)};
    while (static_cast<int>(terms.size()) < count) terms.push_back(random_term(rng, caps));
    terms.resize(static_cast<std::size_t>(std::max(count, 0)));

    for (std::size_t i = 0; i < terms.size(); ++i) {
        const DiagramTerm& t = terms[i];
        std::string witness;
        bool pass = true;
        for (const auto& c : pool) {
            // the diagram also acts on higher levels once up strands sit to its right
            for (int level : {0, 1}) {
                DiagramTerm u = level ? tensor(t, DiagramTerm::identity(ObjectWord(level, Letter::Up))) : t;
                try {
                    CategoryParams p;
                    p.k = c.k;
                    NormalMorphism nm = normalize(u, p);
                    auto f = functor_for(c);
                    Matrix a = f->eval(u), b = f->eval_morphism(nm);
                    if (a != b) {
                        pass = false;
                        witness = "f=" + c.f.str() + " term " + render(u) + " eval " + a.str() + " normal form " +
                                  nm.str() + " evaluates to " + b.str();
                    }
                } catch (const std::exception& e) {
                    pass = false;
                    witness = "f=" + c.f.str() + " term " + render(u) + ": " + e.what();
                }
                if (!pass) break;
            }
            if (!pass) break;
        }
        rep.add("case " + std::to_string(i) + ": " + render(t), pass, witness);
    }
    return rep;
}

CheckReport check_defining(Functor& f, int nmax) {
    CheckReport rep;
    rep.suite = "defining";
    rep.params = {{"f", f.data().f.str()}, {"nmax", std::to_string(nmax)}};
    for (const auto& r : defining_relations()) matrix_case(rep, f, r, nmax);
    for (int j = 0; j <= nmax; ++j) {
        ObjectWord base(static_cast<std::size_t>(j), U);
        std::string label = "mackey map invertible [f=" + f.data().f.str() + ", up^" + std::to_string(j) + "]";
        try {
            Matrix a = f.mackey_map(base);
            auto inv = a.inverse();
            if (!inv) {
                rep.add(label, false, "singular " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " matrix");
                continue;
            }
            Matrix b = f.mackey_inverse(base);
            bool two_sided = a * b == Matrix::identity(a.rows()) && b * a == Matrix::identity(a.cols());
            rep.add(label, two_sided, "stored inverse does not invert the map");
        } catch (const std::exception& e) {
            rep.add(label, false, e.what());
        }
    }
    return rep;
}

CheckReport check_defining(const CyclotomicData& c, int nmax) { return check_defining(*functor_for(c), nmax); }

CheckReport check_derived(const CyclotomicData& c, int nmax) {
    CheckReport rep;
    rep.suite = "derived";
    rep.params = {{"f", c.f.str()}, {"nmax", std::to_string(nmax)}};
    for (int k = -2; k <= 2; ++k)
        for (const auto& r : derived_relations(k)) symbolic_case(rep, r, k);
    auto f = functor_for(c);
    for (const auto& r : derived_relations(c.k)) matrix_case(rep, *f, r, nmax);
    return rep;
}

CheckReport check_khovanov() {
    CheckReport rep;
    rep.suite = "khovanov";
    rep.params = {{"k", "-1"}, {"f", "u"}};
    std::vector<Relation> rels = khovanov_relations();
    for (const auto& r : defining_relations())
        if (r.name.rfind("hecke: dot", 0) != 0) rels.push_back(r);
    for (const auto& r : rels) symbolic_case(rep, r, -1);
    Functor f(CyclotomicData(Poly::parse("u")));
    for (const auto& r : rels) matrix_case(rep, f, r, 2);
    // with the degree one bubble specialized to zero, the dot is the right curl
    matrix_case(rep, f, {"khovanov: right curl = dot", one(right_curl(0)), one(up(1))}, 2);
    return rep;
}

CheckReport check_independence(const ObjectWord& x, const ObjectWord& y, int max_dots,
                               const std::vector<CyclotomicData>& pool) {
    CheckReport rep;
    rep.suite = "independence";
    rep.params = {{"source", word_str(x)}, {"target", word_str(y)}, {"max_dots", std::to_string(max_dots)}};
    if (pool.size() < 2) {
        rep.add("pool size", false, "independence needs at least two cyclotomic data, got " + std::to_string(pool.size()));
        return rep;
    }
    std::vector<NormalDiagram> basis = enumerate_basis(x, y, max_dots);
    std::vector<Matrix> rows(basis.size());
    for (const auto& c : pool) {
        auto f = functor_for(c);
        for (int j = 0; j <= 3; ++j) {
            ObjectWord ctx(static_cast<std::size_t>(j), U), cx = x, cy = y;
            cx.insert(cx.end(), ctx.begin(), ctx.end());
            cy.insert(cy.end(), ctx.begin(), ctx.end());
            if (j > 0 && static_cast<long>(f->dim(cx)) * f->dim(cy) > 400000) break;
            for (std::size_t i = 0; i < basis.size(); ++i) {
                Matrix m = f->eval(tensor(materialize(basis[i], x, y), DiagramTerm::identity(ctx)));
                Matrix flat(1, m.rows() * m.cols());
                for (int r = 0; r < m.rows(); ++r)
                    for (const auto& e : m.row(r)) flat.set(0, r * m.cols() + e.col, e.val);
                rows[i] = rows[i].rows() ? hstack({rows[i], flat}) : flat;
            }
        }
    }
    int rank = basis.empty() ? 0 : vstack(rows).rank();
    rep.add("rank of " + std::to_string(basis.size()) + " basis images", rank == static_cast<int>(basis.size()),
            "rank " + std::to_string(rank) + " of " + std::to_string(basis.size()));
    return rep;
}

CheckReport omega_transport(std::uint64_t seed, int count, const FuzzCaps& caps, int k) {
    CheckReport rep;
    rep.suite = "omega";
    rep.seed = seed;
    rep.params = {{"k", std::to_string(k)}, {"count", std::to_string(count)}};
    std::mt19937_64 rng(seed);
    CategoryParams p, q;
    p.k = k;
    q.k = -k;
    for (int i = 0; i < count; ++i) {
        DiagramTerm t = random_term(rng, caps);
        try {
            auto [w, sign] = omega(t);
            NormalMorphism a = normalize(w, q);
            a *= SymPoly(sign);
            NormalMorphism b = omega_image(normalize(t, p), p);
            rep.add("case " + std::to_string(i) + ": " + render(t), a == b, "direct " + a.str() + " | transported " + b.str());
        } catch (const std::exception& e) {
            rep.add("case " + std::to_string(i) + ": " + render(t), false, e.what());
        }
    }
    return rep;
}

}  // namespace heis
