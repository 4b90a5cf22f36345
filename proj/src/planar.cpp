#include "planar.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>

#include "heis/errors.hpp"

namespace heis::planar {

namespace {

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(static_cast<std::size_t>(n)) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) p[b] = a;
    }
};

SymPoly signed_h(int j) {
    SymPoly h = h_in_e(j);
    return j % 2 == 0 ? h : -h;
}

bool is_in(int he) { return he & 1; }

// Gap g sits between cut g and cut g + 1; returns one gap per class of gaps
// not separated by any chord, keyed by class.
std::vector<int> gap_classes(int cuts, const std::vector<std::pair<int, int>>& chords) {
    std::map<std::vector<bool>, int> ids;
    std::vector<int> cls(static_cast<std::size_t>(cuts));
    for (int g = 0; g < cuts; ++g) {
        std::vector<bool> sig;
        for (auto [a, b] : chords) {
            int lo = std::min(a, b), hi = std::max(a, b);
            sig.push_back(lo <= g && g < hi);
        }
        auto [it, fresh] = ids.emplace(sig, static_cast<int>(ids.size()));
        cls[g] = it->second;
    }
    return cls;
}

int central_gap(int cuts, const std::vector<std::pair<int, int>>& chords) {
    for (int g = 0; g < cuts; ++g) {
        int h = (g + 1) % cuts;
        bool paired = false;
        for (auto [a, b] : chords)
            if ((a == g && b == h) || (a == h && b == g)) paired = true;
        if (!paired) return g;
    }
    throw std::logic_error("no central gap");
}

}  // namespace

int PMap::next_dart(int d) const {
    const End& e = end_of(d ^ 1);
    if (e.node >= 0) {
        const Vertex& v = verts[e.node];
        return v.he[(e.slot + v.deg - 1) % v.deg];
    }
    return bnd[(e.slot + 1) % boundary_size()];
}

int PMap::add_edge(int dots) {
    edges.push_back(Edge{{}, {}, dots, true});
    return static_cast<int>(edges.size()) - 1;
}

int PMap::add_vertex(int deg) {
    Vertex v;
    v.deg = deg;
    verts.push_back(v);
    return static_cast<int>(verts.size()) - 1;
}

void PMap::attach(int he, End at) {
    end_of(he) = at;
    if (at.node >= 0)
        verts[at.node].he[at.slot] = he;
    else if (at.node == -1)
        bnd[at.slot] = he;
}

int PMap::crossings() const {
    return static_cast<int>(std::count_if(verts.begin(), verts.end(), [](const Vertex& v) { return v.alive && v.deg == 4; }));
}

void PMap::simplify() {
    for (std::size_t v = 0; v < verts.size(); ++v) {
        if (!verts[v].alive || verts[v].deg != 2) continue;
        int a = verts[v].he[0], b = verts[v].he[1];
        if ((a >> 1) == (b >> 1)) continue;
        int in = is_in(a) ? a : b, out = is_in(a) ? b : a;
        if (!is_in(in) || is_in(out)) throw std::logic_error("joint with inconsistent orientation");
        int ei = in >> 1, eo = out >> 1;
        End h = edges[eo].head;
        edges[ei].dots += edges[eo].dots;
        edges[eo].alive = false;
        verts[v].alive = false;
        attach(2 * ei + 1, h);
    }
}

void PMap::compact() {
    std::vector<int> vmap(verts.size(), -1), emap(edges.size(), -1);
    PMap out;
    out.n = n;
    out.m = m;
    out.bnd.assign(bnd.size(), -1);
    for (std::size_t v = 0; v < verts.size(); ++v)
        if (verts[v].alive) vmap[v] = out.add_vertex(verts[v].deg);
    for (std::size_t e = 0; e < edges.size(); ++e)
        if (edges[e].alive) emap[e] = out.add_edge(edges[e].dots);
    auto re = [&](End en) {
        if (en.node >= 0) en.node = vmap[en.node];
        return en;
    };
    for (std::size_t e = 0; e < edges.size(); ++e) {
        if (!edges[e].alive) continue;
        out.attach(2 * emap[e], re(edges[e].tail));
        out.attach(2 * emap[e] + 1, re(edges[e].head));
    }
    *this = std::move(out);
}

Faces faces(const PMap& m) {
    Faces f;
    int darts = 2 * static_cast<int>(m.edges.size());
    f.of.assign(static_cast<std::size_t>(darts), -1);
    for (int d = 0; d < darts; ++d) {
        if (!m.edges[d >> 1].alive || f.of[d] >= 0) continue;
        int id = static_cast<int>(f.darts.size());
        f.darts.emplace_back();
        bool outer = false;
        int x = d;
        do {
            if (f.of[x] >= 0) throw std::logic_error("faces: broken rotation system");
            f.of[x] = id;
            f.darts.back().push_back(x);
            if (m.end_of(x).node == -1) outer = true;
            x = m.next_dart(x);
        } while (x != d);
        f.outer.push_back(outer);
    }
    return f;
}

std::vector<int> code(const PMap& m, bool with_dots) {
    std::vector<int> idx(m.verts.size(), -1), start(m.verts.size(), 0), order;
    auto visit = [&](int he) -> std::pair<int, int> {
        const End& en = m.end_of(he);
        if (en.node < 0) return {-1 - en.slot, 0};
        if (idx[en.node] < 0) {
            idx[en.node] = static_cast<int>(order.size());
            start[en.node] = en.slot;
            order.push_back(en.node);
        }
        int deg = m.verts[en.node].deg;
        return {idx[en.node], (en.slot - start[en.node] + deg) % deg};
    };
    std::vector<int> out{m.n, m.m};
    auto emit = [&](int he) {
        auto [node, slot] = visit(he ^ 1);
        out.push_back(he & 1);
        out.push_back(node);
        out.push_back(slot);
        if (with_dots) out.push_back(m.edges[he >> 1].dots);
    };
    for (int b = 0; b < m.boundary_size(); ++b) emit(m.bnd[b]);
    for (std::size_t i = 0; i < order.size(); ++i) {
        const Vertex& v = m.verts[order[i]];
        out.push_back(v.deg);
        for (int k = 0; k < v.deg; ++k) emit(v.he[(start[order[i]] + k) % v.deg]);
    }
    return out;
}

void Engine::tick() {
    if (++steps_ > p_.max_steps) throw ResourceLimit("normalize: rewrite step cap " + std::to_string(p_.max_steps) + " exceeded");
}

std::vector<Term> Engine::build(const DiagramTerm& t, const std::vector<Marker>& markers) {
    const ObjectWord& src = t.source();
    PMap M;
    M.n = static_cast<int>(src.size());
    M.m = static_cast<int>(t.target().size());
    const int N = M.boundary_size();
    M.bnd.assign(static_cast<std::size_t>(N), -1);

    constexpr int kLeft = -1000000;
    std::vector<int> open;
    ObjectWord word = src;
    // component bookkeeping over edges: open positions and boundary contact
    std::vector<int> comp, pend;
    std::vector<bool> touches;
    auto find = [&](int e) {
        while (comp[e] != e) e = comp[e] = comp[comp[e]];
        return e;
    };
    auto fresh = [&](int dots, int p, bool b) {
        int e = M.add_edge(dots);
        comp.push_back(e);
        pend.push_back(p);
        touches.push_back(b);
        return e;
    };
    auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return a;
        comp[b] = a;
        pend[a] += pend[b];
        touches[a] = touches[a] || touches[b];
        return a;
    };
    auto pending = [&](int p) { return word[p] == Letter::Up ? 2 * open[p] + 1 : 2 * open[p]; };
    // dart whose left face is the region just right of position p - 1
    auto gap_dart = [&](int p) {
        if (p == 0) return N > 0 ? kLeft : -1;
        return word[p - 1] == Letter::Up ? 2 * open[p - 1] + 1 : 2 * open[p - 1];
    };

    for (int i = 0; i < M.n; ++i) {
        int e = fresh(0, 1, true);
        M.attach(src[i] == Letter::Up ? 2 * e : 2 * e + 1, End{-1, i});
        open.push_back(e);
    }

    std::vector<std::pair<int, int>> unions;
    std::vector<std::pair<int, SymPoly>> marks;
    auto place_markers = [&](int height) {
        for (const auto& mk : markers)
            if (mk.height == height) marks.emplace_back(gap_dart(mk.gap), mk.value);
    };

    const auto& slices = t.slices();
    for (std::size_t h = 0; h < slices.size(); ++h) {
        place_markers(static_cast<int>(h));
        const Slice& s = slices[h];
        int p = s.pos;
        switch (s.type) {
            case SliceType::Dot: M.edges[open[p]].dots += s.mult; break;
            case SliceType::Cross: {
                int v = M.add_vertex(4);
                Letter l = word[p], r = word[p + 1];
                M.attach(pending(p), End{v, 0});
                M.attach(pending(p + 1), End{v, 1});
                int tr = fresh(0, 0, false), tl = fresh(0, 0, false);
                M.attach(l == Letter::Up ? 2 * tr : 2 * tr + 1, End{v, 2});
                M.attach(r == Letter::Up ? 2 * tl : 2 * tl + 1, End{v, 3});
                int c = unite(unite(open[p], open[p + 1]), unite(tr, tl));
                (void)c;
                open[p] = tl;
                open[p + 1] = tr;
                word[p] = r;
                word[p + 1] = l;
                break;
            }
            case SliceType::Cup: {
                int e = fresh(0, 2, false);
                open.insert(open.begin() + p, {e, e});
                ObjectWord lt = s.target_letters();
                word.insert(word.begin() + p, lt.begin(), lt.end());
                break;
            }
            case SliceType::Cap: {
                int j = M.add_vertex(2);
                int el = open[p], er = open[p + 1];
                int up_left = word[p] == Letter::Up ? 2 * el : 2 * el + 1;
                int host = gap_dart(p);
                M.attach(pending(p), End{j, 0});
                M.attach(pending(p + 1), End{j, 1});
                int c = unite(el, er);
                pend[c] -= 2;
                if (pend[c] == 0 && !touches[c]) unions.emplace_back(up_left, host);
                open.erase(open.begin() + p, open.begin() + p + 2);
                word.erase(word.begin() + p, word.begin() + p + 2);
                break;
            }
        }
    }
    place_markers(static_cast<int>(slices.size()));
    for (int j = 0; j < M.m; ++j) M.attach(pending(j), End{-1, M.target_index(j)});

    int extra = N == 0 ? 1 : 0;
    for (auto& u : unions)
        if (u.second == kLeft) u.second = M.bnd[0];
    for (auto& mk : marks)
        if (mk.first == kLeft) mk.first = M.bnd[0];
    return settle(std::move(M), unions, extra, marks, N == 0 ? -1 : 0, SymPoly(1));
}

std::vector<Term> Engine::settle(PMap map, const std::vector<std::pair<int, int>>& unions, int extra,
                                 const std::vector<std::pair<int, SymPoly>>& markers, int outer, const SymPoly& base) {
    if (base.is_zero()) return {};
    const int V = static_cast<int>(map.verts.size()), E = static_cast<int>(map.edges.size()), N = map.boundary_size();
    const int BN = V + E;
    UnionFind cu(V + E + 1);
    bool any_edge = false;
    for (int e = 0; e < E; ++e) {
        if (!map.edges[e].alive) continue;
        any_edge = true;
        for (const End* en : {&map.edges[e].tail, &map.edges[e].head}) cu.unite(V + e, en->node >= 0 ? en->node : BN);
    }
    int bcomp = cu.find(BN);
    bool floating = N == 0 && any_edge;
    for (int e = 0; e < E && !floating; ++e)
        if (map.edges[e].alive && cu.find(V + e) != bcomp) floating = true;
    if (!floating && markers.empty()) {
        map.simplify();
        map.compact();
        return {Term{std::move(map), base}};
    }

    Faces F = faces(map);
    const int FC = static_cast<int>(F.darts.size());
    UnionFind ru(FC + extra);
    auto node = [&](int x) { return x >= 0 ? F.of[x] : FC + (-1 - x); };
    for (auto [a, b] : unions) ru.unite(node(a), node(b));

    std::vector<int> face_comp(static_cast<std::size_t>(FC));
    std::map<int, std::vector<int>> comp_faces, region_faces;
    for (int f = 0; f < FC; ++f) {
        face_comp[f] = cu.find(V + (F.darts[f][0] >> 1));
        comp_faces[face_comp[f]].push_back(f);
        region_faces[ru.find(f)].push_back(f);
    }

    std::map<int, int> parent, ext;
    std::vector<int> order;
    std::set<int> seen_region, seen_comp;
    std::deque<int> queue;
    auto open_comp = [&](int c, int via) {
        seen_comp.insert(c);
        for (int f : comp_faces[c]) {
            if (f == via) continue;
            int r = ru.find(f);
            if (!seen_region.insert(r).second) throw std::logic_error("settle: inconsistent nesting");
            queue.push_back(r);
        }
    };
    if (N > 0) {
        open_comp(bcomp, -1);
    } else {
        int r = ru.find(node(outer));
        seen_region.insert(r);
        queue.push_back(r);
    }
    while (!queue.empty()) {
        int r = queue.front();
        queue.pop_front();
        for (int f : region_faces[r]) {
            int c = face_comp[f];
            if (seen_comp.count(c)) continue;
            parent[c] = r;
            ext[c] = f;
            order.push_back(c);
            open_comp(c, f);
        }
    }
    if (seen_comp.size() != comp_faces.size()) throw std::logic_error("settle: unreachable component");

    std::map<int, SymPoly> value;
    auto mul_into = [&](int r, const SymPoly& v) {
        auto it = value.find(r);
        if (it == value.end())
            value.emplace(r, v);
        else
            it->second = it->second * v;
    };
    for (const auto& [x, v] : markers) mul_into(ru.find(node(x)), v);

    std::vector<int> comp_of_edge(static_cast<std::size_t>(E), -1);
    for (int e = 0; e < E; ++e)
        if (map.edges[e].alive) comp_of_edge[e] = cu.find(V + e);

    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int c = *it;
        std::vector<std::pair<int, SymPoly>> inner;
        for (int f : comp_faces[c]) {
            if (f == ext[c]) continue;
            auto vit = value.find(ru.find(f));
            if (vit == value.end()) continue;
            inner.emplace_back(F.darts[f][0], vit->second);
            value.erase(vit);
        }
        SymPoly v = eval_closed(map, comp_of_edge, c, F.darts[ext[c]][0], inner);
        if (v.is_zero()) return {};
        mul_into(parent[c], v);
    }

    if (N == 0) {
        SymPoly total = base;
        for (const auto& [r, v] : value) total = total * v;
        if (total.is_zero()) return {};
        PMap empty;
        return {Term{std::move(empty), total}};
    }

    for (int e = 0; e < E; ++e)
        if (map.edges[e].alive && comp_of_edge[e] != bcomp) map.edges[e].alive = false;
    for (int v = 0; v < V; ++v)
        if (map.verts[v].alive && cu.find(v) != bcomp) map.verts[v].alive = false;

    std::vector<Term> out{Term{map, base}};
    for (int f : comp_faces[bcomp]) {
        auto vit = value.find(ru.find(f));
        if (vit == value.end()) continue;
        std::vector<Term> next;
        for (const Term& t : out)
            for (Term& r : slide_to_right(t.map, F.darts[f][0], vit->second, t.coeff)) next.push_back(std::move(r));
        out = std::move(next);
        value.erase(vit);
    }
    if (!value.empty()) throw std::logic_error("settle: coefficient left in an unreachable region");
    for (Term& t : out) {
        t.map.simplify();
        t.map.compact();
    }
    return out;
}

std::vector<Term> Engine::slide_to_right(const PMap& map, int from_dart, const SymPoly& value, const SymPoly& base) {
    Faces F = faces(map);
    int src = F.of[from_dart], dst = F.of[map.right_dart()];
    std::vector<int> via(F.darts.size(), -2);
    via[src] = -1;
    std::deque<int> q{src};
    while (!q.empty() && via[dst] == -2) {
        int f = q.front();
        q.pop_front();
        for (int d : F.darts[f]) {
            int g = F.of[d ^ 1];
            if (via[g] != -2) continue;
            via[g] = d;
            q.push_back(g);
        }
    }
    if (via[dst] == -2) throw std::logic_error("slide: right region unreachable");
    std::vector<int> path;
    for (int f = dst; via[f] != -1; f = F.of[via[f]]) path.push_back(via[f]);
    std::reverse(path.begin(), path.end());

    std::map<std::map<int, int>, SymPoly> states{{{}, value}};
    for (int d : path) {
        int e = d >> 1;
        std::map<std::map<int, int>, SymPoly> next;
        for (const auto& [adds, v] : states) {
            XSym xs = (d & 1) ? slide_right_to_left(v) : slide_left_to_right(v);
            for (std::size_t s = 0; s < xs.size(); ++s) {
                if (xs[s].is_zero()) continue;
                auto a = adds;
                if (s > 0) a[e] += static_cast<int>(s);
                auto it = next.find(a);
                if (it == next.end())
                    next.emplace(std::move(a), xs[s]);
                else
                    it->second += xs[s];
            }
        }
        states = std::move(next);
    }
    std::vector<Term> out;
    for (const auto& [adds, v] : states) {
        if (v.is_zero()) continue;
        Term t{map, base * v};
        for (auto [e, s] : adds) t.map.edges[e].dots += s;
        out.push_back(std::move(t));
    }
    return out;
}

SymPoly Engine::eval_closed(const PMap& map, const std::vector<int>& comp_of_edge, int comp, int ext_dart,
                            const std::vector<std::pair<int, SymPoly>>& inner) {
    const int cut = ext_dart >> 1;
    PMap D;
    D.n = 1;
    D.m = 1;
    D.bnd.assign(2, -1);
    std::vector<int> vmap(map.verts.size(), -1), emap(map.edges.size(), -1);
    auto vert = [&](End en) {
        if (vmap[en.node] < 0) vmap[en.node] = D.add_vertex(map.verts[en.node].deg);
        return End{vmap[en.node], en.slot};
    };
    for (std::size_t e = 0; e < map.edges.size(); ++e)
        if (comp_of_edge[e] == comp && static_cast<int>(e) != cut) emap[e] = D.add_edge(map.edges[e].dots);
    int ea = D.add_edge(0), eb = D.add_edge(map.edges[cut].dots);
    for (std::size_t e = 0; e < map.edges.size(); ++e) {
        if (emap[e] < 0) continue;
        D.attach(2 * emap[e], vert(map.edges[e].tail));
        D.attach(2 * emap[e] + 1, vert(map.edges[e].head));
    }
    D.attach(2 * ea, vert(map.edges[cut].tail));
    D.attach(2 * ea + 1, End{-1, 1});
    D.attach(2 * eb, End{-1, 0});
    D.attach(2 * eb + 1, vert(map.edges[cut].head));
    auto dart = [&](int x) {
        int e = x >> 1;
        if (e == cut) return (x & 1) ? 2 * eb + 1 : 2 * ea;
        return 2 * emap[e] + (x & 1);
    };

    std::vector<Term> terms{Term{D, SymPoly(1)}};
    for (const auto& [d, v] : inner) {
        std::vector<Term> next;
        for (const Term& t : terms)
            for (Term& r : slide_to_right(t.map, dart(d), v, t.coeff)) next.push_back(std::move(r));
        terms = std::move(next);
    }
    ObjectWord up{Letter::Up};
    NormalMorphism nm = run(std::move(terms), up, up);

    bool exterior_right = ext_dart & 1;
    SymPoly out;
    for (const auto& [nd, c] : nm.terms()) {
        int j = nd.dots[0];
        if (exterior_right) {
            out += c * bubble_to_sym({Orientation::Clockwise, j, p_.k});
        } else {
            XSym xs = slide_right_to_left(c);
            for (std::size_t m = 0; m < xs.size(); ++m)
                if (!xs[m].is_zero()) out += xs[m] * bubble_to_sym({Orientation::CounterClockwise, j + static_cast<int>(m), p_.k});
        }
    }
    return out;
}

PMap Engine::apply_template(const PMap& old, const Region& r, const std::vector<Chord>& chords) {
    PMap m = old;
    for (int v : r.verts) m.verts[v].alive = false;
    for (int e : r.internal) m.edges[e].alive = false;
    std::vector<int> joint;
    for (int h : r.cuts) {
        int j = m.add_vertex(2);
        m.attach(h, End{j, 0});
        joint.push_back(j);
    }
    std::map<int, std::vector<std::pair<int, int>>> at_label;  // far cut, half-edge
    std::map<int, int> vertex_of;
    for (const Chord& c : chords) {
        if (!is_in(r.cuts[c.in]) || is_in(r.cuts[c.out])) throw std::logic_error("template chord against orientation");
        int segs = static_cast<int>(c.xs.size()) + 1;
        for (int i = 0; i < segs; ++i) {
            int e = m.add_edge(i == 0 ? c.dots : 0);
            if (i == 0)
                m.attach(2 * e, End{joint[c.in], 1});
            else
                at_label[c.xs[i - 1]].emplace_back(c.out, 2 * e);
            if (i == segs - 1)
                m.attach(2 * e + 1, End{joint[c.out], 1});
            else
                at_label[c.xs[i]].emplace_back(c.in, 2 * e + 1);
        }
    }
    for (auto& [label, ends] : at_label) {
        if (ends.size() != 4) throw std::logic_error("template crossing without two strands");
        std::sort(ends.begin(), ends.end());
        int v = m.add_vertex(4);
        for (int s = 0; s < 4; ++s) m.attach(ends[s].second, End{v, s});
    }
    return m;
}

std::vector<Term> Engine::splice(const Term& t, const Region& r, const std::vector<Variant>& variants) {
    Faces old = faces(t.map);
    const int C = static_cast<int>(r.cuts.size());
    std::vector<Term> out;
    for (const Variant& var : variants) {
        PMap nm = apply_template(t.map, r, var.chords);
        std::vector<std::pair<int, int>> unions;
        for (int i = 0; i < C; ++i) unions.emplace_back(r.cuts[i], -1 - old.of[r.cuts[i]]);
        bool plain = std::all_of(var.chords.begin(), var.chords.end(), [](const Chord& c) { return c.xs.empty(); });
        if (plain) {
            std::vector<std::pair<int, int>> pairs;
            for (const Chord& c : var.chords) pairs.emplace_back(c.in, c.out);
            std::vector<int> cls = gap_classes(C, pairs);
            std::map<int, int> first;
            for (int g = 0; g < C; ++g) {
                auto [it, fresh] = first.emplace(cls[g], g);
                if (!fresh) unions.emplace_back(r.cuts[it->second], r.cuts[g]);
            }
        } else if (!var.coeffs.empty()) {
            throw std::logic_error("coefficients in a crossing template");
        }
        std::vector<std::pair<int, SymPoly>> marks;
        for (const auto& [g, v] : var.coeffs) marks.emplace_back(r.cuts[g], v);
        for (Term& res : settle(std::move(nm), unions, static_cast<int>(old.darts.size()), marks, -1, t.coeff * var.scale))
            out.push_back(std::move(res));
    }
    return out;
}

Engine::Region Engine::face_region(const PMap& m, const std::vector<int>& darts) const {
    Region r;
    for (int d : darts) {
        const End& en = m.end_of(d ^ 1);
        const Vertex& v = m.verts[en.node];
        r.verts.push_back(en.node);
        r.internal.push_back(d >> 1);
        r.cuts.push_back(v.he[(en.slot + 1) % 4]);
        r.cuts.push_back(v.he[(en.slot + 2) % 4]);
    }
    return r;
}

Engine::Region Engine::vertex_region(const PMap& m, int v) const {
    Region r;
    r.verts = {v};
    for (int s = 0; s < 4; ++s) r.cuts.push_back(m.verts[v].he[s]);
    return r;
}

int Engine::through(const PMap& m, const Region& r, int cut, std::vector<int>* path) const {
    End en = m.end_of(cut);
    for (int guard = 0; guard < 64; ++guard) {
        if (path) path->push_back(en.node);
        int nh = m.verts[en.node].he[(en.slot + 2) % 4];
        auto it = std::find(r.cuts.begin(), r.cuts.end(), nh);
        if (it != r.cuts.end()) return static_cast<int>(it - r.cuts.begin());
        en = m.end_of(nh ^ 1);
    }
    throw std::logic_error("through: strand does not leave the region");
}

std::vector<Term> Engine::curl(const Term& t, int d) {
    const End& en = t.map.end_of(d ^ 1);
    const Vertex& v = t.map.verts[en.node];
    Region r;
    r.verts = {en.node};
    r.internal = {d >> 1};
    r.cuts = {v.he[(en.slot + 1) % 4], v.he[(en.slot + 2) % 4]};
    int in = is_in(r.cuts[0]) ? 0 : 1, out = 1 - in;
    int dots = t.map.edges[d >> 1].dots;
    int k = p_.k;
    std::vector<Variant> vars;
    if ((d & 1) == 0) {
        for (int s = 0; s <= dots + k; ++s) vars.push_back({{{in, out, {}, s}}, {{1, signed_h(dots - s + k)}}, SymPoly(1)});
    } else {
        for (int s = 0; s <= dots - k; ++s) vars.push_back({{{in, out, {}, s}}, {{1, SymPoly::e(dots - s - k)}}, SymPoly(1)});
    }
    return splice(t, r, vars);
}

std::vector<Term> Engine::bigon(const Term& t, const std::vector<int>& darts) {
    Region r = face_region(t.map, darts);
    std::vector<int> ins;
    for (int i = 0; i < 4; ++i)
        if (is_in(r.cuts[i])) ins.push_back(i);
    int ia = ins[0], ib = ins[1];
    int oa = through(t.map, r, r.cuts[ia]), ob = through(t.map, r, r.cuts[ib]);
    std::vector<Variant> vars{{{{ia, oa, {}, 0}, {ib, ob, {}, 0}}, {}, SymPoly(1)}};
    int pa = darts[0] & 1, pb = darts[1] & 1;
    if (pa == pb) {
        bool ccw = pa == 0;
        int top = ccw ? p_.k - 1 : -p_.k - 1;
        int g = central_gap(4, {{ia, ob}, {ib, oa}});
        for (int a = 0; a <= top; ++a)
            for (int b = 0; a + b <= top; ++b) {
                int j = top - a - b;
                SymPoly c = ccw ? signed_h(j) : -SymPoly::e(j);
                vars.push_back({{{ia, ob, {}, b}, {ib, oa, {}, a}}, {{g, c}}, SymPoly(1)});
            }
    }
    return splice(t, r, vars);
}

std::vector<Term> Engine::flip(const Term& t, const std::vector<int>& darts) {
    Region r = face_region(t.map, darts);
    Variant fl;
    std::vector<int> ins;
    for (int i = 0; i < 6; ++i) {
        if (!is_in(r.cuts[i])) continue;
        ins.push_back(i);
        std::vector<int> path;
        int o = through(t.map, r, r.cuts[i], &path);
        std::reverse(path.begin(), path.end());
        fl.chords.push_back({i, o, path, 0});
    }
    std::vector<Variant> vars{fl};
    int parity = darts[0] & 1;
    bool cyclic = (darts[1] & 1) == parity && (darts[2] & 1) == parity;
    int k = p_.k;
    if (cyclic && std::abs(k) >= 2) {
        int top = std::abs(k) - 2;
        int sign = parity == 0 ? 1 : -1;
        std::vector<std::pair<int, int>> pairs;
        for (int i : ins) pairs.emplace_back(i, k >= 2 ? (i + 1) % 6 : (i + 5) % 6);
        for (auto [a, b] : pairs)
            if (is_in(r.cuts[b])) throw std::logic_error("alternating triangle with non-alternating cuts");
        int g = central_gap(6, pairs);
        for (int a = 0; a <= top; ++a)
            for (int b = 0; a + b <= top; ++b)
                for (int c = 0; a + b + c <= top; ++c) {
                    int j = top - a - b - c;
                    SymPoly coef = k >= 2 ? signed_h(j) : -SymPoly::e(j);
                    Variant v{{{pairs[0].first, pairs[0].second, {}, a},
                               {pairs[1].first, pairs[1].second, {}, b},
                               {pairs[2].first, pairs[2].second, {}, c}},
                              {{g, coef}},
                              SymPoly(sign)};
                    vars.push_back(std::move(v));
                }
    }
    return splice(t, r, vars);
}

PMap Engine::flip_structure(const PMap& m, const std::vector<int>& darts) const {
    Region r = face_region(m, darts);
    std::vector<Chord> chords;
    for (int i = 0; i < 6; ++i) {
        if (!is_in(r.cuts[i])) continue;
        std::vector<int> path;
        int o = through(m, r, r.cuts[i], &path);
        std::reverse(path.begin(), path.end());
        chords.push_back({i, o, path, 0});
    }
    PMap out = apply_template(m, r, chords);
    out.simplify();
    out.compact();
    return out;
}

std::vector<Term> Engine::smoothing(const Term& t, int v, const SymPoly& scale) {
    Region r = vertex_region(t.map, v);
    std::vector<int> ins;
    for (int s = 0; s < 4; ++s)
        if (is_in(r.cuts[s])) ins.push_back(s);
    int i = ins[0], j = ins[1];
    Variant var{{{i, (j + 2) % 4, {}, 0}, {j, (i + 2) % 4, {}, 0}}, {}, scale};
    return splice(t, r, {var});
}

std::vector<Term> Engine::move_dot(const Term& t, int edge, bool forward) {
    const PMap& m = t.map;
    const Edge& E = m.edges[edge];
    End en = forward ? E.head : E.tail;
    const Vertex& w = m.verts[en.node];
    int other = w.he[(en.slot + 2) % 4] >> 1;
    int a_in = forward ? en.slot : (en.slot + 2) % 4;
    int eps = is_in(w.he[(a_in + 3) % 4]) ? 1 : -1;

    Term moved = t;
    moved.map.edges[edge].dots -= 1;
    Term base = moved;
    moved.map.edges[other].dots += 1;
    std::vector<Term> out{std::move(moved)};
    for (Term& s : smoothing(base, en.node, SymPoly(forward ? -eps : eps))) out.push_back(std::move(s));
    return out;
}

std::vector<std::vector<int>> Engine::triangles(const PMap& m, const Faces& f) const {
    std::vector<std::vector<int>> out;
    for (std::size_t i = 0; i < f.darts.size(); ++i) {
        const auto& d = f.darts[i];
        if (f.outer[i] || d.size() != 3) continue;
        std::set<int> vs;
        bool ok = true;
        for (int x : d) {
            int v = m.end_of(x ^ 1).node;
            if (v < 0 || m.verts[v].deg != 4) ok = false;
            vs.insert(v);
        }
        if (ok && vs.size() == 3) out.push_back(d);
    }
    return out;
}

namespace {

bool is_bigon(const PMap& m, const std::vector<int>& d) {
    if (d.size() != 2) return false;
    int a = m.end_of(d[0] ^ 1).node, b = m.end_of(d[1] ^ 1).node;
    return a >= 0 && b >= 0 && a != b;
}

bool has_small_face(const PMap& m) {
    Faces f = faces(m);
    for (std::size_t i = 0; i < f.darts.size(); ++i) {
        if (f.outer[i]) continue;
        if (f.darts[i].size() == 1 || is_bigon(m, f.darts[i])) return true;
    }
    return false;
}

}  // namespace

std::vector<int> Engine::next_flip(const PMap& m, bool to_small_face, const std::vector<int>& target) {
    std::vector<int> suffix{to_small_face ? -1 : -2};
    if (!to_small_face) suffix.insert(suffix.end(), target.begin(), target.end());
    auto key_of = [&](std::vector<int> c) {
        c.insert(c.end(), suffix.begin(), suffix.end());
        return c;
    };
    std::vector<int> root = code(m, false);
    auto memo = flip_memo_.find(key_of(root));
    if (memo == flip_memo_.end()) {
        std::map<std::vector<int>, std::vector<int>> parent;
        std::deque<PMap> queue{m};
        parent[root] = {};
        std::vector<int> found;
        while (!queue.empty()) {
            PMap s = std::move(queue.front());
            queue.pop_front();
            std::vector<int> cs = code(s, false);
            if (cs != root && (to_small_face ? has_small_face(s) : cs == target)) {
                found = cs;
                break;
            }
            Faces F = faces(s);
            for (const auto& tri : triangles(s, F)) {
                PMap c = flip_structure(s, tri);
                std::vector<int> cc = code(c, false);
                if (parent.count(cc)) continue;
                parent[cc] = cs;
                queue.push_back(std::move(c));
                if (parent.size() > 200000) throw ResourceLimit("normalize: flip search too large");
            }
        }
        if (found.empty()) return {};
        for (std::vector<int> c = found; c != root;) {
            const std::vector<int>& p = parent[c];
            flip_memo_[key_of(p)] = c;
            c = p;
        }
        memo = flip_memo_.find(key_of(root));
    }
    const std::vector<int> want = memo->second;
    Faces F = faces(m);
    for (const auto& tri : triangles(m, F))
        if (code(flip_structure(m, tri), false) == want) return tri;
    throw std::logic_error("next_flip: memoized move not found");
}

const std::vector<int>& Engine::target_code(const Matching& mt, const ObjectWord& x, const ObjectWord& y) {
    auto key = std::make_tuple(x, y, mt);
    auto it = targets_.find(key);
    if (it != targets_.end()) return it->second;
    NormalDiagram nd{mt, std::vector<int>(mt.pairs.size(), 0)};
    std::vector<Term> b = build(materialize(nd, x, y));
    if (b.size() != 1) throw std::logic_error("reduced lift did not build to a single diagram");
    return targets_[key] = code(b[0].map, false);
}

Engine::Strands Engine::strands(const PMap& m) const {
    Strands st;
    const int N = m.boundary_size();
    auto endpoint = [&](int b) { return b < m.n ? b : m.n + (N - 1 - b); };
    std::vector<bool> seen(m.edges.size(), false);
    std::map<int, std::vector<int>> through_vertex;
    struct Raw {
        std::pair<int, int> pair;
        std::vector<int> path;
    };
    std::vector<Raw> raw;
    for (int b = 0; b < N; ++b) {
        int h = m.bnd[b];
        if (h & 1) continue;
        Raw r;
        int id = static_cast<int>(raw.size());
        int e = h >> 1;
        std::set<int> mine;
        for (int guard = 0;; ++guard) {
            if (guard > 100000) throw std::logic_error("strands: runaway path");
            r.path.push_back(e);
            seen[e] = true;
            const End& hd = m.edges[e].head;
            if (hd.node < 0) {
                r.pair = {endpoint(b), endpoint(hd.slot)};
                break;
            }
            if (!mine.insert(hd.node).second) st.reduced = false;
            through_vertex[hd.node].push_back(id);
            e = m.verts[hd.node].he[(hd.slot + 2) % 4] >> 1;
        }
        raw.push_back(std::move(r));
    }
    for (std::size_t e = 0; e < m.edges.size(); ++e)
        if (m.edges[e].alive && !seen[e]) st.reduced = false;
    std::map<std::pair<int, int>, int> meets;
    for (const auto& [v, ids] : through_vertex) {
        if (ids.size() != 2) continue;
        if (++meets[{std::min(ids[0], ids[1]), std::max(ids[0], ids[1])}] > 1) st.reduced = false;
    }
    std::sort(raw.begin(), raw.end(), [](const Raw& a, const Raw& b) { return a.pair < b.pair; });
    for (auto& r : raw) {
        auto [s, e] = r.pair;
        int dist;
        if (s >= m.n || e >= m.n)
            dist = std::min(s >= m.n ? s : 1 << 30, e >= m.n ? e : 1 << 30);
        else
            dist = std::min(s, e);
        st.matching.pairs.push_back(r.pair);
        st.dist_at_end.push_back(dist == e);
        st.paths.push_back(std::move(r.path));
    }
    return st;
}

std::vector<Term> Engine::clear_or_flip(const Term& t, const std::vector<int>& tri) {
    for (int d : tri)
        if (t.map.edges[d >> 1].dots > 0) return move_dot(t, d >> 1, true);
    return flip(t, tri);
}

std::vector<Term> Engine::step(const Term& t, const ObjectWord& x, const ObjectWord& y, NormalMorphism& out) {
    const PMap& m = t.map;
    for (const Edge& e : m.edges)
        if (e.alive && e.dots > p_.max_dots) throw ResourceLimit("normalize: dot cap " + std::to_string(p_.max_dots) + " exceeded");
    Faces F = faces(m);
    for (std::size_t i = 0; i < F.darts.size(); ++i)
        if (!F.outer[i] && F.darts[i].size() == 1) return curl(t, F.darts[i][0]);
    for (std::size_t i = 0; i < F.darts.size(); ++i) {
        if (F.outer[i] || !is_bigon(m, F.darts[i])) continue;
        for (int d : F.darts[i])
            if (m.edges[d >> 1].dots > 0) return move_dot(t, d >> 1, true);
        return bigon(t, F.darts[i]);
    }
    Strands st = strands(m);
    if (!st.reduced) {
        auto tri = next_flip(m, true, {});
        if (tri.empty()) throw std::logic_error("normalize: no reduction move found");
        return clear_or_flip(t, tri);
    }
    const auto& target = target_code(st.matching, x, y);
    if (code(m, false) != target) {
        auto tri = next_flip(m, false, target);
        if (tri.empty()) throw std::logic_error("normalize: reduced lift unreachable by braid moves");
        return clear_or_flip(t, tri);
    }
    NormalDiagram nd{st.matching, {}};
    for (std::size_t s = 0; s < st.paths.size(); ++s) {
        const auto& path = st.paths[s];
        int dist = st.dist_at_end[s] ? static_cast<int>(path.size()) - 1 : 0;
        for (int i = 0; i < static_cast<int>(path.size()); ++i)
            if (i != dist && m.edges[path[i]].dots > 0) return move_dot(t, path[i], dist > i);
        nd.dots.push_back(m.edges[path[dist]].dots);
    }
    out.add(nd, t.coeff);
    return {};
}

NormalMorphism Engine::run(std::vector<Term> terms, const ObjectWord& x, const ObjectWord& y) {
    NormalMorphism out(x, y);
    using Key = std::pair<int, std::vector<int>>;
    std::map<Key, Term> work;
    auto push = [&](Term t) {
        if (t.coeff.is_zero()) return;
        t.map.simplify();
        t.map.compact();
        Key key{-t.map.crossings(), code(t.map, true)};
        auto it = work.find(key);
        if (it == work.end()) {
            work.emplace(std::move(key), std::move(t));
        } else {
            it->second.coeff += t.coeff;
            if (it->second.coeff.is_zero()) work.erase(it);
        }
    };
    for (Term& t : terms) push(std::move(t));
    while (!work.empty()) {
        auto it = work.begin();
        Term t = std::move(it->second);
        work.erase(it);
        tick();
        for (Term& r : step(t, x, y, out)) push(std::move(r));
    }
    return out;
}

}  // namespace heis::planar
