#include "heis/normalform.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "heis/errors.hpp"
#include "planar.hpp"

namespace heis {

void NormalMorphism::add(const NormalDiagram& d, const SymPoly& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(d);
    if (it == terms_.end()) {
        terms_.emplace(d, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

NormalMorphism& NormalMorphism::operator+=(const NormalMorphism& o) {
    if (o.source_ != source_ || o.target_ != target_) throw TypeError("morphisms have different source or target");
    for (const auto& [d, c] : o.terms_) add(d, c);
    return *this;
}

NormalMorphism& NormalMorphism::operator-=(const NormalMorphism& o) {
    if (o.source_ != source_ || o.target_ != target_) throw TypeError("morphisms have different source or target");
    for (const auto& [d, c] : o.terms_) add(d, -c);
    return *this;
}

NormalMorphism& NormalMorphism::operator*=(const SymPoly& c) {
    Terms out;
    for (const auto& [d, v] : terms_) {
        SymPoly p = v * c;
        if (!p.is_zero()) out.emplace(d, std::move(p));
    }
    terms_ = std::move(out);
    return *this;
}

namespace {

std::string diagram_str(const NormalDiagram& d) {
    std::string s = "[";
    for (std::size_t i = 0; i < d.matching.pairs.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(d.matching.pairs[i].first) + "->" + std::to_string(d.matching.pairs[i].second) + ":" +
             std::to_string(d.dots[i]);
    }
    return s + "]";
}

Slice cross_for(Letter a, Letter b, int pos) {
    CrossKind k;
    if (a == Letter::Up)
        k = b == Letter::Up ? CrossKind::UpUp : CrossKind::RightWard;
    else
        k = b == Letter::Up ? CrossKind::LeftWard : CrossKind::DownDown;
    return Slice::crossing(pos, k);
}

struct Arc {
    int lo;
    int hi;
};

std::vector<Arc> arcs_within(const Matching& m, int from, int to) {
    std::vector<Arc> out;
    for (auto [a, b] : m.pairs)
        if (a >= from && a < to && b >= from && b < to) out.push_back({std::min(a, b) - from, std::max(a, b) - from});
    std::sort(out.begin(), out.end(), [](const Arc& x, const Arc& y) {
        return std::pair(x.hi - x.lo, x.lo) < std::pair(y.hi - y.lo, y.lo);
    });
    return out;
}

struct Closing {
    std::vector<std::pair<int, int>> ops;  // (crossing position, -1) or (cap position, 1)
    ObjectWord word;
    std::vector<int> ids;
};

// Pulls each arc's right end leftward next to its left end and closes it off.
Closing close_arcs(const ObjectWord& w, const std::vector<Arc>& arcs) {
    Closing c{{}, w, std::vector<int>(w.size())};
    std::iota(c.ids.begin(), c.ids.end(), 0);
    for (const Arc& a : arcs) {
        int pa = static_cast<int>(std::find(c.ids.begin(), c.ids.end(), a.lo) - c.ids.begin());
        int pb = static_cast<int>(std::find(c.ids.begin(), c.ids.end(), a.hi) - c.ids.begin());
        for (; pb > pa + 1; --pb) {
            c.ops.emplace_back(pb - 1, -1);
            std::swap(c.word[pb - 1], c.word[pb]);
            std::swap(c.ids[pb - 1], c.ids[pb]);
        }
        c.ops.emplace_back(pa, 1);
        c.word.erase(c.word.begin() + pa, c.word.begin() + pa + 2);
        c.ids.erase(c.ids.begin() + pa, c.ids.begin() + pa + 2);
    }
    return c;
}

int distinguished(const std::pair<int, int>& pr, int n) {
    auto [a, b] = pr;
    if (a >= n || b >= n) return std::min(a >= n ? a : b, b >= n ? b : a);
    return std::min(a, b);
}

}  // namespace

std::string NormalMorphism::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [d, c] : terms_) {
        if (!out.empty()) out += "\n";
        std::string cs = c.str();
        if (cs.find(" + ") != std::string::npos || cs.find(" - ") != std::string::npos) cs = "(" + cs + ")";
        if (d.matching.pairs.empty())
            out += cs;
        else if (c == SymPoly(1))
            out += diagram_str(d);
        else
            out += cs + " * " + diagram_str(d);
    }
    return out;
}

std::vector<Matching> enumerate_matchings(const ObjectWord& x, const ObjectWord& y) {
    int n = static_cast<int>(x.size());
    std::vector<int> starts, ends;
    for (int i = 0; i < n; ++i) (x[i] == Letter::Up ? starts : ends).push_back(i);
    for (int j = 0; j < static_cast<int>(y.size()); ++j) (y[j] == Letter::Down ? starts : ends).push_back(n + j);
    if (starts.size() != ends.size()) return {};
    std::vector<Matching> out;
    std::vector<int> perm = ends;
    do {
        Matching m;
        for (std::size_t i = 0; i < starts.size(); ++i) m.pairs.emplace_back(starts[i], perm[i]);
        std::sort(m.pairs.begin(), m.pairs.end());
        out.push_back(std::move(m));
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::sort(out.begin(), out.end());
    return out;
}

DiagramTerm reduced_lift(const Matching& m, const ObjectWord& x, const ObjectWord& y) {
    const int n = static_cast<int>(x.size()), my = static_cast<int>(y.size());
    std::vector<Slice> slices;

    Closing bottom = close_arcs(x, arcs_within(m, 0, n));
    ObjectWord w = x;
    for (auto [pos, kind] : bottom.ops) {
        if (kind < 0) {
            slices.push_back(cross_for(w[pos], w[pos + 1], pos));
        } else {
            slices.push_back(Slice::cap(pos, w[pos] == Letter::Up ? Ward::RightWard : Ward::LeftWard));
        }
        w = apply_slice(w, slices.back());
    }

    Closing top = close_arcs(y, arcs_within(m, n, n + my));
    std::vector<int> partner(static_cast<std::size_t>(n + my), -1);
    for (auto [a, b] : m.pairs) {
        partner[a] = b;
        partner[b] = a;
    }
    std::vector<int> goal;
    for (int id : bottom.ids) {
        int yid = partner[id] - n;
        goal.push_back(static_cast<int>(std::find(top.ids.begin(), top.ids.end(), yid) - top.ids.begin()));
    }
    for (bool swapped = true; swapped;) {
        swapped = false;
        for (std::size_t i = 0; i + 1 < goal.size(); ++i) {
            if (goal[i] < goal[i + 1]) continue;
            slices.push_back(cross_for(w[i], w[i + 1], static_cast<int>(i)));
            w = apply_slice(w, slices.back());
            std::swap(goal[i], goal[i + 1]);
            swapped = true;
        }
    }

    // replay the top closing in reverse: caps become cups, letters come from y
    ObjectWord tw = y;
    std::vector<std::pair<Slice, ObjectWord>> rev;
    for (auto [pos, kind] : top.ops) {
        if (kind < 0) {
            std::swap(tw[pos], tw[pos + 1]);
            rev.push_back({Slice::crossing(pos, CrossKind::UpUp), {}});
        } else {
            ObjectWord pair{tw[pos], tw[pos + 1]};
            tw.erase(tw.begin() + pos, tw.begin() + pos + 2);
            rev.push_back({Slice::cup(pos, pair[0] == Letter::Down ? Ward::RightWard : Ward::LeftWard), pair});
        }
    }
    for (auto it = rev.rbegin(); it != rev.rend(); ++it) {
        Slice s = it->first;
        if (s.type == SliceType::Cross) s = cross_for(w[s.pos], w[s.pos + 1], s.pos);
        slices.push_back(s);
        w = apply_slice(w, s);
    }
    if (w != y) throw std::logic_error("reduced_lift: word mismatch");
    return DiagramTerm(x, std::move(slices));
}

DiagramTerm materialize(const NormalDiagram& d, const ObjectWord& x, const ObjectWord& y) {
    DiagramTerm lift = reduced_lift(d.matching, x, y);
    const int n = static_cast<int>(x.size());
    std::vector<Slice> below, slices = lift.slices();
    for (std::size_t i = 0; i < d.matching.pairs.size(); ++i) {
        if (d.dots[i] == 0) continue;
        int e = distinguished(d.matching.pairs[i], n);
        if (e >= n)
            slices.push_back(Slice::dot(e - n, y[e - n], d.dots[i]));
        else
            below.push_back(Slice::dot(e, x[e], d.dots[i]));
    }
    below.insert(below.end(), slices.begin(), slices.end());
    return DiagramTerm(x, std::move(below));
}

std::vector<NormalDiagram> enumerate_basis(const ObjectWord& x, const ObjectWord& y, int max_dots) {
    if (max_dots < 0) throw std::invalid_argument("max_dots must be nonnegative");
    std::vector<NormalDiagram> out;
    for (const Matching& m : enumerate_matchings(x, y)) {
        std::vector<int> dots(m.pairs.size(), 0);
        for (;;) {
            out.push_back({m, dots});
            std::size_t i = dots.size();
            while (i > 0 && dots[i - 1] == max_dots) dots[--i] = 0;
            if (i == 0) break;
            ++dots[i - 1];
        }
    }
    return out;
}

NormalMorphism normalize(const DiagramTerm& t, const CategoryParams& p) {
    validate(t);
    planar::Engine eng(p);
    return eng.run(eng.build(t), t.source(), t.target());
}

NormalMorphism normalize_sum(const std::vector<std::pair<SymPoly, DiagramTerm>>& terms, const ObjectWord& source,
                             const ObjectWord& target, const CategoryParams& p) {
    planar::Engine eng(p);
    std::vector<planar::Term> all;
    for (const auto& [c, t] : terms) {
        if (validate(t) != target || t.source() != source) throw TypeError("normalize_sum: term has the wrong source or target");
        for (planar::Term& b : eng.build(t)) {
            b.coeff = b.coeff * c;
            all.push_back(std::move(b));
        }
    }
    return eng.run(std::move(all), source, target);
}

NormalMorphism omega_image(const NormalMorphism& m, const CategoryParams& p) {
    CategoryParams q = p;
    q.k = -p.k;
    std::vector<std::pair<SymPoly, DiagramTerm>> terms;
    for (const auto& [d, c] : m.terms()) {
        auto [t, sign] = omega(materialize(d, m.source(), m.target()));
        terms.emplace_back(sym_omega(c) * Rational(sign), std::move(t));
    }
    ObjectWord src = m.target(), tgt = m.source();
    for (auto& l : src) l = flip(l);
    for (auto& l : tgt) l = flip(l);
    if (terms.empty()) return NormalMorphism(src, tgt);
    return normalize_sum(terms, src, tgt, q);
}

NormalMorphism mor_compose(const NormalMorphism& top, const NormalMorphism& bottom, const CategoryParams& p) {
    if (top.source() != bottom.target()) throw TypeError("compose: source of the top is not the target of the bottom");
    planar::Engine eng(p);
    std::vector<planar::Term> all;
    for (const auto& [d1, c1] : top.terms())
        for (const auto& [d2, c2] : bottom.terms()) {
            DiagramTerm t = compose(materialize(d1, top.source(), top.target()), materialize(d2, bottom.source(), bottom.target()));
            for (planar::Term& b : eng.build(t)) {
                b.coeff = b.coeff * c1 * c2;
                all.push_back(std::move(b));
            }
        }
    return eng.run(std::move(all), bottom.source(), top.target());
}

NormalMorphism mor_tensor(const NormalMorphism& left, const NormalMorphism& right, const CategoryParams& p) {
    ObjectWord src = left.source(), tgt = left.target();
    src.insert(src.end(), right.source().begin(), right.source().end());
    tgt.insert(tgt.end(), right.target().begin(), right.target().end());
    planar::Engine eng(p);
    std::vector<planar::Term> all;
    for (const auto& [d1, c1] : left.terms())
        for (const auto& [d2, c2] : right.terms()) {
            DiagramTerm t =
                tensor(materialize(d1, left.source(), left.target()), materialize(d2, right.source(), right.target()));
            planar::Marker mk{static_cast<int>(t.slices().size()), static_cast<int>(left.target().size()), c1};
            for (planar::Term& b : eng.build(t, {mk})) {
                b.coeff = b.coeff * c2;
                all.push_back(std::move(b));
            }
        }
    return eng.run(std::move(all), src, tgt);
}

NormalMorphism mor_add(const NormalMorphism& a, const NormalMorphism& b) {
    NormalMorphism out = a;
    out += b;
    return out;
}

NormalMorphism mor_scale(const NormalMorphism& a, const SymPoly& c) {
    NormalMorphism out = a;
    out *= c;
    return out;
}

std::string to_json(const NormalMorphism& m) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [d, c] : m.terms()) {
        nlohmann::json pairs = nlohmann::json::array();
        for (auto [a, b] : d.matching.pairs) pairs.push_back({a, b});
        terms.push_back({{"pairs", pairs}, {"dots", d.dots}, {"coefficient", c.str()}});
    }
    nlohmann::json j{{"source", word_str(m.source())}, {"target", word_str(m.target())}, {"terms", terms}};
    return j.dump();
}

NormalMorphism normal_morphism_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
    }
    try {
        NormalMorphism m(parse_word(j.at("source").get<std::string>()), parse_word(j.at("target").get<std::string>()));
        for (const auto& t : j.at("terms")) {
            auto dots = t.at("dots").get<std::vector<int>>();
            std::vector<std::pair<std::pair<int, int>, int>> rows;
            for (const auto& pr : t.at("pairs")) rows.push_back({{pr.at(0).get<int>(), pr.at(1).get<int>()}, 0});
            if (dots.size() != rows.size()) throw ParseError("dots and pairs differ in length", 0);
            for (std::size_t i = 0; i < rows.size(); ++i) rows[i].second = dots[i];
            std::sort(rows.begin(), rows.end());
            NormalDiagram d;
            for (auto& [pr, k] : rows) {
                d.matching.pairs.push_back(pr);
                d.dots.push_back(k);
            }
            m.add(d, SymPoly::parse(t.at("coefficient").get<std::string>()));
        }
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed normal morphism: ") + e.what(), 0);
    }
}

}  // namespace heis
