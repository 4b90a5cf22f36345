#pragma once

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "heis/diagram.hpp"
#include "heis/symfunc.hpp"

namespace heis {

/// Endpoints are numbered X position i -> i and Y position j -> |X| + j.
/// Each pair runs from the endpoint where the strand starts to the one where it ends;
/// pairs are kept sorted.
struct Matching {
    std::vector<std::pair<int, int>> pairs;

    int strands() const { return static_cast<int>(pairs.size()); }
    auto operator<=>(const Matching&) const = default;
};

/// A basis element: the reduced lift of `matching` with dots[i] dots at the
/// distinguished point of strand i (order of `matching.pairs`).
struct NormalDiagram {
    Matching matching;
    std::vector<int> dots;

    auto operator<=>(const NormalDiagram&) const = default;
};

struct CategoryParams {
    int k = -1;
    int max_dots = 64;
    long max_steps = 2'000'000;
};

/// Sum of basis diagrams with Sym coefficients placed in the rightmost region.
class NormalMorphism {
public:
    using Terms = std::map<NormalDiagram, SymPoly>;

    NormalMorphism() = default;
    NormalMorphism(ObjectWord source, ObjectWord target) : source_(std::move(source)), target_(std::move(target)) {}

    const ObjectWord& source() const { return source_; }
    const ObjectWord& target() const { return target_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const NormalDiagram& d, const SymPoly& c);
    NormalMorphism& operator+=(const NormalMorphism& o);
    NormalMorphism& operator-=(const NormalMorphism& o);
    NormalMorphism& operator*=(const SymPoly& c);
    friend bool operator==(const NormalMorphism& a, const NormalMorphism& b) {
        return a.source_ == b.source_ && a.target_ == b.target_ && a.terms_ == b.terms_;
    }

    /// One line per term: `coefficient * [start->end:dots, ...]`; zero prints as `0`.
    std::string str() const;

private:
    ObjectWord source_;
    ObjectWord target_;
    Terms terms_;
};

std::vector<Matching> enumerate_matchings(const ObjectWord& x, const ObjectWord& y);
/// Caps, then a through-strand permutation, then cups; no dots.
DiagramTerm reduced_lift(const Matching& m, const ObjectWord& x, const ObjectWord& y);
/// The reduced lift with dot slices at each strand's distinguished endpoint.
DiagramTerm materialize(const NormalDiagram& d, const ObjectWord& x, const ObjectWord& y);
std::vector<NormalDiagram> enumerate_basis(const ObjectWord& x, const ObjectWord& y, int max_dots);

NormalMorphism normalize(const DiagramTerm& t, const CategoryParams& p);
/// Normalizes a linear combination of terms sharing source and target.
NormalMorphism normalize_sum(const std::vector<std::pair<SymPoly, DiagramTerm>>& terms, const ObjectWord& source,
                             const ObjectWord& target, const CategoryParams& p);
/// Image under the reflection of Heis_k onto Heis_{-k}, normalized in charge -k.
NormalMorphism omega_image(const NormalMorphism& m, const CategoryParams& p);

NormalMorphism mor_compose(const NormalMorphism& top, const NormalMorphism& bottom, const CategoryParams& p);
NormalMorphism mor_tensor(const NormalMorphism& left, const NormalMorphism& right, const CategoryParams& p);
NormalMorphism mor_add(const NormalMorphism& a, const NormalMorphism& b);
NormalMorphism mor_scale(const NormalMorphism& a, const SymPoly& c);

/// {"source", "target", "terms": [{"pairs", "dots", "coefficient"}]}.
std::string to_json(const NormalMorphism& m);
NormalMorphism normal_morphism_from_json(const std::string& text);

}  // namespace heis
