#pragma once

#include <array>
#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "heis/diagram.hpp"
#include "heis/normalform.hpp"
#include "heis/symfunc.hpp"

namespace heis::planar {

// Half-edge h of edge e: h = 2e is the tail end, h = 2e + 1 the head end.
// A dart is named by the half-edge it leaves from, so dart 2e runs along e
// and dart 2e + 1 runs against it.

/// Where a half-edge is attached: vertex slot, boundary point (node -1) or nothing (node -2).
struct End {
    int node = -2;
    int slot = 0;
};

struct Edge {
    End tail;
    End head;
    int dots = 0;
    bool alive = true;
};

/// Crossings have four slots, joints two; slots are in counterclockwise order.
struct Vertex {
    int deg = 4;
    std::array<int, 4> he{-1, -1, -1, -1};
    bool alive = true;
};

/// An immersed oriented diagram in a disk. Boundary points are numbered
/// counterclockwise: sources 0..n-1 left to right, then targets right to left.
struct PMap {
    int n = 0;
    int m = 0;
    std::vector<int> bnd;
    std::vector<Vertex> verts;
    std::vector<Edge> edges;

    int boundary_size() const { return n + m; }
    const End& end_of(int he) const { return (he & 1) ? edges[static_cast<std::size_t>(he >> 1)].head : edges[static_cast<std::size_t>(he >> 1)].tail; }
    End& end_of(int he) { return (he & 1) ? edges[static_cast<std::size_t>(he >> 1)].head : edges[static_cast<std::size_t>(he >> 1)].tail; }
    /// Next dart around the face on the left of `d`.
    int next_dart(int d) const;
    int add_edge(int dots = 0);
    int add_vertex(int deg);
    void attach(int he, End at);
    int crossings() const;
    /// Removes joints between distinct edges.
    void simplify();
    void compact();
    /// Boundary index of a target position.
    int target_index(int j) const { return n + m - 1 - j; }
    /// The region right of everything.
    int right_dart() const { return bnd[static_cast<std::size_t>(n % boundary_size())]; }
};

struct Faces {
    std::vector<int> of;                 // face per dart, -1 for dead edges
    std::vector<std::vector<int>> darts;  // darts of each face in traversal order
    std::vector<bool> outer;              // face touches the boundary
};

Faces faces(const PMap& m);

/// Structural fingerprint of a boundary-connected map.
std::vector<int> code(const PMap& m, bool with_dots);

struct Term {
    PMap map;
    SymPoly coeff;
};

/// A coefficient pinned next to a slice height: `gap` is the strand position it sits left of.
struct Marker {
    int height = 0;
    int gap = 0;
    SymPoly value;
};

class Engine {
public:
    explicit Engine(const CategoryParams& p) : p_(p) {}

    /// Diagram with markers, closed components already evaluated.
    std::vector<Term> build(const DiagramTerm& t, const std::vector<Marker>& markers = {});
    NormalMorphism run(std::vector<Term> terms, const ObjectWord& x, const ObjectWord& y);

private:
    struct Region {
        std::vector<int> verts;
        std::vector<int> internal;
        std::vector<int> cuts;  // half-edges of outside edges, counterclockwise around the region
    };
    struct Chord {
        int in = 0;
        int out = 0;
        std::vector<int> xs;
        int dots = 0;
    };
    struct Variant {
        std::vector<Chord> chords;
        std::vector<std::pair<int, SymPoly>> coeffs;  // gap index (after cut i) -> value
        SymPoly scale{1};
    };

    std::vector<Term> settle(PMap map, const std::vector<std::pair<int, int>>& unions, int extra,
                             const std::vector<std::pair<int, SymPoly>>& markers, int outer, const SymPoly& base);
    SymPoly eval_closed(const PMap& map, const std::vector<int>& comp_of_edge, int comp, int ext_dart,
                        const std::vector<std::pair<int, SymPoly>>& inner);
    std::vector<Term> slide_to_right(const PMap& map, int from_dart, const SymPoly& value, const SymPoly& base);

    static PMap apply_template(const PMap& old, const Region& r, const std::vector<Chord>& chords);
    std::vector<Term> splice(const Term& t, const Region& r, const std::vector<Variant>& variants);
    Region face_region(const PMap& m, const std::vector<int>& darts) const;
    Region vertex_region(const PMap& m, int v) const;
    int through(const PMap& m, const Region& r, int cut, std::vector<int>* path = nullptr) const;

    struct Strands {
        bool reduced = true;
        Matching matching;
        std::vector<std::vector<int>> paths;  // edges of each strand in travel order, sorted like matching
        std::vector<bool> dist_at_end;        // distinguished point on the last edge
    };
    Strands strands(const PMap& m) const;
    std::vector<Term> step(const Term& t, const ObjectWord& x, const ObjectWord& y, NormalMorphism& out);
    std::vector<Term> clear_or_flip(const Term& t, const std::vector<int>& tri);

    std::vector<Term> curl(const Term& t, int dart);
    std::vector<Term> bigon(const Term& t, const std::vector<int>& darts);
    std::vector<Term> flip(const Term& t, const std::vector<int>& darts);
    std::vector<Term> move_dot(const Term& t, int edge, bool forward);
    std::vector<Term> smoothing(const Term& t, int v, const SymPoly& scale);
    PMap flip_structure(const PMap& m, const std::vector<int>& darts) const;
    std::vector<std::vector<int>> triangles(const PMap& m, const Faces& f) const;
    /// Triangle of `m` to flip next toward a goal, or empty when unreachable.
    std::vector<int> next_flip(const PMap& m, bool to_small_face, const std::vector<int>& target);
    const std::vector<int>& target_code(const Matching& mt, const ObjectWord& x, const ObjectWord& y);
    void tick();

    CategoryParams p_;
    long steps_ = 0;
    std::map<std::vector<int>, std::vector<int>> flip_memo_;
    std::map<std::tuple<ObjectWord, ObjectWord, Matching>, std::vector<int>> targets_;
};

}  // namespace heis::planar
