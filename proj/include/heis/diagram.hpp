#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace heis {

enum class Letter : std::uint8_t { Up, Down };
using ObjectWord = std::vector<Letter>;

inline Letter flip(Letter l) { return l == Letter::Up ? Letter::Down : Letter::Up; }
/// `up down` style; the empty word prints as `.`.
std::string word_str(const ObjectWord& w);
ObjectWord parse_word(std::string_view text);
/// Reversed word with every letter flipped (the dual object).
ObjectWord dual_word(const ObjectWord& w);

enum class SliceType : std::uint8_t { Dot, Cross, Cup, Cap };
enum class Ward : std::uint8_t { RightWard, LeftWard };
enum class CrossKind : std::uint8_t { UpUp, RightWard, LeftWard, DownDown };

/// One generator placed at strand position `pos` of the running word.
///  Dot: x (Up) or x' (Down) with multiplicity; Cross: s, t, t', s';
///  Cup RightWard = c (creates down,up), LeftWard = c' (up,down);
///  Cap RightWard = d (consumes up,down), LeftWard = d' (down,up).
struct Slice {
    SliceType type = SliceType::Dot;
    int pos = 0;
    Letter orient = Letter::Up;
    int mult = 1;
    CrossKind cross = CrossKind::UpUp;
    Ward ward = Ward::RightWard;

    static Slice dot(int pos, Letter orient = Letter::Up, int mult = 1) { return {SliceType::Dot, pos, orient, mult, {}, {}}; }
    static Slice crossing(int pos, CrossKind kind) { return {SliceType::Cross, pos, {}, 1, kind, {}}; }
    static Slice cup(int pos, Ward w) { return {SliceType::Cup, pos, {}, 1, {}, w}; }
    static Slice cap(int pos, Ward w) { return {SliceType::Cap, pos, {}, 1, {}, w}; }

    /// Number of strands consumed / produced.
    int in_arity() const;
    int out_arity() const;
    ObjectWord source_letters() const;
    ObjectWord target_letters() const;

    friend bool operator==(const Slice&, const Slice&);
};

std::string slice_str(const Slice& s);

/// Applies one slice to a word; throws TypeError when it does not fit.
ObjectWord apply_slice(const ObjectWord& w, const Slice& s);

/// A composite of slices read bottom to top.
class DiagramTerm {
public:
    DiagramTerm() = default;
    DiagramTerm(ObjectWord source, std::vector<Slice> slices);
    static DiagramTerm identity(ObjectWord w) { return DiagramTerm(std::move(w), {}); }

    const ObjectWord& source() const { return source_; }
    const ObjectWord& target() const { return target_; }
    const std::vector<Slice>& slices() const { return slices_; }
    int crossings() const;
    int dots() const;

    friend bool operator==(const DiagramTerm& a, const DiagramTerm& b) {
        return a.source_ == b.source_ && a.slices_ == b.slices_;
    }

private:
    ObjectWord source_;
    std::vector<Slice> slices_;
    ObjectWord target_;
};

/// Target word, or TypeError naming the first bad slice.
ObjectWord validate(const ObjectWord& source, const std::vector<Slice>& slices);
inline ObjectWord validate(const DiagramTerm& t) { return validate(t.source(), t.slices()); }

/// `top` drawn above `bottom`.
DiagramTerm compose(const DiagramTerm& top, const DiagramTerm& bottom);
/// `left` drawn left of `right`; slices of `left` come first.
DiagramTerm tensor(const DiagramTerm& left, const DiagramTerm& right);

/// Reflection in a horizontal axis; returns the image in charge -k and its sign.
std::pair<DiagramTerm, int> omega(const DiagramTerm& t);
/// Rotation through 180 degrees.
DiagramTerm rotate180(const DiagramTerm& t);

DiagramTerm parse_term(std::string_view text);
std::string render(const DiagramTerm& t);

/// Rewrites x', s', t and t' into x, s, c, d, c', d'.
DiagramTerm expand_macros(const DiagramTerm& t);

/// Up strand with a loop on its right (clockwise) carrying `dots` dots.
DiagramTerm right_curl(int dots);
/// Up strand with a loop on its left (counterclockwise) carrying `dots` dots.
DiagramTerm left_curl(int dots);
/// Closed bubbles on the unit object.
DiagramTerm clockwise_bubble(int dots);
DiagramTerm counterclockwise_bubble(int dots);

}  // namespace heis
