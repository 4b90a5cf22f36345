#include "heis/diagram.hpp"

#include <algorithm>
#include <cctype>

#include "heis/errors.hpp"

namespace heis {

std::string word_str(const ObjectWord& w) {
    if (w.empty()) return ".";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? " " : "") + std::string(w[i] == Letter::Up ? "up" : "down");
    return s;
}

ObjectWord dual_word(const ObjectWord& w) {
    ObjectWord r(w.rbegin(), w.rend());
    for (auto& l : r) l = flip(l);
    return r;
}

int Slice::in_arity() const {
    switch (type) {
        case SliceType::Dot: return 1;
        case SliceType::Cross: return 2;
        case SliceType::Cup: return 0;
        case SliceType::Cap: return 2;
    }
    return 0;
}

int Slice::out_arity() const {
    switch (type) {
        case SliceType::Dot: return 1;
        case SliceType::Cross: return 2;
        case SliceType::Cup: return 2;
        case SliceType::Cap: return 0;
    }
    return 0;
}

namespace {

ObjectWord cross_source(CrossKind k) {
    switch (k) {
        case CrossKind::UpUp: return {Letter::Up, Letter::Up};
        case CrossKind::RightWard: return {Letter::Up, Letter::Down};
        case CrossKind::LeftWard: return {Letter::Down, Letter::Up};
        case CrossKind::DownDown: return {Letter::Down, Letter::Down};
    }
    return {};
}

ObjectWord pair_for(Ward w) {
    // c and d' involve (down, up); c' and d involve (up, down)
    return w == Ward::RightWard ? ObjectWord{Letter::Down, Letter::Up} : ObjectWord{Letter::Up, Letter::Down};
}

}  // namespace

ObjectWord Slice::source_letters() const {
    switch (type) {
        case SliceType::Dot: return {orient};
        case SliceType::Cross: return cross_source(cross);
        case SliceType::Cup: return {};
        case SliceType::Cap: return ward == Ward::RightWard ? ObjectWord{Letter::Up, Letter::Down} : ObjectWord{Letter::Down, Letter::Up};
    }
    return {};
}

ObjectWord Slice::target_letters() const {
    switch (type) {
        case SliceType::Dot: return {orient};
        case SliceType::Cross: {
            auto s = cross_source(cross);
            return {s[1], s[0]};
        }
        case SliceType::Cup: return pair_for(ward);
        case SliceType::Cap: return {};
    }
    return {};
}

bool operator==(const Slice& a, const Slice& b) {
    if (a.type != b.type || a.pos != b.pos) return false;
    switch (a.type) {
        case SliceType::Dot: return a.orient == b.orient && a.mult == b.mult;
        case SliceType::Cross: return a.cross == b.cross;
        default: return a.ward == b.ward;
    }
}

std::string slice_str(const Slice& s) {
    std::string p = "@" + std::to_string(s.pos);
    switch (s.type) {
        case SliceType::Dot: {
            std::string base = s.orient == Letter::Up ? "dot" : "dot'";
            if (s.mult == 1) return base + p;
            return std::string(s.orient == Letter::Up ? "x" : "x'") + p + "^" + std::to_string(s.mult);
        }
        case SliceType::Cross:
            switch (s.cross) {
                case CrossKind::UpUp: return "s" + p;
                case CrossKind::RightWard: return "t" + p;
                case CrossKind::LeftWard: return "t'" + p;
                case CrossKind::DownDown: return "s'" + p;
            }
            break;
        case SliceType::Cup: return std::string(s.ward == Ward::RightWard ? "cup_r" : "cup_l") + p;
        case SliceType::Cap: return std::string(s.ward == Ward::RightWard ? "cap_r" : "cap_l") + p;
    }
    return "?";
}

ObjectWord apply_slice(const ObjectWord& w, const Slice& s) {
    int n = static_cast<int>(w.size());
    int ar = s.in_arity();
    if (s.pos < 0 || s.pos + ar > n) throw TypeError(slice_str(s) + ": position out of range for word '" + word_str(w) + "'");
    if (s.type == SliceType::Dot && s.mult < 1) throw TypeError(slice_str(s) + ": multiplicity must be positive");
    ObjectWord src = s.source_letters();
    if (!std::equal(src.begin(), src.end(), w.begin() + s.pos))
        throw TypeError(slice_str(s) + ": needs '" + word_str(src) + "' at position " + std::to_string(s.pos) + " of '" +
                        word_str(w) + "'");
    ObjectWord out(w.begin(), w.begin() + s.pos);
    ObjectWord tgt = s.target_letters();
    out.insert(out.end(), tgt.begin(), tgt.end());
    out.insert(out.end(), w.begin() + s.pos + ar, w.end());
    return out;
}

ObjectWord validate(const ObjectWord& source, const std::vector<Slice>& slices) {
    ObjectWord w = source;
    for (std::size_t i = 0; i < slices.size(); ++i) {
        try {
            w = apply_slice(w, slices[i]);
        } catch (const TypeError& e) {
            throw TypeError("slice " + std::to_string(i) + " (" + e.what() + ")");
        }
    }
    return w;
}

DiagramTerm::DiagramTerm(ObjectWord source, std::vector<Slice> slices)
    : source_(std::move(source)), slices_(std::move(slices)) {
    target_ = validate(source_, slices_);
}

int DiagramTerm::crossings() const {
    return static_cast<int>(std::count_if(slices_.begin(), slices_.end(), [](const Slice& s) { return s.type == SliceType::Cross; }));
}

int DiagramTerm::dots() const {
    int d = 0;
    for (const auto& s : slices_)
        if (s.type == SliceType::Dot) d += s.mult;
    return d;
}

DiagramTerm compose(const DiagramTerm& top, const DiagramTerm& bottom) {
    if (bottom.target() != top.source())
        throw TypeError("compose: '" + word_str(bottom.target()) + "' does not match '" + word_str(top.source()) + "'");
    std::vector<Slice> s = bottom.slices();
    s.insert(s.end(), top.slices().begin(), top.slices().end());
    return DiagramTerm(bottom.source(), std::move(s));
}

DiagramTerm tensor(const DiagramTerm& left, const DiagramTerm& right) {
    ObjectWord src = left.source();
    src.insert(src.end(), right.source().begin(), right.source().end());
    std::vector<Slice> s = left.slices();
    int shift = static_cast<int>(left.target().size());
    for (Slice sl : right.slices()) {
        sl.pos += shift;
        s.push_back(sl);
    }
    return DiagramTerm(std::move(src), std::move(s));
}

std::pair<DiagramTerm, int> omega(const DiagramTerm& t) {
    ObjectWord src = t.target();
    for (auto& l : src) l = flip(l);
    std::vector<Slice> out;
    int sign = 1;
    for (auto it = t.slices().rbegin(); it != t.slices().rend(); ++it) {
        Slice s = *it;
        switch (s.type) {
            case SliceType::Dot: s.orient = flip(s.orient); break;
            case SliceType::Cross:
                sign = -sign;
                if (s.cross == CrossKind::UpUp)
                    s.cross = CrossKind::DownDown;
                else if (s.cross == CrossKind::DownDown)
                    s.cross = CrossKind::UpUp;
                break;
            case SliceType::Cup:
                s.type = SliceType::Cap;
                if (s.ward == Ward::LeftWard) sign = -sign;
                break;
            case SliceType::Cap:
                s.type = SliceType::Cup;
                if (s.ward == Ward::LeftWard) sign = -sign;
                break;
        }
        out.push_back(s);
    }
    return {DiagramTerm(std::move(src), std::move(out)), sign};
}

DiagramTerm rotate180(const DiagramTerm& t) {
    // Walk the slices top-down; each slice's rotated source is the dual of its target.
    std::vector<ObjectWord> words{t.source()};
    for (const auto& s : t.slices()) words.push_back(apply_slice(words.back(), s));
    std::vector<Slice> out;
    for (std::size_t i = t.slices().size(); i-- > 0;) {
        Slice s = t.slices()[i];
        int len = static_cast<int>(words[i + 1].size());
        int ar = s.out_arity();
        s.pos = len - ar - s.pos;
        switch (s.type) {
            case SliceType::Dot: s.orient = flip(s.orient); break;
            case SliceType::Cross:
                switch (s.cross) {
                    case CrossKind::UpUp: s.cross = CrossKind::DownDown; break;
                    case CrossKind::DownDown: s.cross = CrossKind::UpUp; break;
                    case CrossKind::RightWard: s.cross = CrossKind::LeftWard; break;
                    case CrossKind::LeftWard: s.cross = CrossKind::RightWard; break;
                }
                break;
            case SliceType::Cup:
                s.type = SliceType::Cap;
                s.ward = s.ward == Ward::RightWard ? Ward::LeftWard : Ward::RightWard;
                break;
            case SliceType::Cap:
                s.type = SliceType::Cup;
                s.ward = s.ward == Ward::RightWard ? Ward::LeftWard : Ward::RightWard;
                break;
        }
        out.push_back(s);
    }
    return DiagramTerm(dual_word(t.target()), std::move(out));
}

namespace {

class TermParser {
public:
    explicit TermParser(std::string_view s) : s_(s) {}

    DiagramTerm run() {
        ObjectWord w = word(true);
        std::vector<Slice> slices;
        skip();
        if (!at_end()) {
            if (!eat("|")) fail("expected '|'");
            skip();
            if (!at_end()) {
                slices.push_back(slice());
                while (skip(), eat(";")) slices.push_back(slice());
            }
        }
        skip();
        if (!at_end()) fail("unexpected trailing input");
        return DiagramTerm(std::move(w), std::move(slices));
    }

    ObjectWord word(bool stop_at_bar) {
        ObjectWord w;
        bool unit = false;
        for (;;) {
            skip();
            if (at_end() || (stop_at_bar && peek() == '|')) break;
            if (eat("up") || eat("\xe2\x86\x91"))
                w.push_back(Letter::Up);
            else if (eat("down") || eat("\xe2\x86\x93"))
                w.push_back(Letter::Down);
            else if (eat(".") || eat("\xf0\x9d\x9f\x99"))
                unit = true;
            else
                fail("expected 'up', 'down' or '.'");
        }
        if (unit && !w.empty()) fail("unit '.' mixed with letters");
        return w;
    }

private:
    [[noreturn]] void fail(const std::string& msg) { throw ParseError("term: " + msg, pos_); }
    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return s_[pos_]; }

    void skip() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }

    bool eat(std::string_view tok) {
        if (s_.substr(pos_, tok.size()) == tok) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }

    bool prime() {
        skip();
        return eat("'") || eat("\xe2\x80\xb2");
    }

    int integer() {
        skip();
        std::size_t st = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (st == pos_) fail("expected integer");
        if (pos_ - st > 6) fail("integer too large");
        return std::stoi(std::string(s_.substr(st, pos_ - st)));
    }

    int at() {
        skip();
        if (!eat("@")) fail("expected '@'");
        return integer();
    }

    Slice slice() {
        skip();
        std::size_t start = pos_;
        if (eat("cup_r")) return Slice::cup(at(), Ward::RightWard);
        if (eat("cup_l")) return Slice::cup(at(), Ward::LeftWard);
        if (eat("cap_r")) return Slice::cap(at(), Ward::RightWard);
        if (eat("cap_l")) return Slice::cap(at(), Ward::LeftWard);
        if (eat("dot")) {
            bool p = prime();
            int i = at();
            int m = 1;
            if (skip(), eat("^")) m = integer();
            if (m < 1) fail("multiplicity must be positive");
            return Slice::dot(i, p ? Letter::Down : Letter::Up, m);
        }
        if (eat("x")) {
            bool p = prime();
            int i = at();
            int m = 1;
            if (skip(), eat("^")) m = integer();
            if (m < 1) fail("multiplicity must be positive");
            return Slice::dot(i, p ? Letter::Down : Letter::Up, m);
        }
        if (eat("s")) return finish_cross(CrossKind::UpUp, CrossKind::DownDown);
        if (eat("t")) return finish_cross(CrossKind::RightWard, CrossKind::LeftWard);
        pos_ = start;
        fail("unknown slice");
    }

    Slice finish_cross(CrossKind plain, CrossKind primed) {
        bool p = prime();
        return Slice::crossing(at(), p ? primed : plain);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

ObjectWord parse_word(std::string_view text) { return TermParser(text).word(false); }

DiagramTerm parse_term(std::string_view text) { return TermParser(text).run(); }

std::string render(const DiagramTerm& t) {
    std::string s = word_str(t.source()) + " |";
    for (std::size_t i = 0; i < t.slices().size(); ++i) s += (i ? " ; " : " ") + slice_str(t.slices()[i]);
    return s;
}

DiagramTerm expand_macros(const DiagramTerm& t) {
    std::vector<Slice> out;
    for (const auto& s : t.slices()) {
        int p = s.pos;
        if (s.type == SliceType::Dot && s.orient == Letter::Down) {
            out.push_back(Slice::cup(p, Ward::RightWard));
            out.push_back(Slice::dot(p + 1, Letter::Up, s.mult));
            out.push_back(Slice::cap(p + 1, Ward::RightWard));
        } else if (s.type == SliceType::Cross && s.cross == CrossKind::RightWard) {
            out.push_back(Slice::cup(p, Ward::RightWard));
            out.push_back(Slice::crossing(p + 1, CrossKind::UpUp));
            out.push_back(Slice::cap(p + 2, Ward::RightWard));
        } else if (s.type == SliceType::Cross && s.cross == CrossKind::LeftWard) {
            out.push_back(Slice::cup(p + 2, Ward::LeftWard));
            out.push_back(Slice::crossing(p + 1, CrossKind::UpUp));
            out.push_back(Slice::cap(p, Ward::LeftWard));
        } else if (s.type == SliceType::Cross && s.cross == CrossKind::DownDown) {
            out.push_back(Slice::cup(p, Ward::RightWard));
            out.push_back(Slice::cup(p + 1, Ward::RightWard));
            out.push_back(Slice::crossing(p + 2, CrossKind::UpUp));
            out.push_back(Slice::cap(p + 3, Ward::RightWard));
            out.push_back(Slice::cap(p + 2, Ward::RightWard));
        } else {
            out.push_back(s);
        }
    }
    return DiagramTerm(t.source(), std::move(out));
}

DiagramTerm right_curl(int dots) {
    std::vector<Slice> s{Slice::cup(1, Ward::LeftWard)};
    if (dots > 0) s.push_back(Slice::dot(1, Letter::Up, dots));
    s.push_back(Slice::crossing(0, CrossKind::UpUp));
    s.push_back(Slice::cap(1, Ward::RightWard));
    return DiagramTerm({Letter::Up}, std::move(s));
}

DiagramTerm left_curl(int dots) {
    std::vector<Slice> s{Slice::cup(0, Ward::RightWard)};
    if (dots > 0) s.push_back(Slice::dot(1, Letter::Up, dots));
    s.push_back(Slice::crossing(1, CrossKind::UpUp));
    s.push_back(Slice::cap(0, Ward::LeftWard));
    return DiagramTerm({Letter::Up}, std::move(s));
}

DiagramTerm clockwise_bubble(int dots) {
    std::vector<Slice> s{Slice::cup(0, Ward::RightWard)};
    if (dots > 0) s.push_back(Slice::dot(1, Letter::Up, dots));
    s.push_back(Slice::cap(0, Ward::LeftWard));
    return DiagramTerm({}, std::move(s));
}

DiagramTerm counterclockwise_bubble(int dots) {
    std::vector<Slice> s{Slice::cup(0, Ward::LeftWard)};
    if (dots > 0) s.push_back(Slice::dot(0, Letter::Up, dots));
    s.push_back(Slice::cap(0, Ward::RightWard));
    return DiagramTerm({}, std::move(s));
}

}  // namespace heis
