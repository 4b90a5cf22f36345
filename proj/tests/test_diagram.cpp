#include <gtest/gtest.h>

#include <random>

#include "heis/diagram.hpp"
#include "heis/errors.hpp"
#include "heis/verify.hpp"

using namespace heis;

constexpr Letter U = Letter::Up;
constexpr Letter D = Letter::Down;

TEST(Words, ParseAndDual) {
    EXPECT_EQ(parse_word("up down up"), (ObjectWord{U, D, U}));
    EXPECT_EQ(parse_word("."), ObjectWord{});
    EXPECT_EQ(word_str({U, D}), "up down");
    EXPECT_EQ(dual_word({U, U, D}), (ObjectWord{U, D, D}));
    EXPECT_THROW(parse_word("up sideways"), ParseError);
}

TEST(Validate, Examples) {
    EXPECT_EQ(validate({}, {Slice::cup(0, Ward::RightWard)}), (ObjectWord{D, U}));
    EXPECT_EQ(validate({}, {Slice::cup(0, Ward::LeftWard)}), (ObjectWord{U, D}));
    EXPECT_EQ(validate({U}, {Slice::dot(0, U, 1)}), ObjectWord{U});
    EXPECT_THROW(validate({U}, {Slice::cap(0, Ward::RightWard)}), TypeError);
    EXPECT_THROW(validate({U, U}, {Slice::crossing(0, CrossKind::RightWard)}), TypeError);
    EXPECT_THROW(validate({D}, {Slice::dot(0, U, 1)}), TypeError);
}

TEST(Compose, IdentitiesAndTyping) {
    DiagramTerm d = parse_term("up down | t@0 ; dot'@0");
    EXPECT_EQ(compose(DiagramTerm::identity(d.target()), d), d);
    EXPECT_EQ(tensor(d, DiagramTerm::identity({})), d);
    DiagramTerm loop = compose(DiagramTerm({D, U}, {Slice::cap(0, Ward::LeftWard)}), DiagramTerm({}, {Slice::cup(0, Ward::RightWard)}));
    EXPECT_EQ(loop, clockwise_bubble(0));
    EXPECT_EQ(validate(loop), ObjectWord{});
    EXPECT_THROW(compose(DiagramTerm::identity({U}), DiagramTerm::identity({D})), TypeError);
}

TEST(Tensor, PlacesRightFactorAfterLeft) {
    DiagramTerm t = tensor(parse_term("up | dot@0"), parse_term("up up | s@0"));
    EXPECT_EQ(t.source(), (ObjectWord{U, U, U}));
    EXPECT_EQ(render(t), "up up up | dot@0 ; s@1");
}

TEST(Omega, SignsAndInvolution) {
    auto [x, sx] = omega(parse_term("up | dot@0"));
    EXPECT_EQ(x, parse_term("down | dot'@0"));
    EXPECT_EQ(sx, 1);
    auto [s, ss] = omega(parse_term("up up | s@0"));
    EXPECT_EQ(s, parse_term("down down | s'@0"));
    EXPECT_EQ(ss, -1);

    std::mt19937_64 rng(4);
    FuzzCaps caps;
    for (int i = 0; i < 100; ++i) {
        DiagramTerm t = random_term(rng, caps);
        auto [w, a] = omega(t);
        auto [back, b] = omega(w);
        EXPECT_EQ(back, t) << render(t);
        EXPECT_EQ(a * b, 1);
        ObjectWord flipped;
        for (Letter l : validate(t)) flipped.push_back(flip(l));
        EXPECT_EQ(w.source(), flipped);
    }
}

TEST(Rotate, Involution) {
    EXPECT_EQ(rotate180(DiagramTerm::identity({U})), DiagramTerm::identity({D}));
    EXPECT_EQ(rotate180(parse_term("up | dot@0")), parse_term("down | dot'@0"));
    std::mt19937_64 rng(8);
    FuzzCaps caps;
    for (int i = 0; i < 100; ++i) {
        DiagramTerm t = random_term(rng, caps);
        DiagramTerm r = rotate180(t);
        EXPECT_EQ(r.source(), dual_word(t.target()));
        EXPECT_EQ(validate(r), dual_word(t.source()));
        EXPECT_EQ(rotate180(r), t) << render(t);
    }
}

TEST(Parse, Grammar) {
    DiagramTerm t = parse_term("up | dot@0");
    ASSERT_EQ(t.slices().size(), 1u);
    EXPECT_EQ(t.slices()[0].type, SliceType::Dot);
    EXPECT_EQ(parse_term(". | cup_r@0 ; cap_l@0"), clockwise_bubble(0));
    EXPECT_EQ(parse_term("up | x@0^3").dots(), 3);
    EXPECT_EQ(parse_term("up up | s@0 ; s@0").crossings(), 2);
    EXPECT_EQ(parse_term("up | ").slices().size(), 0u);
}

TEST(Parse, ErrorsCarryOffsets) {
    try {
        parse_term("up | dot@");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_GE(e.offset(), 5u);
    }
    EXPECT_THROW(parse_term("up | frob@0"), ParseError);
    EXPECT_THROW(parse_term("up | t@0"), TypeError);
}

TEST(Render, Stable) {
    std::mt19937_64 rng(12);
    FuzzCaps caps;
    for (int i = 0; i < 100; ++i) {
        DiagramTerm t = random_term(rng, caps);
        std::string r = render(t);
        EXPECT_EQ(render(parse_term(r)), r);
        EXPECT_EQ(parse_term(r), t);
    }
}

TEST(Macros, OnlyBasicGenerators) {
    DiagramTerm t = expand_macros(parse_term("up down | t@0 ; t'@0 ; dot'@1"));
    EXPECT_EQ(t.source(), (ObjectWord{U, D}));
    EXPECT_EQ(validate(t), (ObjectWord{U, D}));
    for (const auto& s : t.slices()) {
        if (s.type == SliceType::Cross) EXPECT_EQ(s.cross, CrossKind::UpUp);
        if (s.type == SliceType::Dot) EXPECT_EQ(s.orient, U);
    }
}

TEST(Shapes, CurlsAndBubbles) {
    EXPECT_EQ(validate(right_curl(2)), ObjectWord{U});
    EXPECT_EQ(right_curl(2).dots(), 2);
    EXPECT_EQ(left_curl(0).crossings(), 1);
    EXPECT_EQ(validate(counterclockwise_bubble(3)), ObjectWord{});
    EXPECT_EQ(render(counterclockwise_bubble(0)), ". | cup_l@0 ; cap_r@0");
}
