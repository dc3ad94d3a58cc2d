#include <gtest/gtest.h>

#include <algorithm>

#include "support.hpp"
#include "tanglekit/diagram.hpp"
#include "tanglekit/moves.hpp"
#include "tanglekit/testkit.hpp"

using namespace tanglekit;
using oracle::D;
using oracle::isomorphic;

namespace {

using Arc = std::pair<Attachment, Attachment>;

Attachment B(int b, int l) { return {true, b, l}; }
Attachment X(int c, int p) { return {false, c, p}; }

std::vector<Arc> sorted_arcs(const Diagram& d) {
    std::vector<Arc> v;
    for (auto [a, b] : arcs_of(d)) v.push_back(a < b ? Arc{a, b} : Arc{b, a});
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<Diagram> some_spherical(int count, std::uint64_t seed, int max_crossings = 8) {
    std::vector<Diagram> out;
    for (int i = 0; i < count; ++i) {
        GenConfig cfg;
        cfg.seed = seed + i;
        cfg.max_crossings = max_crossings;
        out.push_back(gen_spherical(cfg));
    }
    return out;
}

std::vector<Diagram> some_balls(int count, std::uint64_t seed, int max_crossings = 6) {
    std::vector<Diagram> out;
    for (int i = 0; i < count; ++i) {
        GenConfig cfg;
        cfg.seed = seed + i;
        cfg.max_crossings = max_crossings;
        out.push_back(gen_ball(cfg));
    }
    return out;
}

}  // namespace

TEST(Fundamental, ArcsAsDrawn) {
    const Diagram v = fundamental_tangle(1), h = fundamental_tangle(2);
    EXPECT_EQ(v.num_crossings, 0);
    EXPECT_EQ(sorted_arcs(v), (std::vector<Arc>{{B(0, NW), B(0, SW)}, {B(0, NE), B(0, SE)}}));
    EXPECT_EQ(sorted_arcs(h), (std::vector<Arc>{{B(0, NW), B(0, NE)}, {B(0, SE), B(0, SW)}}));
    EXPECT_THROW(fundamental_tangle(3), PreconditionError);
}

TEST(Twists, ZeroTwistsAreFundamental) {
    EXPECT_EQ(htwist(0), fundamental_tangle(2));
    EXPECT_EQ(vtwist(0), fundamental_tangle(1));
    for (int p = -4; p <= 4; ++p) {
        EXPECT_EQ(htwist(p).num_crossings, std::abs(p));
        EXPECT_EQ(vtwist(p).num_crossings, std::abs(p));
        EXPECT_TRUE(isomorphic(mirror(htwist(p)), htwist(-p)));
        EXPECT_TRUE(is_planar(htwist(p)));
    }
}

TEST(Closures, LoopsOfFundamentalTangles) {
    const Diagram n1 = numerator_closure(fundamental_tangle(1));
    const Diagram d1 = denominator_closure(fundamental_tangle(1));
    EXPECT_EQ(n1.num_boundaries, 0);
    EXPECT_EQ(n1.free_loops, 1);
    EXPECT_EQ(d1.free_loops, 2);
    EXPECT_EQ(numerator_closure(fundamental_tangle(2)).free_loops, 2);
    EXPECT_EQ(denominator_closure(fundamental_tangle(2)).free_loops, 1);
    const Diagram kink = numerator_closure(htwist(1));
    EXPECT_EQ(kink.num_crossings, 1);
    EXPECT_EQ(component_count(kink), 1);
    EXPECT_THROW(numerator_closure(identity_spherical()), ShapeError);
}

TEST(Fill, IdentityFillIsLiteral) {
    for (const auto& b : some_balls(60, 100)) EXPECT_EQ(fill_holes(identity_spherical(), {b}), b);
    EXPECT_EQ(fill_holes(identity_spherical(), {fundamental_tangle(1)}), fundamental_tangle(1));
}

TEST(Fill, TwoHoleTemplateMakesFreeLoop) {
    const Diagram t = connect_h(identity_spherical(), identity_spherical());
    ASSERT_EQ(t.num_holes(), 2);
    const Diagram filled = fill_holes(t, {fundamental_tangle(1), fundamental_tangle(1)});
    Diagram want = fundamental_tangle(1);
    want.free_loops = 1;
    EXPECT_EQ(filled, want);
}

TEST(Fill, CountMismatchRejected) {
    const Diagram t = connect_h(identity_spherical(), identity_spherical());
    EXPECT_THROW(fill_holes(t, {fundamental_tangle(1)}), ShapeError);
    EXPECT_THROW(fill_holes(t, {fundamental_tangle(1), identity_spherical(), fundamental_tangle(1)}), ShapeError);
}

TEST(Fill, ComposeThenFillEqualsNestedFill) {
    auto ss = some_spherical(40, 200);
    auto bs = some_balls(40, 300);
    for (size_t i = 0; i + 1 < ss.size(); ++i) {
        const Diagram lhs = fill_holes(compose_spherical(ss[i], ss[i + 1]), {bs[i]});
        const Diagram rhs = fill_holes(ss[i], {fill_holes(ss[i + 1], {bs[i]})});
        EXPECT_TRUE(isomorphic(lhs, rhs)) << i;
    }
}

TEST(Fill, SomeHolesKeepOrder) {
    const Diagram t = connect_h_all({identity_spherical(), identity_spherical(), identity_spherical()});
    ASSERT_EQ(t.num_holes(), 3);
    const Diagram part = fill_some(t, {{2, htwist(2)}});
    EXPECT_EQ(part.num_holes(), 2);
    EXPECT_TRUE(isomorphic(fill_holes(part, {htwist(1), htwist(3)}), fill_holes(t, {htwist(1), htwist(2), htwist(3)})));
}

TEST(ConnectSum, HorizontalGluesEastToWest) {
    const Diagram s = connect_h(fundamental_tangle(2), fundamental_tangle(2));
    EXPECT_EQ(s, fundamental_tangle(2));
    const Diagram v = connect_v(fundamental_tangle(1), fundamental_tangle(1));
    EXPECT_EQ(v, fundamental_tangle(1));
    for (const auto& b : some_balls(30, 400)) {
        EXPECT_TRUE(isomorphic(connect_h(b, fundamental_tangle(2)), b));
        EXPECT_TRUE(isomorphic(connect_v(b, fundamental_tangle(1)), b));
    }
}

TEST(ConnectSum, VerticalIsConjugatedHorizontal) {
    auto bs = some_balls(40, 500);
    for (size_t i = 0; i + 1 < bs.size(); ++i) {
        const Diagram r3 = rotate(rotate(rotate(connect_h(rotate(bs[i]), rotate(bs[i + 1])))));
        EXPECT_TRUE(isomorphic(connect_v(bs[i], bs[i + 1]), r3));
    }
}

TEST(Symmetry, Involutions) {
    auto ss = some_spherical(60, 600);
    for (const auto& s : ss) {
        EXPECT_TRUE(isomorphic(rotate(rotate(rotate(rotate(s)))), s));
        EXPECT_TRUE(isomorphic(mirror(mirror(s)), s));
        EXPECT_TRUE(isomorphic(sph_swap(sph_swap(s)), s));
        EXPECT_TRUE(isomorphic(sph_star(sph_star(s)), s));
        EXPECT_TRUE(isomorphic(sph_r1(sph_r2(s)), sph_r2(sph_r1(s))));
        EXPECT_TRUE(isomorphic(sph_R(s), sph_r2(sph_r1(s))));
        EXPECT_TRUE(isomorphic(flip_h(flip_h(s)), s));
        EXPECT_TRUE(isomorphic(flip_v(flip_v(s)), s));
    }
    for (const auto& b : some_balls(40, 650)) EXPECT_TRUE(isomorphic(rotate(rotate(rotate(rotate(b)))), b));
}

TEST(Symmetry, RotateRelabelsOuterEndpoints) {
    // NW -> SW, NE -> NW, SE -> NE, SW -> SE
    EXPECT_EQ(rotate(fundamental_tangle(1)), fundamental_tangle(2));
    EXPECT_EQ(rotate(fundamental_tangle(2)), fundamental_tangle(1));
    const Diagram r = rotate(htwist(1));
    EXPECT_TRUE(isomorphic(r, vtwist(-1)) || isomorphic(r, vtwist(1)));
}

TEST(Symmetry, IdentityIsSymmetric) {
    const Diagram i = identity_spherical();
    EXPECT_EQ(sph_swap(i), i);
    EXPECT_EQ(sph_star(i), i);
}

TEST(Compose, IdentityIsNeutral) {
    for (const auto& s : some_spherical(50, 700)) {
        EXPECT_TRUE(isomorphic(compose_spherical(identity_spherical(), s), s));
        EXPECT_TRUE(isomorphic(compose_spherical(s, identity_spherical()), s));
    }
}

TEST(Compose, SwapReversesOrder) {
    auto ss = some_spherical(40, 800);
    for (size_t i = 0; i + 1 < ss.size(); ++i)
        EXPECT_TRUE(isomorphic(sph_swap(compose_spherical(ss[i], ss[i + 1])),
                               compose_spherical(sph_swap(ss[i + 1]), sph_swap(ss[i]))));
}

TEST(Compose, RejectsBallTangles) {
    EXPECT_THROW(compose_spherical(fundamental_tangle(1), identity_spherical()), ShapeError);
}

TEST(Sums, RotationTurnsHorizontalIntoVertical) {
    auto ss = some_spherical(30, 900);
    auto bs = some_balls(30, 950);
    for (size_t i = 0; i < ss.size(); ++i) {
        EXPECT_TRUE(isomorphic(rotate(connect_h(bs[i], ss[i])), connect_v(rotate(ss[i]), rotate(bs[i]))));
        EXPECT_TRUE(isomorphic(rotate(connect_h(ss[i], bs[i])), connect_v(rotate(bs[i]), rotate(ss[i]))));
    }
}

TEST(Sums, InnerSumsAreSwapConjugates) {
    auto ss = some_spherical(20, 1000);
    auto bs = some_balls(20, 1050);
    for (size_t i = 0; i < ss.size(); ++i) {
        EXPECT_TRUE(isomorphic(sum_with_spherical(bs[i], ss[i], SumKind::InnerH, true),
                               sph_swap(connect_h(sph_swap(ss[i]), flip_h(bs[i])))));
        EXPECT_EQ(sum_with_spherical(bs[i], ss[i], SumKind::InnerH, true).num_boundaries, 2);
    }
}

TEST(Constructors, PerfectMatchingAndPlanarity) {
    std::vector<Diagram> all{unknot(), unlink(3), single_crossing(), identity_spherical(), build_J(1, -2, 0, 3),
                             hooked_identity(), D("num(fill(J(1,1,1,1); t1))")};
    for (auto& s : some_spherical(80, 1100)) all.push_back(s);
    for (auto& b : some_balls(80, 1200)) all.push_back(b);
    for (std::uint64_t s = 0; s < 40; ++s) {
        GenConfig cfg;
        cfg.seed = s;
        cfg.max_crossings = 10;
        all.push_back(gen_punctured(cfg, 1 + static_cast<int>(s % 3)));
    }
    for (const auto& d : all) {
        EXPECT_NO_THROW(d.validate());
        EXPECT_TRUE(is_planar(d));
    }
}

TEST(Constructors, MalformedArcsRejected) {
    EXPECT_THROW(from_arcs(1, 0, 0, {{X(0, 0), X(0, 1)}, {X(0, 1), X(0, 2)}}), MatchingError);
    EXPECT_THROW(from_arcs(1, 0, 0, {{X(0, 0), X(0, 1)}}), MatchingError);
    EXPECT_THROW(from_arcs(1, 0, 0, {{X(0, 0), X(0, 7)}, {X(0, 2), X(0, 3)}}), MatchingError);
}

TEST(Planarity, NegativeControl) {
    // a single crossing with opposite ports joined only embeds in a torus
    const Diagram bad = from_arcs(1, 0, 0, {{X(0, 0), X(0, 2)}, {X(0, 1), X(0, 3)}});
    EXPECT_FALSE(is_planar(bad));
    const Diagram kink = from_arcs(1, 0, 0, {{X(0, 0), X(0, 1)}, {X(0, 2), X(0, 3)}});
    EXPECT_TRUE(is_planar(kink));
}

TEST(ClosedComponents, Counted) {
    EXPECT_EQ(closed_components(identity_spherical()), 0);
    EXPECT_EQ(closed_components(hooked_identity()), 1);
    EXPECT_EQ(closed_components(unlink(2)), 2);
    EXPECT_EQ(closed_components(D("(t1 +h t1) +h I")), 1);
}

TEST(StructuralEquality, HalfTurnOfCrossing) {
    const Diagram a = htwist(1);
    const Diagram b = relabel(a, {0}, {{NW, NE, SE, SW}}, {2, 3, 0, 1});
    EXPECT_TRUE(structurally_equal(a, b));
    const Diagram c = relabel(a, {0}, {{NW, NE, SE, SW}}, {1, 2, 3, 0});
    EXPECT_FALSE(structurally_equal(a, c));
}

TEST(IsomorphismOracle, NegativeControls) {
    EXPECT_FALSE(isomorphic(htwist(1), mirror(htwist(1))));
    EXPECT_FALSE(isomorphic(htwist(2), vtwist(2)));
    EXPECT_FALSE(isomorphic(fundamental_tangle(1), fundamental_tangle(2)));
    EXPECT_FALSE(isomorphic(D("h(1) +v I"), D("I +v h(1)")));
    EXPECT_FALSE(isomorphic(build_J(1, 2, 0, 0), build_J(2, 1, 0, 0)));
    EXPECT_TRUE(isomorphic(build_J(1, 2, 0, 0), build_J(1, 2, 0, 0)));
}
