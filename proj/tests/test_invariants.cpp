#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "tanglekit/bracket.hpp"
#include "tanglekit/invariants.hpp"
#include "tanglekit/moves.hpp"
#include "tanglekit/testkit.hpp"

using namespace tanglekit;
using oracle::D;
using oracle::M2;
using oracle::m2;
using oracle::pm;

namespace {

ProjMatrix col(Int p, Int q) { return ProjMatrix::column(p, q); }
ProjMatrix mat(Int a, Int b, Int c, Int d) { return ProjMatrix::from_rows({{a, b}, {c, d}}); }

Diagram ball(std::uint64_t seed, int max_crossings = 6) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.max_crossings = max_crossings;
    return gen_ball(cfg);
}

Diagram sph(std::uint64_t seed, int max_crossings = 8) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.max_crossings = max_crossings;
    return gen_spherical(cfg);
}

bool is_square(Int n) {
    if (n < 0) return false;
    Int r = static_cast<Int>(std::llround(std::sqrt(static_cast<double>(n))));
    return r * r == n;
}

// Closed forms on [[alpha, gamma], [beta, delta]] and [p; q].
M2 o_star(M2 m) { return {m.al, -m.ga, -m.be, m.de}; }
M2 o_minus(M2 m) { return {m.de, m.ga, m.be, m.al}; }
M2 o_r1(M2 m) { return {-m.ga, m.al, -m.de, m.be}; }
M2 o_r2(M2 m) { return {-m.be, -m.de, m.al, m.ga}; }
M2 o_R(M2 m) { return {m.de, -m.be, -m.ga, m.al}; }
M2 o_sum(Int p, Int q, M2 m, SumKind k) {
    switch (k) {
        case SumKind::H: return {p * m.be + q * m.al, p * m.de + q * m.ga, q * m.be, q * m.de};
        case SumKind::V: return {p * m.al, p * m.ga, q * m.al + p * m.be, q * m.ga + p * m.de};
        case SumKind::InnerH: return {q * m.al, p * m.al + q * m.ga, q * m.be, p * m.be + q * m.de};
        case SumKind::InnerV: return {q * m.ga + p * m.al, p * m.ga, q * m.de + p * m.be, p * m.de};
    }
    return {};
}

}  // namespace

TEST(BallInvariant, FundamentalAndTwists) {
    EXPECT_EQ(inv_f(fundamental_tangle(1)), col(1, 0));
    EXPECT_EQ(inv_f(fundamental_tangle(2)), col(0, 1));
    EXPECT_EQ(inv_f(connect_h(fundamental_tangle(1), fundamental_tangle(1))), col(0, 0));
    for (Int p = -3; p <= 3; ++p) {
        EXPECT_EQ(inv_f(htwist(p)), col(p, 1)) << p;
        EXPECT_EQ(inv_f(vtwist(p)), col(1, p)) << p;
    }
    EXPECT_EQ(inv_f(connect_h(htwist(1), htwist(1))), col(2, 1));
    EXPECT_EQ(inv_f(connect_v(vtwist(1), vtwist(1))), col(1, 2));
    EXPECT_EQ(inv_f(D("v(3) +h t1")), col(3, 0));
    EXPECT_EQ(inv_f(mirror(htwist(1))), col(1, -1));
}

// Sums and symmetries of ball tangles against [p;q] +h [r;s] = [ps+qr; qs], +v = [pr; qr+ps],
// B* = [p;-q], B^R = [q;-p].
TEST(BallInvariant, SumAndSymmetryFormulas) {
    for (std::uint64_t s = 0; s < 150; ++s) {
        const Diagram a = ball(s), b = ball(s + 7777);
        const ProjMatrix fa = inv_f(a), fb = inv_f(b);
        const Int p = fa.at(0, 0), q = fa.at(1, 0), r = fb.at(0, 0), t = fb.at(1, 0);
        EXPECT_EQ(inv_f(connect_h(a, b)), col(p * t + q * r, q * t));
        EXPECT_EQ(inv_f(connect_v(a, b)), col(p * r, q * r + p * t));
        EXPECT_EQ(inv_f(mirror(a)), col(p, -q));
        EXPECT_EQ(inv_f(rotate(a)), col(q, -p));
        EXPECT_EQ(inv_f(flip_h(a)), fa);
        EXPECT_EQ(inv_f(flip_v(a)), fa);
        EXPECT_EQ(inv_f(connect_h(a, fundamental_tangle(2))), fa);
        EXPECT_EQ(bt_sum_h(fa, fb), col(p * t + q * r, q * t));
        EXPECT_EQ(bt_sum_v(fa, fb), col(p * r, q * r + p * t));
        EXPECT_EQ(bt_mirror(fa), col(p, -q));
        EXPECT_EQ(bt_rotate(fa), col(q, -p));
    }
}

TEST(SphericalInvariant, Examples) {
    EXPECT_EQ(inv_Fn(identity_spherical()), ProjMatrix::identity(2));
    const Diagram b = D("h(1) +v I");
    EXPECT_EQ(inv_Fn(b), mat(1, 0, 1, 1));
    EXPECT_EQ(inv_Fn(compose_spherical(b, b)), mat(1, 0, 2, 1));
    EXPECT_EQ(inv_Fn(D("t2 +v I")), mat(0, 0, 1, 0));
    EXPECT_EQ(inv_Fn(D("(t1 +h t1) +h I")), mat(0, 0, 0, 0));
    EXPECT_EQ(inv_Fn(D("h(1) +h I")), mat(1, 1, 0, 1));
    EXPECT_EQ(inv_Fn(D("h(1) .+h I")), mat(1, 1, 0, 1));
}

TEST(PuncturedInvariant, TwoHoleTemplate) {
    const Diagram t = connect_h(identity_spherical(), identity_spherical());
    EXPECT_EQ(inv_Fn(t), ProjMatrix::from_rows({{0, 1, 1, 0}, {0, 0, 0, 1}}));
    for (std::uint64_t s = 0; s < 60; ++s) {
        const Diagram a = ball(s), b = ball(s + 99);
        const ProjMatrix fa = inv_f(a), fb = inv_f(b);
        const Int p = fa.at(0, 0), q = fa.at(1, 0), r = fb.at(0, 0), u = fb.at(1, 0);
        EXPECT_EQ(inv_f(fill_holes(t, {a, b})), col(p * u + q * r, q * u));
        EXPECT_TRUE(compose_law_check(t, {a, b}));
    }
}

TEST(PuncturedInvariant, ZeroHolesIsBallInvariant) {
    for (std::uint64_t s = 0; s < 40; ++s) EXPECT_EQ(inv_Fn(ball(s)), inv_f(ball(s)));
    EXPECT_THROW(inv_f(identity_spherical()), ShapeError);
}

TEST(PuncturedInvariant, ComposeLaw) {
    for (std::uint64_t s = 0; s < 90; ++s) {
        GenConfig cfg;
        cfg.seed = s;
        cfg.max_crossings = 9;
        const int n = 1 + static_cast<int>(s % 3);
        const Diagram t = gen_punctured(cfg, n);
        std::vector<Diagram> fills;
        for (int i = 0; i < n; ++i) fills.push_back(ball(1000 * s + i, 4));
        EXPECT_TRUE(compose_law_check(t, fills)) << s;
        EXPECT_TRUE(compose_law_check(identity_spherical(), {fills[0]}));
    }
}

TEST(Normalize, PicksUnitAndChecksIntegrality) {
    EXPECT_EQ(normalize_phi(2, 1, {{2, 1}, {-3, 1}}), col(2, -3));
    EXPECT_EQ(normalize_phi(2, 1, {{0, 0}, {-5, 3}}), col(0, 5));
    EXPECT_EQ(normalize_phi(2, 1, {{0, 0}, {0, 0}}), col(0, 0));
    EXPECT_THROW(normalize_phi(2, 1, {{1, 0}, {1, 1}}), PhaseIncoherence);
    EXPECT_THROW(normalize_phi(2, 1, {{1, 0}, {1, 2}}), PhaseIncoherence);
    EXPECT_EQ(normalize_phi(2, 2, {{0, 0}, {3, 2}, {-1, 2}, {0, 0}}), mat(0, 3, -1, 0));
}

TEST(Krebes, Examples) {
    // [2;0] +h h(3) closes to a link with |<L>| = |2*1 + 0*3| = 2
    const Diagram b = D("v(2) +h t1");
    ASSERT_EQ(inv_f(b), col(2, 0));
    const Diagram l = numerator_closure(connect_h(b, htwist(3)));
    EXPECT_EQ(bracket(l).magnitude(), 2);
    EXPECT_TRUE(krebes_check({inv_f(b)}, bracket(l)));
    EXPECT_TRUE(krebes_check({col(3, 2)}, PhiScalar(7, 1)));
    EXPECT_FALSE(krebes_check({col(2, 0)}, PhiScalar(3, 0)));
    EXPECT_TRUE(krebes_check({col(0, 0)}, PhiScalar::zero()));
    EXPECT_FALSE(krebes_check({col(0, 0)}, PhiScalar(1, 0)));
    EXPECT_FALSE(krebes_check({col(2, 0), col(3, 0)}, PhiScalar(2, 0)));
}

TEST(Krebes, TwoTanglesInGeneratedLinks) {
    const Diagram b2 = D("v(2) +h t1"), b3 = D("v(3) +h t1");
    for (std::uint64_t s = 0; s < 60; ++s) {
        GenConfig cfg;
        cfg.seed = s;
        cfg.max_crossings = 8;
        const Diagram t = gen_punctured(cfg, 2);
        const Diagram l = numerator_closure(fill_holes(t, {b2, b3}));
        const Int m = bracket(l).magnitude();
        EXPECT_EQ(m % 6, 0) << s;
        EXPECT_TRUE(krebes_check({inv_f(b2), inv_f(b3)}, bracket(l)));
        const Diagram z = numerator_closure(fill_holes(t, {D("t1 +h t1"), b3}));
        EXPECT_EQ(bracket(z).magnitude(), 0);
    }
}

TEST(MatrixOps, MatchClosedForms) {
    Rng r(5);
    for (int i = 0; i < 300; ++i) {
        const M2 m{r.between(-9, 9), r.between(-9, 9), r.between(-9, 9), r.between(-9, 9)};
        const ProjMatrix x = pm(m);
        EXPECT_EQ(mat_star(x), pm(o_star(m)));
        EXPECT_EQ(mat_minus(x), pm(o_minus(m)));
        EXPECT_EQ(mat_r1(x), pm(o_r1(m)));
        EXPECT_EQ(mat_r2(x), pm(o_r2(m)));
        EXPECT_EQ(mat_R(x), pm(o_R(m)));
        EXPECT_EQ(mat_minus(mat_minus(x)), x);
        EXPECT_EQ(mat_R(x), mat_r2(mat_r1(x)));
        const Int p = r.between(-9, 9), q = r.between(-9, 9);
        for (auto k : {SumKind::H, SumKind::V, SumKind::InnerH, SumKind::InnerV}) {
            const ProjMatrix s = mat_sum(col(p, q), x, k);
            EXPECT_EQ(s, pm(o_sum(p, q, m, k)));
            const Int scale = (k == SumKind::H || k == SumKind::InnerH) ? q * q : p * p;
            EXPECT_EQ(det2(s), scale * det2(x));
        }
    }
}

TEST(MatrixOps, DiagramOperationsCommute) {
    for (std::uint64_t s = 0; s < 80; ++s) {
        const Diagram t = sph(s);
        const M2 m = m2(inv_Fn(t));
        EXPECT_EQ(inv_Fn(sph_star(t)), pm(o_star(m)));
        EXPECT_EQ(inv_Fn(sph_swap(t)), pm(o_minus(m)));
        EXPECT_EQ(inv_Fn(sph_r1(t)), pm(o_r1(m)));
        EXPECT_EQ(inv_Fn(sph_r2(t)), pm(o_r2(m)));
        EXPECT_EQ(inv_Fn(sph_R(t)), pm(o_R(m)));
        const Diagram b = ball(s + 500);
        const ProjMatrix fb = inv_f(b);
        for (auto k : {SumKind::H, SumKind::V, SumKind::InnerH, SumKind::InnerV}) {
            const ProjMatrix want = pm(o_sum(fb.at(0, 0), fb.at(1, 0), m, k));
            EXPECT_EQ(inv_Fn(sum_with_spherical(b, t, k, true)), want);
            EXPECT_EQ(inv_Fn(sum_with_spherical(b, t, k, false)), want);
        }
    }
}

TEST(MatrixOps, DistributionOverCompose) {
    for (std::uint64_t s = 0; s < 60; ++s) {
        const Diagram a = sph(s, 6), b = sph(s + 3000, 6);
        auto F = [](const Diagram& d) { return inv_Fn(d); };
        EXPECT_EQ(F(sph_star(compose_spherical(a, b))), F(compose_spherical(sph_star(a), sph_star(b))));
        EXPECT_EQ(F(sph_swap(compose_spherical(a, b))), F(compose_spherical(sph_swap(b), sph_swap(a))));
        EXPECT_EQ(F(sph_r1(compose_spherical(a, b))), F(compose_spherical(a, sph_r1(b))));
        EXPECT_EQ(F(sph_r2(compose_spherical(a, b))), F(compose_spherical(sph_r2(a), b)));
        EXPECT_EQ(F(sph_R(compose_spherical(a, b))), F(compose_spherical(sph_R(a), sph_R(b))));
    }
}

TEST(MatrixOps, RotationIdentitiesOfSums) {
    auto R = [](const Diagram& d, int k) {
        Diagram x = d;
        for (int i = 0; i < k; ++i) x = rotate(x);
        return x;
    };
    for (std::uint64_t s = 0; s < 40; ++s) {
        const Diagram b = ball(s), t = sph(s + 40);
        auto F = [](const Diagram& d) { return inv_Fn(d); };
        EXPECT_EQ(F(R(connect_h(b, t), 1)), F(connect_v(R(t, 1), R(b, 1))));
        EXPECT_EQ(F(R(connect_h(t, b), 1)), F(connect_v(R(b, 1), R(t, 1))));
        EXPECT_EQ(F(R(connect_v(b, t), 1)), F(connect_h(R(b, 1), R(t, 1))));
        EXPECT_EQ(F(R(connect_v(t, b), 1)), F(connect_h(R(t, 1), R(b, 1))));
        EXPECT_EQ(F(connect_h(t, b)), F(R(connect_h(R(b, 2), R(t, 2)), 2)));
        EXPECT_EQ(F(connect_v(b, t)), F(R(connect_h(R(b, 1), R(t, 1)), 3)));
        EXPECT_EQ(F(connect_v(t, b)), F(R(connect_h(R(b, 3), R(t, 3)), 1)));
    }
}

TEST(Functoriality, ComposeIsMatrixProduct) {
    for (std::uint64_t s = 0; s < 80; ++s) {
        const Diagram a = sph(s, 7), b = sph(s + 5000, 7);
        EXPECT_EQ(inv_Fn(compose_spherical(a, b)), proj_matmul(inv_Fn(a), inv_Fn(b)));
    }
}

TEST(JFamily, FormulaExamples) {
    EXPECT_EQ(j_formula(1, 1, 1, 1).first, mat(4, -4, 4, -4));
    EXPECT_EQ(j_formula(1, 1, 1, 1).second, 0);
    EXPECT_EQ(j_formula(1, -1, 1, 1).second, 4);
    EXPECT_EQ(j_formula(1, 0, 0, 0).first, mat(0, 0, 0, 1));
}

TEST(JFamily, DiagramMatchesFormula) {
    for (Int a = -1; a <= 1; ++a)
        for (Int b = -1; b <= 2; ++b)
            for (Int c = -1; c <= 1; ++c)
                for (Int d = 0; d <= 2; ++d) {
                    const Int p[4] = {a, b, c, d};
                    const M2 want{p[0] * p[1] * p[2] + p[0] * p[1] * p[3] + p[0] * p[2] * p[3] + p[1] * p[2] * p[3],
                                  -p[0] * p[2] - p[0] * p[3] - p[1] * p[3] - p[1] * p[2],
                                  p[0] * p[1] + p[0] * p[3] + p[1] * p[2] + p[2] * p[3], -p[0] - p[1] - p[2] - p[3]};
                    const ProjMatrix got = inv_Fn(build_J(a, b, c, d));
                    EXPECT_EQ(got, pm(want));
                    EXPECT_EQ(j_formula(a, b, c, d).first, pm(want));
                    EXPECT_EQ(det2(got), (a * d - b * c) * (a * d - b * c));
                }
}

TEST(Determinant, ResidueExamples) {
    EXPECT_EQ(det_residue(ProjMatrix::identity(2)), 1);
    EXPECT_EQ(det_residue(mat(1, 0, 0, -1)), 3);
    EXPECT_EQ(det_residue(mat(1, 1, 1, 1)), 0);
    EXPECT_EQ(det_residue(mat(3, 1, 1, 1)), 2);
}

TEST(Determinant, IReducibleIsSquare) {
    for (std::uint64_t s = 0; s < 150; ++s) {
        GenConfig cfg;
        cfg.seed = s;
        cfg.max_crossings = 12;
        const Int d = det2(inv_Fn(gen_i_reducible(cfg)));
        EXPECT_TRUE(is_square(d)) << s << " det " << d;
    }
}

TEST(Determinant, JReducibleIsSquareTimesJ) {
    Rng r(3);
    for (int i = 0; i < 80; ++i) {
        const Int p1 = r.between(-2, 2), p2 = r.between(-2, 2), p3 = r.between(-2, 2), p4 = r.between(-2, 2);
        Diagram s = build_J(p1, p2, p3, p4);
        const Int dj = det2(inv_Fn(s));
        for (int k = 0; k < 2; ++k) {
            const auto kind = static_cast<SumKind>(r.below(4));
            s = sum_with_spherical(ball(r.next(), 3), s, kind, r.chance(1, 2));
        }
        const Int d = det2(inv_Fn(s));
        if (dj == 0) {
            EXPECT_EQ(d, 0);
        } else {
            EXPECT_EQ(d % dj, 0);
            EXPECT_TRUE(is_square(d / dj)) << d << " / " << dj;
        }
    }
}

TEST(Determinant, ClosedComponentsGiveEvenEntries) {
    const ProjMatrix h = inv_Fn(hooked_identity());
    for (Int x : h.entries()) EXPECT_EQ(x % 2, 0) << h.to_string();
    for (std::uint64_t s = 0; s < 60; ++s) {
        GenConfig cfg;
        cfg.seed = s;
        cfg.max_crossings = 12;
        cfg.allow_closed_components = true;
        const Diagram t = gen_spherical(cfg);
        EXPECT_GE(closed_components(t), 1);
        const ProjMatrix f = inv_Fn(t);
        for (Int x : f.entries()) EXPECT_EQ(x % 2, 0) << s << " " << f.to_string();
    }
}

TEST(Determinant, ResidueIsZeroOrOne) {
    for (std::uint64_t s = 0; s < 200; ++s) EXPECT_LE(det_residue(inv_Fn(spherical_sample(s).diagram)), 1) << s;
}

TEST(DeltaCongruence, Examples) {
    const ProjMatrix a = mat(1, 2, 3, 0);
    EXPECT_TRUE(delta_congruent(a, a));
    EXPECT_TRUE(delta_congruent(a, mat(3, 2, 1, 0)));
    EXPECT_TRUE(delta_congruent(mat(1, 5, 0, 2), mat(3, -1, 4, 2)));
    EXPECT_FALSE(delta_congruent(mat(1, 0, 0, 0), mat(2, 0, 0, 0)));
    EXPECT_FALSE(delta_congruent(mat(1, 1, 0, 0), mat(1, 3, 0, 0)));
}

TEST(DeltaCongruence, JWithDeltaMove) {
    const Diagram j = build_J(1, 1, 1, 1);
    int tried = 0;
    for (const auto& site : triangle_sites(j)) {
        if (!site.cyclic) continue;
        EXPECT_TRUE(delta_congruence_check(j, delta_move(j, site.crossing)));
        ++tried;
    }
    for (std::uint64_t s = 0; s < 30; ++s) {
        GenConfig cfg;
        cfg.seed = s;
        cfg.max_crossings = 14;
        cfg.allow_delta = true;
        cfg.moves = 6;
        const Decoration d = decorate(j, cfg);
        tried += d.delta_moves();
        EXPECT_TRUE(delta_congruence_check(j, d.diagram));
    }
    EXPECT_GT(tried, 0);
}

TEST(DeltaCongruence, GeneratedPairs) {
    int with_delta = 0;
    for (std::uint64_t s = 0; s < 60; ++s) {
        const DeltaPair p = delta_pair(s);
        with_delta += p.after.delta_moves() > 0;
        EXPECT_TRUE(delta_congruence_check(p.before, p.after.diagram)) << s;
    }
    EXPECT_GT(with_delta, 50);
}
