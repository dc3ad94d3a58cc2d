#include "tanglekit/testkit.hpp"

#include <algorithm>

#include "tanglekit/synth.hpp"

namespace tanglekit {

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t Rng::next() { return engine_(); }

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw PreconditionError("empty range");
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return x % n;
}

long long Rng::between(long long lo, long long hi) {
    if (hi < lo) throw PreconditionError("empty range");
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

bool Rng::chance(int num, int den) { return static_cast<int>(below(den)) < num; }

namespace {

constexpr std::uint64_t kSalt = 0x9e3779b97f4a7c15ULL;

long long twist(Rng& r, int budget) {
    const long long m = std::min(budget, 4);
    long long p = r.between(1, m);
    return r.chance(1, 2) ? -p : p;
}

struct Gen {
    Rng& r;
    bool closed_ok;

    Diagram ball(int depth, int budget) {
        if (depth <= 0 || budget <= 0 || r.chance(1, 4)) return ball_atom(budget);
        switch (r.below(6)) {
            case 0:
            case 1: {
                Diagram a = ball(depth - 1, static_cast<int>(r.between(0, budget)));
                Diagram b = ball(depth - 1, budget - a.num_crossings);
                return r.chance(1, 2) ? connect_h(a, b) : connect_v(a, b);
            }
            case 2: return mirror(ball(depth - 1, budget));
            case 3: return rotate(ball(depth - 1, budget));
            case 4: {
                Diagram s = spherical(depth - 1, static_cast<int>(r.between(0, budget)));
                Diagram b = ball(depth - 1, budget - s.num_crossings);
                return fill_holes(s, {b});
            }
            default: {
                Diagram a = ball(depth - 1, budget);
                return r.chance(1, 2) ? flip_h(a) : flip_v(a);
            }
        }
    }

    Diagram ball_atom(int budget) {
        const int k = budget > 0 ? static_cast<int>(r.below(4)) : static_cast<int>(r.below(2));
        switch (k) {
            case 0: return fundamental_tangle(1);
            case 1: return fundamental_tangle(2);
            case 2: return htwist(twist(r, budget));
            default: return vtwist(twist(r, budget));
        }
    }

    Diagram spherical_atom(int budget) {
        if (closed_ok && budget >= 2 && r.chance(1, 4)) return hooked_identity();
        if (budget >= 1 && r.chance(1, 3)) {
            long long p[4];
            int left = budget;
            for (auto& x : p) {
                const long long m = std::min(left, 2);
                x = r.between(-m, m);
                left -= static_cast<int>(x < 0 ? -x : x);
            }
            return build_J(p[0], p[1], p[2], p[3]);
        }
        return identity_spherical();
    }

    Diagram spherical(int depth, int budget) {
        if (depth <= 0 || r.chance(1, 5)) return spherical_atom(budget);
        const auto op = r.below(9);
        if (op <= 2) {
            Diagram b = ball(depth - 1, static_cast<int>(r.between(0, budget)));
            Diagram s = spherical(depth - 1, budget - b.num_crossings);
            return sum_with_spherical(b, s, static_cast<SumKind>(r.below(4)), r.chance(1, 2));
        }
        if (op == 3) {
            Diagram s2 = spherical(depth - 1, static_cast<int>(r.between(0, budget)));
            Diagram s1 = spherical(depth - 1, budget - s2.num_crossings);
            return compose_spherical(s2, s1);
        }
        Diagram s = spherical(depth - 1, budget);
        switch (op) {
            case 4: return sph_r1(s);
            case 5: return sph_r2(s);
            case 6: return sph_star(s);
            case 7: return sph_swap(s);
            default: return sph_R(s);
        }
    }

    /// Sums of balls around one core spherical tangle; only outer/inner sums and the
    /// determinant-preserving symmetries.
    Diagram reducible(Diagram core, int depth, int budget) {
        Diagram s = std::move(core);
        budget -= s.num_crossings;
        for (int i = 0; i < depth; ++i) {
            Diagram b = ball(2, static_cast<int>(r.between(0, std::max(budget, 0))));
            budget -= b.num_crossings;
            s = sum_with_spherical(b, s, static_cast<SumKind>(r.below(4)), r.chance(1, 2));
        }
        return s;
    }
};

}  // namespace

Diagram gen_ball(const GenConfig& cfg) {
    Rng r(cfg.seed);
    Gen g{r, cfg.allow_closed_components};
    return g.ball(cfg.depth, cfg.max_crossings);
}

Diagram gen_spherical(const GenConfig& cfg) {
    Rng r(cfg.seed ^ kSalt);
    Gen g{r, cfg.allow_closed_components};
    if (!cfg.allow_closed_components) return g.spherical(cfg.depth, cfg.max_crossings);
    Diagram s = g.spherical(cfg.depth, std::max(cfg.max_crossings - 2, 0));
    if (closed_components(s) == 0)
        s = r.chance(1, 2) ? compose_spherical(hooked_identity(), s) : compose_spherical(s, hooked_identity());
    return s;
}

Diagram gen_punctured(const GenConfig& cfg, int holes) {
    if (holes < 0) throw PreconditionError("negative hole count");
    Rng r(cfg.seed ^ (kSalt * 3));
    Gen g{r, cfg.allow_closed_components};
    if (holes == 0) return g.ball(cfg.depth, cfg.max_crossings);
    int budget = cfg.max_crossings;
    std::vector<Diagram> items;
    for (int i = 0; i < holes; ++i) {
        Diagram s = r.chance(1, 2) ? identity_spherical()
                                   : g.spherical(1, static_cast<int>(r.between(0, budget / (holes + 1))));
        budget -= s.num_crossings;
        items.push_back(std::move(s));
    }
    const int balls = static_cast<int>(r.between(0, 2));
    for (int i = 0; i < balls; ++i) {
        Diagram b = g.ball(2, static_cast<int>(r.between(0, std::max(budget, 0) / 2)));
        budget -= b.num_crossings;
        items.push_back(std::move(b));
    }
    while (items.size() > 1) {
        const auto i = r.below(items.size() - 1);
        Diagram joined = r.chance(1, 2) ? connect_h(items[i], items[i + 1]) : connect_v(items[i], items[i + 1]);
        switch (r.below(5)) {
            case 0: joined = mirror(joined); break;
            case 1: joined = rotate(joined); break;
            default: break;
        }
        items[i] = std::move(joined);
        items.erase(items.begin() + static_cast<long>(i) + 1);
    }
    return items[0];
}

Diagram gen_i_reducible(const GenConfig& cfg) {
    Rng r(cfg.seed ^ (kSalt * 5));
    Gen g{r, false};
    return g.reducible(identity_spherical(), std::max(cfg.depth, 1), cfg.max_crossings);
}

Diagram gen_j_reducible(const GenConfig& cfg) {
    Rng r(cfg.seed ^ (kSalt * 7));
    Gen g{r, false};
    long long p[4];
    for (auto& x : p) x = r.between(-2, 2);
    return g.reducible(build_J(p[0], p[1], p[2], p[3]), std::max(cfg.depth, 1), cfg.max_crossings);
}

int Decoration::delta_moves() const {
    return static_cast<int>(std::count_if(log.begin(), log.end(),
                                          [](const MoveSite& m) { return m.kind == MoveKind::Delta; }));
}

Decoration decorate(const Diagram& d, const GenConfig& cfg) {
    Rng r(cfg.seed ^ (kSalt * 11));
    Decoration out{d, {}};
    const int cap = std::max(cfg.max_crossings, d.num_crossings);
    const std::vector<std::pair<MoveKind, int>> growth{
        {MoveKind::R1Insert, 1}, {MoveKind::R2Insert, 2}, {MoveKind::R3, 0}, {MoveKind::R4, 4},
        {MoveKind::R1Delete, -1}, {MoveKind::R2Delete, -2}};
    for (int step = 0; step < cfg.moves; ++step) {
        const Diagram& cur = out.diagram;
        if (cfg.allow_delta && r.chance(1, 2)) {
            auto sites = move_sites(cur, MoveKind::Delta);
            if (!sites.empty()) {
                const MoveSite m = sites[r.below(sites.size())];
                out.diagram = reidemeister_apply(cur, m);
                out.log.push_back(m);
                continue;
            }
        }
        std::vector<MoveKind> kinds;
        for (auto [k, g] : growth)
            if (cur.num_crossings + g <= cap) kinds.push_back(k);
        // a few tries to find a kind with a site
        for (int tries = 0; tries < 8 && !kinds.empty(); ++tries) {
            const MoveKind k = kinds[r.below(kinds.size())];
            auto sites = move_sites(cur, k);
            if (sites.empty()) continue;
            const MoveSite m = sites[r.below(sites.size())];
            out.diagram = reidemeister_apply(cur, m);
            out.log.push_back(m);
            break;
        }
    }
    return out;
}

const char* family_name(SphericalFamily f) {
    switch (f) {
        case SphericalFamily::IReducible: return "I-reducible";
        case SphericalFamily::JReducible: return "J-reducible";
        case SphericalFamily::Composed: return "composed";
        case SphericalFamily::Closed: return "closed-component";
        case SphericalFamily::Decorated: return "decorated";
    }
    return "?";
}

SphericalSample spherical_sample(std::uint64_t seed, bool closed_only, int max_crossings) {
    Rng r(seed ^ (kSalt * 17));
    GenConfig cfg;
    cfg.seed = r.next();
    cfg.depth = static_cast<int>(r.between(1, 4));
    cfg.max_crossings = max_crossings;
    const auto family = closed_only ? SphericalFamily::Closed : static_cast<SphericalFamily>(seed % 5);
    switch (family) {
        case SphericalFamily::IReducible: return {gen_i_reducible(cfg), family};
        case SphericalFamily::JReducible: return {gen_j_reducible(cfg), family};
        case SphericalFamily::Composed: return {gen_spherical(cfg), family};
        case SphericalFamily::Closed:
            cfg.allow_closed_components = true;
            return {gen_spherical(cfg), family};
        case SphericalFamily::Decorated: {
            cfg.max_crossings = max_crossings - 6;
            cfg.allow_closed_components = r.chance(1, 3);
            Diagram s = gen_spherical(cfg);
            cfg.max_crossings = max_crossings;
            cfg.moves = static_cast<int>(r.between(1, 5));
            cfg.allow_delta = true;
            return {decorate(s, cfg).diagram, family};
        }
    }
    throw PreconditionError("unknown family");
}

DeltaPair delta_pair(std::uint64_t seed, int max_crossings) {
    Rng r(seed ^ (kSalt * 19));
    DeltaPair best;
    for (int attempt = 0; attempt < 24; ++attempt) {
        GenConfig cfg;
        cfg.seed = r.next();
        cfg.depth = static_cast<int>(r.between(1, 3));
        cfg.max_crossings = max_crossings - 8;
        Diagram s = r.chance(1, 2) ? gen_j_reducible(cfg) : gen_spherical(cfg);
        cfg.max_crossings = max_crossings;
        cfg.moves = 6;
        cfg.allow_delta = true;
        Decoration d = decorate(s, cfg);
        const bool has_delta = d.delta_moves() > 0;
        if (attempt == 0 || has_delta) best = {s, d};
        if (has_delta) break;
    }
    return best;
}

std::vector<NamedLink> named_links() {
    return {
        {"unknot", unknot()},
        {"unlink2", unlink(2)},
        {"hopf", numerator_closure(htwist(2))},
        {"trefoil", numerator_closure(htwist(3))},
        {"figure-eight", numerator_closure(synth_ball(ProjMatrix::column(5, 2)).diagram)},
    };
}

Diagram corpus_link(std::uint64_t seed, int max_crossings) {
    Rng r(seed ^ (kSalt * 13));
    GenConfig cfg;
    cfg.seed = r.next();
    cfg.depth = static_cast<int>(r.between(1, 4));
    cfg.max_crossings = static_cast<int>(r.between(0, max_crossings));
    cfg.allow_closed_components = r.chance(1, 4);
    Diagram b;
    switch (r.below(4)) {
        case 0: b = gen_ball(cfg); break;
        case 1: {
            GenConfig c2 = cfg;
            c2.max_crossings = cfg.max_crossings / 2;
            Diagram s = gen_spherical(c2);
            c2.seed = r.next();
            c2.max_crossings = cfg.max_crossings - s.num_crossings;
            b = fill_holes(s, {gen_ball(c2)});
            break;
        }
        case 2: {
            const int n = static_cast<int>(r.between(1, 2));
            GenConfig c2 = cfg;
            c2.max_crossings = cfg.max_crossings / 2;
            Diagram t = gen_punctured(c2, n);
            std::vector<Diagram> fills;
            int left = cfg.max_crossings - t.num_crossings;
            for (int i = 0; i < n; ++i) {
                c2.seed = r.next();
                c2.max_crossings = std::max(left, 0) / (n - i);
                fills.push_back(gen_ball(c2));
                left -= fills.back().num_crossings;
            }
            b = fill_holes(t, fills);
            break;
        }
        default: {
            b = gen_ball(cfg);
            GenConfig c2 = cfg;
            c2.seed = r.next();
            c2.moves = static_cast<int>(r.between(1, 4));
            b = decorate(b, c2).diagram;
            break;
        }
    }
    Diagram l = r.chance(1, 2) ? numerator_closure(b) : denominator_closure(b);
    if (r.chance(1, 4)) {
        // grow toward a uniform target size with kinks, bigons and triangle moves
        const int target = static_cast<int>(r.between(l.num_crossings, std::max(max_crossings, l.num_crossings)));
        while (l.num_crossings < target) {
            const MoveKind k = target - l.num_crossings >= 2 && r.chance(3, 4) ? MoveKind::R2Insert : MoveKind::R1Insert;
            auto sites = move_sites(l, k);
            if (sites.empty()) break;
            l = reidemeister_apply(l, sites[r.below(sites.size())]);
            auto r3 = move_sites(l, MoveKind::R3);
            if (!r3.empty() && r.chance(1, 2)) l = reidemeister_apply(l, r3[r.below(r3.size())]);
        }
    }
    return l;
}

std::vector<Diagram> standard_corpus(int max_crossings, int count, std::uint64_t seed) {
    std::vector<Diagram> out;
    for (auto& n : named_links())
        if (n.diagram.num_crossings <= max_crossings) out.push_back(n.diagram);
    for (long long p = -4; p <= 4; ++p)
        for (long long q = -4; q <= 4; ++q) {
            Diagram b = synth_ball(ProjMatrix::column(p, q)).diagram;
            if (b.num_crossings > max_crossings) continue;
            out.push_back(numerator_closure(b));
            out.push_back(denominator_closure(b));
        }
    for (int i = 0; static_cast<int>(out.size()) < count; ++i) {
        Diagram l = corpus_link(seed + static_cast<std::uint64_t>(i), max_crossings);
        if (l.num_crossings <= max_crossings) out.push_back(std::move(l));
    }
    return out;
}

}  // namespace tanglekit
