#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tanglekit/diagram.hpp"
#include "tanglekit/moves.hpp"

namespace tanglekit {

/// std::mt19937_64 plus a rejection sampler for bounded integers. The engine's output is fixed by
/// the standard while std distributions are not, so corpora match across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed);
    std::uint64_t next();
    /// Uniform in [0, n).
    std::uint64_t below(std::uint64_t n);
    /// Uniform in [lo, hi].
    long long between(long long lo, long long hi);
    bool chance(int num, int den);

private:
    std::mt19937_64 engine_;
};

struct GenConfig {
    std::uint64_t seed = 1;
    int max_crossings = 16;
    int depth = 3;
    bool allow_closed_components = false;
    /// decorate: number of moves and whether Delta moves may be used
    int moves = 4;
    bool allow_delta = false;
};

/// Built only from planarity-preserving constructors; deterministic in the config.
Diagram gen_ball(const GenConfig& cfg);
/// With allow_closed_components the result always contains a closed component (hooked rings are
/// inserted). Without it no rings are inserted, though gluing can still close off loops.
Diagram gen_spherical(const GenConfig& cfg);
/// `holes` holes carried by identity annuli or random spherical tangles, joined with balls.
Diagram gen_punctured(const GenConfig& cfg, int holes);
/// Outer and inner sums of ball tangles around exactly one identity annulus.
Diagram gen_i_reducible(const GenConfig& cfg);
/// Sums of ball tangles around one J.
Diagram gen_j_reducible(const GenConfig& cfg);

struct Decoration {
    Diagram diagram;
    std::vector<MoveSite> log;
    int delta_moves() const;
};

/// Random Reidemeister moves (and Delta moves when allowed and available), keeping the
/// crossing count within max(cfg.max_crossings, d.num_crossings).
Decoration decorate(const Diagram& d, const GenConfig& cfg);

enum class SphericalFamily { IReducible, JReducible, Composed, Closed, Decorated };
const char* family_name(SphericalFamily f);

struct SphericalSample {
    Diagram diagram;
    SphericalFamily family;
};

/// One spherical tangle from a rotating mix of families; `closed_only` forces the Closed family.
SphericalSample spherical_sample(std::uint64_t seed, bool closed_only = false, int max_crossings = 14);

/// A spherical tangle and a decoration of it containing at least one Delta move when one
/// could be found within a few attempts.
struct DeltaPair {
    Diagram before;
    Decoration after;
};
DeltaPair delta_pair(std::uint64_t seed, int max_crossings = 18);

/// Named links first (unknot, 2-unlink, Hopf, trefoil, figure-eight), then closures of
/// generated tangles; all with at most max_crossings crossings.
struct NamedLink {
    std::string name;
    Diagram diagram;
};
std::vector<NamedLink> named_links();
/// One sampled link diagram for `seed`.
Diagram corpus_link(std::uint64_t seed, int max_crossings);
std::vector<Diagram> standard_corpus(int max_crossings, int count, std::uint64_t seed = 2024);

}  // namespace tanglekit
