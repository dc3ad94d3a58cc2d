#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "tanglekit/diagram.hpp"
#include "tanglekit/phi.hpp"

namespace tanglekit {

/// Element of Z[A]/(A^4+1), coefficients of 1, A, A^2, A^3.
struct Cyclo {
    std::array<Int, 4> c{0, 0, 0, 0};

    static Cyclo unit(int e);
    static Cyclo from_phi(const PhiScalar& x);
    Cyclo operator+(const Cyclo& o) const;
    Cyclo operator*(const Cyclo& o) const;
    bool is_zero() const { return c == std::array<Int, 4>{0, 0, 0, 0}; }
    bool operator==(const Cyclo&) const = default;
    /// Throws ResultNotInPhi unless at most one coefficient is nonzero.
    PhiScalar to_phi() const;
};

enum class Evaluator { Auto, Full, Monocyclic, MonocyclicSerial, Skein };

/// Largest crossing count accepted by the state-enumerating evaluators.
/// Defaults to 24, or TANGLEKIT_MAX_CROSSINGS when set.
int crossing_cap();
void set_crossing_cap(int cap);

/// All 2^c states, loop factor (-A^2-A^-2)^(d-1) applied explicitly.
PhiScalar bracket_full(const Diagram& l);
/// Sum over single-loop states only, OpenMP over state-prefix blocks.
PhiScalar bracket_monocyclic(const Diagram& l);
/// Same kernel as bracket_monocyclic on one thread.
PhiScalar bracket_monocyclic_serial(const Diagram& l);
/// Skein recursion crossing by crossing, merging identical residual diagrams.
PhiScalar bracket_skein(const Diagram& l);
/// Auto picks the monocyclic kernel within the cap and the skein evaluator above it.
PhiScalar bracket(const Diagram& l, Evaluator ev = Evaluator::Auto);

/// Per-crossing smoothing choice: 0 = A (joins ports 0-1, 2-3), 1 = B (joins 0-3, 1-2).
using State = std::vector<std::uint8_t>;

/// d(state), counting free loops.
int loop_count(const Diagram& l, const State& s);
bool state_parity(const Diagram& l, const State& s1, const State& s2);

/// Crossing order used by the kernels: breadth-first along arcs.
std::vector<int> traversal_order(const Diagram& d);

}  // namespace tanglekit
