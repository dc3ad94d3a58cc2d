#pragma once

#include <vector>

#include "tanglekit/diagram.hpp"
#include "tanglekit/expr.hpp"
#include "tanglekit/phi.hpp"

namespace tanglekit {

/// b = q1 a + r1, r_{i-2} = q_i r_{i-1} + r_i, ending at r_{k+1} = 0.
struct EuclidTrace {
    std::vector<Int> quotients;   // q1 .. q_{k+1}
    std::vector<Int> remainders;  // r0 = a, r1 .. r_{k+1} = 0
    Int gcd() const { return remainders.size() >= 2 ? remainders[remainders.size() - 2] : 0; }
};

/// Requires 0 < a < b.
EuclidTrace euclid(Int a, Int b);

struct Synthesis {
    Diagram diagram;
    ExprPtr expr;
};

/// Expression for a ball tangle whose invariant is the 2x1 target (any signs, zeros allowed).
ExprPtr synth_expr(Int p, Int q);
/// Elaborated synth_expr.
Synthesis synth_ball(const ProjMatrix& target);

}  // namespace tanglekit
