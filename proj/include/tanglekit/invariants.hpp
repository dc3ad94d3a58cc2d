#pragma once

#include <utility>
#include <vector>

#include "tanglekit/bracket.hpp"
#include "tanglekit/diagram.hpp"
#include "tanglekit/phi.hpp"

namespace tanglekit {

/// Scales a matrix of Z[Phi] entries by one z in Phi so the first nonzero entry (row-major)
/// is a positive integer; throws PhaseIncoherence if any entry is then not an integer.
ProjMatrix normalize_phi(int rows, int cols, const std::vector<PhiScalar>& entries);

/// f(B) in PM_2.
ProjMatrix inv_f(const Diagram& b, Evaluator ev = Evaluator::Auto);
/// F^n(T) in PM_{2 x 2^n}; n = 0 is inv_f.
ProjMatrix inv_Fn(const Diagram& t, Evaluator ev = Evaluator::Auto);

/// f(T(B_1..B_n)) == F^n(T) [xi^n](f(B_1), ..., f(B_n)).
bool compose_law_check(const Diagram& t, const std::vector<Diagram>& fills,
                       Evaluator ev = Evaluator::Auto);

/// prod gcd(p_i, q_i) divides |<L>|, with 0 dividing only 0.
bool krebes_check(const std::vector<ProjMatrix>& tangles, const PhiScalar& link_bracket);

// 2x2 notation: F = [[alpha, gamma], [beta, delta]]
ProjMatrix mat_star(const ProjMatrix& m);
ProjMatrix mat_minus(const ProjMatrix& m);
ProjMatrix mat_r1(const ProjMatrix& m);
ProjMatrix mat_r2(const ProjMatrix& m);
ProjMatrix mat_R(const ProjMatrix& m);
/// F of the sum of a ball tangle with invariant v and a spherical tangle with invariant m.
/// Both operand orders give the same matrix.
ProjMatrix mat_sum(const ProjMatrix& v, const ProjMatrix& m, SumKind kind);

ProjMatrix bt_sum_h(const ProjMatrix& a, const ProjMatrix& b);
ProjMatrix bt_sum_v(const ProjMatrix& a, const ProjMatrix& b);
ProjMatrix bt_mirror(const ProjMatrix& a);
ProjMatrix bt_rotate(const ProjMatrix& a);

/// Closed form of F(J(p1..p4)) and its determinant (p1 p4 - p2 p3)^2.
std::pair<ProjMatrix, Int> j_formula(Int p1, Int p2, Int p3, Int p4);

/// det mod 4 in 0..3.
int det_residue(const ProjMatrix& m);

/// Entrywise congruence mod 4 with one global sign.
bool delta_congruent(const ProjMatrix& m, const ProjMatrix& m2);
bool delta_congruence_check(const Diagram& s, const Diagram& s_delta, Evaluator ev = Evaluator::Auto);

}  // namespace tanglekit
