#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tanglekit/errors.hpp"

namespace tanglekit {

using Int = std::int64_t;

Int checked_add(Int a, Int b);
Int checked_sub(Int a, Int b);
Int checked_mul(Int a, Int b);
Int checked_neg(Int a);

/// p * A^k with A = e^{i pi/4}; k is kept in 0..3 and A^4 = -1 goes into the sign of p.
class PhiScalar {
public:
    PhiScalar() = default;
    PhiScalar(Int mag, int exp);

    static PhiScalar zero() { return {}; }
    static PhiScalar one() { return {1, 0}; }
    /// A^e for any integer e.
    static PhiScalar unit(int e) { return {1, e}; }

    Int mag() const { return mag_; }
    int exp() const { return exp_; }
    Int magnitude() const;
    bool is_zero() const { return mag_ == 0; }

    bool operator==(const PhiScalar&) const = default;
    std::string to_string() const;

private:
    Int mag_ = 0;
    int exp_ = 0;
};

PhiScalar phi_mul(const PhiScalar& x, const PhiScalar& y);
/// Throws NonCoherentPhases when both are nonzero with different exponents.
PhiScalar phi_add(const PhiScalar& x, const PhiScalar& y);
PhiScalar phi_neg(const PhiScalar& x);

/// Integer matrix modulo a global sign; stored with the first nonzero entry positive.
class ProjMatrix {
public:
    ProjMatrix() = default;
    ProjMatrix(int rows, int cols, std::vector<Int> entries);
    static ProjMatrix from_rows(const std::vector<std::vector<Int>>& rows);
    static ProjMatrix column(Int p, Int q) { return ProjMatrix(2, 1, {p, q}); }
    static ProjMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Int at(int r, int c) const { return e_[static_cast<size_t>(r) * cols_ + c]; }
    const std::vector<Int>& entries() const { return e_; }
    bool is_zero() const;

    bool operator==(const ProjMatrix&) const = default;
    /// "[p;q]" for 2x1, "[[a,b],[c,d]]" otherwise.
    std::string to_string() const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Int> e_;
};

ProjMatrix proj_matmul(const ProjMatrix& x, const ProjMatrix& y);
Int det2(const ProjMatrix& m);
Int gcd_list(const std::vector<Int>& values);
/// The "0 divides m iff m = 0" convention.
bool divides(Int d, Int m);

/// alpha_rank^n over {1,2}^n in lexicographic order, rank in 1..2^n.
struct MultiIndex {
    int n = 0;
    std::vector<int> bits;
    std::uint64_t rank = 1;
    int weight = 0;

    static MultiIndex from_rank(int n, std::uint64_t rank);
    static MultiIndex from_bits(const std::vector<int>& bits);
};

/// t_1..t_{2^n} built by a_0 = (0), a_{k+1} = (a_k, a_k + 1).
std::vector<int> weight_sequence(int n);

/// Lexicographic tensor of n two-entry vectors.
std::vector<Int> xi(const std::vector<std::vector<Int>>& vectors);
ProjMatrix xi_proj(const std::vector<ProjMatrix>& vectors);

}  // namespace tanglekit
