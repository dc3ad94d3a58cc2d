#include "tanglekit/phi.hpp"

#include <numeric>
#include <sstream>

namespace tanglekit {

Int checked_add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
    return r;
}

Int checked_sub(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
    return r;
}

Int checked_mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
    return r;
}

Int checked_neg(Int a) { return checked_sub(0, a); }

PhiScalar::PhiScalar(Int mag, int exp) {
    int e = ((exp % 8) + 8) % 8;
    if (e >= 4) {
        mag = checked_neg(mag);
        e -= 4;
    }
    if (mag == 0) e = 0;
    mag_ = mag;
    exp_ = e;
}

Int PhiScalar::magnitude() const { return mag_ < 0 ? checked_neg(mag_) : mag_; }

std::string PhiScalar::to_string() const {
    std::ostringstream os;
    os << mag_ << "*A^" << exp_;
    return os.str();
}

PhiScalar phi_mul(const PhiScalar& x, const PhiScalar& y) {
    return {checked_mul(x.mag(), y.mag()), x.exp() + y.exp()};
}

PhiScalar phi_add(const PhiScalar& x, const PhiScalar& y) {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    if (x.exp() != y.exp())
        throw NonCoherentPhases("sum " + x.to_string() + " + " + y.to_string() + " leaves Z[Phi]");
    return {checked_add(x.mag(), y.mag()), x.exp()};
}

PhiScalar phi_neg(const PhiScalar& x) { return {checked_neg(x.mag()), x.exp()}; }

ProjMatrix::ProjMatrix(int rows, int cols, std::vector<Int> entries)
    : rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (rows <= 0 || cols <= 0 || e_.size() != static_cast<size_t>(rows) * cols)
        throw ShapeError("matrix entry count does not match shape");
    for (Int v : e_) {
        if (v == 0) continue;
        if (v < 0)
            for (Int& w : e_) w = checked_neg(w);
        break;
    }
}

ProjMatrix ProjMatrix::from_rows(const std::vector<std::vector<Int>>& rows) {
    if (rows.empty()) throw ShapeError("empty matrix");
    std::vector<Int> e;
    for (const auto& r : rows) {
        if (r.size() != rows[0].size()) throw ShapeError("ragged matrix");
        e.insert(e.end(), r.begin(), r.end());
    }
    return ProjMatrix(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()), e);
}

ProjMatrix ProjMatrix::identity(int n) {
    std::vector<Int> e(static_cast<size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) e[static_cast<size_t>(i) * n + i] = 1;
    return ProjMatrix(n, n, e);
}

bool ProjMatrix::is_zero() const {
    for (Int v : e_)
        if (v != 0) return false;
    return true;
}

std::string ProjMatrix::to_string() const {
    std::ostringstream os;
    if (cols_ == 1) {
        os << "[";
        for (int r = 0; r < rows_; ++r) os << (r ? ";" : "") << at(r, 0);
        os << "]";
        return os.str();
    }
    os << "[";
    for (int r = 0; r < rows_; ++r) {
        os << (r ? ",[" : "[");
        for (int c = 0; c < cols_; ++c) os << (c ? "," : "") << at(r, c);
        os << "]";
    }
    os << "]";
    return os.str();
}

ProjMatrix proj_matmul(const ProjMatrix& x, const ProjMatrix& y) {
    if (x.cols() != y.rows())
        throw ShapeError("dimension mismatch in product: " + std::to_string(x.cols()) + " vs " +
                         std::to_string(y.rows()));
    std::vector<Int> e(static_cast<size_t>(x.rows()) * y.cols(), 0);
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < y.cols(); ++j) {
            Int s = 0;
            for (int k = 0; k < x.cols(); ++k) s = checked_add(s, checked_mul(x.at(i, k), y.at(k, j)));
            e[static_cast<size_t>(i) * y.cols() + j] = s;
        }
    return ProjMatrix(x.rows(), y.cols(), e);
}

Int det2(const ProjMatrix& m) {
    if (m.rows() != 2 || m.cols() != 2) throw ShapeError("determinant needs a 2x2 matrix");
    return checked_sub(checked_mul(m.at(0, 0), m.at(1, 1)), checked_mul(m.at(0, 1), m.at(1, 0)));
}

Int gcd_list(const std::vector<Int>& values) {
    Int g = 0;
    for (Int v : values) g = std::gcd(g, v < 0 ? checked_neg(v) : v);
    return g;
}

bool divides(Int d, Int m) {
    if (d == 0) return m == 0;
    return m % d == 0;
}

MultiIndex MultiIndex::from_rank(int n, std::uint64_t rank) {
    if (n < 0 || n > 62) throw PreconditionError("multi-index length out of range");
    if (rank < 1 || rank > (std::uint64_t{1} << n)) throw PreconditionError("rank out of range");
    MultiIndex m;
    m.n = n;
    m.rank = rank;
    std::uint64_t r = rank - 1;
    m.bits.resize(n);
    for (int j = 0; j < n; ++j) {
        int b = static_cast<int>((r >> (n - 1 - j)) & 1);
        m.bits[j] = b + 1;
        m.weight += b;
    }
    return m;
}

MultiIndex MultiIndex::from_bits(const std::vector<int>& bits) {
    std::uint64_t r = 0;
    for (int b : bits) {
        if (b != 1 && b != 2) throw PreconditionError("multi-index entries must be 1 or 2");
        r = (r << 1) | static_cast<std::uint64_t>(b - 1);
    }
    return from_rank(static_cast<int>(bits.size()), r + 1);
}

std::vector<int> weight_sequence(int n) {
    std::vector<int> a{0};
    for (int k = 0; k < n; ++k) {
        size_t m = a.size();
        for (size_t i = 0; i < m; ++i) a.push_back(a[i] + 1);
    }
    return a;
}

std::vector<Int> xi(const std::vector<std::vector<Int>>& vectors) {
    if (vectors.empty()) throw PreconditionError("xi needs at least one vector");
    std::vector<Int> out{1};
    for (const auto& v : vectors) {
        if (v.size() != 2) throw ShapeError("xi inputs must have two entries");
        std::vector<Int> next;
        next.reserve(out.size() * 2);
        for (Int x : out) {
            next.push_back(checked_mul(x, v[0]));
            next.push_back(checked_mul(x, v[1]));
        }
        out = std::move(next);
    }
    return out;
}

ProjMatrix xi_proj(const std::vector<ProjMatrix>& vectors) {
    std::vector<std::vector<Int>> vs;
    for (const auto& m : vectors) {
        if (m.rows() != 2 || m.cols() != 1) throw ShapeError("xi inputs must be 2x1");
        vs.push_back({m.at(0, 0), m.at(1, 0)});
    }
    auto e = xi(vs);
    return ProjMatrix(static_cast<int>(e.size()), 1, e);
}

}  // namespace tanglekit
