#include "tanglekit/invariants.hpp"

namespace tanglekit {

ProjMatrix normalize_phi(int rows, int cols, const std::vector<PhiScalar>& entries) {
    int k = 0;
    Int sign = 1;
    for (const auto& x : entries)
        if (!x.is_zero()) {
            k = x.exp();
            sign = x.mag() < 0 ? -1 : 1;
            break;
        }
    std::vector<Int> out;
    out.reserve(entries.size());
    const PhiScalar z(sign, -k);
    for (const auto& x : entries) {
        PhiScalar y = phi_mul(x, z);
        if (y.exp() != 0)
            throw PhaseIncoherence("closure brackets are not a common root of unity times integers");
        out.push_back(y.mag());
    }
    return ProjMatrix(rows, cols, out);
}

ProjMatrix inv_f(const Diagram& b, Evaluator ev) {
    require_boundaries(b, 1, "f");
    PhiScalar n = bracket(numerator_closure(b), ev);
    PhiScalar d = bracket(denominator_closure(b), ev);
    return normalize_phi(2, 1, {n, phi_mul(PhiScalar::unit(2), d)});
}

ProjMatrix inv_Fn(const Diagram& t, Evaluator ev) {
    if (t.num_boundaries < 1) throw ShapeError("F^n needs an outer boundary");
    const int n = t.num_holes();
    if (n == 0) return inv_f(t, ev);
    if (n > 20) throw PreconditionError("too many holes");
    const std::uint64_t cols = std::uint64_t{1} << n;
    const Diagram t1 = fundamental_tangle(1), t2 = fundamental_tangle(2);
    std::vector<PhiScalar> top(cols), bottom(cols);
    for (std::uint64_t j = 0; j < cols; ++j) {
        MultiIndex a = MultiIndex::from_rank(n, j + 1);
        std::vector<Diagram> fills;
        for (int bit : a.bits) fills.push_back(bit == 1 ? t1 : t2);
        Diagram filled = fill_holes(t, fills);
        PhiScalar w = PhiScalar::unit(-2 * a.weight);
        top[j] = phi_mul(w, bracket(numerator_closure(filled), ev));
        bottom[j] = phi_mul(phi_mul(w, PhiScalar::unit(2)), bracket(denominator_closure(filled), ev));
    }
    std::vector<PhiScalar> all = top;
    all.insert(all.end(), bottom.begin(), bottom.end());
    return normalize_phi(2, static_cast<int>(cols), all);
}

bool compose_law_check(const Diagram& t, const std::vector<Diagram>& fills, Evaluator ev) {
    if (static_cast<int>(fills.size()) != t.num_holes()) return false;
    ProjMatrix lhs = inv_f(fill_holes(t, fills), ev);
    if (fills.empty()) return lhs == inv_Fn(t, ev);
    std::vector<ProjMatrix> fs;
    for (const auto& b : fills) fs.push_back(inv_f(b, ev));
    ProjMatrix rhs = proj_matmul(inv_Fn(t, ev), xi_proj(fs));
    return lhs == rhs;
}

bool krebes_check(const std::vector<ProjMatrix>& tangles, const PhiScalar& link_bracket) {
    Int prod = 1;
    for (const auto& v : tangles) {
        if (v.rows() != 2 || v.cols() != 1) throw ShapeError("ball tangle invariants are 2x1");
        prod = checked_mul(prod, gcd_list({v.at(0, 0), v.at(1, 0)}));
    }
    return divides(prod, link_bracket.magnitude());
}

namespace {

struct Abcd {
    Int a, g, b, d;  // [[a, g], [b, d]]
};

Abcd unpack(const ProjMatrix& m) {
    if (m.rows() != 2 || m.cols() != 2) throw ShapeError("expected a 2x2 matrix");
    return {m.at(0, 0), m.at(0, 1), m.at(1, 0), m.at(1, 1)};
}

std::pair<Int, Int> unpack_v(const ProjMatrix& v) {
    if (v.rows() != 2 || v.cols() != 1) throw ShapeError("expected a 2x1 vector");
    return {v.at(0, 0), v.at(1, 0)};
}

ProjMatrix m2(Int a, Int g, Int b, Int d) { return ProjMatrix(2, 2, {a, g, b, d}); }

Int add(Int x, Int y) { return checked_add(x, y); }
Int mul(Int x, Int y) { return checked_mul(x, y); }
Int neg(Int x) { return checked_neg(x); }

}  // namespace

ProjMatrix mat_star(const ProjMatrix& m) {
    auto [a, g, b, d] = unpack(m);
    return m2(a, neg(g), neg(b), d);
}

ProjMatrix mat_minus(const ProjMatrix& m) {
    auto [a, g, b, d] = unpack(m);
    return m2(d, g, b, a);
}

ProjMatrix mat_r1(const ProjMatrix& m) {
    auto [a, g, b, d] = unpack(m);
    return m2(neg(g), a, neg(d), b);
}

ProjMatrix mat_r2(const ProjMatrix& m) {
    auto [a, g, b, d] = unpack(m);
    return m2(neg(b), neg(d), a, g);
}

ProjMatrix mat_R(const ProjMatrix& m) {
    auto [a, g, b, d] = unpack(m);
    return m2(d, neg(b), neg(g), a);
}

ProjMatrix mat_sum(const ProjMatrix& v, const ProjMatrix& m, SumKind kind) {
    auto [p, q] = unpack_v(v);
    auto [a, g, b, d] = unpack(m);
    switch (kind) {
        case SumKind::H:
            return m2(add(mul(p, b), mul(q, a)), add(mul(p, d), mul(q, g)), mul(q, b), mul(q, d));
        case SumKind::V:
            return m2(mul(p, a), mul(p, g), add(mul(q, a), mul(p, b)), add(mul(q, g), mul(p, d)));
        case SumKind::InnerH:
            return m2(mul(q, a), add(mul(p, a), mul(q, g)), mul(q, b), add(mul(p, b), mul(q, d)));
        case SumKind::InnerV:
            return m2(add(mul(q, g), mul(p, a)), mul(p, g), add(mul(q, d), mul(p, b)), mul(p, d));
    }
    throw PreconditionError("unknown sum kind");
}

ProjMatrix bt_sum_h(const ProjMatrix& x, const ProjMatrix& y) {
    auto [p, q] = unpack_v(x);
    auto [r, s] = unpack_v(y);
    return ProjMatrix::column(add(mul(p, s), mul(q, r)), mul(q, s));
}

ProjMatrix bt_sum_v(const ProjMatrix& x, const ProjMatrix& y) {
    auto [p, q] = unpack_v(x);
    auto [r, s] = unpack_v(y);
    return ProjMatrix::column(mul(p, r), add(mul(q, r), mul(p, s)));
}

ProjMatrix bt_mirror(const ProjMatrix& x) {
    auto [p, q] = unpack_v(x);
    return ProjMatrix::column(p, neg(q));
}

ProjMatrix bt_rotate(const ProjMatrix& x) {
    auto [p, q] = unpack_v(x);
    return ProjMatrix::column(q, neg(p));
}

std::pair<ProjMatrix, Int> j_formula(Int p1, Int p2, Int p3, Int p4) {
    auto m3 = [](Int x, Int y, Int z) { return mul(mul(x, y), z); };
    Int a = add(add(m3(p1, p2, p3), m3(p1, p2, p4)), add(m3(p1, p3, p4), m3(p2, p3, p4)));
    Int g = neg(add(add(mul(p1, p3), mul(p1, p4)), add(mul(p2, p4), mul(p2, p3))));
    Int b = add(add(mul(p1, p2), mul(p1, p4)), add(mul(p2, p3), mul(p3, p4)));
    Int d = neg(add(add(p1, p2), add(p3, p4)));
    Int r = checked_sub(mul(p1, p4), mul(p2, p3));
    return {m2(a, g, b, d), mul(r, r)};
}

int det_residue(const ProjMatrix& m) {
    Int d = det2(m);
    return static_cast<int>(((d % 4) + 4) % 4);
}

bool delta_congruent(const ProjMatrix& m, const ProjMatrix& m2_) {
    if (m.rows() != m2_.rows() || m.cols() != m2_.cols()) return false;
    for (Int eps : {Int{1}, Int{-1}}) {
        bool ok = true;
        for (size_t i = 0; i < m.entries().size() && ok; ++i) {
            Int diff = m.entries()[i] - eps * m2_.entries()[i];
            ok = diff % 4 == 0;
        }
        if (ok) return true;
    }
    return false;
}

bool delta_congruence_check(const Diagram& s, const Diagram& s_delta, Evaluator ev) {
    return delta_congruent(inv_Fn(s, ev), inv_Fn(s_delta, ev));
}

}  // namespace tanglekit
