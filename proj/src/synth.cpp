#include "tanglekit/synth.hpp"

namespace tanglekit {

EuclidTrace euclid(Int a, Int b) {
    if (!(0 < a && a < b)) throw PreconditionError("euclid needs 0 < a < b");
    EuclidTrace t;
    t.remainders.push_back(a);
    Int prev = b, cur = a;
    while (cur != 0) {
        t.quotients.push_back(prev / cur);
        const Int r = prev % cur;
        t.remainders.push_back(r);
        prev = cur;
        cur = r;
    }
    return t;
}

namespace {

ExprPtr rot_star(ExprPtr e) { return ex::post(PostOp::Mirror, ex::post(PostOp::Rot, std::move(e))); }

// [b;0] for b >= 0
ExprPtr column_zero(Int b) {
    if (b == 0) return ex::infix(InfixOp::H, ex::t1(), ex::t1());
    if (b == 1) return ex::t1();
    return ex::infix(InfixOp::H, ex::v(b), ex::t1());
}

// [b;a] with 0 <= a <= b
ExprPtr ordered(Int b, Int a) {
    if (a == 0) return column_zero(b);
    if (a == 1) return ex::h(b);
    if (a == b) return ex::infix(InfixOp::H, ex::h(1), rot_star(column_zero(a)));
    const EuclidTrace t = euclid(a, b);
    // e_i realizes [r_{i-1}; r_i] with r_{-1} = b
    const size_t k = t.quotients.size();
    auto rem = [&](long i) { return i < 0 ? b : t.remainders[i]; };
    ExprPtr e = column_zero(rem(static_cast<long>(k) - 1));
    for (long i = static_cast<long>(k) - 1; i >= 0; --i) {
        if (rem(i) == 1) {
            e = ex::h(rem(i - 1));
            continue;
        }
        e = ex::infix(InfixOp::H, ex::h(t.quotients[i]), rot_star(e));
    }
    return e;
}

}  // namespace

ExprPtr synth_expr(Int p, Int q) {
    if (p < 0 || (p == 0 && q < 0)) {
        p = checked_neg(p);
        q = checked_neg(q);
    }
    if (p == 0 && q == 1) return ex::t2();
    if (q < 0) return ex::post(PostOp::Mirror, synth_expr(p, checked_neg(q)));
    if (q > p) return rot_star(ordered(q, p));
    return ordered(p, q);
}

Synthesis synth_ball(const ProjMatrix& target) {
    if (target.rows() != 2 || target.cols() != 1) throw ShapeError("synth expects a 2x1 target");
    ExprPtr e = synth_expr(target.at(0, 0), target.at(1, 0));
    return {elaborate(*e), e};
}

}  // namespace tanglekit
