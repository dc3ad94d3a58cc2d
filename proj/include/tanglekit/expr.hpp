#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tanglekit/diagram.hpp"

namespace tanglekit {

enum class ExprKind { T1, T2, Identity, HTwist, VTwist, J, Postfix, Infix, Fill, Num, Den };
enum class PostOp { Mirror, Swap, R1, R2, Rot, HFlip, VFlip };
enum class InfixOp { H, V, InnerH, InnerV, Compose };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Tangle expression tree. Source positions are kept for diagnostics and ignored by ==.
struct Expr {
    ExprKind kind = ExprKind::T1;
    std::vector<long long> ints;  // twist counts or J parameters
    PostOp post = PostOp::Mirror;
    InfixOp infix = InfixOp::H;
    std::vector<ExprPtr> kids;
    int line = 0, column = 0;
};

bool expr_equal(const Expr& a, const Expr& b);

namespace ex {
ExprPtr t1();
ExprPtr t2();
ExprPtr identity();
ExprPtr h(long long p);
ExprPtr v(long long q);
ExprPtr J(long long p1, long long p2, long long p3, long long p4);
ExprPtr post(PostOp op, ExprPtr e);
ExprPtr infix(InfixOp op, ExprPtr a, ExprPtr b);
ExprPtr fill(ExprPtr t, std::vector<ExprPtr> balls);
ExprPtr num(ExprPtr b);
ExprPtr den(ExprPtr b);
}  // namespace ex

/// Grammar:
///   program := (name '=' expr ';')* expr
///   expr    := unary (infix unary)*            infix: +h +v .+h .+v o, left-associative
///   unary   := primary postfix*                postfix: * - r1 r2 R hf vf
///   primary := t1 | t2 | I | h(int) | v(int) | J(int,int,int,int) | name
///            | fill(expr; expr, ...) | num(expr) | den(expr) | '(' expr ')'
/// Names are replaced by their bound trees. Throws ParseError with line and column.
ExprPtr parse_expr(const std::string& src);

/// Canonical text; parse_expr(print_expr(e)) reproduces e.
std::string print_expr(const Expr& e);

/// Builds the diagram. Shape errors (e.g. composing ball tangles) throw ShapeError with the
/// operator position in the message.
Diagram elaborate(const Expr& e);

}  // namespace tanglekit
