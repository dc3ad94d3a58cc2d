#include "tanglekit/expr.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <set>

namespace tanglekit {

bool expr_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind || a.ints != b.ints || a.kids.size() != b.kids.size()) return false;
    if (a.kind == ExprKind::Postfix && a.post != b.post) return false;
    if (a.kind == ExprKind::Infix && a.infix != b.infix) return false;
    for (size_t i = 0; i < a.kids.size(); ++i)
        if (!expr_equal(*a.kids[i], *b.kids[i])) return false;
    return true;
}

namespace ex {

namespace {
ExprPtr make(ExprKind k, std::vector<long long> ints = {}, std::vector<ExprPtr> kids = {}) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->ints = std::move(ints);
    e->kids = std::move(kids);
    return e;
}
}  // namespace

ExprPtr t1() { return make(ExprKind::T1); }
ExprPtr t2() { return make(ExprKind::T2); }
ExprPtr identity() { return make(ExprKind::Identity); }
ExprPtr h(long long p) { return make(ExprKind::HTwist, {p}); }
ExprPtr v(long long q) { return make(ExprKind::VTwist, {q}); }
ExprPtr J(long long p1, long long p2, long long p3, long long p4) {
    return make(ExprKind::J, {p1, p2, p3, p4});
}
ExprPtr post(PostOp op, ExprPtr e) {
    auto n = std::make_shared<Expr>();
    n->kind = ExprKind::Postfix;
    n->post = op;
    n->kids = {std::move(e)};
    return n;
}
ExprPtr infix(InfixOp op, ExprPtr a, ExprPtr b) {
    auto n = std::make_shared<Expr>();
    n->kind = ExprKind::Infix;
    n->infix = op;
    n->kids = {std::move(a), std::move(b)};
    return n;
}
ExprPtr fill(ExprPtr t, std::vector<ExprPtr> balls) {
    balls.insert(balls.begin(), std::move(t));
    return make(ExprKind::Fill, {}, std::move(balls));
}
ExprPtr num(ExprPtr b) { return make(ExprKind::Num, {}, {std::move(b)}); }
ExprPtr den(ExprPtr b) { return make(ExprKind::Den, {}, {std::move(b)}); }

}  // namespace ex

// ---- lexer ----

namespace {

enum class Tok { Ident, Int, Infix, LParen, RParen, Comma, Semi, Eq, Star, Minus, End };

struct Token {
    Tok type;
    std::string text;
    int line, column;
};

std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto advance = [&](size_t n) {
        for (size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < src.size()) {
        const char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        const int l = line, cl = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            out.push_back({Tok::Ident, src.substr(i, j - i), l, cl});
            advance(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            out.push_back({Tok::Int, src.substr(i, j - i), l, cl});
            advance(j - i);
        } else if (c == '+' || (c == '.' && i + 1 < src.size() && src[i + 1] == '+')) {
            const size_t k = c == '+' ? i + 1 : i + 2;
            if (k >= src.size() || (src[k] != 'h' && src[k] != 'v'))
                throw ParseError("expected +h or +v", l, cl);
            out.push_back({Tok::Infix, src.substr(i, k + 1 - i), l, cl});
            advance(k + 1 - i);
        } else {
            Tok t;
            switch (c) {
                case '(': t = Tok::LParen; break;
                case ')': t = Tok::RParen; break;
                case ',': t = Tok::Comma; break;
                case ';': t = Tok::Semi; break;
                case '=': t = Tok::Eq; break;
                case '*': t = Tok::Star; break;
                case '-': t = Tok::Minus; break;
                default: throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
            }
            out.push_back({t, std::string(1, c), l, cl});
            advance(1);
        }
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

const std::set<std::string> kReserved{"t1", "t2", "I",  "h",  "v",  "J",  "fill", "num",
                                      "den", "o",  "r1", "r2", "R", "hf", "vf"};

const std::map<std::string, PostOp> kPostWords{
    {"r1", PostOp::R1}, {"r2", PostOp::R2}, {"R", PostOp::Rot}, {"hf", PostOp::HFlip}, {"vf", PostOp::VFlip}};

class Parser {
public:
    explicit Parser(const std::string& src) : toks_(lex(src)) {}

    ExprPtr program() {
        while (peek().type == Tok::Ident && toks_[pos_ + 1].type == Tok::Eq) {
            Token name = next();
            if (kReserved.count(name.text))
                throw ParseError("'" + name.text + "' is reserved", name.line, name.column);
            next();
            ExprPtr value = expr();
            expect(Tok::Semi, "';'");
            env_[name.text] = value;
        }
        ExprPtr e = expr();
        if (peek().type != Tok::End) fail("unexpected '" + peek().text + "'");
        return e;
    }

private:
    std::vector<Token> toks_;
    size_t pos_ = 0;
    std::map<std::string, ExprPtr> env_;

    const Token& peek() const { return toks_[pos_]; }
    Token next() { return toks_[pos_++]; }
    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        throw ParseError(t.type == Tok::End ? msg + " at end of input" : msg, t.line, t.column);
    }
    Token expect(Tok t, const char* what) {
        if (peek().type != t) fail(std::string("expected ") + what);
        return next();
    }

    static ExprPtr at(ExprPtr e, const Token& t) {
        auto copy = std::make_shared<Expr>(*e);
        copy->line = t.line;
        copy->column = t.column;
        return copy;
    }

    ExprPtr expr() {
        ExprPtr lhs = unary();
        while (true) {
            const Token& t = peek();
            InfixOp op;
            if (t.type == Tok::Infix) {
                op = t.text == "+h" ? InfixOp::H : t.text == "+v" ? InfixOp::V
                   : t.text == ".+h" ? InfixOp::InnerH : InfixOp::InnerV;
            } else if (t.type == Tok::Ident && t.text == "o") {
                op = InfixOp::Compose;
            } else {
                return lhs;
            }
            Token optok = next();
            ExprPtr rhs = unary();
            lhs = at(ex::infix(op, lhs, rhs), optok);
        }
    }

    ExprPtr unary() {
        ExprPtr e = primary();
        while (true) {
            const Token& t = peek();
            PostOp op;
            if (t.type == Tok::Star) op = PostOp::Mirror;
            else if (t.type == Tok::Minus) op = PostOp::Swap;
            else if (t.type == Tok::Ident && kPostWords.count(t.text)) op = kPostWords.at(t.text);
            else return e;
            Token optok = next();
            e = at(ex::post(op, e), optok);
        }
    }

    long long integer() {
        bool neg = false;
        if (peek().type == Tok::Minus) {
            next();
            neg = true;
        }
        Token t = expect(Tok::Int, "an integer");
        long long value = 0;
        auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
        if (ec != std::errc()) throw ParseError("integer out of range", t.line, t.column);
        return neg ? -value : value;
    }

    std::vector<long long> int_args(size_t n) {
        expect(Tok::LParen, "'('");
        std::vector<long long> v;
        for (size_t k = 0; k < n; ++k) {
            if (k) expect(Tok::Comma, "','");
            v.push_back(integer());
        }
        expect(Tok::RParen, "')'");
        return v;
    }

    ExprPtr primary() {
        const Token t = peek();
        if (t.type == Tok::LParen) {
            next();
            ExprPtr e = expr();
            expect(Tok::RParen, "')'");
            return e;
        }
        if (t.type != Tok::Ident) fail("expected a tangle");
        next();
        const std::string& w = t.text;
        if (w == "t1") return at(ex::t1(), t);
        if (w == "t2") return at(ex::t2(), t);
        if (w == "I") return at(ex::identity(), t);
        if (w == "h") return at(ex::h(int_args(1)[0]), t);
        if (w == "v") return at(ex::v(int_args(1)[0]), t);
        if (w == "J") {
            auto a = int_args(4);
            return at(ex::J(a[0], a[1], a[2], a[3]), t);
        }
        if (w == "num" || w == "den") {
            expect(Tok::LParen, "'('");
            ExprPtr e = expr();
            expect(Tok::RParen, "')'");
            return at(w == "num" ? ex::num(e) : ex::den(e), t);
        }
        if (w == "fill") {
            expect(Tok::LParen, "'('");
            ExprPtr target = expr();
            expect(Tok::Semi, "';'");
            std::vector<ExprPtr> balls;
            if (peek().type != Tok::RParen) {
                balls.push_back(expr());
                while (peek().type == Tok::Comma) {
                    next();
                    balls.push_back(expr());
                }
            }
            expect(Tok::RParen, "')'");
            return at(ex::fill(target, balls), t);
        }
        if (kReserved.count(w)) throw ParseError("'" + w + "' cannot start a tangle", t.line, t.column);
        auto it = env_.find(w);
        if (it == env_.end()) throw ParseError("unknown name '" + w + "'", t.line, t.column);
        return it->second;
    }
};

const char* post_text(PostOp op) {
    switch (op) {
        case PostOp::Mirror: return "*";
        case PostOp::Swap: return "-";
        case PostOp::R1: return " r1";
        case PostOp::R2: return " r2";
        case PostOp::Rot: return " R";
        case PostOp::HFlip: return " hf";
        case PostOp::VFlip: return " vf";
    }
    return "?";
}

const char* infix_text(InfixOp op) {
    switch (op) {
        case InfixOp::H: return " +h ";
        case InfixOp::V: return " +v ";
        case InfixOp::InnerH: return " .+h ";
        case InfixOp::InnerV: return " .+v ";
        case InfixOp::Compose: return " o ";
    }
    return "?";
}

std::string paren_if_infix(const Expr& e) {
    std::string s = print_expr(e);
    return e.kind == ExprKind::Infix ? "(" + s + ")" : s;
}

}  // namespace

ExprPtr parse_expr(const std::string& src) { return Parser(src).program(); }

std::string print_expr(const Expr& e) {
    auto ints = [&](const char* name) {
        std::string s = std::string(name) + "(";
        for (size_t i = 0; i < e.ints.size(); ++i) s += (i ? "," : "") + std::to_string(e.ints[i]);
        return s + ")";
    };
    switch (e.kind) {
        case ExprKind::T1: return "t1";
        case ExprKind::T2: return "t2";
        case ExprKind::Identity: return "I";
        case ExprKind::HTwist: return ints("h");
        case ExprKind::VTwist: return ints("v");
        case ExprKind::J: return ints("J");
        case ExprKind::Postfix: return paren_if_infix(*e.kids[0]) + post_text(e.post);
        case ExprKind::Infix:
            return print_expr(*e.kids[0]) + infix_text(e.infix) + paren_if_infix(*e.kids[1]);
        case ExprKind::Fill: {
            std::string s = "fill(" + print_expr(*e.kids[0]) + ";";
            for (size_t i = 1; i < e.kids.size(); ++i) s += (i > 1 ? ", " : " ") + print_expr(*e.kids[i]);
            return s + ")";
        }
        case ExprKind::Num: return "num(" + print_expr(*e.kids[0]) + ")";
        case ExprKind::Den: return "den(" + print_expr(*e.kids[0]) + ")";
    }
    return "?";
}

// ---- elaboration ----

namespace {

const char* shape_name(const Diagram& d) {
    switch (d.num_boundaries) {
        case 0: return "a link";
        case 1: return "a ball tangle";
        case 2: return "a spherical tangle";
        default: return "a punctured tangle";
    }
}

[[noreturn]] void shape_fail(const Expr& e, const std::string& msg) {
    throw ShapeError(std::to_string(e.line) + ":" + std::to_string(e.column) + ": " + msg);
}

void need(const Expr& e, const Diagram& d, bool ok, const char* what, const char* expected) {
    if (!ok) shape_fail(e, std::string(what) + " expects " + expected + ", got " + shape_name(d));
}

}  // namespace

Diagram elaborate(const Expr& e) {
    switch (e.kind) {
        case ExprKind::T1: return fundamental_tangle(1);
        case ExprKind::T2: return fundamental_tangle(2);
        case ExprKind::Identity: return identity_spherical();
        case ExprKind::HTwist: return htwist(e.ints[0]);
        case ExprKind::VTwist: return vtwist(e.ints[0]);
        case ExprKind::J: return build_J(e.ints[0], e.ints[1], e.ints[2], e.ints[3]);
        case ExprKind::Postfix: {
            Diagram d = elaborate(*e.kids[0]);
            const char* name = post_text(e.post);
            switch (e.post) {
                case PostOp::Mirror: return mirror(d);
                case PostOp::Swap:
                    need(e, d, d.is_spherical(), "'-'", "a spherical tangle");
                    return sph_swap(d);
                case PostOp::R1:
                    need(e, d, d.is_spherical(), "'r1'", "a spherical tangle");
                    return sph_r1(d);
                case PostOp::R2:
                    need(e, d, d.is_spherical(), "'r2'", "a spherical tangle");
                    return sph_r2(d);
                case PostOp::Rot:
                    need(e, d, d.num_boundaries >= 1, "'R'", "a tangle");
                    return rotate(d);
                case PostOp::HFlip:
                    need(e, d, d.num_boundaries >= 1, name + 1, "a tangle");
                    return flip_h(d);
                case PostOp::VFlip:
                    need(e, d, d.num_boundaries >= 1, name + 1, "a tangle");
                    return flip_v(d);
            }
            break;
        }
        case ExprKind::Infix: {
            Diagram a = elaborate(*e.kids[0]);
            Diagram b = elaborate(*e.kids[1]);
            switch (e.infix) {
                case InfixOp::H:
                case InfixOp::V:
                    need(e, a, a.num_boundaries >= 1, "connect sum", "tangles");
                    need(e, b, b.num_boundaries >= 1, "connect sum", "tangles");
                    return e.infix == InfixOp::H ? connect_h(a, b) : connect_v(a, b);
                case InfixOp::InnerH:
                case InfixOp::InnerV: {
                    const SumKind k = e.infix == InfixOp::InnerH ? SumKind::InnerH : SumKind::InnerV;
                    if (a.is_ball() && b.is_spherical()) return sum_with_spherical(a, b, k, true);
                    if (a.is_spherical() && b.is_ball()) return sum_with_spherical(b, a, k, false);
                    shape_fail(e, std::string("inner sum expects a ball and a spherical tangle, got ") +
                                      shape_name(a) + " and " + shape_name(b));
                }
                case InfixOp::Compose:
                    need(e, a, a.is_spherical(), "'o'", "spherical tangles");
                    need(e, b, b.is_spherical(), "'o'", "spherical tangles");
                    return compose_spherical(a, b);
            }
            break;
        }
        case ExprKind::Fill: {
            Diagram t = elaborate(*e.kids[0]);
            need(e, t, t.num_boundaries >= 1, "fill", "a tangle");
            if (t.num_holes() != static_cast<int>(e.kids.size()) - 1)
                shape_fail(e, "fill expects " + std::to_string(t.num_holes()) + " tangle(s), got " +
                                  std::to_string(e.kids.size() - 1));
            std::vector<Diagram> fills;
            for (size_t i = 1; i < e.kids.size(); ++i) {
                fills.push_back(elaborate(*e.kids[i]));
                need(e, fills.back(), fills.back().num_boundaries >= 1, "fill", "tangles");
            }
            return fill_holes(t, fills);
        }
        case ExprKind::Num:
        case ExprKind::Den: {
            Diagram b = elaborate(*e.kids[0]);
            need(e, b, b.is_ball(), e.kind == ExprKind::Num ? "num" : "den", "a ball tangle");
            return e.kind == ExprKind::Num ? numerator_closure(b) : denominator_closure(b);
        }
    }
    throw PreconditionError("malformed expression");
}

}  // namespace tanglekit
