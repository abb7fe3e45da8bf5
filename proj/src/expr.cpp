#include "crystab/expr.hpp"

#include <cctype>
#include <limits>

namespace crystab {

ExprPtr make_leaf(Expr::Kind kind, long long value) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->value = value;
    return e;
}

ExprPtr make_node(Expr::Kind kind, std::vector<ExprPtr> kids, long long value) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->value = value;
    e->kids = std::move(kids);
    return e;
}

namespace {

using K = Expr::Kind;

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    ExprPtr run() {
        auto e = sum();
        skip();
        if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
        return e;
    }

private:
    const std::string& s_;
    std::size_t i_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(i_, msg); }

    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }

    long long integer() {
        skip();
        if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_]))) fail("expected an integer");
        long long v = 0;
        const long long cap = std::numeric_limits<long long>::max() / 10 - 9;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
            if (v > cap) fail("integer too large");
            v = v * 10 + (s_[i_++] - '0');
        }
        return v;
    }
    long long signed_integer() {
        bool neg = eat('-');
        long long v = integer();
        return neg ? -v : v;
    }

    ExprPtr sum() {
        auto e = product();
        for (;;) {
            if (eat('+')) e = make_node(K::Add, {e, product()});
            else if (eat('-')) e = make_node(K::Sub, {e, product()});
            else return e;
        }
    }
    ExprPtr product() {
        auto e = unary();
        for (;;) {
            if (eat('*')) e = make_node(K::Mul, {e, unary()});
            else if (eat('/')) e = make_node(K::Div, {e, unary()});
            else return e;
        }
    }
    ExprPtr unary() {
        if (eat('-')) return make_node(K::Neg, {unary()});
        return power();
    }
    ExprPtr power() {
        auto base = atom();
        if (!eat('^')) return base;
        long long k;
        if (eat('(')) {
            k = signed_integer();
            expect(')');
        } else {
            k = signed_integer();
        }
        return make_node(K::Pow, {base}, k);
    }
    ExprPtr atom() {
        skip();
        if (i_ >= s_.size()) fail("unexpected end of input");
        char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c))) return make_leaf(K::Int, integer());
        if (eat('(')) {
            auto e = sum();
            expect(')');
            return e;
        }
        if (s_.compare(i_, 4, "sqrt") == 0) {
            i_ += 4;
            expect('(');
            auto e = sum();
            expect(')');
            return make_node(K::Sqrt, {e});
        }
        switch (c) {
        case 'p': ++i_; return make_leaf(K::P);
        case 'W': ++i_; return make_leaf(K::W);
        case 'S': ++i_; return make_leaf(K::S);
        case 'Z': ++i_; return make_leaf(K::Z);
        case 'T': {
            ++i_;
            expect('(');
            long long j = signed_integer();
            expect(')');
            return make_leaf(K::Teich, j);
        }
        default: fail("unexpected '" + std::string(1, c) + "'");
        }
    }
};

int prec(const Expr& e) {
    switch (e.kind) {
    case K::Add:
    case K::Sub: return 1;
    case K::Mul:
    case K::Div: return 2;
    case K::Neg: return 3;
    case K::Pow: return 4;
    default: return 5;
    }
}

std::string wrap(const Expr& e, int min_prec) {
    auto s = print_expr(e);
    return prec(e) < min_prec ? "(" + s + ")" : s;
}

}  // namespace

ExprPtr parse_expr(const std::string& s) { return Parser(s).run(); }

std::string print_expr(const Expr& e) {
    switch (e.kind) {
    case K::Int: return std::to_string(e.value);
    case K::P: return "p";
    case K::W: return "W";
    case K::S: return "S";
    case K::Z: return "Z";
    case K::Teich: return "T(" + std::to_string(e.value) + ")";
    case K::Sqrt: return "sqrt(" + print_expr(*e.kids[0]) + ")";
    case K::Neg: return "-" + wrap(*e.kids[0], 3);
    case K::Add: return wrap(*e.kids[0], 1) + "+" + wrap(*e.kids[1], 2);
    case K::Sub: return wrap(*e.kids[0], 1) + "-" + wrap(*e.kids[1], 2);
    case K::Mul: return wrap(*e.kids[0], 2) + "*" + wrap(*e.kids[1], 3);
    case K::Div: return wrap(*e.kids[0], 2) + "/" + wrap(*e.kids[1], 3);
    case K::Pow: return wrap(*e.kids[0], 5) + "^" + std::to_string(e.value);
    }
    return {};
}

bool expr_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind || a.value != b.value || a.kids.size() != b.kids.size()) return false;
    for (std::size_t i = 0; i < a.kids.size(); ++i)
        if (!expr_equal(*a.kids[i], *b.kids[i])) return false;
    return true;
}

PadicElem eval_expr(const Expr& e, const RamifiedCharacter& chi) {
    const Ctx& ctx = chi.ctx();
    auto kid = [&](int i) { return eval_expr(*e.kids[i], chi); };
    switch (e.kind) {
    case K::Int: return PadicElem::from_int(ctx, e.value);
    case K::P: return PadicElem::from_int(ctx, ctx->p);
    case K::W: return PadicElem::varpi(ctx);
    case K::S:
        if (!ctx->quad) throw DomainError("S needs the quadratic extension");
        return PadicElem::pi(ctx);
    case K::Z: return chi.zeta_prime();
    case K::Teich: {
        long long j = e.value % ctx->p;
        if (j < 0) j += ctx->p;
        return PadicElem::teichmuller(ctx, j);
    }
    case K::Sqrt: return kid(0).sqrt();
    case K::Neg: return -kid(0);
    case K::Add: return kid(0) + kid(1);
    case K::Sub: return kid(0) - kid(1);
    case K::Mul: return kid(0) * kid(1);
    case K::Div: {
        auto d = kid(1);
        if (d.is_exact_zero()) throw DomainError("division by zero");
        return kid(0) / d;
    }
    case K::Pow: {
        auto b = kid(0);
        if (e.value < 0 && b.is_exact_zero()) throw DomainError("negative power of zero");
        return b.pow(e.value);
    }
    }
    throw DomainError("bad expression node");
}

}  // namespace crystab
