#pragma once
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "crystab/characters.hpp"

namespace crystab {

struct ParseError : std::runtime_error {
    ParseError(std::size_t pos, const std::string& msg)
        : std::runtime_error("parse error at position " + std::to_string(pos) + ": " + msg), pos(pos) {}
    std::size_t pos;  // 0-based offset into the input
};

// Eigenvalue expressions: integers, p, W (varpi), S (sqrt varpi), T(j) (Teichmuller of j),
// Z (eps_p(1+p)), sqrt(e), + - * / and ^ with an integer exponent, parentheses.
struct Expr {
    enum class Kind { Int, P, W, S, Teich, Z, Sqrt, Neg, Add, Sub, Mul, Div, Pow };
    Kind kind = Kind::Int;
    long long value = 0;  // Int literal, T argument or Pow exponent
    std::vector<std::shared_ptr<const Expr>> kids;
};

using ExprPtr = std::shared_ptr<const Expr>;

ExprPtr parse_expr(const std::string& s);
// Minimal parentheses; parse_expr(print_expr(e)) is equal to e.
std::string print_expr(const Expr& e);
bool expr_equal(const Expr& a, const Expr& b);

ExprPtr make_leaf(Expr::Kind kind, long long value = 0);
ExprPtr make_node(Expr::Kind kind, std::vector<ExprPtr> kids, long long value = 0);

// S needs a quadratic context; sqrt throws DomainError without a root, / by exact 0 likewise.
PadicElem eval_expr(const Expr& e, const RamifiedCharacter& chi);

}  // namespace crystab
