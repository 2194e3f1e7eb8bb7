#pragma once

#include "germforge/errors.hpp"
#include "germforge/germ.hpp"
#include "germforge/series.hpp"

#include <memory>
#include <string>

namespace germforge {

struct ParseError : Error {
    int line;
    int column;
    ParseError(int ln, int col, const std::string& msg)
        : Error(ErrorCode::Parse, msg), line(ln), column(col) {}
};

/// Expression AST over xi, t, rational literals and + - * ^.
struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    enum class Kind { Number, VarXi, VarT, Add, Sub, Mul, Pow };
    Kind kind;
    Rat value;   // Number
    int exponent = 0; // Pow
    ExprPtr lhs, rhs;
};

ExprPtr expr_number(const Rat& v);
ExprPtr expr_var_xi();
ExprPtr expr_var_t();
ExprPtr expr_binary(ExprNode::Kind k, ExprPtr a, ExprPtr b);
ExprPtr expr_pow(ExprPtr base, int e);

bool expr_equal(const ExprPtr& a, const ExprPtr& b);
std::string expr_render(const ExprPtr& e);
Series2 expr_eval(const ExprPtr& e, TruncBound b);

struct FamilyExpr {
    ExprPtr x;
    ExprPtr y;
};

/// Parses "<x-expr> ; <y-expr>". Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := base ('^' natural)?
///   base   := 'xi' | 't' | rational | '(' expr ')'
///   rational := integer ('/' positive-integer)?
/// Whitespace is insignificant; no implicit multiplication. Errors
/// carry 1-based line and column.
FamilyExpr parse_family(const std::string& text);

/// Single expression parser (same grammar, no ';').
ExprPtr parse_expression(const std::string& text);

/// Convenience: parse and evaluate both components.
MapGerm family_germ(const FamilyExpr& fe, TruncBound b);

} // namespace germforge
