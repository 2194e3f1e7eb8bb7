#include "germforge/expr.hpp"

#include <cctype>
#include <sstream>

namespace germforge {

ExprPtr expr_number(const Rat& v) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::Number;
    n->value = v;
    return n;
}

ExprPtr expr_var_xi() {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::VarXi;
    return n;
}

ExprPtr expr_var_t() {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::VarT;
    return n;
}

ExprPtr expr_binary(ExprNode::Kind k, ExprPtr a, ExprPtr b) {
    auto n = std::make_shared<ExprNode>();
    n->kind = k;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
}

ExprPtr expr_pow(ExprPtr base, int e) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::Pow;
    n->lhs = std::move(base);
    n->exponent = e;
    return n;
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return a == b;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case ExprNode::Kind::Number: return a->value == b->value;
    case ExprNode::Kind::VarXi:
    case ExprNode::Kind::VarT: return true;
    case ExprNode::Kind::Pow:
        return a->exponent == b->exponent && expr_equal(a->lhs, b->lhs);
    default: return expr_equal(a->lhs, b->lhs) && expr_equal(a->rhs, b->rhs);
    }
}

namespace {

int precedence(ExprNode::Kind k) {
    switch (k) {
    case ExprNode::Kind::Add:
    case ExprNode::Kind::Sub: return 1;
    case ExprNode::Kind::Mul: return 2;
    case ExprNode::Kind::Pow: return 3;
    default: return 4;
    }
}

void render(const ExprPtr& e, std::ostream& os, int parentPrec, bool rightChild) {
    const int prec = precedence(e->kind);
    bool paren = prec < parentPrec;
    // left-associative operators need parens on right children of equal
    // precedence: a - (b + c)
    if (!paren && rightChild && prec == parentPrec && prec <= 2) paren = true;
    // negative literals need parens inside any operation
    if (e->kind == ExprNode::Kind::Number && sgn(e->value) < 0 && parentPrec > 1) paren = true;
    if (paren) os << "(";
    switch (e->kind) {
    case ExprNode::Kind::Number: os << rat_str(e->value); break;
    case ExprNode::Kind::VarXi: os << "xi"; break;
    case ExprNode::Kind::VarT: os << "t"; break;
    case ExprNode::Kind::Add:
        render(e->lhs, os, 1, false);
        os << " + ";
        render(e->rhs, os, 1, true);
        break;
    case ExprNode::Kind::Sub:
        render(e->lhs, os, 1, false);
        os << " - ";
        render(e->rhs, os, 1, true);
        break;
    case ExprNode::Kind::Mul:
        render(e->lhs, os, 2, false);
        os << "*";
        render(e->rhs, os, 2, true);
        break;
    case ExprNode::Kind::Pow:
        render(e->lhs, os, 4, false);
        os << "^" << e->exponent;
        break;
    }
    if (paren) os << ")";
}

} // namespace

std::string expr_render(const ExprPtr& e) {
    std::ostringstream os;
    render(e, os, 0, false);
    return os.str();
}

Series2 expr_eval(const ExprPtr& e, TruncBound b) {
    switch (e->kind) {
    case ExprNode::Kind::Number: return Series2::constant(e->value, b);
    case ExprNode::Kind::VarXi: return Series2::xi(b);
    case ExprNode::Kind::VarT: return Series2::t(b);
    case ExprNode::Kind::Add: return expr_eval(e->lhs, b) + expr_eval(e->rhs, b);
    case ExprNode::Kind::Sub: return expr_eval(e->lhs, b) - expr_eval(e->rhs, b);
    case ExprNode::Kind::Mul: return expr_eval(e->lhs, b) * expr_eval(e->rhs, b);
    case ExprNode::Kind::Pow: return expr_eval(e->lhs, b).pow(e->exponent);
    }
    throw ContractError("expr_eval: bad node");
}

namespace {

struct Lexer {
    const std::string& text;
    size_t pos = 0;
    int line = 1;
    int col = 1;

    explicit Lexer(const std::string& t) : text(t) {}

    void advance() {
        if (pos < text.size()) {
            if (text[pos] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++pos;
        }
    }
    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) advance();
    }
    bool eof() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    [[noreturn]] void fail(const std::string& msg) {
        skip_ws();
        throw ParseError(line, col, msg + " at line " + std::to_string(line) + ", column " +
                                         std::to_string(col));
    }
};

struct Parser {
    Lexer lex;

    explicit Parser(const std::string& t) : lex(t) {}

    bool accept(char c) {
        if (lex.peek() == c) {
            lex.advance();
            return true;
        }
        return false;
    }

    std::string read_integer(bool allowSign) {
        std::string s;
        if (allowSign && (lex.peek() == '-' || lex.peek() == '+')) {
            s.push_back(lex.peek());
            lex.advance();
        }
        if (!std::isdigit(static_cast<unsigned char>(lex.peek()))) lex.fail("expected a digit");
        while (lex.pos < lex.text.size() &&
               std::isdigit(static_cast<unsigned char>(lex.text[lex.pos]))) {
            s.push_back(lex.text[lex.pos]);
            lex.advance();
        }
        return s;
    }

    ExprPtr parse_base() {
        const char c = lex.peek();
        if (c == '(') {
            lex.advance();
            ExprPtr e = parse_expr();
            if (!accept(')')) lex.fail("expected ')'");
            return e;
        }
        if (c == 'x') {
            lex.advance();
            if (lex.pos < lex.text.size() && lex.text[lex.pos] == 'i') {
                lex.advance();
                return expr_var_xi();
            }
            lex.fail("expected 'xi'");
        }
        if (c == 't') {
            lex.advance();
            return expr_var_t();
        }
        if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = read_integer(true);
            if (accept('/')) {
                const std::string den = read_integer(false);
                if (den.find_first_not_of('0') == std::string::npos)
                    lex.fail("denominator must be positive");
                return expr_number(rat_parse(num + "/" + den));
            }
            return expr_number(rat_parse(num));
        }
        lex.fail("expected 'xi', 't', a rational or '('");
    }

    ExprPtr parse_factor() {
        ExprPtr base = parse_base();
        if (accept('^')) {
            const std::string e = read_integer(false);
            return expr_pow(std::move(base), std::stoi(e));
        }
        return base;
    }

    ExprPtr parse_term() {
        ExprPtr e = parse_factor();
        while (lex.peek() == '*') {
            lex.advance();
            e = expr_binary(ExprNode::Kind::Mul, std::move(e), parse_factor());
        }
        return e;
    }

    ExprPtr parse_expr() {
        ExprPtr e = parse_term();
        while (true) {
            const char c = lex.peek();
            if (c == '+') {
                lex.advance();
                e = expr_binary(ExprNode::Kind::Add, std::move(e), parse_term());
            } else if (c == '-') {
                lex.advance();
                e = expr_binary(ExprNode::Kind::Sub, std::move(e), parse_term());
            } else {
                break;
            }
        }
        return e;
    }
};

} // namespace

ExprPtr parse_expression(const std::string& text) {
    Parser p(text);
    ExprPtr e = p.parse_expr();
    if (!p.lex.eof()) p.lex.fail("unexpected trailing input");
    return e;
}

FamilyExpr parse_family(const std::string& text) {
    Parser p(text);
    FamilyExpr fe;
    fe.x = p.parse_expr();
    if (!p.accept(';')) p.lex.fail("expected ';' between the two components");
    fe.y = p.parse_expr();
    if (!p.lex.eof()) p.lex.fail("unexpected trailing input");
    return fe;
}

MapGerm family_germ(const FamilyExpr& fe, TruncBound b) {
    return MapGerm(expr_eval(fe.x, b), expr_eval(fe.y, b));
}

} // namespace germforge
