#include "blowup/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

namespace blowup {
namespace detail {

enum class Op {
    Const,
    Var,
    Neg,
    Ln,
    Exp,
    Sqrt,
    Abs,
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Min,
    Max,
};

struct ExprNode {
    Op op = Op::Const;
    double value = 0.0;
    std::shared_ptr<const ExprNode> lhs;
    std::shared_ptr<const ExprNode> rhs;
};

using NodePtr = std::shared_ptr<const ExprNode>;

namespace {

NodePtr make(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
    auto n = std::make_shared<ExprNode>();
    n->op = op;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

NodePtr constant(double v) {
    auto n = std::make_shared<ExprNode>();
    n->op = Op::Const;
    n->value = v;
    return n;
}

struct Token {
    enum Kind { Number, Ident, Sym, End } kind = End;
    double value = 0.0;
    std::string text;
    std::size_t offset = 0;
};

class Lexer {
public:
    explicit Lexer(std::string_view s) : s_(s) { advance(); }

    const Token& peek() const { return tok_; }

    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) ++pos_;
        tok_ = {};
        tok_.offset = pos_;
        if (pos_ >= s_.size()) {
            tok_.kind = Token::End;
            return;
        }
        const char c = s_[pos_];
        if (std::isdigit((unsigned char)c) || c == '.') {
            const char* begin = s_.data() + pos_;
            char* end = nullptr;
            tok_.value = std::strtod(begin, &end);
            if (end == begin)
                throw ParseError("malformed number", pos_);
            tok_.kind = Token::Number;
            pos_ += std::size_t(end - begin);
            return;
        }
        if (std::isalpha((unsigned char)c) || c == '_') {
            std::size_t j = pos_;
            while (j < s_.size() &&
                   (std::isalnum((unsigned char)s_[j]) || s_[j] == '_'))
                ++j;
            tok_.kind = Token::Ident;
            tok_.text = std::string(s_.substr(pos_, j - pos_));
            pos_ = j;
            return;
        }
        static const std::string_view syms = "+-*/^(),";
        if (syms.find(c) != std::string_view::npos) {
            tok_.kind = Token::Sym;
            tok_.text = std::string(1, c);
            ++pos_;
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    Token tok_;
};

class Parser {
public:
    Parser(std::string_view text, std::string_view var)
        : lex_(text), var_(var) {}

    NodePtr parse() {
        NodePtr e = expr();
        if (lex_.peek().kind != Token::End)
            throw ParseError("trailing input after expression",
                             lex_.peek().offset);
        return e;
    }

private:
    bool accept_sym(char c) {
        if (lex_.peek().kind == Token::Sym && lex_.peek().text[0] == c) {
            lex_.next();
            return true;
        }
        return false;
    }

    void expect_sym(char c) {
        if (!accept_sym(c))
            throw ParseError(std::string("expected '") + c + "'",
                             lex_.peek().offset);
    }

    NodePtr expr() {
        NodePtr e = term();
        for (;;) {
            if (accept_sym('+'))
                e = make(Op::Add, e, term());
            else if (accept_sym('-'))
                e = make(Op::Sub, e, term());
            else
                return e;
        }
    }

    NodePtr term() {
        NodePtr e = factor();
        for (;;) {
            if (accept_sym('*'))
                e = make(Op::Mul, e, factor());
            else if (accept_sym('/'))
                e = make(Op::Div, e, factor());
            else
                return e;
        }
    }

    NodePtr factor() {
        if (accept_sym('-')) return make(Op::Neg, factor());
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (accept_sym('^')) return make(Op::Pow, base, factor());
        return base;
    }

    NodePtr primary() {
        Token t = lex_.next();
        switch (t.kind) {
        case Token::Number:
            return constant(t.value);
        case Token::Ident: {
            if (lex_.peek().kind == Token::Sym && lex_.peek().text[0] == '(') {
                lex_.next();
                NodePtr a = expr();
                if (t.text == "ln" || t.text == "exp" || t.text == "sqrt" ||
                    t.text == "abs") {
                    expect_sym(')');
                    Op op = t.text == "ln"    ? Op::Ln
                            : t.text == "exp" ? Op::Exp
                            : t.text == "sqrt" ? Op::Sqrt
                                               : Op::Abs;
                    return make(op, a);
                }
                if (t.text == "min" || t.text == "max" || t.text == "pow") {
                    expect_sym(',');
                    NodePtr b = expr();
                    expect_sym(')');
                    Op op = t.text == "min"   ? Op::Min
                            : t.text == "max" ? Op::Max
                                              : Op::Pow;
                    return make(op, a, b);
                }
                throw ParseError("unknown function '" + t.text + "'", t.offset);
            }
            if (t.text == var_) return make(Op::Var);
            if (t.text == "pi") return constant(M_PI);
            if (t.text == "e") return constant(M_E);
            throw ParseError("unknown identifier '" + t.text + "'", t.offset);
        }
        case Token::Sym:
            if (t.text[0] == '(') {
                NodePtr e = expr();
                expect_sym(')');
                return e;
            }
            throw ParseError("unexpected symbol '" + t.text + "'", t.offset);
        case Token::End:
            throw ParseError("unexpected end of input", t.offset);
        }
        throw ParseError("unreachable", t.offset);
    }

    Lexer lex_;
    std::string var_;
};

double eval(const ExprNode& n, double x) {
    switch (n.op) {
    case Op::Const:
        return n.value;
    case Op::Var:
        return x;
    case Op::Neg:
        return -eval(*n.lhs, x);
    case Op::Ln: {
        const double a = eval(*n.lhs, x);
        if (a <= 0.0) throw DomainError("ln of non-positive argument", a);
        return std::log(a);
    }
    case Op::Exp:
        return std::exp(eval(*n.lhs, x));
    case Op::Sqrt: {
        const double a = eval(*n.lhs, x);
        if (a < 0.0) throw DomainError("sqrt of negative argument", a);
        return std::sqrt(a);
    }
    case Op::Abs:
        return std::fabs(eval(*n.lhs, x));
    case Op::Add:
        return eval(*n.lhs, x) + eval(*n.rhs, x);
    case Op::Sub:
        return eval(*n.lhs, x) - eval(*n.rhs, x);
    case Op::Mul:
        return eval(*n.lhs, x) * eval(*n.rhs, x);
    case Op::Div: {
        const double b = eval(*n.rhs, x);
        if (b == 0.0) throw DomainError("division by zero", x);
        return eval(*n.lhs, x) / b;
    }
    case Op::Pow: {
        const double a = eval(*n.lhs, x);
        const double b = eval(*n.rhs, x);
        if (a == 0.0 && b < 0.0)
            throw DomainError("0 raised to a negative power", x);
        if (a < 0.0 && b != std::floor(b))
            throw DomainError("negative base with non-integer exponent", a);
        return std::pow(a, b);
    }
    case Op::Min:
        return std::fmin(eval(*n.lhs, x), eval(*n.rhs, x));
    case Op::Max:
        return std::fmax(eval(*n.lhs, x), eval(*n.rhs, x));
    }
    throw DomainError("corrupt expression node", x);
}

// Precedence levels for the canonical printer.
int prec(Op op) {
    switch (op) {
    case Op::Add:
    case Op::Sub:
        return 1;
    case Op::Mul:
    case Op::Div:
        return 2;
    case Op::Neg:
        return 3;
    case Op::Pow:
        return 4;
    default:
        return 5;
    }
}

void print_node(const ExprNode& n, const std::string& var, std::string& out);

void print_child(const ExprNode& child, const std::string& var, int parent,
                 bool force_parens, std::string& out) {
    const bool parens = force_parens || prec(child.op) < parent;
    if (parens) out += '(';
    print_node(child, var, out);
    if (parens) out += ')';
}

void print_node(const ExprNode& n, const std::string& var, std::string& out) {
    switch (n.op) {
    case Op::Const:
        out += format_g17(n.value);
        return;
    case Op::Var:
        out += var;
        return;
    case Op::Neg:
        out += '-';
        print_child(*n.lhs, var, prec(Op::Neg), false, out);
        return;
    case Op::Ln:
    case Op::Exp:
    case Op::Sqrt:
    case Op::Abs: {
        out += n.op == Op::Ln    ? "ln"
               : n.op == Op::Exp ? "exp"
               : n.op == Op::Sqrt ? "sqrt"
                                  : "abs";
        out += '(';
        print_node(*n.lhs, var, out);
        out += ')';
        return;
    }
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: {
        const int p = prec(n.op);
        print_child(*n.lhs, var, p, false, out);
        out += n.op == Op::Add   ? "+"
               : n.op == Op::Sub ? "-"
               : n.op == Op::Mul ? "*"
                                 : "/";
        // Right child needs parens at equal precedence (left-assoc ops).
        print_child(*n.rhs, var, p, prec(n.rhs->op) == p, out);
        return;
    }
    case Op::Pow:
        // '^' is right-associative; the left child needs parens at equal
        // precedence, and a negated exponent keeps its own parens via prec.
        print_child(*n.lhs, var, prec(Op::Pow), prec(n.lhs->op) == prec(Op::Pow),
                    out);
        out += '^';
        print_child(*n.rhs, var, prec(Op::Pow), false, out);
        return;
    case Op::Min:
    case Op::Max: {
        out += n.op == Op::Min ? "min(" : "max(";
        print_node(*n.lhs, var, out);
        out += ',';
        print_node(*n.rhs, var, out);
        out += ')';
        return;
    }
    }
}

bool equal(const ExprNode& a, const ExprNode& b) {
    if (a.op != b.op) return false;
    if (a.op == Op::Const) return a.value == b.value;
    if (a.lhs && !equal(*a.lhs, *b.lhs)) return false;
    if (a.rhs && !equal(*a.rhs, *b.rhs)) return false;
    return true;
}

} // namespace
} // namespace detail

Expression Expression::parse(std::string_view text, std::string_view variable) {
    if (text.empty()) throw ParseError("empty expression", 0);
    detail::Parser p(text, variable);
    Expression e;
    e.root_ = p.parse();
    e.variable_ = std::string(variable);
    return e;
}

double Expression::evaluate(double x) const {
    if (!root_) throw DomainError("evaluating empty expression", x);
    const double v = detail::eval(*root_, x);
    if (!std::isfinite(v))
        throw DomainError("expression evaluated to a non-finite value", x);
    return v;
}

std::optional<double> Expression::try_evaluate(double x) const noexcept {
    try {
        return evaluate(x);
    } catch (...) {
        return std::nullopt;
    }
}

std::string Expression::print() const {
    std::string out;
    if (root_) detail::print_node(*root_, variable_, out);
    return out;
}

bool Expression::equivalent(const Expression& other) const {
    if (!root_ || !other.root_) return root_ == other.root_;
    return detail::equal(*root_, *other.root_);
}

} // namespace blowup
