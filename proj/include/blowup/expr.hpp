/// @file expr.hpp
/// A minimal arithmetic expression language over one named variable.
///
/// Grammar (standard precedence; '^' binds tightest and is
/// right-associative, unary minus sits between '^' and '*'):
///
///   expr    := term (('+'|'-') term)*
///   term    := factor (('*'|'/') factor)*
///   factor  := '-' factor | power
///   power   := primary ('^' factor)?
///   primary := number | name | name '(' expr (',' expr)? ')' | '(' expr ')'
///
/// Unary functions: ln, exp, sqrt, abs.  Binary calls: min, max, pow.
/// Expressions are immutable after parse; evaluation is pure.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "blowup/common.hpp"

namespace blowup {

/// Syntax error; carries the byte offset of the offending token.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " (at byte " + std::to_string(offset) + ")"),
          offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

namespace detail {
struct ExprNode;
}

class Expression {
public:
    Expression() = default;

    /// Parses text over the given variable name.  Throws ParseError on
    /// malformed input or unknown identifiers.
    static Expression parse(std::string_view text, std::string_view variable);

    /// Deterministic IEEE evaluation.  Throws DomainError on ln of
    /// non-positive, division by zero, 0^negative, sqrt of negative, or a
    /// non-finite result.
    double evaluate(double x) const;

    /// Non-throwing variant; empty optional on any domain error.
    std::optional<double> try_evaluate(double x) const noexcept;

    /// Canonical printer. parse(print()) reproduces an equivalent tree.
    std::string print() const;

    /// Structural equality (used by the round-trip property test).
    bool equivalent(const Expression& other) const;

    const std::string& variable() const { return variable_; }
    bool empty() const { return root_ == nullptr; }

private:
    std::shared_ptr<const detail::ExprNode> root_;
    std::string variable_;
};

} // namespace blowup
