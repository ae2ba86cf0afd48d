#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "moframe/jet.hpp"

namespace moframe {

/// Parsed formula in one real parameter, canonically named "s".
///
/// Grammar (whitespace insignificant, identifiers case-sensitive):
///
///   expr    = term { ("+" | "-") term }
///   term    = unary { ("*" | "/") unary }
///   unary   = "-" unary | power
///   power   = atom [ "^" unary ]            (right-associative)
///   atom    = number | "pi" | "s"
///           | ("sin" | "cos" | "sqrt") "(" expr ")"
///           | "(" expr ")"
///
/// Unary minus binds looser than "^", so "-s^2" is -(s^2). The exponent of
/// every power must be parameter-free; it is folded to a constant at parse
/// time. Fractional powers are defined only for positive bases; integer
/// powers accept any base.
///
/// Expressions are immutable after construction and freely shareable across
/// threads; evaluation is a pure function.
class Expression {
 public:
  Expression() = default;

  /// Throws SyntaxError or UnknownIdentifier on malformed input.
  static Expression parse(std::string_view text);

  /// Plain real evaluation. Throws DomainError outside the real domain.
  double evaluate(double s) const;

  /// Jet of this expression composed with the function j represents.
  Jet apply(const Jet& j) const;

  /// Parenthesized text that re-parses to an equivalent expression.
  std::string to_string() const;

  bool depends_on_parameter() const;
  bool empty() const { return root_ == nullptr; }

  struct Node;  // implementation detail, defined in the source file

 private:
  explicit Expression(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

  std::shared_ptr<const Node> root_;
};

}  // namespace moframe
