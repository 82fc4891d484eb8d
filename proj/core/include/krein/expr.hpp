#pragma once

// A tiny real-valued expression language in the variables t and eps, used to
// describe matrix curves A(t, eps) in scenario files.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          right associative
//   primary := number | 't' | 'eps' | func '(' expr ')' | '(' expr ')'
//   func    := sin | cos | exp | sqrt | abs

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace krein {

enum class NodeKind { Literal, VarT, VarEps, Neg, Add, Sub, Mul, Div, Pow, Call };
enum class Function { Sin, Cos, Exp, Sqrt, Abs };

struct ExprNode {
  NodeKind kind = NodeKind::Literal;
  double value = 0.0;            // Literal
  Function fn = Function::Sin;   // Call
  std::shared_ptr<const ExprNode> lhs;  // unary operand, call argument, or left side
  std::shared_ptr<const ExprNode> rhs;  // right side of binary nodes
  std::size_t offset = 0;        // byte offset of the node in its source text
};

/// Immutable expression tree. Copies share nodes.
class Expr {
 public:
  Expr();  // the literal 0
  explicit Expr(std::shared_ptr<const ExprNode> root);

  const ExprNode& root() const { return *root_; }
  const std::shared_ptr<const ExprNode>& root_ptr() const { return root_; }

  bool depends_on_t() const;
  bool depends_on_eps() const;

  /// Fully parenthesized source text that parses back to the same tree.
  std::string to_string() const;

 private:
  std::shared_ptr<const ExprNode> root_;
};

/// Throws ParseError (with byte offset and expected tokens) or
/// UnknownIdentifierError.
Expr parse(std::string_view source);

/// Throws DomainError for division by zero, sqrt of a negative number, or any
/// other non-finite intermediate result.
double eval(const Expr& e, double t, double eps);

/// Tree equality ignoring source offsets.
bool structurally_equal(const Expr& a, const Expr& b);

/// If `e` is syntactically affine in eps (eps only at first power and never
/// inside a function, power or denominator), returns the exact eps-free
/// expression for de/deps. Otherwise nullopt.
std::optional<Expr> eps_coefficient(const Expr& e);

}  // namespace krein
