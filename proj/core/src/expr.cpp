#include "krein/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <utility>
#include <vector>

#include "krein/error.hpp"

namespace krein {
namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make_literal(double v, std::size_t offset = 0) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::Literal;
  n->value = v;
  n->offset = offset;
  return n;
}

NodePtr make_node(NodeKind kind, NodePtr lhs, NodePtr rhs, std::size_t offset) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  n->offset = offset;
  return n;
}

NodePtr make_call(Function fn, NodePtr arg, std::size_t offset) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::Call;
  n->fn = fn;
  n->lhs = std::move(arg);
  n->offset = offset;
  return n;
}

const char* function_name(Function f) {
  switch (f) {
    case Function::Sin: return "sin";
    case Function::Cos: return "cos";
    case Function::Exp: return "exp";
    case Function::Sqrt: return "sqrt";
    case Function::Abs: return "abs";
  }
  return "?";
}

std::optional<Function> lookup_function(std::string_view name) {
  if (name == "sin") return Function::Sin;
  if (name == "cos") return Function::Cos;
  if (name == "exp") return Function::Exp;
  if (name == "sqrt") return Function::Sqrt;
  if (name == "abs") return Function::Abs;
  return std::nullopt;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  NodePtr parse_all() {
    NodePtr e = parse_expr();
    skip_ws();
    if (pos_ != src_.size())
      throw ParseError("unexpected character '" + std::string(1, src_[pos_]) + "'", pos_,
                       {"+", "-", "*", "/", "^", "end of input"});
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      skip_ws();
      const std::size_t at = pos_;
      if (accept('+')) {
        lhs = make_node(NodeKind::Add, lhs, parse_term(), at);
      } else if (accept('-')) {
        lhs = make_node(NodeKind::Sub, lhs, parse_term(), at);
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    for (;;) {
      skip_ws();
      const std::size_t at = pos_;
      if (accept('*')) {
        lhs = make_node(NodeKind::Mul, lhs, parse_unary(), at);
      } else if (accept('/')) {
        lhs = make_node(NodeKind::Div, lhs, parse_unary(), at);
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_unary() {
    skip_ws();
    const std::size_t at = pos_;
    if (accept('-')) return make_node(NodeKind::Neg, parse_unary(), nullptr, at);
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    skip_ws();
    const std::size_t at = pos_;
    if (accept('^')) return make_node(NodeKind::Pow, base, parse_unary(), at);
    return base;
  }

  NodePtr parse_primary() {
    skip_ws();
    const std::size_t at = pos_;
    if (pos_ >= src_.size())
      throw ParseError("unexpected end of input", pos_, {"number", "identifier", "(", "-"});

    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_, {")"});
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_'))
        ++end;
      const std::string_view name = src_.substr(pos_, end - pos_);
      pos_ = end;
      if (name == "t") return make_node(NodeKind::VarT, nullptr, nullptr, at);
      if (name == "eps") return make_node(NodeKind::VarEps, nullptr, nullptr, at);
      if (auto fn = lookup_function(name)) {
        if (!accept('(')) throw ParseError("expected '(' after function name", pos_, {"("});
        NodePtr arg = parse_expr();
        if (!accept(')')) throw ParseError("expected ')'", pos_, {")"});
        return make_call(*fn, arg, at);
      }
      throw UnknownIdentifierError(std::string(name), at);
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_,
                     {"number", "identifier", "(", "-"});
  }

  NodePtr parse_number() {
    const std::size_t at = pos_;
    std::size_t end = pos_;
    auto digits = [&] {
      while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) ++end;
    };
    digits();
    if (end < src_.size() && src_[end] == '.') {
      ++end;
      digits();
    }
    if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
      std::size_t exp = end + 1;
      if (exp < src_.size() && (src_[exp] == '+' || src_[exp] == '-')) ++exp;
      if (exp < src_.size() && std::isdigit(static_cast<unsigned char>(src_[exp]))) {
        end = exp;
        digits();
      }
    }
    double value = 0.0;
    const char* first = src_.data() + at;
    const char* last = src_.data() + end;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec == std::errc::result_out_of_range || (ec == std::errc() && !std::isfinite(value)))
      throw ParseError("numeric literal out of range", at);
    if (ec != std::errc() || ptr != last) throw ParseError("malformed number", at, {"number"});
    pos_ = end;
    return make_literal(value, at);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

double checked(double v, const ExprNode& n, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string("non-finite result of ") + what, n.offset);
  return v;
}

double eval_node(const ExprNode& n, double t, double eps) {
  switch (n.kind) {
    case NodeKind::Literal: return n.value;
    case NodeKind::VarT: return t;
    case NodeKind::VarEps: return eps;
    case NodeKind::Neg: return -eval_node(*n.lhs, t, eps);
    case NodeKind::Add:
      return checked(eval_node(*n.lhs, t, eps) + eval_node(*n.rhs, t, eps), n, "'+'");
    case NodeKind::Sub:
      return checked(eval_node(*n.lhs, t, eps) - eval_node(*n.rhs, t, eps), n, "'-'");
    case NodeKind::Mul:
      return checked(eval_node(*n.lhs, t, eps) * eval_node(*n.rhs, t, eps), n, "'*'");
    case NodeKind::Div: {
      const double num = eval_node(*n.lhs, t, eps);
      const double den = eval_node(*n.rhs, t, eps);
      if (den == 0.0) throw DomainError("division by zero", n.offset);
      return checked(num / den, n, "'/'");
    }
    case NodeKind::Pow:
      return checked(std::pow(eval_node(*n.lhs, t, eps), eval_node(*n.rhs, t, eps)), n, "'^'");
    case NodeKind::Call: {
      const double x = eval_node(*n.lhs, t, eps);
      switch (n.fn) {
        case Function::Sin: return std::sin(x);
        case Function::Cos: return std::cos(x);
        case Function::Exp: return checked(std::exp(x), n, "exp");
        case Function::Sqrt:
          if (x < 0.0) throw DomainError("sqrt of a negative number", n.offset);
          return std::sqrt(x);
        case Function::Abs: return std::abs(x);
      }
    }
  }
  throw DomainError("corrupt expression node", n.offset);
}

bool contains(const ExprNode& n, NodeKind kind) {
  if (n.kind == kind) return true;
  if (n.lhs && contains(*n.lhs, kind)) return true;
  return n.rhs && contains(*n.rhs, kind);
}

void print(const ExprNode& n, std::string& out) {
  switch (n.kind) {
    case NodeKind::Literal: {
      char buf[32];
      const auto r = std::to_chars(buf, buf + sizeof buf, n.value);
      out.append(buf, r.ptr);
      return;
    }
    case NodeKind::VarT: out += 't'; return;
    case NodeKind::VarEps: out += "eps"; return;
    case NodeKind::Neg:
      out += "(-";
      print(*n.lhs, out);
      out += ')';
      return;
    case NodeKind::Call:
      out += function_name(n.fn);
      out += '(';
      print(*n.lhs, out);
      out += ')';
      return;
    default: break;
  }
  const char* op = "?";
  switch (n.kind) {
    case NodeKind::Add: op = " + "; break;
    case NodeKind::Sub: op = " - "; break;
    case NodeKind::Mul: op = " * "; break;
    case NodeKind::Div: op = " / "; break;
    case NodeKind::Pow: op = " ^ "; break;
    default: break;
  }
  out += '(';
  print(*n.lhs, out);
  out += op;
  print(*n.rhs, out);
  out += ')';
}

bool equal_nodes(const ExprNode& a, const ExprNode& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case NodeKind::Literal: return a.value == b.value;
    case NodeKind::VarT:
    case NodeKind::VarEps: return true;
    case NodeKind::Neg: return equal_nodes(*a.lhs, *b.lhs);
    case NodeKind::Call: return a.fn == b.fn && equal_nodes(*a.lhs, *b.lhs);
    default: return equal_nodes(*a.lhs, *b.lhs) && equal_nodes(*a.rhs, *b.rhs);
  }
}

bool eps_free(const NodePtr& n) { return !contains(*n, NodeKind::VarEps); }

// d/deps of an affine-in-eps tree, or nullptr when the tree is not affine.
NodePtr eps_derivative(const NodePtr& n) {
  if (eps_free(n)) return make_literal(0.0, n->offset);
  switch (n->kind) {
    case NodeKind::VarEps: return make_literal(1.0, n->offset);
    case NodeKind::Neg: {
      NodePtr d = eps_derivative(n->lhs);
      return d ? make_node(NodeKind::Neg, d, nullptr, n->offset) : nullptr;
    }
    case NodeKind::Add:
    case NodeKind::Sub: {
      NodePtr dl = eps_derivative(n->lhs);
      NodePtr dr = eps_derivative(n->rhs);
      if (!dl || !dr) return nullptr;
      return make_node(n->kind, dl, dr, n->offset);
    }
    case NodeKind::Mul: {
      if (eps_free(n->lhs)) {
        NodePtr d = eps_derivative(n->rhs);
        return d ? make_node(NodeKind::Mul, n->lhs, d, n->offset) : nullptr;
      }
      if (eps_free(n->rhs)) {
        NodePtr d = eps_derivative(n->lhs);
        return d ? make_node(NodeKind::Mul, d, n->rhs, n->offset) : nullptr;
      }
      return nullptr;
    }
    case NodeKind::Div: {
      if (!eps_free(n->rhs)) return nullptr;
      NodePtr d = eps_derivative(n->lhs);
      return d ? make_node(NodeKind::Div, d, n->rhs, n->offset) : nullptr;
    }
    default:
      // Pow and Call containing eps are treated as nonlinear.
      return nullptr;
  }
}

}  // namespace

Expr::Expr() : root_(make_literal(0.0)) {}

Expr::Expr(std::shared_ptr<const ExprNode> root) : root_(std::move(root)) {
  if (!root_) root_ = make_literal(0.0);
}

bool Expr::depends_on_t() const { return contains(*root_, NodeKind::VarT); }
bool Expr::depends_on_eps() const { return contains(*root_, NodeKind::VarEps); }

std::string Expr::to_string() const {
  std::string out;
  print(*root_, out);
  return out;
}

Expr parse(std::string_view source) { return Expr(Parser(source).parse_all()); }

double eval(const Expr& e, double t, double eps) { return eval_node(e.root(), t, eps); }

bool structurally_equal(const Expr& a, const Expr& b) { return equal_nodes(a.root(), b.root()); }

std::optional<Expr> eps_coefficient(const Expr& e) {
  NodePtr d = eps_derivative(e.root_ptr());
  if (!d) return std::nullopt;
  return Expr(std::move(d));
}

}  // namespace krein
