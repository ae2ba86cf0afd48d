#include "moframe/expr.hpp"

#include <cassert>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <utility>

#include "moframe/errors.hpp"
#include "moframe/report.hpp"

namespace moframe {

namespace {

enum class Kind {
  number,
  pi,
  parameter,
  negate,
  sin_fn,
  cos_fn,
  sqrt_fn,
  add,
  subtract,
  multiply,
  divide,
  power,
};

}  // namespace

struct Expression::Node {
  Kind kind;
  double number = 0.0;  // literal value; for power nodes, the folded exponent
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

NodePtr make_node(Kind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr, double number = 0.0) {
  auto n = std::make_shared<Expression::Node>();
  n->kind = kind;
  n->number = number;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

bool node_depends_on_parameter(const Expression::Node& n) {
  if (n.kind == Kind::parameter) return true;
  if (n.lhs && node_depends_on_parameter(*n.lhs)) return true;
  if (n.rhs && node_depends_on_parameter(*n.rhs)) return true;
  return false;
}

double eval_node(const Expression::Node& n, double s) {
  switch (n.kind) {
    case Kind::number:
      return n.number;
    case Kind::pi:
      return std::numbers::pi_v<double>;
    case Kind::parameter:
      return s;
    case Kind::negate:
      return -eval_node(*n.lhs, s);
    case Kind::sin_fn:
      return std::sin(eval_node(*n.lhs, s));
    case Kind::cos_fn:
      return std::cos(eval_node(*n.lhs, s));
    case Kind::sqrt_fn: {
      const double v = eval_node(*n.lhs, s);
      if (v < 0.0) throw DomainError("sqrt", v);
      return std::sqrt(v);
    }
    case Kind::add:
      return eval_node(*n.lhs, s) + eval_node(*n.rhs, s);
    case Kind::subtract:
      return eval_node(*n.lhs, s) - eval_node(*n.rhs, s);
    case Kind::multiply:
      return eval_node(*n.lhs, s) * eval_node(*n.rhs, s);
    case Kind::divide: {
      const double d = eval_node(*n.rhs, s);
      if (d == 0.0) throw DomainError("divide", 0.0);
      return eval_node(*n.lhs, s) / d;
    }
    case Kind::power: {
      const double base = eval_node(*n.lhs, s);
      const double e = n.number;
      if (e == std::round(e)) {
        if (base == 0.0 && e < 0.0) throw DomainError("power", 0.0);
        return std::pow(base, e);
      }
      if (!(base > 0.0)) throw DomainError("power", base);
      return std::pow(base, e);
    }
  }
  assert(false && "unreachable");
  return 0.0;
}

Jet apply_node(const Expression::Node& n, const Jet& j) {
  switch (n.kind) {
    case Kind::number:
      return Jet::constant(n.number, j.order(), j.basepoint());
    case Kind::pi:
      return Jet::constant(std::numbers::pi_v<double>, j.order(), j.basepoint());
    case Kind::parameter:
      return j;
    case Kind::negate:
      return -apply_node(*n.lhs, j);
    case Kind::sin_fn:
      return sin(apply_node(*n.lhs, j));
    case Kind::cos_fn:
      return cos(apply_node(*n.lhs, j));
    case Kind::sqrt_fn:
      return sqrt(apply_node(*n.lhs, j));
    case Kind::add:
      return apply_node(*n.lhs, j) + apply_node(*n.rhs, j);
    case Kind::subtract:
      return apply_node(*n.lhs, j) - apply_node(*n.rhs, j);
    case Kind::multiply:
      return apply_node(*n.lhs, j) * apply_node(*n.rhs, j);
    case Kind::divide:
      return apply_node(*n.lhs, j) / apply_node(*n.rhs, j);
    case Kind::power:
      return pow(apply_node(*n.lhs, j), n.number);
  }
  assert(false && "unreachable");
  return Jet();
}

// Printing precedence: higher binds tighter.
int node_precedence(const Expression::Node& n) {
  switch (n.kind) {
    case Kind::add:
    case Kind::subtract:
      return 1;
    case Kind::multiply:
    case Kind::divide:
      return 2;
    case Kind::negate:
      return 3;
    case Kind::power:
      return 4;
    default:
      return 5;
  }
}

void print_node(const Expression::Node& n, std::string& out);

void print_child(const Expression::Node& child, int min_precedence, std::string& out) {
  if (node_precedence(child) < min_precedence) {
    out += '(';
    print_node(child, out);
    out += ')';
  } else {
    print_node(child, out);
  }
}

void print_node(const Expression::Node& n, std::string& out) {
  switch (n.kind) {
    case Kind::number:
      out += format_double(n.number);
      return;
    case Kind::pi:
      out += "pi";
      return;
    case Kind::parameter:
      out += 's';
      return;
    case Kind::negate:
      out += '-';
      print_child(*n.lhs, 3, out);
      return;
    case Kind::sin_fn:
    case Kind::cos_fn:
    case Kind::sqrt_fn:
      out += n.kind == Kind::sin_fn ? "sin" : n.kind == Kind::cos_fn ? "cos" : "sqrt";
      out += '(';
      print_node(*n.lhs, out);
      out += ')';
      return;
    case Kind::add:
      print_child(*n.lhs, 1, out);
      out += '+';
      print_child(*n.rhs, 2, out);
      return;
    case Kind::subtract:
      print_child(*n.lhs, 1, out);
      out += '-';
      print_child(*n.rhs, 2, out);
      return;
    case Kind::multiply:
      print_child(*n.lhs, 2, out);
      out += '*';
      print_child(*n.rhs, 3, out);
      return;
    case Kind::divide:
      print_child(*n.lhs, 2, out);
      out += '/';
      print_child(*n.rhs, 3, out);
      return;
    case Kind::power:
      print_child(*n.lhs, 5, out);
      out += '^';
      print_child(*n.rhs, 5, out);
      return;
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr run() {
    if (text_.empty()) throw SyntaxError(0, "nonempty expression");
    NodePtr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) throw SyntaxError(pos_, "end of input");
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c, const char* what) {
    if (!accept(c)) throw SyntaxError(pos_, what);
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      if (accept('+'))
        lhs = make_node(Kind::add, lhs, parse_term());
      else if (accept('-'))
        lhs = make_node(Kind::subtract, lhs, parse_term());
      else
        return lhs;
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    for (;;) {
      if (accept('*'))
        lhs = make_node(Kind::multiply, lhs, parse_unary());
      else if (accept('/'))
        lhs = make_node(Kind::divide, lhs, parse_unary());
      else
        return lhs;
    }
  }

  NodePtr parse_unary() {
    if (accept('-')) return make_node(Kind::negate, parse_unary());
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_atom();
    skip_ws();
    if (!accept('^')) return base;
    const std::size_t caret = pos_ - 1;
    NodePtr exp = parse_unary();
    if (node_depends_on_parameter(*exp))
      throw SyntaxError(caret, "parameter-free exponent");
    const double value = eval_node(*exp, 0.0);
    return make_node(Kind::power, base, exp, value);
  }

  NodePtr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) throw SyntaxError(pos_, "value");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = parse_expr();
      expect(')', "')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    throw SyntaxError(pos_, "value");
  }

  NodePtr parse_number() {
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr == begin) throw SyntaxError(pos_, "number");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return make_node(Kind::number, nullptr, nullptr, value);
  }

  NodePtr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "s") return make_node(Kind::parameter);
    if (name == "pi") return make_node(Kind::pi);
    Kind fn;
    if (name == "sin")
      fn = Kind::sin_fn;
    else if (name == "cos")
      fn = Kind::cos_fn;
    else if (name == "sqrt")
      fn = Kind::sqrt_fn;
    else
      throw UnknownIdentifier(start, std::string(name));
    expect('(', "'(' after function name");
    NodePtr arg = parse_expr();
    expect(')', "')'");
    return make_node(fn, std::move(arg));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(std::string_view text) {
  return Expression(Parser(text).run());
}

double Expression::evaluate(double s) const {
  assert(root_);
  return eval_node(*root_, s);
}

Jet Expression::apply(const Jet& j) const {
  assert(root_);
  return apply_node(*root_, j);
}

std::string Expression::to_string() const {
  assert(root_);
  std::string out;
  print_node(*root_, out);
  return out;
}

bool Expression::depends_on_parameter() const {
  assert(root_);
  return node_depends_on_parameter(*root_);
}

}  // namespace moframe
