#include "weylkit/expr.hpp"

#include <cctype>
#include <cmath>
#include <charconv>

namespace weylkit {

namespace {

const std::set<std::string> kFunctions = {"sin",  "cos",  "tan",  "exp", "log",
                                          "sqrt", "sinh", "cosh", "tanh"};

}  // namespace

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expression run() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("empty input", 0);
    int root = parse_sum();
    skip_ws();
    if (pos_ < text_.size())
      throw ParseError("unexpected trailing input", pos_);
    e_.root_ = root;
    return std::move(e_);
  }

 private:
  std::string_view text_;
  size_t pos_ = 0;
  Expression e_;

  using Op = decltype(Expression::Node::op);

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  int add(Expression::Node n) {
    e_.nodes_.push_back(std::move(n));
    return static_cast<int>(e_.nodes_.size()) - 1;
  }

  int parse_sum() {
    int lhs = parse_term();
    for (;;) {
      if (eat('+'))
        lhs = add({Op::Add, 0, lhs, parse_term(), {}});
      else if (eat('-'))
        lhs = add({Op::Sub, 0, lhs, parse_term(), {}});
      else
        return lhs;
    }
  }

  int parse_term() {
    int lhs = parse_unary();
    for (;;) {
      if (eat('*'))
        lhs = add({Op::Mul, 0, lhs, parse_unary(), {}});
      else if (eat('/'))
        lhs = add({Op::Div, 0, lhs, parse_unary(), {}});
      else
        return lhs;
    }
  }

  int parse_unary() {
    if (eat('-')) return add({Op::Neg, 0, parse_unary(), -1, {}});
    return parse_power();
  }

  int parse_power() {
    int base = parse_primary();
    if (eat('^')) {
      // right-associative; exponent may carry a unary minus
      int expo = eat('-') ? add({Op::Neg, 0, parse_power_operand(), -1, {}})
                          : parse_power_operand();
      return add({Op::Pow, 0, base, expo, {}});
    }
    return base;
  }

  int parse_power_operand() {
    int base = parse_primary();
    if (eat('^')) {
      int expo = eat('-') ? add({Op::Neg, 0, parse_power_operand(), -1, {}})
                          : parse_power_operand();
      return add({Op::Pow, 0, base, expo, {}});
    }
    return base;
  }

  int parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("expected operand", pos_);
    char c = text_[pos_];
    if (c == '(') {
      size_t open = pos_;
      ++pos_;
      int inner = parse_sum();
      if (!eat(')')) throw ParseError("unbalanced parenthesis", open);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
    throw ParseError(std::string("expected operand, found '") + c + "'", pos_);
  }

  int parse_number() {
    size_t start = pos_;
    double v = 0;
    auto res = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
    if (res.ec != std::errc()) throw ParseError("invalid number", start);
    pos_ = res.ptr - text_.data();
    return add({Op::Num, v, -1, -1, {}});
  }

  int parse_ident() {
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    if (name == "pi") return add({Op::Pi, 0, -1, -1, {}});
    if (peek() == '(') {
      if (!kFunctions.count(name))
        throw ParseError("unknown function '" + name + "'", start);
      size_t open = pos_;
      eat('(');
      int arg = parse_sum();
      if (!eat(')')) throw ParseError("unbalanced parenthesis", open);
      return add({Op::Call, 0, arg, -1, name});
    }
    if (kFunctions.count(name))
      throw ParseError("function '" + name + "' needs an argument list", start);
    return add({Op::Ident, 0, -1, -1, name});
  }
};

Expression Expression::parse(std::string_view text) { return Parser(text).run(); }

Expression Expression::number(double v) {
  Expression e;
  if (v < 0) {
    e.nodes_.push_back({Op::Num, -v, -1, -1, {}});
    e.nodes_.push_back({Op::Neg, 0, 0, -1, {}});
    e.root_ = 1;
  } else {
    e.nodes_.push_back({Op::Num, v, -1, -1, {}});
    e.root_ = 0;
  }
  return e;
}

bool Expression::is_zero_literal() const {
  return nodes_[root_].op == Op::Num && nodes_[root_].num == 0.0;
}

std::set<std::string> Expression::identifiers() const {
  std::set<std::string> ids;
  for (const Node& n : nodes_)
    if (n.op == Op::Ident) ids.insert(n.name);
  return ids;
}

namespace {
// precedence: + - (1), * / (2), unary- (3), ^ (4), atoms (5)
int prec_of_op(int op) {
  switch (op) {
    case 3: return 3;  // Neg
    case 4: case 5: return 1;
    case 6: case 7: return 2;
    case 8: return 4;
    default: return 5;
  }
}
}  // namespace

void Expression::print(int idx, std::string& out, int parent_prec, bool right_side) const {
  const Node& n = nodes_[idx];
  int p = prec_of_op(static_cast<int>(n.op));
  bool need_paren = false;
  if (p < parent_prec) need_paren = true;
  // left-assoc ops need parens around an equal-precedence right child;
  // right-assoc ^ needs them around an equal-precedence left child
  if (p == parent_prec) {
    if (parent_prec == 1 || parent_prec == 2) need_paren = right_side;
    if (parent_prec == 4) need_paren = !right_side;
  }
  if (need_paren) out += '(';
  switch (n.op) {
    case Op::Num: {
      char buf[40];
      snprintf(buf, sizeof(buf), "%.17g", n.num);
      out += buf;
      break;
    }
    case Op::Ident: out += n.name; break;
    case Op::Pi: out += "pi"; break;
    case Op::Neg:
      out += '-';
      print(n.a, out, 3, false);
      break;
    case Op::Add:
      print(n.a, out, 1, false);
      out += " + ";
      print(n.b, out, 1, true);
      break;
    case Op::Sub:
      print(n.a, out, 1, false);
      out += " - ";
      print(n.b, out, 1, true);
      break;
    case Op::Mul:
      print(n.a, out, 2, false);
      out += "*";
      print(n.b, out, 2, true);
      break;
    case Op::Div:
      print(n.a, out, 2, false);
      out += "/";
      print(n.b, out, 2, true);
      break;
    case Op::Pow:
      print(n.a, out, 4, false);
      out += "^";
      print(n.b, out, 4, true);
      break;
    case Op::Call:
      out += n.name;
      out += '(';
      print(n.a, out, 0, false);
      out += ')';
      break;
  }
  if (need_paren) out += ')';
}

std::string Expression::str() const {
  std::string out;
  print(root_, out, 0, false);
  return out;
}

template <class T, class Env>
T Expression::eval_node(int idx, const Env& env) const {
  const Node& n = nodes_[idx];
  switch (n.op) {
    case Op::Num: return T(n.num);
    case Op::Pi: return T(3.14159265358979323846);
    case Op::Ident: {
      auto it = env.find(n.name);
      if (it == env.end())
        throw UnboundIdentifierError("unbound identifier '" + n.name + "'");
      return it->second;
    }
    case Op::Neg: return -eval_node<T>(n.a, env);
    case Op::Add: return eval_node<T>(n.a, env) + eval_node<T>(n.b, env);
    case Op::Sub: return eval_node<T>(n.a, env) - eval_node<T>(n.b, env);
    case Op::Mul: return eval_node<T>(n.a, env) * eval_node<T>(n.b, env);
    case Op::Div: return eval_node<T>(n.a, env) / eval_node<T>(n.b, env);
    case Op::Pow: {
      using std::pow;
      return pow(eval_node<T>(n.a, env), eval_node<T>(n.b, env));
    }
    case Op::Call: {
      using std::cos;
      using std::cosh;
      using std::exp;
      using std::log;
      using std::sin;
      using std::sinh;
      using std::sqrt;
      using std::tan;
      using std::tanh;
      T arg = eval_node<T>(n.a, env);
      if (n.name == "sin") return sin(arg);
      if (n.name == "cos") return cos(arg);
      if (n.name == "tan") return tan(arg);
      if (n.name == "exp") return exp(arg);
      if (n.name == "log") {
        if constexpr (std::is_same_v<T, double>) {
          if (arg <= 0.0) throw DomainError("log of non-positive value");
        }
        return log(arg);
      }
      if (n.name == "sqrt") {
        if constexpr (std::is_same_v<T, double>) {
          if (arg < 0.0) throw DomainError("sqrt of negative value");
        }
        return sqrt(arg);
      }
      if (n.name == "sinh") return sinh(arg);
      if (n.name == "cosh") return cosh(arg);
      if (n.name == "tanh") return tanh(arg);
      throw std::logic_error("unreachable function name");
    }
  }
  throw std::logic_error("unreachable node op");
}

double Expression::eval_real(const std::map<std::string, double>& env) const {
  double v = eval_node<double>(root_, env);
  if (std::isinf(v) || std::isnan(v)) throw DomainError("non-finite result in '" + str() + "'");
  return v;
}

TaylorScalar Expression::eval_taylor(const std::map<std::string, TaylorScalar>& env) const {
  try {
    return eval_node<TaylorScalar>(root_, env);
  } catch (const DomainError& e) {
    throw DomainError(std::string(e.what()) + " while evaluating '" + str() + "'");
  }
}

}  // namespace weylkit
