#ifndef WEYLKIT_EXPR_HPP
#define WEYLKIT_EXPR_HPP

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "weylkit/taylor.hpp"

namespace weylkit {

// Parse failure, with the byte offset of the first offending character.
struct ParseError : std::runtime_error {
  ParseError(std::string msg, size_t off)
      : std::runtime_error(std::move(msg)), offset(off) {}
  size_t offset;
};

// Unknown identifier encountered at evaluation time.
struct UnboundIdentifierError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Immutable arithmetic expression over coordinates and parameters.
// Grammar: + - * / ^ with standard precedence, ^ right-associative and
// binding tighter than unary minus; calls sin cos tan exp log sqrt sinh
// cosh tanh; constant pi. No implicit multiplication.
class Expression {
 public:
  static Expression parse(std::string_view text);
  static Expression number(double v);

  // Minimal-parenthesis printing; parse(str()) reproduces the same AST.
  std::string str() const;

  std::set<std::string> identifiers() const;

  double eval_real(const std::map<std::string, double>& env) const;
  TaylorScalar eval_taylor(const std::map<std::string, TaylorScalar>& env) const;

  bool is_zero_literal() const;

 private:
  enum class Op : uint8_t { Num, Ident, Pi, Neg, Add, Sub, Mul, Div, Pow, Call };
  struct Node {
    Op op;
    double num = 0.0;
    int a = -1, b = -1;
    std::string name;  // identifier or function name
  };
  std::vector<Node> nodes_;
  int root_ = -1;

  template <class T, class Env>
  T eval_node(int idx, const Env& env) const;
  void print(int idx, std::string& out, int parent_prec, bool right_side) const;
  friend class Parser;
};

}  // namespace weylkit

#endif
