#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "weylkit/expr.hpp"

using weylkit::Expression;
using weylkit::ParseError;
using weylkit::TaylorScalar;

static double ev(const std::string& text, const std::map<std::string, double>& env = {}) {
  return Expression::parse(text).eval_real(env);
}

TEST_CASE("precedence and associativity") {
  CHECK(ev("2+3*4") == 14.0);
  CHECK(ev("2*3^2") == 18.0);
  CHECK(ev("2^3^2") == 512.0);  // right-associative
  CHECK(ev("-2^2") == -4.0);    // ^ binds tighter than unary minus
  CHECK(ev("(2+3)*4") == 20.0);
  CHECK(ev("7-4-2") == 1.0);
  CHECK(ev("8/4/2") == 1.0);
  CHECK(ev("--3") == 3.0);
}

TEST_CASE("functions, pi, identifiers") {
  CHECK(ev("sin(pi/2)") == doctest::Approx(1.0));
  CHECK(ev("cos(0)") == 1.0);
  CHECK(ev("sqrt(2)^2") == doctest::Approx(2.0));
  CHECK(ev("exp(log(5))") == doctest::Approx(5.0));
  CHECK(ev("r^2*sin(theta)^2", {{"r", 2.0}, {"theta", 3.14159265358979 / 2}}) ==
        doctest::Approx(4.0));
  auto ids = Expression::parse("a*sin(b)+c^d").identifiers();
  CHECK(ids == std::set<std::string>{"a", "b", "c", "d"});
}

TEST_CASE("parse errors carry offsets") {
  auto offset_of = [](const std::string& text) {
    try {
      (void)Expression::parse(text);
    } catch (const ParseError& e) {
      return (long long)e.offset;
    }
    return -1ll;
  };
  CHECK(offset_of("1 + ") >= 3);
  CHECK(offset_of("1 + * 2") == 4);
  CHECK(offset_of("sin(x") >= 3);
  CHECK(offset_of("2 x") >= 2);  // no implicit multiplication
  CHECK(offset_of("1 + 2") == -1);
}

TEST_CASE("unbound identifier fails at evaluation") {
  Expression e = Expression::parse("x + y");
  CHECK_THROWS_AS((void)e.eval_real({{"x", 1.0}}), weylkit::UnboundIdentifierError);
}

TEST_CASE("taylor evaluation matches real evaluation and analytic gradient") {
  Expression e = Expression::parse("x^2*sin(y) + exp(x*y)");
  double x0 = 0.6, y0 = -0.4;
  std::map<std::string, TaylorScalar> env{{"x", TaylorScalar::variable(2, 0, x0)},
                                          {"y", TaylorScalar::variable(2, 1, y0)}};
  TaylorScalar t = e.eval_taylor(env);
  CHECK(t.value() == doctest::Approx(e.eval_real({{"x", x0}, {"y", y0}})));
  CHECK(t.partial(0) ==
        doctest::Approx(2 * x0 * std::sin(y0) + y0 * std::exp(x0 * y0)));
  CHECK(t.partial(1) ==
        doctest::Approx(x0 * x0 * std::cos(y0) + x0 * std::exp(x0 * y0)));
}

// --- round-trip property over random ASTs ---

namespace {

struct AstGen {
  std::mt19937 rng;
  const std::vector<std::string> vars{"x", "y", "z"};

  std::string gen(int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 7);
    switch (pick(rng)) {
      case 0: {
        std::uniform_real_distribution<double> num(0.0, 9.5);
        double v = std::round(num(rng) * 4.0) / 4.0;
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", v);
        return buf;
      }
      case 1:
        return vars[rng() % vars.size()];
      case 2:
        return "(" + gen(depth - 1) + "+" + gen(depth - 1) + ")";
      case 3:
        return "(" + gen(depth - 1) + "-" + gen(depth - 1) + ")";
      case 4:
        return "(" + gen(depth - 1) + "*" + gen(depth - 1) + ")";
      case 5:
        return "(" + gen(depth - 1) + "/(4+" + gen(depth - 1) + "^2))";
      case 6: {
        const char* fns[] = {"sin", "cos", "tanh", "exp"};
        return std::string(fns[rng() % 4]) + "(" + gen(depth - 1) + ")";
      }
      default:
        return "(-" + gen(depth - 1) + ")";
    }
  }
};

}  // namespace

TEST_CASE("print-parse round trip preserves the AST over 500 random expressions") {
  AstGen gen{std::mt19937(2024)};
  std::map<std::string, double> env{{"x", 0.37}, {"y", -1.21}, {"z", 2.05}};
  int checked = 0;
  for (int i = 0; i < 500; ++i) {
    std::string text = gen.gen(4);
    Expression e1 = Expression::parse(text);
    std::string printed = e1.str();
    Expression e2 = Expression::parse(printed);
    // printing is a fixed point and evaluation agrees exactly
    CHECK(e2.str() == printed);
    double v1, v2;
    try {
      v1 = e1.eval_real(env);
      v2 = e2.eval_real(env);
    } catch (const weylkit::DomainError&) {
      continue;  // exp overflow on a deep random tree; shape still checked above
    }
    if (std::isfinite(v1)) {
      CHECK(v1 == v2);
      ++checked;
    }
  }
  CHECK(checked > 400);
}
