#ifndef WEYLKIT_TAYLOR_HPP
#define WEYLKIT_TAYLOR_HPP

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace weylkit {

// Thrown on log of a non-positive number, sqrt of a negative number,
// division by zero, and similar evaluation failures.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Truncated multivariate Taylor polynomial: carries the value and all mixed
// partial derivatives up to order kOrder at a point, in up to kMaxVars
// seeded variables. A TaylorScalar with nvars() == 0 is a plain constant and
// promotes automatically in mixed arithmetic.
//
// Coefficients are stored as Taylor coefficients c_alpha = d^alpha f / alpha!,
// dense over all multi-indices |alpha| <= kOrder, graded-lex order.
class TaylorScalar {
 public:
  static constexpr int kOrder = 4;
  static constexpr int kMaxVars = 6;

  TaylorScalar() : n_(0), c_(1, 0.0) {}
  explicit TaylorScalar(double v) : n_(0), c_(1, v) {}

  static TaylorScalar constant(int nvars, double v);
  // Seeded coordinate variable: value v, unit first-order coefficient in
  // direction i.
  static TaylorScalar variable(int nvars, int i, double v);

  int nvars() const { return n_; }
  double value() const { return c_[0]; }

  // Partial derivative for a multi-index (coefficient times alpha!).
  double partial(std::span<const int> alpha) const;
  double partial(int i) const;
  double partial(int i, int j) const;
  double partial(int i, int j, int k) const;

  // d/dx_i as a TaylorScalar. Top-order coefficients of the result are not
  // recoverable from the truncation and are set to zero; callers must track
  // the reliable order themselves.
  TaylorScalar derivative(int i) const;

  const std::vector<double>& coeffs() const { return c_; }

  TaylorScalar operator-() const;
  TaylorScalar& operator+=(const TaylorScalar& o);
  TaylorScalar& operator-=(const TaylorScalar& o);

  friend TaylorScalar operator+(TaylorScalar a, const TaylorScalar& b) { a += b; return a; }
  friend TaylorScalar operator-(TaylorScalar a, const TaylorScalar& b) { a -= b; return a; }
  friend TaylorScalar operator*(const TaylorScalar& a, const TaylorScalar& b);
  friend TaylorScalar operator/(const TaylorScalar& a, const TaylorScalar& b);

  friend TaylorScalar operator+(TaylorScalar a, double b) { a.c_[0] += b; return a; }
  friend TaylorScalar operator+(double a, TaylorScalar b) { b.c_[0] += a; return b; }
  friend TaylorScalar operator-(TaylorScalar a, double b) { a.c_[0] -= b; return a; }
  friend TaylorScalar operator-(double a, const TaylorScalar& b) { return TaylorScalar(a) - b; }
  friend TaylorScalar operator*(TaylorScalar a, double b);
  friend TaylorScalar operator*(double a, TaylorScalar b) { return std::move(b) * a; }
  friend TaylorScalar operator/(TaylorScalar a, double b);
  friend TaylorScalar operator/(double a, const TaylorScalar& b) { return TaylorScalar(a) / b; }

  // Composition with a univariate function given by its derivative values
  // d[k] = f^(k)(value()) for k = 0..kOrder.
  TaylorScalar compose(const std::array<double, kOrder + 1>& d) const;

 private:
  friend void promote_pair(TaylorScalar& a, TaylorScalar& b);
  int n_;
  std::vector<double> c_;
};

TaylorScalar sin(const TaylorScalar& t);
TaylorScalar cos(const TaylorScalar& t);
TaylorScalar tan(const TaylorScalar& t);
TaylorScalar exp(const TaylorScalar& t);
TaylorScalar log(const TaylorScalar& t);
TaylorScalar sqrt(const TaylorScalar& t);
TaylorScalar sinh(const TaylorScalar& t);
TaylorScalar cosh(const TaylorScalar& t);
TaylorScalar tanh(const TaylorScalar& t);
TaylorScalar pow(const TaylorScalar& base, const TaylorScalar& expo);
TaylorScalar powi(const TaylorScalar& base, long long k);

}  // namespace weylkit

#endif
