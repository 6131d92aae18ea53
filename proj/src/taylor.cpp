#include "weylkit/taylor.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace weylkit {
namespace {

constexpr int kOrder = TaylorScalar::kOrder;
constexpr int kMaxVars = TaylorScalar::kMaxVars;
constexpr int kBase = kOrder + 1;

int ipow(int b, int e) {
  int r = 1;
  while (e--) r *= b;
  return r;
}

// Per-nvars tables: the multi-index enumeration, a packed-key lookup, and a
// precomputed multiplication program listing all coefficient pairs whose
// degrees sum to at most kOrder.
struct Tables {
  int nvars = 0;
  std::vector<std::array<uint8_t, kMaxVars>> alpha;
  std::vector<int> degree;
  std::vector<double> fact;  // alpha!
  std::vector<int> lookup;   // packed key -> coefficient position
  struct MulTerm {
    uint16_t a, b, out;
  };
  std::vector<MulTerm> mul;
  // derivative table: d_shift[i][pos] = position of alpha + e_i (or -1)
  std::array<std::vector<int>, kMaxVars> shift;

  explicit Tables(int n) : nvars(n) {
    std::array<uint8_t, kMaxVars> cur{};
    enumerate(cur, 0, 0);
    finish();
  }

  int pack(const std::array<uint8_t, kMaxVars>& a) const {
    int k = 0;
    for (int i = nvars - 1; i >= 0; --i) k = k * kBase + a[i];
    return k;
  }

  void enumerate(std::array<uint8_t, kMaxVars>& cur, int var, int deg) {
    if (var == nvars) {
      alpha.push_back(cur);
      return;
    }
    for (int d = 0; deg + d <= kOrder; ++d) {
      cur[var] = static_cast<uint8_t>(d);
      enumerate(cur, var + 1, deg + d);
    }
    cur[var] = 0;
  }

  void finish() {
    std::stable_sort(alpha.begin(), alpha.end(), [](const auto& a, const auto& b) {
      int da = 0, db = 0;
      for (int v : a) da += v;
      for (int v : b) db += v;
      if (da != db) return da < db;
      return a < b;
    });
    const int m = static_cast<int>(alpha.size());
    degree.resize(m);
    fact.resize(m);
    lookup.assign(ipow(kBase, nvars), -1);
    for (int p = 0; p < m; ++p) {
      int d = 0;
      double f = 1.0;
      for (int i = 0; i < nvars; ++i) {
        d += alpha[p][i];
        for (int k = 2; k <= alpha[p][i]; ++k) f *= k;
      }
      degree[p] = d;
      fact[p] = f;
      lookup[pack(alpha[p])] = p;
    }
    for (int i = 0; i < nvars; ++i) {
      shift[i].assign(m, -1);
      for (int p = 0; p < m; ++p) {
        if (degree[p] >= kOrder) continue;
        auto a = alpha[p];
        a[i]++;
        shift[i][p] = lookup[pack(a)];
      }
    }
    for (int ia = 0; ia < m; ++ia) {
      for (int ib = 0; ib < m; ++ib) {
        if (degree[ia] + degree[ib] > kOrder) continue;
        auto s = alpha[ia];
        for (int i = 0; i < nvars; ++i) s[i] += alpha[ib][i];
        mul.push_back({static_cast<uint16_t>(ia), static_cast<uint16_t>(ib),
                       static_cast<uint16_t>(lookup[pack(s)])});
      }
    }
  }
};

const Tables& tables(int nvars) {
  static std::array<const Tables*, kMaxVars + 1> cache{};
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  if (!cache[nvars]) cache[nvars] = new Tables(nvars);
  return *cache[nvars];
}

}  // namespace

void promote_pair(TaylorScalar& a, TaylorScalar& b) {
  if (a.n_ == b.n_) return;
  if (a.n_ == 0) {
    double v = a.c_[0];
    a = TaylorScalar::constant(b.n_, v);
  } else if (b.n_ == 0) {
    double v = b.c_[0];
    b = TaylorScalar::constant(a.n_, v);
  } else {
    throw std::logic_error("TaylorScalar: mixed variable counts");
  }
}

TaylorScalar TaylorScalar::constant(int nvars, double v) {
  TaylorScalar t;
  t.n_ = nvars;
  t.c_.assign(tables(nvars).alpha.size(), 0.0);
  t.c_[0] = v;
  return t;
}

TaylorScalar TaylorScalar::variable(int nvars, int i, double v) {
  if (i < 0 || i >= nvars) throw std::logic_error("TaylorScalar::variable: index out of range");
  TaylorScalar t = constant(nvars, v);
  const Tables& tb = tables(nvars);
  std::array<uint8_t, kMaxVars> a{};
  a[i] = 1;
  t.c_[tb.lookup[tb.pack(a)]] = 1.0;
  return t;
}

double TaylorScalar::partial(std::span<const int> alpha) const {
  const Tables& tb = tables(n_);
  std::array<uint8_t, kMaxVars> a{};
  int deg = 0;
  for (size_t i = 0; i < alpha.size(); ++i) {
    if (static_cast<int>(i) >= n_) {
      if (alpha[i] != 0) return 0.0;
      continue;
    }
    a[i] = static_cast<uint8_t>(alpha[i]);
    deg += alpha[i];
  }
  if (deg > kOrder) throw std::logic_error("TaylorScalar::partial: order too high");
  int p = tb.lookup[tb.pack(a)];
  return c_[p] * tb.fact[p];
}

double TaylorScalar::partial(int i) const {
  std::array<int, kMaxVars> a{};
  a[i] += 1;
  return partial(std::span<const int>(a.data(), n_));
}

double TaylorScalar::partial(int i, int j) const {
  std::array<int, kMaxVars> a{};
  a[i] += 1;
  a[j] += 1;
  return partial(std::span<const int>(a.data(), n_));
}

double TaylorScalar::partial(int i, int j, int k) const {
  std::array<int, kMaxVars> a{};
  a[i] += 1;
  a[j] += 1;
  a[k] += 1;
  return partial(std::span<const int>(a.data(), n_));
}

TaylorScalar TaylorScalar::derivative(int i) const {
  if (n_ == 0) return TaylorScalar(0.0);
  const Tables& tb = tables(n_);
  TaylorScalar out = constant(n_, 0.0);
  for (size_t p = 0; p < c_.size(); ++p) {
    int q = tb.shift[i][p];
    if (q >= 0) out.c_[p] = c_[q] * (tb.alpha[q][i]);
  }
  return out;
}

TaylorScalar TaylorScalar::operator-() const {
  TaylorScalar t = *this;
  for (double& v : t.c_) v = -v;
  return t;
}

TaylorScalar& TaylorScalar::operator+=(const TaylorScalar& o) {
  TaylorScalar b = o;
  promote_pair(*this, b);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += b.c_[i];
  return *this;
}

TaylorScalar& TaylorScalar::operator-=(const TaylorScalar& o) {
  TaylorScalar b = o;
  promote_pair(*this, b);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= b.c_[i];
  return *this;
}

TaylorScalar operator*(const TaylorScalar& a, const TaylorScalar& b) {
  if (a.n_ == 0 && b.n_ == 0) return TaylorScalar(a.c_[0] * b.c_[0]);
  if (a.n_ == 0) return b * a.c_[0];
  if (b.n_ == 0) return a * b.c_[0];
  if (a.n_ != b.n_) throw std::logic_error("TaylorScalar: mixed variable counts");
  const Tables& tb = tables(a.n_);
  TaylorScalar out = TaylorScalar::constant(a.n_, 0.0);
  const double* ca = a.c_.data();
  const double* cb = b.c_.data();
  double* co = out.c_.data();
  for (const auto& t : tb.mul) co[t.out] += ca[t.a] * cb[t.b];
  return out;
}

TaylorScalar operator*(TaylorScalar a, double b) {
  for (double& v : a.c_) v *= b;
  return a;
}

TaylorScalar operator/(TaylorScalar a, double b) {
  if (b == 0.0) throw DomainError("division by zero");
  for (double& v : a.c_) v /= b;
  return a;
}

TaylorScalar TaylorScalar::compose(const std::array<double, kOrder + 1>& d) const {
  if (n_ == 0) return TaylorScalar(d[0]);
  // Horner on w = *this with the constant part removed; w is "nilpotent"
  // under truncation so five terms are exact.
  TaylorScalar w = *this;
  w.c_[0] = 0.0;
  double fact = 1.0;
  std::array<double, kOrder + 1> a;
  for (int k = 0; k <= kOrder; ++k) {
    if (k > 1) fact *= k;
    a[k] = d[k] / fact;
  }
  TaylorScalar acc = TaylorScalar::constant(n_, a[kOrder]);
  for (int k = kOrder - 1; k >= 0; --k) {
    acc = acc * w;
    acc.c_[0] += a[k];
  }
  return acc;
}

TaylorScalar operator/(const TaylorScalar& a, const TaylorScalar& b) {
  double b0 = b.value();
  if (b0 == 0.0) throw DomainError("division by zero");
  if (b.nvars() == 0) return a / b0;
  std::array<double, kOrder + 1> d;
  double p = 1.0 / b0;
  double sign = 1.0, fact = 1.0;
  for (int k = 0; k <= kOrder; ++k) {
    if (k > 1) fact *= k;
    d[k] = sign * fact * p;  // (1/x)^(k) = (-1)^k k! x^{-k-1}
    p /= b0;
    sign = -sign;
  }
  return a * b.compose(d);
}

TaylorScalar sin(const TaylorScalar& t) {
  double s = std::sin(t.value()), c = std::cos(t.value());
  return t.compose({s, c, -s, -c, s});
}

TaylorScalar cos(const TaylorScalar& t) {
  double s = std::sin(t.value()), c = std::cos(t.value());
  return t.compose({c, -s, -c, s, c});
}

TaylorScalar tan(const TaylorScalar& t) { return sin(t) / cos(t); }

TaylorScalar exp(const TaylorScalar& t) {
  double e = std::exp(t.value());
  return t.compose({e, e, e, e, e});
}

TaylorScalar log(const TaylorScalar& t) {
  double v = t.value();
  if (v <= 0.0) throw DomainError("log of non-positive value");
  double p = 1.0 / v;
  return t.compose({std::log(v), p, -p * p, 2.0 * p * p * p, -6.0 * p * p * p * p});
}

TaylorScalar sqrt(const TaylorScalar& t) {
  double v = t.value();
  if (v < 0.0) throw DomainError("sqrt of negative value");
  if (v == 0.0) throw DomainError("sqrt not differentiable at zero");
  double s = std::sqrt(v);
  double p = 1.0 / v;
  return t.compose({s, 0.5 * s * p, -0.25 * s * p * p, 0.375 * s * p * p * p,
                    -0.9375 * s * p * p * p * p});
}

TaylorScalar sinh(const TaylorScalar& t) {
  double s = std::sinh(t.value()), c = std::cosh(t.value());
  return t.compose({s, c, s, c, s});
}

TaylorScalar cosh(const TaylorScalar& t) {
  double s = std::sinh(t.value()), c = std::cosh(t.value());
  return t.compose({c, s, c, s, c});
}

TaylorScalar tanh(const TaylorScalar& t) { return sinh(t) / cosh(t); }

TaylorScalar powi(const TaylorScalar& base, long long k) {
  if (k < 0) return TaylorScalar(1.0) / powi(base, -k);
  TaylorScalar acc = TaylorScalar::constant(base.nvars() ? base.nvars() : 0, 1.0);
  if (base.nvars() == 0) return TaylorScalar(std::pow(base.value(), static_cast<double>(k)));
  TaylorScalar b = base;
  while (k > 0) {
    if (k & 1) acc = acc * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return acc;
}

TaylorScalar pow(const TaylorScalar& base, const TaylorScalar& expo) {
  double e = expo.value();
  bool const_exp = true;
  if (expo.nvars() != 0) {
    for (size_t i = 1; i < expo.coeffs().size(); ++i) {
      if (expo.coeffs()[i] != 0.0) const_exp = false;
    }
  }
  if (const_exp && e == std::floor(e) && std::abs(e) <= 1e9) {
    return powi(base, static_cast<long long>(e));
  }
  if (base.value() <= 0.0) throw DomainError("pow with non-integer exponent needs positive base");
  return exp(expo * log(base));
}

}  // namespace weylkit
