#ifndef WEYLKIT_TENSOR_HPP
#define WEYLKIT_TENSOR_HPP

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

#include "weylkit/taylor.hpp"

namespace weylkit {

enum class Slot : uint8_t { Lower, Upper };

struct TensorError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dense rank-k tensor over a single tangent space of dimension dim, with a
// covariant/contravariant flag per slot. Components in row-major index order.
// Scalar is double for point values and TaylorScalar for jet-valued fields.
template <class Scalar>
class Tensor {
 public:
  Tensor() : dim_(0) {}
  Tensor(int dim, std::vector<Slot> slots, Scalar zero = Scalar{})
      : dim_(dim), slots_(std::move(slots)) {
    size_t n = 1;
    for (size_t i = 0; i < slots_.size(); ++i) n *= dim_;
    c_.assign(n, zero);
  }

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(slots_.size()); }
  const std::vector<Slot>& slots() const { return slots_; }
  Slot slot(int i) const { return slots_.at(i); }
  size_t size() const { return c_.size(); }

  Scalar& operator[](size_t flat) { return c_[flat]; }
  const Scalar& operator[](size_t flat) const { return c_[flat]; }

  size_t offset(std::span<const int> idx) const {
    size_t o = 0;
    for (int v : idx) o = o * dim_ + v;
    return o;
  }

  template <class... I>
  Scalar& operator()(I... idx) {
    static_assert((std::is_convertible_v<I, int> && ...));
    const int ii[] = {static_cast<int>(idx)...};
    return c_[offset(std::span<const int>(ii, sizeof...(idx)))];
  }
  template <class... I>
  const Scalar& operator()(I... idx) const {
    const int ii[] = {static_cast<int>(idx)...};
    return c_[offset(std::span<const int>(ii, sizeof...(idx)))];
  }

  // Iterate all multi-indices: f(std::span<const int> idx, size_t flat).
  template <class F>
  void for_each(F&& f) const {
    std::vector<int> idx(rank(), 0);
    for (size_t flat = 0; flat < c_.size(); ++flat) {
      f(std::span<const int>(idx.data(), idx.size()), flat);
      for (int s = rank() - 1; s >= 0; --s) {
        if (++idx[s] < dim_) break;
        idx[s] = 0;
      }
    }
  }

 private:
  int dim_;
  std::vector<Slot> slots_;
  std::vector<Scalar> c_;
};

namespace detail {
inline void require(bool cond, const char* msg) {
  if (!cond) throw TensorError(msg);
}
}  // namespace detail

template <class S>
Tensor<S> operator+(const Tensor<S>& a, const Tensor<S>& b) {
  detail::require(a.dim() == b.dim() && a.slots() == b.slots(), "tensor add: shape mismatch");
  Tensor<S> out = a;
  for (size_t i = 0; i < out.size(); ++i) out[i] = out[i] + b[i];
  return out;
}

template <class S>
Tensor<S> operator-(const Tensor<S>& a, const Tensor<S>& b) {
  detail::require(a.dim() == b.dim() && a.slots() == b.slots(), "tensor sub: shape mismatch");
  Tensor<S> out = a;
  for (size_t i = 0; i < out.size(); ++i) out[i] = out[i] - b[i];
  return out;
}

template <class S, class C>
Tensor<S> operator*(const Tensor<S>& a, C scale) {
  Tensor<S> out = a;
  for (size_t i = 0; i < out.size(); ++i) out[i] = out[i] * scale;
  return out;
}

template <class S, class C>
Tensor<S> operator*(C scale, const Tensor<S>& a) {
  return a * scale;
}

template <class S>
Tensor<S> outer(const Tensor<S>& a, const Tensor<S>& b) {
  detail::require(a.dim() == b.dim(), "outer: dimension mismatch");
  std::vector<Slot> slots = a.slots();
  slots.insert(slots.end(), b.slots().begin(), b.slots().end());
  Tensor<S> out(a.dim(), std::move(slots), zero_like(a, b));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
  return out;
}

inline double zero_like(const Tensor<double>&, const Tensor<double>&) { return 0.0; }
inline TaylorScalar zero_like(const Tensor<TaylorScalar>& a, const Tensor<TaylorScalar>& b) {
  int n = 0;
  for (size_t i = 0; i < a.size() && !n; ++i) n = a[i].nvars();
  for (size_t i = 0; i < b.size() && !n; ++i) n = b[i].nvars();
  return TaylorScalar::constant(n, 0.0);
}
inline double zero_like(const Tensor<double>&) { return 0.0; }
inline TaylorScalar zero_like(const Tensor<TaylorScalar>& a) {
  int n = 0;
  for (size_t i = 0; i < a.size() && !n; ++i) n = a[i].nvars();
  return TaylorScalar::constant(n, 0.0);
}

// Contract two slots of opposite variance; remaining slot order preserved.
template <class S>
Tensor<S> contract(const Tensor<S>& t, int slot_a, int slot_b) {
  const int k = t.rank(), n = t.dim();
  detail::require(slot_a >= 0 && slot_a < k && slot_b >= 0 && slot_b < k && slot_a != slot_b,
                  "contract: slot out of range");
  detail::require(t.slot(slot_a) != t.slot(slot_b), "contract: slots must have opposite variance");
  if (slot_a > slot_b) std::swap(slot_a, slot_b);
  std::vector<Slot> slots;
  for (int s = 0; s < k; ++s)
    if (s != slot_a && s != slot_b) slots.push_back(t.slot(s));
  Tensor<S> out(n, std::move(slots), zero_like(t));
  std::vector<int> idx(k, 0);
  out.for_each([&](std::span<const int> oidx, size_t flat) {
    int p = 0;
    for (int s = 0; s < k; ++s)
      if (s != slot_a && s != slot_b) idx[s] = oidx[p++];
    S acc = zero_like(t);
    for (int m = 0; m < n; ++m) {
      idx[slot_a] = m;
      idx[slot_b] = m;
      acc = acc + t[t.offset(idx)];
    }
    out[flat] = acc;
  });
  return out;
}

// metric2 must be rank-2: g (both Lower) to lower a slot, g_inv (both Upper)
// to raise one. Raising then lowering is the identity.
template <class S>
Tensor<S> flip_slot(const Tensor<S>& t, int slot, const Tensor<S>& metric2) {
  const int k = t.rank(), n = t.dim();
  detail::require(slot >= 0 && slot < k, "flip_slot: slot out of range");
  detail::require(metric2.rank() == 2 && metric2.dim() == n, "flip_slot: bad metric");
  detail::require(metric2.slot(0) != t.slot(slot), "flip_slot: metric variance must oppose slot");
  std::vector<Slot> slots = t.slots();
  slots[slot] = metric2.slot(0);
  Tensor<S> out(n, std::move(slots), zero_like(t));
  std::vector<int> idx(k, 0);
  out.for_each([&](std::span<const int> oidx, size_t flat) {
    for (int s = 0; s < k; ++s) idx[s] = oidx[s];
    S acc = zero_like(t);
    for (int m = 0; m < n; ++m) {
      idx[slot] = m;
      acc = acc + metric2(oidx[slot], m) * t[t.offset(idx)];
    }
    out[flat] = acc;
  });
  return out;
}

// X_{[ab]} = X_{..a..b..} - X_{..b..a..}, the repository-wide bracket convention
// (no factor 1/2). Slots must have equal variance.
template <class S>
Tensor<S> antisymmetrize_pair(const Tensor<S>& t, int slot_a, int slot_b) {
  const int k = t.rank();
  detail::require(slot_a >= 0 && slot_a < k && slot_b >= 0 && slot_b < k && slot_a != slot_b,
                  "antisymmetrize_pair: slot out of range");
  detail::require(t.slot(slot_a) == t.slot(slot_b),
                  "antisymmetrize_pair: slots must have equal variance");
  Tensor<S> out(t.dim(), t.slots(), zero_like(t));
  std::vector<int> idx(k, 0);
  out.for_each([&](std::span<const int> oidx, size_t flat) {
    for (int s = 0; s < k; ++s) idx[s] = oidx[s];
    std::swap(idx[slot_a], idx[slot_b]);
    out[flat] = t[flat] - t[t.offset(idx)];
  });
  return out;
}

inline double frobenius(const Tensor<double>& t) {
  double s = 0;
  for (size_t i = 0; i < t.size(); ++i) s += t[i] * t[i];
  return std::sqrt(s);
}

inline Tensor<double> values(const Tensor<TaylorScalar>& t) {
  Tensor<double> out(t.dim(), t.slots());
  for (size_t i = 0; i < t.size(); ++i) out[i] = t[i].value();
  return out;
}

// Relative residual: ||res|| / (sum of operand norms + tiny). 0/0 guards to 0.
inline double rel_residual(double res_norm, std::initializer_list<double> operand_norms) {
  double d = 1e-300;
  for (double v : operand_norms) d += v;
  return res_norm / d;
}
inline double rel_residual(const Tensor<double>& res, std::initializer_list<double> operand_norms) {
  return rel_residual(frobenius(res), operand_norms);
}

struct DegenerateMetricError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Metric data at a point: g, its inverse, determinant, signature counts.
struct MetricAt {
  Tensor<double> g;      // rank-2, both Lower
  Tensor<double> g_inv;  // rank-2, both Upper
  double det_g = 0;
  int n_plus = 0, n_minus = 0;
};

MetricAt make_metric(const Tensor<double>& g);

Tensor<double> raise_lower(const Tensor<double>& t, int slot, const MetricAt& m);

// Fully covariant Levi-Civita tensor for dim = 4, eps_{0123} = +sqrt|det g|.
Tensor<double> levi_civita(const MetricAt& m);

// In-place Gauss-Jordan inverse of a rank-2 Taylor-valued metric.
Tensor<TaylorScalar> taylor_inverse(const Tensor<TaylorScalar>& g);

// Determinant of a rank-2 Taylor-valued matrix by elimination.
TaylorScalar taylor_det(const Tensor<TaylorScalar>& m);

}  // namespace weylkit

#endif
