#include "weylkit/tensor.hpp"

#include <Eigen/Dense>

namespace weylkit {

MetricAt make_metric(const Tensor<double>& g) {
  detail::require(g.rank() == 2 && g.slot(0) == Slot::Lower && g.slot(1) == Slot::Lower,
                  "make_metric: g must be rank-2 covariant");
  const int n = g.dim();
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = g(i, j);
  const double det = m.determinant();
  double scale = 1.0;
  for (int i = 0; i < n; ++i) scale *= m.row(i).lpNorm<Eigen::Infinity>() + 1e-300;
  if (std::abs(det) < 1e-12 * scale)
    throw DegenerateMetricError("metric is singular or nearly singular at this point");
  Eigen::MatrixXd inv = m.inverse();
  MetricAt out;
  out.g = g;
  out.g_inv = Tensor<double>(n, {Slot::Upper, Slot::Upper});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.g_inv(i, j) = inv(i, j);
  out.det_g = det;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m + m.transpose()));
  for (int i = 0; i < n; ++i) (es.eigenvalues()[i] > 0 ? out.n_plus : out.n_minus)++;
  return out;
}

Tensor<double> raise_lower(const Tensor<double>& t, int slot, const MetricAt& m) {
  return flip_slot(t, slot, t.slot(slot) == Slot::Upper ? m.g : m.g_inv);
}

Tensor<double> levi_civita(const MetricAt& m) {
  detail::require(m.g.dim() == 4, "levi_civita: dim must be 4");
  Tensor<double> eps(4, {Slot::Lower, Slot::Lower, Slot::Lower, Slot::Lower});
  const double root = std::sqrt(std::abs(m.det_g));
  int perm[4];
  eps.for_each([&](std::span<const int> idx, size_t flat) {
    for (int i = 0; i < 4; ++i) perm[i] = idx[i];
    // sign of the permutation; 0 on repeats
    int sign = 1;
    for (int i = 0; i < 4 && sign; ++i)
      for (int j = i + 1; j < 4; ++j) {
        if (perm[i] == perm[j]) sign = 0;
        else if (perm[i] > perm[j]) sign = -sign;
      }
    eps[flat] = sign * root;
  });
  return eps;
}

Tensor<TaylorScalar> taylor_inverse(const Tensor<TaylorScalar>& g) {
  const int n = g.dim();
  detail::require(g.rank() == 2, "taylor_inverse: rank must be 2");
  std::vector<std::vector<TaylorScalar>> a(n), inv(n);
  TaylorScalar zero = zero_like(g);
  for (int i = 0; i < n; ++i) {
    a[i].resize(n, zero);
    inv[i].resize(n, zero);
    for (int j = 0; j < n; ++j) a[i][j] = g(i, j);
    inv[i][i] = zero + 1.0;
  }
  // Gauss-Jordan with partial pivoting on the value part
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r][col].value()) > std::abs(a[piv][col].value())) piv = r;
    if (std::abs(a[piv][col].value()) < 1e-300)
      throw DegenerateMetricError("taylor_inverse: singular matrix");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    TaylorScalar d = a[col][col];
    for (int j = 0; j < n; ++j) {
      a[col][j] = a[col][j] / d;
      inv[col][j] = inv[col][j] / d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      TaylorScalar f = a[r][col];
      if (f.value() == 0.0) {
        bool all_zero = true;
        for (double c : f.coeffs())
          if (c != 0.0) all_zero = false;
        if (all_zero) continue;
      }
      for (int j = 0; j < n; ++j) {
        a[r][j] = a[r][j] - f * a[col][j];
        inv[r][j] = inv[r][j] - f * inv[col][j];
      }
    }
  }
  std::vector<Slot> slots = {g.slot(0) == Slot::Lower ? Slot::Upper : Slot::Lower,
                             g.slot(1) == Slot::Lower ? Slot::Upper : Slot::Lower};
  Tensor<TaylorScalar> out(n, slots, zero);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = inv[i][j];
  return out;
}

TaylorScalar taylor_det(const Tensor<TaylorScalar>& m) {
  const int n = m.dim();
  detail::require(m.rank() == 2, "taylor_det: rank must be 2");
  TaylorScalar zero = zero_like(m);
  std::vector<std::vector<TaylorScalar>> a(n);
  for (int i = 0; i < n; ++i) {
    a[i].resize(n, zero);
    for (int j = 0; j < n; ++j) a[i][j] = m(i, j);
  }
  TaylorScalar det = zero + 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r][col].value()) > std::abs(a[piv][col].value())) piv = r;
    if (std::abs(a[piv][col].value()) < 1e-300) return zero;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det = det * a[col][col];
    for (int r = col + 1; r < n; ++r) {
      TaylorScalar f = a[r][col] / a[col][col];
      for (int j = col; j < n; ++j) a[r][j] = a[r][j] - f * a[col][j];
    }
  }
  return det;
}

}  // namespace weylkit
