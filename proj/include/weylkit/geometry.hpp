#ifndef WEYLKIT_GEOMETRY_HPP
#define WEYLKIT_GEOMETRY_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weylkit/expr.hpp"
#include "weylkit/tensor.hpp"

namespace weylkit {

// A chart: coordinate names, parameters, and expression-valued symmetric
// metric components.
struct MetricSpec {
  std::string name;
  int dim = 0;
  std::vector<std::string> coords;
  std::map<std::string, double> params;
  std::vector<Expression> g;  // dim*dim, row-major, symmetric
  std::pair<int, int> expected_signature{0, 0};  // (n_plus, n_minus)
  // Safe per-coordinate sampling box (avoids coordinate singularities).
  std::vector<std::pair<double, double>> sample_ranges;

  const Expression& g_at(int i, int j) const { return g[i * dim + j]; }
};

// All curvature data at one point. Taylor-valued tensors (suffix _t) keep
// enough derivative orders for the second-Bianchi-type identity checks.
struct GeometryAt {
  std::vector<double> point;
  std::vector<std::string> coords;
  std::map<std::string, double> params;

  MetricAt metric;
  Tensor<TaylorScalar> g_t, g_inv_t;
  Tensor<TaylorScalar> gamma_t;          // Gamma^k_{ij}, slots (Upper, Lower, Lower)
  Tensor<TaylorScalar> riemann_mixed_t;  // R_{jkl}{}^m
  Tensor<TaylorScalar> riemann_cov_t;    // R_{jklm}
  Tensor<TaylorScalar> ricci_t;          // R_{ab} = R_{amb}{}^m
  TaylorScalar scalar_t;
  Tensor<TaylorScalar> weyl_mixed_t;  // C_{jkl}{}^m (zero tensor for n = 3)
  Tensor<TaylorScalar> weyl_cov_t;

  Tensor<double> gamma, riemann_mixed, riemann_cov, ricci, weyl_mixed, weyl_cov;
  double scalar = 0;

  int dim() const { return metric.g.dim(); }

  // Taylor environment (coords seeded, params constant) for field evaluation
  // at this point.
  std::map<std::string, TaylorScalar> taylor_env() const;
};

// Full curvature pipeline from a metric spec at a point.
GeometryAt geometry_at(const MetricSpec& spec, std::span<const double> point);

// Same pipeline from an already Taylor-valued metric (used for induced
// hypersurface metrics). coords/params are carried for field evaluation.
GeometryAt geometry_from_taylor_metric(const Tensor<TaylorScalar>& g,
                                       std::vector<double> point,
                                       std::vector<std::string> coords = {},
                                       std::map<std::string, double> params = {});

// Covariant derivative of a Taylor-valued tensor field; the new covariant
// slot comes first: (cov_deriv T)_{i a1..ak} = nabla_i T_{a1..ak}.
Tensor<TaylorScalar> cov_deriv(const Tensor<TaylorScalar>& field, const GeometryAt& G);

// Evaluate expression components into a Taylor tensor at G's point.
Tensor<TaylorScalar> eval_components(std::span<const Expression> comps,
                                     const std::vector<Slot>& slots, const GeometryAt& G);

// Relative residual of the Weyl divergence identity
// -nabla_m C_{abc}{}^m = (n-3)/(n-2) [ nabla_[a R_b]c - (1/(2(n-1))) nabla_[a (g R)_b]c ].
double weyl_divergence_residual(const GeometryAt& G);

// nabla_m C_{abc}{}^m as a Taylor tensor (rank 3).
Tensor<TaylorScalar> weyl_divergence(const GeometryAt& G);

// ||R_{abcm} + R_{bcam} + R_{cabm}|| relative (first Bianchi identity).
double first_bianchi_residual(const GeometryAt& G);

// Max over index pairs of the single traces of the Weyl tensor, relative.
double weyl_trace_residual(const GeometryAt& G);

// ||nabla_a g_bc|| relative to the gross derivative magnitude.
double metric_compatibility_residual(const GeometryAt& G);

// ||Gamma_AD - Gamma_FD|| / (||Gamma|| + 1) against central finite differences.
double christoffel_fd_residual(const MetricSpec& spec, std::span<const double> point,
                               double h = 1e-6);

// Number of algebraically independent curvature scalars, n(n-1)(n-2)(n+3)/12.
long long scalar_count(int n);

// Christoffel symbols by central finite differences of the metric (step h),
// the independent cross-check for the Taylor pipeline.
Tensor<double> christoffel_fd(const MetricSpec& spec, std::span<const double> point,
                              double h = 1e-6);

}  // namespace weylkit

#endif
