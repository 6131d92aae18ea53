#include "weylkit/geometry.hpp"

#include <cmath>

namespace weylkit {

std::map<std::string, TaylorScalar> GeometryAt::taylor_env() const {
  std::map<std::string, TaylorScalar> env;
  const int n = static_cast<int>(coords.size());
  for (int i = 0; i < n; ++i)
    env[coords[i]] = TaylorScalar::variable(n, i, point[i]);
  for (const auto& [k, v] : params) env[k] = TaylorScalar(v);
  return env;
}

namespace {

Tensor<TaylorScalar> eval_metric(const MetricSpec& spec, std::span<const double> point) {
  const int n = spec.dim;
  std::map<std::string, TaylorScalar> env;
  for (int i = 0; i < n; ++i)
    env[spec.coords[i]] = TaylorScalar::variable(n, i, point[i]);
  for (const auto& [k, v] : spec.params) env[k] = TaylorScalar(v);
  Tensor<TaylorScalar> g(n, {Slot::Lower, Slot::Lower}, TaylorScalar::constant(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = spec.g_at(i, j).eval_taylor(env);
  return g;
}

}  // namespace

GeometryAt geometry_from_taylor_metric(const Tensor<TaylorScalar>& g, std::vector<double> point,
                                       std::vector<std::string> coords,
                                       std::map<std::string, double> params) {
  const int n = g.dim();
  GeometryAt G;
  G.point = std::move(point);
  G.coords = std::move(coords);
  G.params = std::move(params);
  G.g_t = g;
  G.metric = make_metric(values(g));
  G.g_inv_t = taylor_inverse(g);

  const TaylorScalar zero = zero_like(g);

  // Gamma^k_{ij} = (1/2) g^{km} (d_i g_{jm} + d_j g_{im} - d_m g_{ij})
  Tensor<TaylorScalar> dg(n, {Slot::Lower, Slot::Lower, Slot::Lower}, zero);  // d_i g_{jk}
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) dg(i, j, k) = g(j, k).derivative(i);
  Tensor<TaylorScalar> gamma(n, {Slot::Upper, Slot::Lower, Slot::Lower}, zero);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        TaylorScalar acc = zero;
        for (int m = 0; m < n; ++m)
          acc += G.g_inv_t(k, m) * (dg(i, j, m) + dg(j, i, m) - dg(m, i, j));
        acc = acc * 0.5;
        gamma(k, i, j) = acc;
        gamma(k, j, i) = acc;
      }
  G.gamma_t = gamma;

  // R_{abc}{}^m = d_b Gamma^m_{ac} - d_a Gamma^m_{bc}
  //              + Gamma^e_{ac} Gamma^m_{be} - Gamma^e_{bc} Gamma^m_{ae}
  // (fixed by [nabla_a, nabla_b] u_c = R_{abc}{}^m u_m)
  Tensor<TaylorScalar> riem(n, {Slot::Lower, Slot::Lower, Slot::Lower, Slot::Upper}, zero);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int m = 0; m < n; ++m) {
          TaylorScalar acc = gamma(m, a, c).derivative(b) - gamma(m, b, c).derivative(a);
          for (int e = 0; e < n; ++e)
            acc += gamma(e, a, c) * gamma(m, b, e) - gamma(e, b, c) * gamma(m, a, e);
          riem(a, b, c, m) = acc;
          riem(b, a, c, m) = -acc;
        }
  G.riemann_mixed_t = riem;
  G.riemann_cov_t = flip_slot(riem, 3, g);

  // R_{ab} = R_{amb}{}^m
  G.ricci_t = contract(riem, 1, 3);
  TaylorScalar scal = zero;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) scal += G.g_inv_t(a, b) * G.ricci_t(a, b);
  G.scalar_t = scal;

  // C_{jkl}{}^m = R_{jkl}{}^m + (1/(n-2)) (delta_[j^m R_k]l + R_[j^m g_k]l)
  //              - (R/((n-1)(n-2))) delta_[j^m g_k]l,  brackets without 1/2
  Tensor<TaylorScalar> ric_mixed = flip_slot(G.ricci_t, 1, G.g_inv_t);  // R_a{}^m
  Tensor<TaylorScalar> weyl(n, {Slot::Lower, Slot::Lower, Slot::Lower, Slot::Upper}, zero);
  if (n >= 4) {
    const double c1 = 1.0 / (n - 2);
    const double c2 = 1.0 / ((n - 1) * (n - 2));
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = 0; l < n; ++l)
          for (int m = 0; m < n; ++m) {
            TaylorScalar acc = riem(j, k, l, m);
            TaylorScalar term = zero;
            if (j == m) term += G.ricci_t(k, l);
            if (k == m) term -= G.ricci_t(j, l);
            term += ric_mixed(j, m) * g(k, l) - ric_mixed(k, m) * g(j, l);
            acc += term * c1;
            if (j == m) acc -= scal * g(k, l) * c2;
            if (k == m) acc += scal * g(j, l) * c2;
            weyl(j, k, l, m) = acc;
            weyl(k, j, l, m) = -acc;
          }
  }
  G.weyl_mixed_t = weyl;
  G.weyl_cov_t = flip_slot(weyl, 3, g);

  // Curvature pieces built by cancellation (Ricci in vacuum, Weyl on
  // conformally flat metrics) come out as roundoff noise relative to the
  // Riemann tensor; snap them to exact zero so downstream residuals do not
  // degenerate into noise/noise quotients.
  // Only the value and first-derivative coefficients are examined: higher
  // Taylor orders of curvature tensors carry truncation garbage.
  auto low_norm_s = [n](const TaylorScalar& t) {
    double s = t.value() * t.value();
    for (int i = 0; i < n; ++i) {
      double d = t.derivative(i).value();
      s += d * d;
    }
    return s;
  };
  auto low_norm = [&](const Tensor<TaylorScalar>& t) {
    double s = 0;
    for (size_t i = 0; i < t.size(); ++i) s += low_norm_s(t[i]);
    return std::sqrt(s);
  };
  auto zero_out = [&](Tensor<TaylorScalar>& t) {
    for (size_t i = 0; i < t.size(); ++i) t[i] = zero;
  };
  const double curv_scale = low_norm(G.riemann_mixed_t) + low_norm(G.riemann_cov_t);
  if (low_norm(G.ricci_t) < 1e-10 * curv_scale) {
    zero_out(G.ricci_t);
    G.scalar_t = zero;
  }
  if (std::sqrt(low_norm_s(G.scalar_t)) < 1e-10 * (low_norm(G.ricci_t) + curv_scale))
    G.scalar_t = zero;
  if (n >= 4 && low_norm(G.weyl_mixed_t) + low_norm(G.weyl_cov_t) < 1e-10 * curv_scale) {
    zero_out(G.weyl_mixed_t);
    zero_out(G.weyl_cov_t);
  }

  G.gamma = values(G.gamma_t);
  G.riemann_mixed = values(G.riemann_mixed_t);
  G.riemann_cov = values(G.riemann_cov_t);
  G.ricci = values(G.ricci_t);
  G.scalar = G.scalar_t.value();
  G.weyl_mixed = values(G.weyl_mixed_t);
  G.weyl_cov = values(G.weyl_cov_t);
  return G;
}

GeometryAt geometry_at(const MetricSpec& spec, std::span<const double> point) {
  if (static_cast<int>(point.size()) != spec.dim)
    throw std::invalid_argument("geometry_at: point dimension mismatch");
  Tensor<TaylorScalar> g = eval_metric(spec, point);
  return geometry_from_taylor_metric(g, std::vector<double>(point.begin(), point.end()),
                                     spec.coords, spec.params);
}

Tensor<TaylorScalar> cov_deriv(const Tensor<TaylorScalar>& field, const GeometryAt& G) {
  const int n = field.dim();
  const int k = field.rank();
  const TaylorScalar zero = zero_like(field);
  std::vector<Slot> slots;
  slots.push_back(Slot::Lower);
  slots.insert(slots.end(), field.slots().begin(), field.slots().end());
  Tensor<TaylorScalar> out(n, std::move(slots), zero);
  std::vector<int> idx(k, 0);
  out.for_each([&](std::span<const int> oidx, size_t flat) {
    const int i = oidx[0];
    for (int s = 0; s < k; ++s) idx[s] = oidx[s + 1];
    TaylorScalar acc = field[field.offset(idx)].derivative(i);
    for (int s = 0; s < k; ++s) {
      const int a = idx[s];
      for (int p = 0; p < n; ++p) {
        idx[s] = p;
        const TaylorScalar& comp = field[field.offset(idx)];
        if (field.slot(s) == Slot::Lower)
          acc -= G.gamma_t(p, i, a) * comp;
        else
          acc += G.gamma_t(a, i, p) * comp;
      }
      idx[s] = a;
    }
    out[flat] = acc;
  });
  return out;
}

Tensor<TaylorScalar> eval_components(std::span<const Expression> comps,
                                     const std::vector<Slot>& slots, const GeometryAt& G) {
  Tensor<TaylorScalar> out(G.dim(), slots, TaylorScalar::constant(G.dim(), 0.0));
  detail::require(comps.size() == out.size(), "eval_components: component count mismatch");
  auto env = G.taylor_env();
  for (size_t i = 0; i < out.size(); ++i) out[i] = comps[i].eval_taylor(env);
  return out;
}

Tensor<TaylorScalar> weyl_divergence(const GeometryAt& G) {
  // V_{abc} = nabla_m C_{abc}{}^m, assembled directly to avoid the rank-5
  // intermediate.
  const int n = G.dim();
  const TaylorScalar zero = zero_like(G.g_t);
  Tensor<TaylorScalar> v(n, {Slot::Lower, Slot::Lower, Slot::Lower}, zero);
  const auto& C = G.weyl_mixed_t;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        TaylorScalar acc = zero;
        for (int m = 0; m < n; ++m) {
          acc += C(a, b, c, m).derivative(m);
          for (int p = 0; p < n; ++p) {
            acc -= G.gamma_t(p, m, a) * C(p, b, c, m);
            acc -= G.gamma_t(p, m, b) * C(a, p, c, m);
            acc -= G.gamma_t(p, m, c) * C(a, b, p, m);
            acc += G.gamma_t(m, m, p) * C(a, b, c, p);
          }
        }
        v(a, b, c) = acc;
      }
  return v;
}

double weyl_divergence_residual(const GeometryAt& G) {
  const int n = G.dim();
  if (n < 4) return 0.0;
  Tensor<double> lhs = values(weyl_divergence(G)) * (-1.0);
  // rhs = (n-3)/(n-2) [ nabla_a R_bc - nabla_b R_ac
  //        - (1/(2(n-1))) (g_bc nabla_a R - g_ac nabla_b R) ]
  Tensor<TaylorScalar> dric = cov_deriv(G.ricci_t, G);
  const TaylorScalar zero = zero_like(G.g_t);
  Tensor<TaylorScalar> dR(n, {Slot::Lower}, zero);
  for (int i = 0; i < n; ++i) dR[i] = G.scalar_t.derivative(i);
  Tensor<double> rhs(n, {Slot::Lower, Slot::Lower, Slot::Lower});
  const double f = double(n - 3) / (n - 2);
  const double h = 1.0 / (2.0 * (n - 1));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        double term = dric(a, b, c).value() - dric(b, a, c).value();
        term -= h * (G.metric.g(b, c) * dR[a].value() - G.metric.g(a, c) * dR[b].value());
        rhs(a, b, c) = f * term;
      }
  // Scale by the full gradient of C so that exactly-divergence-free cases
  // (e.g. vacuum) do not reduce to a noise/noise quotient.
  const double scale = frobenius(values(cov_deriv(G.weyl_mixed_t, G)));
  // For covariantly-constant Ricci (constant curvature) both sides vanish;
  // the ungrouped derivative magnitude keeps the quotient meaningful.
  const double gross = frobenius(G.gamma) * (frobenius(G.ricci) + frobenius(G.weyl_mixed));
  return rel_residual(lhs - rhs, {frobenius(lhs), frobenius(rhs), scale, gross});
}

double first_bianchi_residual(const GeometryAt& G) {
  const int n = G.dim();
  const auto& R = G.riemann_cov;
  Tensor<double> res(n, {Slot::Lower, Slot::Lower, Slot::Lower, Slot::Lower});
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int m = 0; m < n; ++m)
          res(a, b, c, m) = R(a, b, c, m) + R(b, c, a, m) + R(c, a, b, m);
  const double t = frobenius(R);
  return rel_residual(res, {t, t, t});
}

double weyl_trace_residual(const GeometryAt& G) {
  const int n = G.dim();
  if (n < 4) return 0.0;
  const auto& C = G.weyl_cov;
  const auto& gi = G.metric.g_inv;
  double worst = 0;
  // trace over every index pair
  for (int p = 0; p < 4; ++p)
    for (int q = p + 1; q < 4; ++q) {
      double s = 0;
      std::vector<int> idx(4, 0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          // free indices i, j occupy the remaining slots
          int free_slots[2], fp = 0;
          for (int s2 = 0; s2 < 4; ++s2)
            if (s2 != p && s2 != q) free_slots[fp++] = s2;
          idx[free_slots[0]] = i;
          idx[free_slots[1]] = j;
          double acc = 0;
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
              idx[p] = a;
              idx[q] = b;
              acc += gi(a, b) * C[C.offset(idx)];
            }
          s += acc * acc;
        }
      worst = std::max(worst, std::sqrt(s));
    }
  const double cn = frobenius(C);
  double gscale = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gscale = std::max(gscale, std::abs(gi(i, j)));
  return rel_residual(worst, {cn * gscale * n, frobenius(G.riemann_cov) * gscale * n});
}

double metric_compatibility_residual(const GeometryAt& G) {
  const int n = G.dim();
  Tensor<double> dg = values(cov_deriv(G.g_t, G));
  double gross = frobenius(G.gamma) * frobenius(G.metric.g);
  Tensor<double> pg(n, {Slot::Lower, Slot::Lower, Slot::Lower});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) pg(i, j, k) = G.g_t(j, k).derivative(i).value();
  return rel_residual(dg, {frobenius(pg), gross, 1e-6});
}

double christoffel_fd_residual(const MetricSpec& spec, std::span<const double> point, double h) {
  GeometryAt G = geometry_at(spec, point);
  Tensor<double> fd = christoffel_fd(spec, point, h);
  return rel_residual(G.gamma - fd, {frobenius(G.gamma), 1.0});
}

long long scalar_count(int n) {
  if (n < 3) throw std::invalid_argument("scalar_count: n must be >= 3");
  return static_cast<long long>(n) * (n - 1) * (n - 2) * (n + 3) / 12;
}

Tensor<double> christoffel_fd(const MetricSpec& spec, std::span<const double> point, double h) {
  const int n = spec.dim;
  std::map<std::string, double> env(spec.params.begin(), spec.params.end());
  auto metric_at = [&](std::span<const double> p) {
    Tensor<double> g(n, {Slot::Lower, Slot::Lower});
    for (int i = 0; i < n; ++i) env[spec.coords[i]] = p[i];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = spec.g_at(i, j).eval_real(env);
    return g;
  };
  Tensor<double> g0 = metric_at(point);
  MetricAt m = make_metric(g0);
  Tensor<double> dg(n, {Slot::Lower, Slot::Lower, Slot::Lower});
  std::vector<double> p(point.begin(), point.end());
  for (int i = 0; i < n; ++i) {
    p[i] = point[i] + h;
    Tensor<double> gp = metric_at(p);
    p[i] = point[i] - h;
    Tensor<double> gm = metric_at(p);
    p[i] = point[i];
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) dg(i, j, k) = (gp(j, k) - gm(j, k)) / (2 * h);
  }
  Tensor<double> gamma(n, {Slot::Upper, Slot::Lower, Slot::Lower});
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double acc = 0;
        for (int q = 0; q < n; ++q)
          acc += m.g_inv(k, q) * (dg(i, j, q) + dg(j, i, q) - dg(q, i, j));
        gamma(k, i, j) = 0.5 * acc;
      }
  return gamma;
}

}  // namespace weylkit
