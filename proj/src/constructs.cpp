#include "weylkit/constructs.hpp"

#include <Eigen/Dense>
#include <random>

namespace weylkit {

namespace {

// cyclic(b, K)_{ijkl} = b_im K_jkl^m + b_jm K_kil^m + b_km K_ijl^m
Tensor<double> cyclic4(const Tensor<double>& b, const Tensor<double>& K_mixed) {
  const int n = b.dim();
  Tensor<double> bK(n, {Slot::Lower, Slot::Lower, Slot::Lower, Slot::Lower});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double acc = 0;
          for (int m = 0; m < n; ++m) acc += b(i, m) * K_mixed(j, k, l, m);
          bK(i, j, k, l) = acc;
        }
  Tensor<double> out(n, {Slot::Lower, Slot::Lower, Slot::Lower, Slot::Lower});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          out(i, j, k, l) = bK(i, j, k, l) + bK(j, k, i, l) + bK(k, i, j, l);
  return out;
}

double commutator_rel(const Tensor<double>& a, const Tensor<double>& b, const MetricAt& m) {
  const int n = a.dim();
  Tensor<double> am = flip_slot(a, 1, m.g_inv);  // a_i^m
  Tensor<double> prod(n, {Slot::Lower, Slot::Lower});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double acc = 0;
      for (int k = 0; k < n; ++k) acc += am(i, k) * b(k, j);
      prod(i, j) = acc;
    }
  Tensor<double> comm(n, {Slot::Lower, Slot::Lower});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) comm(i, j) = prod(i, j) - prod(j, i);
  const double t = frobenius(prod);
  return rel_residual(comm, {t, t});
}

}  // namespace

Tensor<double> kulkarni_nomizu_riemann(const Tensor<double>& a, const Tensor<double>& b) {
  const int n = a.dim();
  detail::require(a.rank() == 2 && b.rank() == 2 && b.dim() == n,
                  "kulkarni_nomizu_riemann: rank-2 inputs of equal dimension");
  Tensor<double> R(n, {Slot::Lower, Slot::Lower, Slot::Lower, Slot::Lower});
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m)
          R(j, k, l, m) =
              b(l, j) * a(k, m) - b(l, k) * a(j, m) + b(m, k) * a(j, l) - b(m, j) * a(k, l);
  return R;
}

double kn_weyl_condition_residual(const Tensor<double>& a, const Tensor<double>& b,
                                  const MetricAt& m) {
  const int n = m.g.dim();
  if (commutator_rel(a, b, m) > 1e-9)
    throw TensorError("kn_weyl_condition_residual: inputs must commute");
  double tra = 0, trb = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      tra += m.g_inv(i, j) * a(i, j);
      trb += m.g_inv(i, j) * b(i, j);
    }
  Tensor<double> am = flip_slot(a, 0, m.g_inv);  // a^m_l
  Tensor<double> res(n, {Slot::Lower, Slot::Lower});
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      double ba = 0;
      for (int p = 0; p < n; ++p) ba += b(k, p) * am(p, l);
      res(k, l) = trb * a(k, l) + tra * b(k, l) - 2.0 * ba;
    }
  const double s = std::abs(trb) * frobenius(a) + std::abs(tra) * frobenius(b) +
                   2.0 * frobenius(a) * frobenius(b);
  return rel_residual(res, {s});
}

KnPotential solve_kn_potential(const Tensor<double>& b, const MetricAt& m) {
  const int n = m.g.dim();
  detail::require(b.rank() == 2 && b.dim() == n, "solve_kn_potential: b must be rank 2");
  if (frobenius(b) < 1e-12) throw NoPotentialError("solve_kn_potential: b is zero");

  Eigen::MatrixXd gm(n, n), bm(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      gm(i, j) = m.g(i, j);
      bm(i, j) = b(i, j);
    }
  Eigen::MatrixXd B = gm.inverse() * bm;  // b^i_j
  Eigen::EigenSolver<Eigen::MatrixXd> es(B);
  for (int i = 0; i < n; ++i)
    if (std::abs(es.eigenvalues()[i].imag()) > 1e-9 * (1 + std::abs(es.eigenvalues()[i].real())))
      throw NoPotentialError("solve_kn_potential: complex eigenvalues, b not diagonalizable over R");
  Eigen::VectorXd beta = es.eigenvalues().real();
  Eigen::MatrixXd V = es.eigenvectors().real();

  // g-normalize each eigenvector: g(X,X) = +-1.
  std::vector<double> eps(n);
  for (int i = 0; i < n; ++i) {
    double q = V.col(i).dot(gm * V.col(i));
    if (std::abs(q) < 1e-10 * V.col(i).squaredNorm())
      throw NoPotentialError("solve_kn_potential: null eigenvector, no orthonormal eigenbasis");
    V.col(i) /= std::sqrt(std::abs(q));
    eps[i] = q < 0 ? -1.0 : 1.0;
  }

  // (sum_k beta_k) alpha_i + (sum_k alpha_k) beta_i - 2 beta_i alpha_i = 0
  double sum_beta = beta.sum();
  Eigen::MatrixXd M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      M(i, j) = (i == j ? sum_beta - 2.0 * beta(i) : 0.0) + beta(i);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
  const double tol = 1e-10 * std::max(1.0, svd.singularValues()[0]);
  int dim = 0;
  for (int i = 0; i < n; ++i)
    if (svd.singularValues()[i] < tol) ++dim;
  if (dim == 0) throw NoPotentialError("solve_kn_potential: only the zero solution exists");

  Eigen::VectorXd alpha = svd.matrixV().col(n - 1);  // smallest singular value
  // deterministic sign: first nonzero component positive
  for (int i = 0; i < n; ++i) {
    if (std::abs(alpha(i)) > 1e-12) {
      if (alpha(i) < 0) alpha = -alpha;
      break;
    }
  }

  // a_kl = sum_i alpha_i eps_i x_k x_l with x = g X
  KnPotential out;
  out.solution_dim = dim;
  out.a = Tensor<double>(n, {Slot::Lower, Slot::Lower});
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd x = gm * V.col(i);
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) out.a(k, l) += alpha(i) * eps[i] * x(k) * x(l);
  }
  double na = frobenius(out.a);
  if (na < 1e-14) throw NoPotentialError("solve_kn_potential: degenerate solution");
  for (size_t i = 0; i < out.a.size(); ++i) out.a[i] /= na;
  out.condition_residual = kn_weyl_condition_residual(out.a, b, m);
  return out;
}

HypersurfaceGeometry hypersurface_geometry(const EmbeddingSpec& emb,
                                           std::span<const double> point) {
  const int n = emb.dim();
  const int N = emb.ambient_dim;
  detail::require(n >= 2 && (int)emb.maps.size() == N && (int)emb.ambient_eta.size() == N,
                  "hypersurface_geometry: inconsistent embedding spec");
  detail::require((int)point.size() == n, "hypersurface_geometry: bad point dimension");

  std::map<std::string, TaylorScalar> env;
  for (int i = 0; i < n; ++i)
    env[emb.surface_coords[i]] = TaylorScalar::variable(n, i, point[i]);
  for (const auto& [k, v] : emb.params) env[k] = TaylorScalar(v);

  std::vector<TaylorScalar> X;
  X.reserve(N);
  for (int mu = 0; mu < N; ++mu) X.push_back(emb.maps[mu].eval_taylor(env));

  // tangent vectors B^mu_j
  std::vector<std::vector<TaylorScalar>> B(N);
  for (int mu = 0; mu < N; ++mu) {
    B[mu].reserve(n);
    for (int j = 0; j < n; ++j) B[mu].push_back(X[mu].derivative(j));
  }

  // Jacobian rank check at the point
  Eigen::MatrixXd Bv(N, n);
  for (int mu = 0; mu < N; ++mu)
    for (int j = 0; j < n; ++j) Bv(mu, j) = B[mu][j].value();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Bv);
  if (svd.singularValues()[n - 1] < 1e-10 * std::max(1.0, svd.singularValues()[0]))
    throw TensorError("hypersurface_geometry: embedding Jacobian is rank deficient");

  // induced metric
  const TaylorScalar zero = TaylorScalar::constant(n, 0.0);
  Tensor<TaylorScalar> g_t(n, {Slot::Lower, Slot::Lower}, zero);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      TaylorScalar acc = zero;
      for (int mu = 0; mu < N; ++mu) acc += emb.ambient_eta[mu] * B[mu][i] * B[mu][j];
      g_t(i, j) = acc;
    }

  HypersurfaceGeometry out;
  std::vector<double> pt(point.begin(), point.end());
  out.G = geometry_from_taylor_metric(g_t, pt, emb.surface_coords, emb.params);

  // normal covector V_mu by cofactor expansion: V_mu = (-1)^mu det(B minus row mu);
  // it annihilates every tangent vector by construction.
  std::vector<TaylorScalar> V(N, zero);
  for (int mu = 0; mu < N; ++mu) {
    Tensor<TaylorScalar> minor(n, {Slot::Lower, Slot::Lower}, zero);
    int r = 0;
    for (int nu = 0; nu < N; ++nu) {
      if (nu == mu) continue;
      for (int j = 0; j < n; ++j) minor(r, j) = B[nu][j];
      ++r;
    }
    V[mu] = (mu % 2 ? -1.0 : 1.0) * taylor_det(minor);
  }
  // q = eta^{mu mu} V_mu V_mu = N.N before normalization
  TaylorScalar q = zero;
  for (int mu = 0; mu < N; ++mu) q += emb.ambient_eta[mu] * V[mu] * V[mu];
  double qv = q.value();
  double vscale = 0;
  for (int mu = 0; mu < N; ++mu) vscale += V[mu].value() * V[mu].value();
  if (std::abs(qv) < 1e-12 * (vscale + 1e-300))
    throw TensorError("hypersurface_geometry: null normal vector");
  out.normal_sign = qv < 0 ? -1.0 : 1.0;
  TaylorScalar inv_norm = 1.0 / sqrt(out.normal_sign * q);

  // orientation: last ambient component of N positive where nonzero
  double sign = 1.0;
  {
    int pick = N - 1;
    double best = std::abs(emb.ambient_eta[N - 1] * V[N - 1].value());
    if (best < 1e-10 * std::sqrt(vscale)) {
      for (int mu = 0; mu < N; ++mu)
        if (std::abs(V[mu].value()) > best) {
          best = std::abs(V[mu].value());
          pick = mu;
        }
    }
    if (emb.ambient_eta[pick] * V[pick].value() < 0) sign = -1.0;
  }

  out.normal = Tensor<double>(N, {Slot::Upper});
  for (int mu = 0; mu < N; ++mu)
    out.normal[mu] = sign * emb.ambient_eta[mu] * (V[mu] * inv_norm).value();

  // second fundamental form O_ij = eta(N, d_i d_j X)
  out.omega_t = Tensor<TaylorScalar>(n, {Slot::Lower, Slot::Lower}, zero);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      TaylorScalar acc = zero;
      for (int mu = 0; mu < N; ++mu) acc += sign * V[mu] * inv_norm * B[mu][i].derivative(j);
      out.omega_t(i, j) = acc;
      out.omega_t(j, i) = acc;
    }
  out.omega = values(out.omega_t);

  // Gauss residual
  const double eps = out.normal_sign;
  Tensor<double> gauss(n, {Slot::Lower, Slot::Lower, Slot::Lower, Slot::Lower});
  const Tensor<double>& O = out.omega;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l)
        for (int mm = 0; mm < n; ++mm)
          gauss(j, k, l, mm) = eps * (O(j, l) * O(k, mm) - O(j, mm) * O(k, l));
  const double so = frobenius(O);
  out.gauss_residual = rel_residual(out.G.riemann_cov - gauss,
                                    {frobenius(out.G.riemann_cov), so * so});

  // Codazzi residual; scaled by the gross derivative magnitude so that
  // covariantly constant Omega (e.g. spheres) does not give noise/noise.
  Tensor<double> dO = values(cov_deriv(out.omega_t, out.G));
  Tensor<double> cod(n, {Slot::Lower, Slot::Lower, Slot::Lower});
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) cod(k, j, l) = dO(k, j, l) - dO(j, k, l);
  Tensor<double> pO(n, {Slot::Lower, Slot::Lower, Slot::Lower});
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) pO(k, j, l) = out.omega_t(j, l).derivative(k).value();
  const double gross = frobenius(pO) + frobenius(out.G.gamma) * so;
  out.codazzi_residual = rel_residual(cod, {frobenius(dO), frobenius(dO), gross});
  return out;
}

HypersurfaceCompatReport hypersurface_compat_suite(const EmbeddingSpec& emb,
                                                   std::span<const double> point) {
  HypersurfaceGeometry h = hypersurface_geometry(emb, point);
  const GeometryAt& G = h.G;
  const int n = G.dim();
  HypersurfaceCompatReport rep;
  rep.gauss_residual = h.gauss_residual;
  rep.codazzi_residual = h.codazzi_residual;
  rep.omega_weyl_compat = weyl_compat_residual(h.omega, G);
  rep.ricci_weyl_compat = weyl_compat_residual(G.ricci, G);

  // Omega eigenvectors (of O^i_j = g^im O_mj), contravariant
  Eigen::MatrixXd gm(n, n), om(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      gm(i, j) = G.metric.g(i, j);
      om(i, j) = h.omega(i, j);
    }
  Eigen::EigenSolver<Eigen::MatrixXd> es(gm.inverse() * om);
  for (int i = 0; i < n; ++i) {
    if (std::abs(es.eigenvalues()[i].imag()) >
        1e-8 * (1 + std::abs(es.eigenvalues()[i].real())))
      continue;
    Tensor<double> u(n, {Slot::Upper});
    for (int k = 0; k < n; ++k) u[k] = es.eigenvectors().real()(k, i);
    rep.eigvec_compat.push_back(vector_compat_residual(u, G, Which::Riemann));
  }

  // O^2 and the Ricci formula Ric = eps (tr(O) O - O^2) for flat ambient
  Tensor<double> o_mixed = flip_slot(h.omega, 1, G.metric.g_inv);  // O_i^m
  Tensor<double> o2(n, {Slot::Lower, Slot::Lower});
  double tro = 0;
  for (int i = 0; i < n; ++i) tro += o_mixed(i, i);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double acc = 0;
      for (int m = 0; m < n; ++m) acc += o_mixed(i, m) * h.omega(m, j);
      o2(i, j) = acc;
    }
  rep.omega2_riemann_compat = riemann_compat_residual(o2, G);

  Tensor<double> ric_pred(n, {Slot::Lower, Slot::Lower});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      ric_pred(i, j) = h.normal_sign * (tro * h.omega(i, j) - o2(i, j));
  rep.ricci_formula_residual =
      rel_residual(G.ricci - ric_pred, {frobenius(G.ricci), frobenius(ric_pred)});
  return rep;
}

double omega_codazzi_from_gauss(const SymmetricField& omega, double k, double eps,
                                const GeometryAt& G) {
  const int n = G.dim();
  if (n <= 3) throw TensorError("omega_codazzi_from_gauss: needs n > 3");
  Tensor<TaylorScalar> o_t = eval_components(omega.comps, {Slot::Lower, Slot::Lower}, G);
  Tensor<double> O = values(o_t);

  Eigen::MatrixXd om(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) om(i, j) = O(i, j);
  double on = frobenius(O);
  if (std::abs(om.determinant()) < 1e-10 * std::pow(on, n))
    throw TensorError("omega_codazzi_from_gauss: Omega is singular");

  // check the Riemann tensor has the constant-curvature-plus-quadratic form
  const auto& g = G.metric.g;
  Tensor<double> form(n, {Slot::Lower, Slot::Lower, Slot::Lower, Slot::Lower});
  for (int j = 0; j < n; ++j)
    for (int kk = 0; kk < n; ++kk)
      for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m)
          form(j, kk, l, m) = k * (g(j, l) * g(kk, m) - g(j, m) * g(kk, l)) +
                              eps * (O(j, l) * O(kk, m) - O(j, m) * O(kk, l));
  double mismatch = rel_residual(G.riemann_cov - form,
                                 {frobenius(G.riemann_cov), frobenius(form)});
  if (mismatch > 1e-8)
    throw TensorError("omega_codazzi_from_gauss: Riemann tensor does not have the required form");

  Tensor<double> dev = values(codazzi_deviation(omega, G));
  Tensor<double> dO = values(cov_deriv(o_t, G));
  Tensor<double> pO(n, {Slot::Lower, Slot::Lower, Slot::Lower});
  for (int kk = 0; kk < n; ++kk)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) pO(kk, j, l) = o_t(j, l).derivative(kk).value();
  const double gross = frobenius(pO) + frobenius(G.gamma) * on;
  return rel_residual(dev, {frobenius(dO), frobenius(dO), gross});
}

GeodesicMapResult geodesic_map_deform(const GeodesicMapSpec& gm, std::span<const double> point,
                                      unsigned seed, int panel) {
  GeometryAt G = geometry_at(gm.base, point);
  const int n = G.dim();
  auto env = G.taylor_env();
  TaylorScalar psi = gm.psi.eval_taylor(env);

  const TaylorScalar zero = zero_like(G.g_t);
  Tensor<TaylorScalar> X_t(n, {Slot::Lower}, zero);
  for (int l = 0; l < n; ++l) X_t[l] = psi.derivative(l) + zero;

  GeodesicMapResult out;
  out.X_cov = values(X_t);

  // closedness of X = d psi: partial derivatives commute
  double closed = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      closed = std::max(closed, std::abs(X_t[a].derivative(b).value() -
                                         X_t[b].derivative(a).value()));
  out.closedness_residual = rel_residual(closed, {frobenius(out.X_cov), 1.0});

  Tensor<TaylorScalar> dX = cov_deriv(X_t, G);
  out.P = Tensor<double>(n, {Slot::Lower, Slot::Lower});
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      out.P(k, l) = dX(k, l).value() - X_t[k].value() * X_t[l].value();
  double psym = 0;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) psym = std::max(psym, std::abs(out.P(k, l) - out.P(l, k)));
  out.p_symmetry_residual = rel_residual(psym, {frobenius(out.P), 1.0});

  out.riemann_new = G.riemann_mixed;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m)
          out.riemann_new(j, k, l, m) +=
              (j == m ? out.P(k, l) : 0.0) - (k == m ? out.P(j, l) : 0.0);
  out.ricci_new = Tensor<double>(n, {Slot::Lower, Slot::Lower});
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) out.ricci_new(k, l) = G.ricci(k, l) - (n - 1) * out.P(k, l);

  Tensor<double> contr = contract(out.riemann_new, 1, 3);
  out.ricci_trace_residual =
      rel_residual(contr - out.ricci_new, {frobenius(contr), frobenius(out.ricci_new)});

  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int t = 0; t < panel; ++t) {
    Tensor<double> b(n, {Slot::Lower, Slot::Lower});
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double v = dist(rng);
        b(i, j) = v;
        b(j, i) = v;
      }
    Tensor<double> diff = cyclic4(b, out.riemann_new) - cyclic4(b, G.riemann_mixed);
    double s = frobenius(b) * (frobenius(out.riemann_new) + frobenius(G.riemann_mixed));
    out.identity_max = std::max(out.identity_max, rel_residual(diff, {s}));
  }
  return out;
}

WeylTransferResult geodesic_map_weyl_transfer(const GeodesicMapSpec& gm, const Tensor<double>& b,
                                              std::span<const double> point) {
  GeometryAt G = geometry_at(gm.base, point);
  GeodesicMapResult def = geodesic_map_deform(gm, point, 0, 0);
  const int n = G.dim();

  WeylTransferResult out;
  out.commutator_ric = commutator_rel(b, G.ricci, G.metric);
  out.commutator_p = commutator_rel(b, def.P, G.metric);

  // Transported Weyl cyclic sum: the Riemann cyclic sum of the deformed
  // curvature corrected by the deformed-Ricci commutator terms (the same
  // algebraic combination that turns Riemann cyclic sums into Weyl ones),
  // compared against the directly computed Weyl cyclic sum.
  auto weyl_cyclic_from = [&](const Tensor<double>& riem_mixed, const Tensor<double>& ricci) {
    Tensor<double> rcyc = cyclic4(b, riem_mixed);
    Tensor<double> ric_mixed = flip_slot(ricci, 1, G.metric.g_inv);  // Ric_a^m
    Tensor<double> bR(n, {Slot::Lower, Slot::Lower});
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c) {
        double acc = 0;
        for (int m = 0; m < n; ++m) acc += b(a, m) * ric_mixed(c, m);
        bR(a, c) = acc;
      }
    const double f = 1.0 / (n - 2);
    const auto& g = G.metric.g;
    Tensor<double> out4(n, {Slot::Lower, Slot::Lower, Slot::Lower, Slot::Lower});
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            double t = g(k, l) * (bR(i, j) - bR(j, i)) + g(i, l) * (bR(j, k) - bR(k, j)) +
                       g(j, l) * (bR(k, i) - bR(i, k));
            out4(i, j, k, l) = rcyc(i, j, k, l) + f * t;
          }
    return out4;
  };

  Tensor<double> tilde = weyl_cyclic_from(def.riemann_new, def.ricci_new);
  Tensor<double> direct = cyclic4(b, G.weyl_mixed);
  out.eq_residual = rel_residual(tilde - direct, {frobenius(tilde), frobenius(direct),
                                                  frobenius(b) * frobenius(G.weyl_mixed)});
  return out;
}

namespace {

MetricSpec make_metric_spec(std::string name, std::vector<std::string> coords,
                            std::map<std::string, double> params,
                            std::vector<std::string> comps, std::pair<int, int> sig,
                            std::vector<std::pair<double, double>> ranges) {
  MetricSpec s;
  s.name = std::move(name);
  s.dim = static_cast<int>(coords.size());
  s.coords = std::move(coords);
  s.params = std::move(params);
  for (auto& c : comps) s.g.push_back(Expression::parse(c));
  s.expected_signature = sig;
  s.sample_ranges = std::move(ranges);
  return s;
}

EmbeddingSpec sphere_embedding(int n) {
  detail::require(n >= 2 && n <= 5, "sphere_embedding: n must be in [2, 5]");
  EmbeddingSpec e;
  e.name = "sphere_embedding(" + std::to_string(n) + ")";
  e.ambient_dim = n + 1;
  e.ambient_eta.assign(n + 1, 1.0);
  e.params = {{"r", 1.0}};
  for (int i = 1; i <= n; ++i) e.surface_coords.push_back("u" + std::to_string(i));
  // X^0 = r cos u1, X^k = r sin u1 .. sin uk cos u(k+1), X^n = r sin u1 .. sin un
  for (int mu = 0; mu <= n; ++mu) {
    std::string s = "r";
    for (int i = 1; i <= std::min(mu, n); ++i) s += "*sin(u" + std::to_string(i) + ")";
    if (mu < n) s += "*cos(u" + std::to_string(mu + 1) + ")";
    e.maps.push_back(Expression::parse(s));
  }
  for (int i = 1; i < n; ++i) e.sample_ranges.push_back({0.5, 2.6});
  e.sample_ranges.push_back({0.2, 3.0});
  return e;
}

EmbeddingSpec hyperboloid_embedding() {
  EmbeddingSpec e;
  e.name = "hyperboloid_embedding";
  e.ambient_dim = 5;
  e.ambient_eta = {-1.0, 1.0, 1.0, 1.0, 1.0};
  e.surface_coords = {"tau", "chi", "theta", "phi"};
  e.params = {{"r", 1.0}};
  // unit spacelike hyperboloid -X0^2 + X1^2 + .. + X4^2 = r^2
  e.maps.push_back(Expression::parse("r*sinh(tau)"));
  e.maps.push_back(Expression::parse("r*cosh(tau)*cos(chi)"));
  e.maps.push_back(Expression::parse("r*cosh(tau)*sin(chi)*cos(theta)"));
  e.maps.push_back(Expression::parse("r*cosh(tau)*sin(chi)*sin(theta)*cos(phi)"));
  e.maps.push_back(Expression::parse("r*cosh(tau)*sin(chi)*sin(theta)*sin(phi)"));
  e.sample_ranges = {{-0.8, 0.8}, {0.5, 2.6}, {0.5, 2.6}, {0.2, 3.0}};
  return e;
}

}  // namespace

CatalogEntry catalog(const std::string& name) {
  CatalogEntry out;
  if (name == "minkowski") {
    out.metric = make_metric_spec(
        "minkowski", {"t", "x", "y", "z"}, {},
        {"-1", "0", "0", "0", "0", "1", "0", "0", "0", "0", "1", "0", "0", "0", "0", "1"},
        {3, 1}, {{-1, 1}, {-1, 1}, {-1, 1}, {-1, 1}});
  } else if (name == "schwarzschild") {
    out.metric = make_metric_spec(
        "schwarzschild", {"t", "r", "theta", "phi"}, {{"M", 1.0}},
        {"-(1-2*M/r)", "0", "0", "0",
         "0", "1/(1-2*M/r)", "0", "0",
         "0", "0", "r^2", "0",
         "0", "0", "0", "r^2*sin(theta)^2"},
        {3, 1}, {{-1, 1}, {3.0, 8.0}, {0.6, 2.4}, {0.2, 3.0}});
  } else if (name == "de_sitter_static") {
    out.metric = make_metric_spec(
        "de_sitter_static", {"t", "r", "theta", "phi"}, {{"L", 1.0}},
        {"-(1-r^2/L^2)", "0", "0", "0",
         "0", "1/(1-r^2/L^2)", "0", "0",
         "0", "0", "r^2", "0",
         "0", "0", "0", "r^2*sin(theta)^2"},
        {3, 1}, {{-1, 1}, {0.15, 0.6}, {0.6, 2.4}, {0.2, 3.0}});
  } else if (name == "godel") {
    out.metric = make_metric_spec(
        "godel", {"t", "x", "y", "z"}, {{"a", 1.0}},
        {"-a^2", "0", "0", "-a^2*exp(x)",
         "0", "a^2", "0", "0",
         "0", "0", "a^2", "0",
         "-a^2*exp(x)", "0", "0", "-a^2*exp(2*x)/2"},
        {3, 1}, {{-1, 1}, {-0.5, 0.5}, {-1, 1}, {-1, 1}});
  } else if (name == "pp_wave") {
    out.metric = make_metric_spec(
        "pp_wave", {"u", "v", "x", "y"}, {{"A", 0.5}},
        {"A*(x^2-y^2)", "1", "0", "0",
         "1", "0", "0", "0",
         "0", "0", "1", "0",
         "0", "0", "0", "1"},
        {3, 1}, {{-1, 1}, {-1, 1}, {-1, 1}, {-1, 1}});
  } else if (name == "frw_flat") {
    out.metric = make_metric_spec(
        "frw_flat", {"t", "x", "y", "z"}, {},
        {"-1", "0", "0", "0", "0", "t^2", "0", "0", "0", "0", "t^2", "0", "0", "0", "0", "t^2"},
        {3, 1}, {{0.5, 2.0}, {-1, 1}, {-1, 1}, {-1, 1}});
  } else if (name == "hyperboloid_embedding") {
    out.embedding = hyperboloid_embedding();
  } else if (name.rfind("sphere_embedding", 0) == 0) {
    int n = 4;
    if (name.size() > 16) {
      if (name.size() < 19 || name[16] != '(' || name.back() != ')')
        throw UnknownCatalogError("unknown catalog name: " + name);
      try {
        n = std::stoi(name.substr(17, name.size() - 18));
      } catch (const std::exception&) {
        throw UnknownCatalogError("unknown catalog name: " + name);
      }
    }
    if (n < 2 || n > 5) throw UnknownCatalogError("sphere_embedding: n must be in [2, 5]");
    out.embedding = sphere_embedding(n);
  } else {
    throw UnknownCatalogError("unknown catalog name: " + name);
  }
  return out;
}

std::vector<std::string> catalog_names() {
  return {"minkowski",  "schwarzschild",        "de_sitter_static",
          "godel",      "pp_wave",              "frw_flat",
          "sphere_embedding(4)", "hyperboloid_embedding"};
}

}  // namespace weylkit
