#include "weylkit/compat.hpp"

#include <Eigen/Dense>

namespace weylkit {

namespace {

// b_im K_jkl^m with output index order (i, j, k, l).
Tensor<double> b_contract_k(const Tensor<double>& b, const Tensor<double>& K_mixed) {
  const int n = b.dim();
  Tensor<double> out(n, {Slot::Lower, Slot::Lower, Slot::Lower, Slot::Lower});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double acc = 0;
          for (int m = 0; m < n; ++m) acc += b(i, m) * K_mixed(j, k, l, m);
          out(i, j, k, l) = acc;
        }
  return out;
}

Tensor<double> cyclic_compat_tensor(const Tensor<double>& b, const Tensor<double>& K_mixed) {
  const int n = b.dim();
  Tensor<double> bK = b_contract_k(b, K_mixed);
  Tensor<double> res(n, {Slot::Lower, Slot::Lower, Slot::Lower, Slot::Lower});
  for (int a = 0; a < n; ++a)
    for (int bb = 0; bb < n; ++bb)
      for (int c = 0; c < n; ++c)
        for (int l = 0; l < n; ++l)
          res(a, bb, c, l) = bK(a, bb, c, l) + bK(bb, c, a, l) + bK(c, a, bb, l);
  return res;
}

double compat_residual(const Tensor<double>& b, const Tensor<double>& K_mixed) {
  Tensor<double> bK = b_contract_k(b, K_mixed);
  const double t = frobenius(bK);
  const double gross = frobenius(b) * frobenius(K_mixed);
  return rel_residual(frobenius(cyclic_compat_tensor(b, K_mixed)), {t, t, t, gross});
}

const Tensor<double>& pick_mixed(const GeometryAt& G, Which w) {
  return w == Which::Riemann ? G.riemann_mixed : G.weyl_mixed;
}
const Tensor<double>& pick_cov(const GeometryAt& G, Which w) {
  return w == Which::Riemann ? G.riemann_cov : G.weyl_cov;
}

Tensor<double> lower_vector(const Tensor<double>& u_contra, const MetricAt& m) {
  return raise_lower(u_contra, 0, m);
}

double euclid(const Tensor<double>& t) { return frobenius(t); }

}  // namespace

SymmetricField constant_symmetric(const Tensor<double>& b, std::string description) {
  SymmetricField f;
  f.description = std::move(description);
  for (size_t i = 0; i < b.size(); ++i) f.comps.push_back(Expression::number(b[i]));
  return f;
}

VectorField constant_vector(const Tensor<double>& u) {
  VectorField f;
  for (size_t i = 0; i < u.size(); ++i) f.comps.push_back(Expression::number(u[i]));
  return f;
}

Tensor<double> eval_symmetric(const SymmetricField& b, const GeometryAt& G) {
  return values(eval_components(b.comps, {Slot::Lower, Slot::Lower}, G));
}

Tensor<double> eval_vector(const VectorField& u, const GeometryAt& G) {
  return values(eval_components(u.comps, {Slot::Upper}, G));
}

double norm2(const Tensor<double>& u_contra, const MetricAt& m) {
  const int n = m.g.dim();
  double s = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) s += m.g(a, b) * u_contra[a] * u_contra[b];
  return s;
}

CausalCharacter causal_character(const Tensor<double>& u_contra, const MetricAt& m) {
  double u2 = norm2(u_contra, m);
  double e = euclid(u_contra);
  if (std::abs(u2) < 1e-10 * e * e) return CausalCharacter::Null;
  return u2 < 0 ? CausalCharacter::Timelike : CausalCharacter::Spacelike;
}

const char* to_string(PermClass c) {
  switch (c) {
    case PermClass::Permutable: return "permutable";
    case PermClass::Skew: return "skew";
    case PermClass::Annihilating: return "annihilating";
    case PermClass::None: return "none";
  }
  return "?";
}

double riemann_compat_residual(const Tensor<double>& b, const GeometryAt& G) {
  return compat_residual(b, G.riemann_mixed);
}
double weyl_compat_residual(const Tensor<double>& b, const GeometryAt& G) {
  return compat_residual(b, G.weyl_mixed);
}
double riemann_compat_residual(const SymmetricField& b, const GeometryAt& G) {
  return riemann_compat_residual(eval_symmetric(b, G), G);
}
double weyl_compat_residual(const SymmetricField& b, const GeometryAt& G) {
  return weyl_compat_residual(eval_symmetric(b, G), G);
}

double ricci_commutator_norm(const Tensor<double>& b, const GeometryAt& G) {
  const int n = G.dim();
  Tensor<double> ric_mixed = raise_lower(G.ricci, 1, G.metric);  // R_a^m
  Tensor<double> bR(n, {Slot::Lower, Slot::Lower});
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c) {
      double acc = 0;
      for (int m = 0; m < n; ++m) acc += b(a, m) * ric_mixed(c, m);
      bR(a, c) = acc;
    }
  Tensor<double> comm(n, {Slot::Lower, Slot::Lower});
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c) comm(a, c) = bR(a, c) - bR(c, a);
  const double t = frobenius(bR);
  return rel_residual(comm, {t, t, frobenius(b) * frobenius(ric_mixed)});
}

double bridge_identity_residual(const Tensor<double>& b, const GeometryAt& G) {
  const int n = G.dim();
  Tensor<double> lhs = cyclic_compat_tensor(b, G.weyl_mixed);
  Tensor<double> rcyc = cyclic_compat_tensor(b, G.riemann_mixed);
  Tensor<double> ric_mixed = raise_lower(G.ricci, 1, G.metric);
  Tensor<double> bR(n, {Slot::Lower, Slot::Lower});
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c) {
      double acc = 0;
      for (int m = 0; m < n; ++m) acc += b(a, m) * ric_mixed(c, m);
      bR(a, c) = acc;
    }
  Tensor<double> rhs(n, {Slot::Lower, Slot::Lower, Slot::Lower, Slot::Lower});
  const double f = 1.0 / (n - 2);
  const auto& g = G.metric.g;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double t = g(k, l) * (bR(i, j) - bR(j, i)) + g(i, l) * (bR(j, k) - bR(k, j)) +
                     g(j, l) * (bR(k, i) - bR(i, k));
          rhs(i, j, k, l) = rcyc(i, j, k, l) + f * t;
        }
  double gross = frobenius(b) * frobenius(G.riemann_mixed);
  return rel_residual(lhs - rhs, {frobenius(lhs), frobenius(rhs), gross});
}

Tensor<TaylorScalar> codazzi_deviation(const SymmetricField& b, const GeometryAt& G) {
  Tensor<TaylorScalar> bt = eval_components(b.comps, {Slot::Lower, Slot::Lower}, G);
  Tensor<TaylorScalar> db = cov_deriv(bt, G);
  const int n = G.dim();
  Tensor<TaylorScalar> out(n, {Slot::Lower, Slot::Lower, Slot::Lower}, zero_like(db));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) out(i, j, k) = db(i, j, k) - db(j, i, k);
  return out;
}

namespace {

// nabla_m K_abc^m for a rank-4 (lll,u) Taylor tensor.
Tensor<TaylorScalar> divergence_last(const Tensor<TaylorScalar>& K, const GeometryAt& G) {
  const int n = G.dim();
  const TaylorScalar zero = zero_like(K);
  Tensor<TaylorScalar> v(n, {Slot::Lower, Slot::Lower, Slot::Lower}, zero);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        TaylorScalar acc = zero;
        for (int m = 0; m < n; ++m) {
          acc += K(a, b, c, m).derivative(m);
          for (int p = 0; p < n; ++p) {
            acc -= G.gamma_t(p, m, a) * K(p, b, c, m);
            acc -= G.gamma_t(p, m, b) * K(a, p, c, m);
            acc -= G.gamma_t(p, m, c) * K(a, b, p, m);
            acc += G.gamma_t(m, m, p) * K(a, b, c, p);
          }
        }
        v(a, b, c) = acc;
      }
  return v;
}

// Residual of cyclic(nabla_a nabla_m K_bcd^m) + cyclic(S_am K_bcd^m) = 0.
double second_divergence_identity(const Tensor<TaylorScalar>& K_mixed, const Tensor<double>& S,
                                  const GeometryAt& G) {
  const int n = G.dim();
  Tensor<TaylorScalar> v = divergence_last(K_mixed, G);
  Tensor<double> w = values(cov_deriv(v, G));  // w(a,b,c,d) = nabla_a v_bcd
  Tensor<double> K = values(K_mixed);
  Tensor<double> SK(n, {Slot::Lower, Slot::Lower, Slot::Lower, Slot::Lower});
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double acc = 0;
          for (int m = 0; m < n; ++m) acc += S(a, m) * K(b, c, d, m);
          SK(a, b, c, d) = acc;
        }
  Tensor<double> res(n, {Slot::Lower, Slot::Lower, Slot::Lower, Slot::Lower});
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          res(a, b, c, d) = w(a, b, c, d) + w(b, c, a, d) + w(c, a, b, d) + SK(a, b, c, d) +
                            SK(b, c, a, d) + SK(c, a, b, d);
  const double tw = frobenius(w), ts = frobenius(SK);
  // Scale by the full second covariant derivative of K so divergence-free
  // cases (e.g. vacuum) do not reduce to a noise/noise quotient.
  const double scale = frobenius(values(cov_deriv(cov_deriv(K_mixed, G), G)));
  return rel_residual(res, {tw, tw, tw, ts, ts, ts, scale});
}

}  // namespace

double lovelock_residual(const GeometryAt& G) {
  return second_divergence_identity(G.riemann_mixed_t, G.ricci, G);
}

double dpi_residual(const GeometryAt& G) {
  const int n = G.dim();
  if (n < 4) return 0.0;
  // 8 pi T = Ric - (R/2) g; the factor -8pi (n-3)/(n-2) combines with it so
  // that S_am = (n-3)/(n-2) (Ric - (R/2) g)_am plays the Ricci role.
  Tensor<double> S(n, {Slot::Lower, Slot::Lower});
  const double f = double(n - 3) / (n - 2);
  for (int a = 0; a < n; ++a)
    for (int m = 0; m < n; ++m)
      S(a, m) = f * (G.ricci(a, m) - 0.5 * G.scalar * G.metric.g(a, m));
  return second_divergence_identity(G.weyl_mixed_t, S, G);
}

double permutation_residual(const Tensor<double>& b, const GeometryAt& G, Which which,
                            double omega) {
  const int n = G.dim();
  Tensor<double> bK = b_contract_k(b, pick_mixed(G, which));  // bK(i,j,k,l) = b_im K_jkl^m
  Tensor<double> res(n, {Slot::Lower, Slot::Lower, Slot::Lower, Slot::Lower});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) res(i, j, k, l) = bK(i, j, k, l) - omega * bK(l, j, k, i);
  const double t = frobenius(bK);
  return rel_residual(res, {t, t, frobenius(b) * frobenius(pick_mixed(G, which))});
}

double annihilation_residual(const Tensor<double>& b, const GeometryAt& G, Which which) {
  Tensor<double> bK = b_contract_k(b, pick_mixed(G, which));
  return rel_residual(bK, {frobenius(b) * frobenius(pick_mixed(G, which))});
}

PermClass permutability_class(const Tensor<double>& b, const GeometryAt& G, Which which,
                              double tol) {
  // annihilating satisfies both omega tests trivially, so it is checked first
  if (annihilation_residual(b, G, which) < tol) return PermClass::Annihilating;
  if (permutation_residual(b, G, which, +1.0) < tol) return PermClass::Permutable;
  if (permutation_residual(b, G, which, -1.0) < tol) return PermClass::Skew;
  return PermClass::None;
}

double vector_compat_residual(const Tensor<double>& u_contra, const GeometryAt& G, Which which) {
  const int n = G.dim();
  const auto& K = pick_mixed(G, which);
  Tensor<double> u_cov = lower_vector(u_contra, G.metric);
  Tensor<double> S(n, {Slot::Lower, Slot::Lower, Slot::Lower});
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        double acc = 0;
        for (int m = 0; m < n; ++m) acc += K(j, k, l, m) * u_cov[m];
        S(j, k, l) = acc;
      }
  Tensor<double> res(n, {Slot::Lower, Slot::Lower, Slot::Lower, Slot::Lower});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          res(i, j, k, l) = u_cov[i] * S(j, k, l) + u_cov[j] * S(k, i, l) + u_cov[k] * S(i, j, l);
  const double t = euclid(u_cov) * frobenius(S);
  const double gross = euclid(u_cov) * euclid(u_cov) * frobenius(K);
  return rel_residual(res, {t, t, t, gross});
}

DTensorResult d_tensor(const Tensor<double>& u_contra, const GeometryAt& G, Which which) {
  const int n = G.dim();
  const double u2 = norm2(u_contra, G.metric);
  const double eu = euclid(u_contra);
  if (std::abs(u2) <= 1e-10 * eu * eu)
    throw std::invalid_argument("d_tensor: u must be non-null");
  const auto& Kcov = pick_cov(G, which);
  Tensor<double> u_cov = lower_vector(u_contra, G.metric);
  DTensorResult out{Tensor<double>(n, {Slot::Lower, Slot::Lower}), 0, 0};
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      double acc = 0;
      for (int i = 0; i < n; ++i)
        for (int m = 0; m < n; ++m) acc += Kcov(j, i, l, m) * u_contra[i] * u_contra[m];
      out.D(j, l) = acc / u2;
    }
  // K_abcm u^m = D_ac u_b - D_bc u_a
  Tensor<double> res(n, {Slot::Lower, Slot::Lower, Slot::Lower});
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        double acc = 0;
        for (int m = 0; m < n; ++m) acc += Kcov(a, b, c, m) * u_contra[m];
        res(a, b, c) = acc - (out.D(a, c) * u_cov[b] - out.D(b, c) * u_cov[a]);
      }
  out.reconstruction_residual =
      rel_residual(res, {frobenius(Kcov) * eu, 2 * frobenius(out.D) * euclid(u_cov)});
  // u is an eigenvector of D
  double lam = 0;
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) lam += out.D(j, l) * u_contra[j] * u_contra[l];
  lam /= u2;
  Tensor<double> eres(n, {Slot::Lower});
  for (int j = 0; j < n; ++j) {
    double acc = 0;
    for (int l = 0; l < n; ++l) acc += out.D(j, l) * u_contra[l];
    eres[j] = acc - lam * u_cov[j];
  }
  out.eigen_residual = rel_residual(eres, {frobenius(out.D) * eu, std::abs(lam) * euclid(u_cov)});
  return out;
}

DerdzinskiShenResult derdzinski_shen_check(const Tensor<double>& b, const GeometryAt& G,
                                           double eigen_gap) {
  const int n = G.dim();
  Eigen::MatrixXd B(n, n);  // b^i_j = g^im b_mj
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double acc = 0;
      for (int m = 0; m < n; ++m) acc += G.metric.g_inv(i, m) * b(m, j);
      B(i, j) = acc;
    }
  Eigen::EigenSolver<Eigen::MatrixXd> es(B);
  DerdzinskiShenResult out;
  std::vector<double> lam;
  std::vector<Eigen::VectorXd> vec;
  double lmax = es.eigenvalues().cwiseAbs().maxCoeff();
  for (int i = 0; i < n; ++i) {
    if (std::abs(es.eigenvalues()[i].imag()) > 1e-9 * std::max(1.0, lmax)) {
      out.complex_spectrum_skipped = true;
      continue;
    }
    lam.push_back(es.eigenvalues()[i].real());
    Eigen::VectorXd v = es.eigenvectors().col(i).real();
    if (v.norm() > 0) v.normalize();
    vec.push_back(v);
  }
  const double gap = eigen_gap * std::max(1.0, lmax);
  const double cnorm = frobenius(G.weyl_cov) + 1e-300;
  const int m = static_cast<int>(lam.size());
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      for (int z = 0; z < m; ++z) {
        if (x == z || y == z) continue;
        if (std::abs(lam[z] - lam[x]) <= gap || std::abs(lam[z] - lam[y]) <= gap) continue;
        out.admissible_triples++;
        for (int d = 0; d < n; ++d) {
          double acc = 0;
          for (int a = 0; a < n; ++a)
            for (int bb = 0; bb < n; ++bb)
              for (int c = 0; c < n; ++c)
                acc += G.weyl_cov(a, bb, c, d) * vec[x][a] * vec[y][bb] * vec[z][c];
          out.max_residual = std::max(out.max_residual, std::abs(acc) / cnorm);
        }
      }
  return out;
}

HallResiduals hall_conditions(const Tensor<double>& u_contra, const GeometryAt& G) {
  const int n = G.dim();
  Tensor<double> u_cov = lower_vector(u_contra, G.metric);
  const double u2 = norm2(u_contra, G.metric);
  auto cond = [&](const Tensor<double>& Kcov) {
    Tensor<double> M(n, {Slot::Lower, Slot::Lower});  // K_bclm u^c u^m
    for (int b = 0; b < n; ++b)
      for (int l = 0; l < n; ++l) {
        double acc = 0;
        for (int c = 0; c < n; ++c)
          for (int m = 0; m < n; ++m) acc += Kcov(b, c, l, m) * u_contra[c] * u_contra[m];
        M(b, l) = acc;
      }
    Tensor<double> N(n, {Slot::Lower, Slot::Lower, Slot::Lower});  // K_ablm u^m
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int l = 0; l < n; ++l) {
          double acc = 0;
          for (int m = 0; m < n; ++m) acc += Kcov(a, b, l, m) * u_contra[m];
          N(a, b, l) = acc;
        }
    Tensor<double> res(n, {Slot::Lower, Slot::Lower, Slot::Lower});
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int l = 0; l < n; ++l)
          res(a, b, l) = u_cov[a] * M(b, l) - u_cov[b] * M(a, l) + u2 * N(a, b, l);
    const double t = euclid(u_cov) * frobenius(M) + std::abs(u2) * frobenius(N);
    return rel_residual(res, {t});
  };
  HallResiduals out{};
  out.res_A = cond(G.riemann_cov);
  out.res_B = cond(G.weyl_cov);
  Tensor<double> r(n, {Slot::Lower});  // R_bm u^m
  for (int b = 0; b < n; ++b) {
    double acc = 0;
    for (int m = 0; m < n; ++m) acc += G.ricci(b, m) * u_contra[m];
    r[b] = acc;
  }
  Tensor<double> cres(n, {Slot::Lower, Slot::Lower});
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) cres(a, b) = u_cov[a] * r[b] - u_cov[b] * r[a];
  const double t = euclid(u_cov) * frobenius(r);
  out.res_C = rel_residual(cres, {t, t});
  return out;
}

std::vector<PurenessEntry> pureness_check(const GeometryAt& G,
                                          const std::vector<Tensor<double>>& basis) {
  const int n = G.dim();
  detail::require(static_cast<int>(basis.size()) == n, "pureness_check: need n basis vectors");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double dot = 0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) dot += G.metric.g(i, j) * basis[a][i] * basis[b][j];
      double want = (a == b) ? 1.0 : 0.0;
      if (std::abs(std::abs(dot) - want) > 1e-9 && !(a != b && std::abs(dot) < 1e-9))
        throw std::invalid_argument("pureness_check: basis is not orthonormal");
    }
  // R_ij^kl with both last slots raised
  Tensor<double> Rud = raise_lower(raise_lower(G.riemann_cov, 2, G.metric), 3, G.metric);
  std::vector<PurenessEntry> out;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      Tensor<double> M(n, {Slot::Upper, Slot::Upper});
      Tensor<double> W(n, {Slot::Upper, Slot::Upper});
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double acc = 0;
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
              acc += Rud(i, j, k, l) * (basis[a][i] * basis[b][j] - basis[b][i] * basis[a][j]);
          M(k, l) = acc;
          W(k, l) = basis[a][k] * basis[b][l] - basis[b][k] * basis[a][l];
        }
      double mw = 0, ww = 0;
      for (size_t i = 0; i < M.size(); ++i) {
        mw += M[i] * W[i];
        ww += W[i] * W[i];
      }
      const double lambda = ww > 0 ? mw / ww : 0.0;
      Tensor<double> res = M - W * lambda;
      out.push_back({a, b, lambda,
                     rel_residual(res, {frobenius(M), std::abs(lambda) * frobenius(W)})});
    }
  return out;
}

ConcircularResult concircular_residual(const VectorField& u, double A, double B,
                                       const GeometryAt& G) {
  const int n = G.dim();
  Tensor<TaylorScalar> ut = eval_components(u.comps, {Slot::Upper}, G);
  Tensor<TaylorScalar> u_cov = flip_slot(ut, 0, G.g_t);
  Tensor<double> du = values(cov_deriv(u_cov, G));  // nabla_k u_l
  Tensor<double> uv = values(u_cov);
  Tensor<double> res(n, {Slot::Lower, Slot::Lower});
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      res(k, l) = du(k, l) - A * G.metric.g(k, l) - B * uv[k] * uv[l];
  ConcircularResult out{};
  out.defining_res = rel_residual(
      res, {frobenius(du), std::abs(A) * frobenius(G.metric.g), std::abs(B) * frobenius(uv) * frobenius(uv), 1.0});
  Tensor<double> cres(n, {Slot::Lower, Slot::Lower, Slot::Lower});
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        double acc = 0;
        for (int m = 0; m < n; ++m) acc += G.riemann_mixed(j, k, l, m) * uv[m];
        cres(j, k, l) = acc - A * B * (uv[j] * G.metric.g(k, l) - uv[k] * G.metric.g(j, l));
      }
  out.curvature_res = rel_residual(
      cres, {frobenius(G.riemann_cov) * euclid(uv), std::abs(A * B) * euclid(uv) * frobenius(G.metric.g), 1.0});
  return out;
}

double parallel_solution_check(const Tensor<double>& x, const GeometryAt& G) {
  const int n = G.dim();
  Tensor<double> res(n, {Slot::Lower, Slot::Lower, Slot::Lower, Slot::Lower});
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double acc = 0;
          for (int m = 0; m < n; ++m)
            acc += G.riemann_mixed(a, b, c, m) * x(d, m) + G.riemann_mixed(a, b, d, m) * x(c, m);
          res(a, b, c, d) = acc;
        }
  const double t = frobenius(G.riemann_mixed) * frobenius(x);
  return rel_residual(res, {t, t});
}

CompatReport compat_report(const Tensor<double>& b, const GeometryAt& G, double tol) {
  CompatReport r{};
  r.residual_riemann = riemann_compat_residual(b, G);
  r.residual_weyl = weyl_compat_residual(b, G);
  r.ricci_commutator = ricci_commutator_norm(b, G);
  r.permutability_riemann = permutability_class(b, G, Which::Riemann, tol);
  r.permutability_weyl = permutability_class(b, G, Which::Weyl, tol);
  r.riemann_compatible = r.residual_riemann < tol;
  r.weyl_compatible = r.residual_weyl < tol;
  r.tolerance = tol;
  return r;
}

}  // namespace weylkit
