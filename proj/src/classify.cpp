#include "weylkit/classify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace weylkit {

namespace {

double dot_g(const Tensor<double>& a, const Tensor<double>& b, const MetricAt& m) {
  const int n = m.g.dim();
  double s = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s += m.g(i, j) * a[i] * b[j];
  return s;
}

Tensor<double> require_contra_vector(const Tensor<double>& u, int n, const char* what) {
  detail::require(u.rank() == 1 && u.dim() == n && u.slot(0) == Slot::Upper, what);
  return u;
}

void require_lorentzian4(const GeometryAt& G, const char* what) {
  detail::require(G.dim() == 4, what);
  detail::require(G.metric.n_minus == 1 && G.metric.n_plus == 3,
                  "metric signature must be (-,+,+,+)");
}

}  // namespace

const char* to_string(PetrovType t) {
  switch (t) {
    case PetrovType::I: return "I";
    case PetrovType::II: return "II";
    case PetrovType::D: return "D";
    case PetrovType::III: return "III";
    case PetrovType::N: return "N";
    case PetrovType::O: return "O";
  }
  return "?";
}

FrameAt orthonormal_frame(const GeometryAt& G, const Tensor<double>& seed_timelike) {
  const int n = G.dim();
  require_contra_vector(seed_timelike, n, "orthonormal_frame: seed must be a contravariant vector");
  const MetricAt& m = G.metric;
  if (norm2(seed_timelike, m) >= 0)
    throw TensorError("orthonormal_frame: seed vector is not timelike");

  FrameAt out;
  std::vector<double> signs;
  auto push_normalized = [&](Tensor<double> v) {
    double q = dot_g(v, v, m);
    double scale = frobenius(v);
    if (std::abs(q) < 1e-12 * scale * scale)
      throw TensorError("orthonormal_frame: null intermediate vector, reseed required");
    double r = 1.0 / std::sqrt(std::abs(q));
    for (int i = 0; i < n; ++i) v[i] *= r;
    out.vectors.push_back(std::move(v));
    signs.push_back(q < 0 ? -1.0 : 1.0);
  };

  push_normalized(seed_timelike);
  for (int c = 0; c < n && (int)out.vectors.size() < n; ++c) {
    Tensor<double> v(n, {Slot::Upper});
    v[c] = 1.0;
    for (size_t a = 0; a < out.vectors.size(); ++a) {
      double p = dot_g(v, out.vectors[a], m) / signs[a];
      for (int i = 0; i < n; ++i) v[i] -= p * out.vectors[a][i];
    }
    double q = dot_g(v, v, m);
    double e = frobenius(v);
    if (e < 1e-10 || std::abs(q) < 1e-12 * e * e) continue;  // collinear with the span so far
    push_normalized(std::move(v));
  }
  if ((int)out.vectors.size() != n)
    throw TensorError("orthonormal_frame: Gram-Schmidt breakdown");

  double res = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double want = (a == b) ? signs[a] : 0.0;
      res = std::max(res, std::abs(dot_g(out.vectors[a], out.vectors[b], m) - want));
    }
  out.gram_residual = res;
  if (signs[0] > 0) throw TensorError("orthonormal_frame: e_0 is not timelike");
  return out;
}

Tensor<double> left_dual(const Tensor<double>& C_cov, const MetricAt& m) {
  detail::require(m.g.dim() == 4 && C_cov.rank() == 4, "left_dual: n = 4, rank 4");
  Tensor<double> eps = levi_civita(m);
  // C with the first two slots raised.
  Tensor<double> C_up = flip_slot(flip_slot(C_cov, 0, m.g_inv), 1, m.g_inv);
  Tensor<double> out(4, C_cov.slots());
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          double acc = 0;
          for (int r = 0; r < 4; ++r)
            for (int s = 0; s < 4; ++s) acc += eps(a, b, r, s) * C_up(r, s, c, d);
          out(a, b, c, d) = 0.5 * acc;
        }
  return out;
}

EHPair generalized_eh(const GeometryAt& G, const Tensor<double>& T_upper) {
  require_lorentzian4(G, "electric/magnetic decomposition needs n = 4");
  detail::require(T_upper.rank() == 2 && T_upper.slot(0) == Slot::Upper &&
                      T_upper.slot(1) == Slot::Upper,
                  "generalized_eh: T must be contravariant rank 2");
  const int n = 4;
  Tensor<double> dual = left_dual(G.weyl_cov, G.metric);
  EHPair out;
  out.E = Tensor<double>(n, {Slot::Lower, Slot::Lower});
  out.H = Tensor<double>(n, {Slot::Lower, Slot::Lower});
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double e = 0, h = 0;
      for (int j = 0; j < n; ++j)
        for (int mm = 0; mm < n; ++mm) {
          e += T_upper(j, mm) * G.weyl_cov(j, a, b, mm);
          h += T_upper(j, mm) * dual(j, a, b, mm);
        }
      out.E(a, b) = e;
      out.H(a, b) = h;
    }
  return out;
}

EHPair generalized_eh(const GeometryAt& G, const SymmetricField& T, bool raise) {
  Tensor<double> t = eval_symmetric(T, G);
  if (raise) t = raise_lower(raise_lower(t, 0, G.metric), 1, G.metric);
  return generalized_eh(G, t);
}

EHPair electric_magnetic(const GeometryAt& G, const Tensor<double>& u_contra) {
  require_lorentzian4(G, "electric/magnetic decomposition needs n = 4");
  require_contra_vector(u_contra, 4, "electric_magnetic: u must be a contravariant vector");
  double u2 = norm2(u_contra, G.metric);
  if (std::abs(u2 + 1.0) > 1e-9)
    throw TensorError("electric_magnetic: observer must be unit timelike (u.u = -1)");
  EHPair out = generalized_eh(G, outer(u_contra, u_contra));
  out.observer = u_contra;
  return out;
}

HCompatPair h_equals_weyl_compat(const GeometryAt& G, const Tensor<double>& u_contra) {
  EHPair eh = electric_magnetic(G, u_contra);
  double cn = frobenius(G.weyl_cov);
  HCompatPair out;
  out.h_norm = rel_residual(frobenius(eh.H), {cn, cn});
  out.compat_residual = vector_compat_residual(u_contra, G, Which::Weyl);
  return out;
}

PetrovReport classify_q(const std::array<std::array<std::complex<double>, 3>, 3>& Qin) {
  using C = std::complex<double>;
  Eigen::Matrix3cd Q;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) Q(i, j) = Qin[i][j];
  const double qn = Q.norm();

  PetrovReport rep;
  Eigen::ComplexEigenSolver<Eigen::Matrix3cd> es(Q);
  std::array<C, 3> ev = {es.eigenvalues()[0], es.eigenvalues()[1], es.eigenvalues()[2]};
  std::sort(ev.begin(), ev.end(), [](const C& a, const C& b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) > std::abs(b);
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  rep.eigenvalues = ev;

  double lam_max = std::abs(ev[0]);
  const double tol_eq = 1e-7 * std::max(1.0, lam_max);
  rep.degeneracy_tol = tol_eq;
  const double tol_zero = 1e-9 * std::max(qn, 1e-30);

  auto rank_of = [&](const Eigen::Matrix3cd& M) {
    Eigen::JacobiSVD<Eigen::Matrix3cd> svd(M);
    int r = 0;
    for (int i = 0; i < 3; ++i)
      if (svd.singularValues()[i] > 1e-7 * std::max(qn, 1e-30)) ++r;
    return r;
  };

  // The zero-spectrum test uses the characteristic invariants tr(Q^2) and
  // det(Q) rather than the computed eigenvalues: eigenvalues of a nearly
  // nilpotent matrix carry errors of order eps^(1/3), the invariants do not.
  const double i2 = std::abs((Q * Q).trace());
  const double i3 = std::abs(Q.determinant());
  const bool spectrum_zero =
      (std::abs(ev[0]) < tol_zero && std::abs(ev[1]) < tol_zero &&
       std::abs(ev[2]) < tol_zero) ||
      (i2 < 1e-8 * qn * qn && i3 < 1e-8 * qn * qn * qn);
  if (qn < 1e-12 || spectrum_zero) {
    if (qn < 1e-9 * std::max(1.0, qn) || qn < 1e-12) {
      rep.petrov_type = PetrovType::O;
      rep.minimal_poly_degree = qn == 0 ? 0 : 1;
      return rep;
    }
    // All eigenvalues vanish but Q does not: nilpotent.
    double q2 = (Q * Q).norm();
    if (q2 < 1e-7 * qn * qn) {
      rep.petrov_type = PetrovType::N;
      rep.minimal_poly_degree = 2;
    } else {
      rep.petrov_type = PetrovType::III;
      rep.minimal_poly_degree = 3;
    }
    return rep;
  }

  int equal_pairs = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (std::abs(ev[i] - ev[j]) < tol_eq) ++equal_pairs;

  if (equal_pairs == 0) {
    rep.petrov_type = PetrovType::I;
    rep.minimal_poly_degree = 3;
    return rep;
  }
  // A repeated eigenvalue with nonzero spectrum: (lambda, lambda, -2 lambda).
  C lam;
  if (std::abs(ev[0] - ev[1]) < tol_eq) lam = 0.5 * (ev[0] + ev[1]);
  else if (std::abs(ev[1] - ev[2]) < tol_eq) lam = 0.5 * (ev[1] + ev[2]);
  else lam = 0.5 * (ev[0] + ev[2]);
  Eigen::Matrix3cd shifted = Q - lam * Eigen::Matrix3cd::Identity();
  if (rank_of(shifted) <= 1) {
    rep.petrov_type = PetrovType::D;
    rep.minimal_poly_degree = 2;
  } else {
    rep.petrov_type = PetrovType::II;
    rep.minimal_poly_degree = 3;
  }
  return rep;
}

PetrovReport petrov_from_frame(const GeometryAt& G, const FrameAt& frame) {
  require_lorentzian4(G, "petrov_type needs n = 4");
  Tensor<double> u = frame.vectors[0];
  EHPair eh = electric_magnetic(G, u);
  std::array<std::array<std::complex<double>, 3>, 3> Q{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double e = 0, h = 0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          e += eh.E(a, b) * frame.vectors[i + 1][a] * frame.vectors[j + 1][b];
          h += eh.H(a, b) * frame.vectors[i + 1][a] * frame.vectors[j + 1][b];
        }
      Q[i][j] = std::complex<double>(e, h);
    }
  return classify_q(Q);
}

PetrovReport petrov_type(const GeometryAt& G) {
  require_lorentzian4(G, "petrov_type needs n = 4");
  // Deterministic timelike seed: the metric eigenvector of negative eigenvalue.
  Eigen::Matrix4d g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = G.metric.g(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(g);
  int neg = 0;
  for (int i = 1; i < 4; ++i)
    if (es.eigenvalues()[i] < es.eigenvalues()[neg]) neg = i;
  Tensor<double> seed(4, {Slot::Upper});
  for (int i = 0; i < 4; ++i) seed[i] = es.eigenvectors()(i, neg);
  return petrov_from_frame(G, orthonormal_frame(G, seed));
}

BelDebeverChain bel_debever(const GeometryAt& G, const Tensor<double>& k_contra) {
  const int n = G.dim();
  require_contra_vector(k_contra, n, "bel_debever: k must be a contravariant vector");
  if (causal_character(k_contra, G.metric) != CausalCharacter::Null)
    throw TensorError("bel_debever: k must be null");

  const Tensor<double>& C = G.weyl_cov;
  Tensor<double> k = raise_lower(k_contra, 0, G.metric);  // k_a
  const double kn = frobenius(k) + 1e-300;
  const double cn = frobenius(C);
  const double rn = frobenius(G.riemann_cov);

  // A_{asq} = C_{arsq} k^r
  Tensor<double> A(n, {Slot::Lower, Slot::Lower, Slot::Lower});
  for (int a = 0; a < n; ++a)
    for (int s = 0; s < n; ++s)
      for (int q = 0; q < n; ++q) {
        double acc = 0;
        for (int r = 0; r < n; ++r) acc += C(a, r, s, q) * k_contra[r];
        A(a, s, q) = acc;
      }
  // M_{aq} = C_{arsq} k^r k^s
  Tensor<double> M(n, {Slot::Lower, Slot::Lower});
  for (int a = 0; a < n; ++a)
    for (int q = 0; q < n; ++q) {
      double acc = 0;
      for (int s = 0; s < n; ++s) acc += A(a, s, q) * k_contra[s];
      M(a, q) = acc;
    }

  BelDebeverChain out;
  out.res_O = rel_residual(cn, {rn});
  out.res_N = rel_residual(frobenius(A), {cn * kn});

  double r3 = 0;
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a)
      for (int s = 0; s < n; ++s)
        for (int q = 0; q < n; ++q) {
          double v = k[b] * A(a, s, q) - k[a] * A(b, s, q);
          r3 += v * v;
        }
  out.res_III = rel_residual(std::sqrt(r3), {cn * kn * kn, cn * kn * kn});

  double r2 = 0;
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a)
      for (int q = 0; q < n; ++q) {
        double v = k[b] * M(a, q) - k[a] * M(b, q);
        r2 += v * v;
      }
  out.res_IID = rel_residual(std::sqrt(r2), {cn * kn * kn * kn, cn * kn * kn * kn});

  double r1 = 0;
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a)
      for (int q = 0; q < n; ++q)
        for (int m = 0; m < n; ++m) {
          double kb_m = k[b] * M(a, q) - k[a] * M(b, q);
          double kb_m2 = k[b] * M(a, m) - k[a] * M(b, m);
          double v = kb_m * k[m] - kb_m2 * k[q];
          r1 += v * v;
        }
  double s4 = cn * kn * kn * kn * kn;
  out.res_I = rel_residual(std::sqrt(r1), {s4, s4});
  return out;
}

SpecialCompatPair special_via_compat(const GeometryAt& G, const Tensor<double>& k_contra) {
  SpecialCompatPair out;
  out.vector_compat_residual = vector_compat_residual(k_contra, G, Which::Weyl);
  out.res_IID = bel_debever(G, k_contra).res_IID;
  return out;
}

PermutFlatPair weyl_permutable_flat_check(const GeometryAt& G, const Tensor<double>& u_contra) {
  const int n = G.dim();
  require_contra_vector(u_contra, n, "weyl_permutable_flat_check: u must be contravariant");
  if (causal_character(u_contra, G.metric) == CausalCharacter::Null)
    throw TensorError("weyl_permutable_flat_check: u must be non-null");
  Tensor<double> u_cov = raise_lower(u_contra, 0, G.metric);
  PermutFlatPair out;
  out.permut_residual = permutation_residual(outer(u_cov, u_cov), G, Which::Weyl, 1.0);
  out.weyl_norm = rel_residual(frobenius(G.weyl_cov), {frobenius(G.riemann_cov)});
  return out;
}

namespace {

Tensor<double> null_from_direction(const FrameAt& f, double th, double ph) {
  const double d[3] = {std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
  Tensor<double> k = f.vectors[0];
  for (int i = 0; i < 3; ++i)
    for (int a = 0; a < 4; ++a) k[a] += d[i] * f.vectors[i + 1][a];
  return k;
}

}  // namespace

PndResult find_pnd(const GeometryAt& G) {
  require_lorentzian4(G, "find_pnd needs n = 4");
  Eigen::Matrix4d g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = G.metric.g(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(g);
  int neg = 0;
  for (int i = 1; i < 4; ++i)
    if (es.eigenvalues()[i] < es.eigenvalues()[neg]) neg = i;
  Tensor<double> seed(4, {Slot::Upper});
  for (int i = 0; i < 4; ++i) seed[i] = es.eigenvectors()(i, neg);
  FrameAt frame = orthonormal_frame(G, seed);

  auto objective = [&](double th, double ph) {
    return bel_debever(G, null_from_direction(frame, th, ph)).res_IID;
  };

  double best_val = std::numeric_limits<double>::infinity();
  double best_th = 0, best_ph = 0;
  // 26 lattice starts: all sign patterns of (-1,0,1)^3 minus the origin.
  for (int x = -1; x <= 1; ++x)
    for (int y = -1; y <= 1; ++y)
      for (int z = -1; z <= 1; ++z) {
        if (!x && !y && !z) continue;
        double r = std::sqrt(double(x * x + y * y + z * z));
        double th = std::acos(z / r);
        double ph = std::atan2((double)y, (double)x);
        double v = objective(th, ph);
        if (v < best_val) {
          best_val = v;
          best_th = th;
          best_ph = ph;
        }
      }
  // Deterministic pattern search refinement on (theta, phi).
  double step = 0.4;
  while (step > 1e-8) {
    bool improved = false;
    const double cand[4][2] = {{step, 0}, {-step, 0}, {0, step}, {0, -step}};
    for (auto& c : cand) {
      double v = objective(best_th + c[0], best_ph + c[1]);
      if (v < best_val) {
        best_val = v;
        best_th += c[0];
        best_ph += c[1];
        improved = true;
      }
    }
    if (!improved) step *= 0.5;
  }
  PndResult out;
  out.k = null_from_direction(frame, best_th, best_ph);
  out.chain = bel_debever(G, out.k);
  return out;
}

}  // namespace weylkit
