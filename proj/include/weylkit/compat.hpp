#ifndef WEYLKIT_COMPAT_HPP
#define WEYLKIT_COMPAT_HPP

#include "weylkit/geometry.hpp"

namespace weylkit {

// Symmetric rank-2 field given by expressions (constants included), n*n
// row-major, symmetric.
struct SymmetricField {
  std::vector<Expression> comps;
  std::string description;
};

// Vector field, contravariant components u^a.
struct VectorField {
  std::vector<Expression> comps;
};

SymmetricField constant_symmetric(const Tensor<double>& b, std::string description = {});
VectorField constant_vector(const Tensor<double>& u);

Tensor<double> eval_symmetric(const SymmetricField& b, const GeometryAt& G);
Tensor<double> eval_vector(const VectorField& u, const GeometryAt& G);

enum class CausalCharacter { Timelike, Null, Spacelike };
CausalCharacter causal_character(const Tensor<double>& u_contra, const MetricAt& m);
double norm2(const Tensor<double>& u_contra, const MetricAt& m);  // u^a u_a

enum class Which { Riemann, Weyl };

enum class PermClass { Permutable, Skew, Annihilating, None };
const char* to_string(PermClass c);

// --- compatibility residuals (Frobenius norms, relative) ---

// || b_am K_bcl^m + b_bm K_cal^m + b_cm K_abl^m || relative.
double riemann_compat_residual(const Tensor<double>& b, const GeometryAt& G);
double weyl_compat_residual(const Tensor<double>& b, const GeometryAt& G);
double riemann_compat_residual(const SymmetricField& b, const GeometryAt& G);
double weyl_compat_residual(const SymmetricField& b, const GeometryAt& G);

// || b_am R_b^m - b_bm R_a^m || relative: commutation with the Ricci tensor.
double ricci_commutator_norm(const Tensor<double>& b, const GeometryAt& G);

// Residual of the algebraic identity linking the Weyl- and Riemann-cyclic
// sums of any symmetric b; vanishes identically.
double bridge_identity_residual(const Tensor<double>& b, const GeometryAt& G);

// Codazzi deviation C_ijk = nabla_i b_jk - nabla_j b_ik.
Tensor<TaylorScalar> codazzi_deviation(const SymmetricField& b, const GeometryAt& G);

// Lovelock identity residual (cyclic second divergence of Riemann against
// the Ricci-Riemann cyclic sum).
double lovelock_residual(const GeometryAt& G);

// Cyclic second divergence of Weyl against the stress-tensor contraction
// (with T read off Einstein's equation); an identity, so near zero always.
double dpi_residual(const GeometryAt& G);

PermClass permutability_class(const Tensor<double>& b, const GeometryAt& G, Which which,
                              double tol = 1e-9);
// Residual of b_im K_jkl^m - omega * b_lm K_jki^m for a fixed omega, and of
// || b_im K_jkl^m || itself (omega ignored); exposed for the class tests.
double permutation_residual(const Tensor<double>& b, const GeometryAt& G, Which which,
                            double omega);
double annihilation_residual(const Tensor<double>& b, const GeometryAt& G, Which which);

// || (u_i K_jkl^m + u_j K_kil^m + u_k K_ijl^m) u_m || relative.
double vector_compat_residual(const Tensor<double>& u_contra, const GeometryAt& G, Which which);

struct DTensorResult {
  Tensor<double> D;                   // rank-2 covariant, symmetric
  double reconstruction_residual;     // of K_abcm u^m = D_ac u_b - D_bc u_a
  double eigen_residual;              // of D u = lambda u
};
DTensorResult d_tensor(const Tensor<double>& u_contra, const GeometryAt& G, Which which);

struct DerdzinskiShenResult {
  double max_residual = 0;     // max |C_abcd X^a Y^b Z^c| over admissible triples
  int admissible_triples = 0;  // 0 means the check is vacuous
  bool complex_spectrum_skipped = false;
};
DerdzinskiShenResult derdzinski_shen_check(const Tensor<double>& b, const GeometryAt& G,
                                           double eigen_gap = 1e-6);

struct HallResiduals {
  double res_A, res_B, res_C;
};
HallResiduals hall_conditions(const Tensor<double>& u_contra, const GeometryAt& G);

struct PurenessEntry {
  int a, b;
  double lambda;
  double residual;
};
// basis: n contravariant vectors, orthonormal w.r.t. g (X(a).X(b) = +-delta).
std::vector<PurenessEntry> pureness_check(const GeometryAt& G,
                                          const std::vector<Tensor<double>>& basis);

struct ConcircularResult {
  double defining_res;   // of nabla_k u_l = A g_kl + B u_k u_l
  double curvature_res;  // of R_jkl^m u_m = A B (u_j g_kl - u_k g_jl)
};
ConcircularResult concircular_residual(const VectorField& u, double A, double B,
                                       const GeometryAt& G);

// Residual of R_abc^m x_dm + R_abd^m x_cm = 0 (parallel-transport solution).
double parallel_solution_check(const Tensor<double>& x, const GeometryAt& G);

struct CompatReport {
  double residual_riemann;
  double residual_weyl;
  double ricci_commutator;
  PermClass permutability_riemann;
  PermClass permutability_weyl;
  bool riemann_compatible;
  bool weyl_compatible;
  double tolerance;
};
CompatReport compat_report(const Tensor<double>& b, const GeometryAt& G, double tol = 1e-8);

}  // namespace weylkit

#endif
