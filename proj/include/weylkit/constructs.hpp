#ifndef WEYLKIT_CONSTRUCTS_HPP
#define WEYLKIT_CONSTRUCTS_HPP

#include "weylkit/compat.hpp"

namespace weylkit {

// --- Kulkarni-Nomizu curvature builders ---

// R_{jklm} = b_{lj} a_{km} - b_{lk} a_{jm} + b_{mk} a_{jl} - b_{mj} a_{kl}
// for symmetric covariant a, b; carries all Riemann index symmetries.
Tensor<double> kulkarni_nomizu_riemann(const Tensor<double>& a, const Tensor<double>& b);

// Relative residual of b^m_m a_kl + a^m_m b_kl - 2 b_km a^m_l = 0; when it
// vanishes the product above is totally traceless. Inputs must commute.
double kn_weyl_condition_residual(const Tensor<double>& a, const Tensor<double>& b,
                                  const MetricAt& m);

struct KnPotential {
  Tensor<double> a;          // unit Frobenius norm, commutes with b
  int solution_dim = 0;      // dimension of the solution space
  double condition_residual = 0;
};
struct NoPotentialError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Solve the traceless condition for the potential a of a given symmetric b.
KnPotential solve_kn_potential(const Tensor<double>& b, const MetricAt& m);

// --- hypersurfaces in flat ambient space ---

struct EmbeddingSpec {
  std::string name;
  int ambient_dim = 0;                         // n + 1
  std::vector<double> ambient_eta;             // diagonal flat ambient metric
  std::vector<std::string> surface_coords;     // n identifiers
  std::map<std::string, double> params;
  std::vector<Expression> maps;                // X^mu(u^1..u^n), ambient_dim of them
  std::vector<std::pair<double, double>> sample_ranges;

  int dim() const { return ambient_dim - 1; }
};

struct HypersurfaceGeometry {
  GeometryAt G;                 // induced geometry of the hypersurface
  Tensor<double> normal;        // N^mu, ambient components, unit
  double normal_sign = 0;       // eps = N.N
  Tensor<double> omega;         // second fundamental form values
  Tensor<TaylorScalar> omega_t;
  double gauss_residual = 0;    // R_jklm = eps (O_jl O_km - O_jm O_kl)
  double codazzi_residual = 0;  // nabla_k O_jl - nabla_j O_kl = 0
};
HypersurfaceGeometry hypersurface_geometry(const EmbeddingSpec& emb,
                                           std::span<const double> point);

struct HypersurfaceCompatReport {
  double gauss_residual, codazzi_residual;
  double omega_weyl_compat;
  std::vector<double> eigvec_compat;  // Riemann vector-compat per Omega eigenvector
  double ricci_weyl_compat;
  double omega2_riemann_compat;
  double ricci_formula_residual;  // Ric = eps (tr(O) O - O^2) for flat ambient
};
HypersurfaceCompatReport hypersurface_compat_suite(const EmbeddingSpec& emb,
                                                   std::span<const double> point);

// For a geometry whose Riemann tensor has the constant-curvature-plus-
// quadratic form k (g_jl g_km - g_jm g_kl) + eps (O_jl O_km - O_jm O_kl) with
// invertible O and n > 3, returns the relative Codazzi deviation of O (near
// zero by the second Bianchi identity).
double omega_codazzi_from_gauss(const SymmetricField& omega, double k, double eps,
                                const GeometryAt& G);

// --- geodesic maps ---

struct GeodesicMapSpec {
  MetricSpec base;
  Expression psi;  // potential; X_l = nabla_l psi is closed by construction
};

struct GeodesicMapResult {
  Tensor<double> X_cov;        // X_l
  Tensor<double> P;            // P_kl = nabla_k X_l - X_k X_l, symmetric
  Tensor<double> riemann_new;  // R~_{jkl}{}^m = R_{jkl}{}^m + d_j^m P_kl - d_k^m P_jl
  Tensor<double> ricci_new;    // R~_kl = R_kl - (n-1) P_kl
  double closedness_residual = 0;
  double p_symmetry_residual = 0;
  double ricci_trace_residual = 0;  // contraction of riemann_new vs ricci_new
  double identity_max = 0;  // max residual of cyclic(b,R~) = cyclic(b,R) over a b-panel
};
GeodesicMapResult geodesic_map_deform(const GeodesicMapSpec& gm, std::span<const double> point,
                                      unsigned seed = 0, int panel = 20);

struct WeylTransferResult {
  double commutator_ric;  // ||[b, Ric]|| relative
  double commutator_p;    // ||[b, P]|| relative
  double eq_residual;     // transported Weyl-cyclic equality residual
};
// When b commutes with both Ricci and the deformation tensor, the b-cyclic
// Weyl contraction is unchanged by the map (checked in transported form).
WeylTransferResult geodesic_map_weyl_transfer(const GeodesicMapSpec& gm, const Tensor<double>& b,
                                              std::span<const double> point);

// --- catalog of example metrics and embeddings ---

struct CatalogEntry {
  std::optional<MetricSpec> metric;
  std::optional<EmbeddingSpec> embedding;
};
// Known names: minkowski, schwarzschild, de_sitter_static, godel, pp_wave,
// frw_flat, sphere_embedding(n), hyperboloid_embedding.
CatalogEntry catalog(const std::string& name);
std::vector<std::string> catalog_names();

struct UnknownCatalogError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace weylkit

#endif
