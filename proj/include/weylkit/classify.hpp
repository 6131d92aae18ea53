#ifndef WEYLKIT_CLASSIFY_HPP
#define WEYLKIT_CLASSIFY_HPP

#include <array>
#include <complex>

#include "weylkit/compat.hpp"

namespace weylkit {

// Orthonormal frame e_0..e_{n-1} with e_0 timelike; vectors are contravariant.
struct FrameAt {
  std::vector<Tensor<double>> vectors;
  double gram_residual = 0;
};

// Signature-aware Gram-Schmidt; e_0 is the normalized seed (must be timelike).
FrameAt orthonormal_frame(const GeometryAt& G, const Tensor<double>& seed_timelike);

enum class PetrovType { I, II, D, III, N, O };
const char* to_string(PetrovType t);

struct PetrovReport {
  std::array<std::complex<double>, 3> eigenvalues;
  PetrovType petrov_type = PetrovType::O;
  double degeneracy_tol = 0;
  int minimal_poly_degree = 0;
};

// Electric and magnetic parts of the Weyl tensor with respect to an observer
// (or a general symmetric T^{jm}): E_ab = T^{jm} C_{jabm}, H the same with the
// left dual of C.
struct EHPair {
  Tensor<double> E, H;
  Tensor<double> observer;  // contravariant u (empty for generalized T)
};

// Left dual (1/2) eps_{ab}{}^{rs} C_{rscd} of a rank-4 covariant tensor, n = 4.
Tensor<double> left_dual(const Tensor<double>& C_cov, const MetricAt& m);

// u must be unit timelike (u.u = -1), n = 4.
EHPair electric_magnetic(const GeometryAt& G, const Tensor<double>& u_contra);

// T contravariant symmetric rank-2; specializes to electric_magnetic at
// T = u (x) u.
EHPair generalized_eh(const GeometryAt& G, const Tensor<double>& T_upper);
EHPair generalized_eh(const GeometryAt& G, const SymmetricField& T, bool raise = true);

struct HCompatPair {
  double h_norm;            // ||H|| / ||C||  (0 when C = 0)
  double compat_residual;   // Weyl vector-compatibility residual of u
};
// The two members vanish together: H = 0 iff u is Weyl compatible.
HCompatPair h_equals_weyl_compat(const GeometryAt& G, const Tensor<double>& u_contra);

// Petrov classification through the complex symmetric traceless 3x3 matrix
// Q = E + iH in the spatial triad of a frame.
PetrovReport petrov_type(const GeometryAt& G);
PetrovReport petrov_from_frame(const GeometryAt& G, const FrameAt& frame);
PetrovReport classify_q(const std::array<std::array<std::complex<double>, 3>, 3>& Q);

struct BelDebeverChain {
  double res_I, res_IID, res_III, res_N, res_O;
};
// Alignment residual chain for a null vector k (contravariant); each residual
// is scale-invariant in k and relative to ||C||.
BelDebeverChain bel_debever(const GeometryAt& G, const Tensor<double>& k_contra);

struct SpecialCompatPair {
  double vector_compat_residual;  // Weyl vector compatibility of k
  double res_IID;                 // algebraically-special alignment residual
};
SpecialCompatPair special_via_compat(const GeometryAt& G, const Tensor<double>& k_contra);

struct PermutFlatPair {
  double permut_residual;  // Weyl permutation residual of u (x) u
  double weyl_norm;        // ||C|| / ||Riemann||
};
PermutFlatPair weyl_permutable_flat_check(const GeometryAt& G, const Tensor<double>& u_contra);

struct PndResult {
  Tensor<double> k;  // contravariant null vector
  BelDebeverChain chain;
};
// Best principal null direction by multi-start minimization of res_IID over
// the null cone of a frame.
PndResult find_pnd(const GeometryAt& G);

}  // namespace weylkit

#endif
