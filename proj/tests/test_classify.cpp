#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "weylkit/classify.hpp"
#include "weylkit/constructs.hpp"

using namespace weylkit;

namespace {

std::vector<double> random_point(const MetricSpec& s, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<double> p(s.dim);
  for (int i = 0; i < s.dim; ++i)
    p[i] = s.sample_ranges[i].first +
           (s.sample_ranges[i].second - s.sample_ranges[i].first) * u(rng);
  return p;
}

Tensor<double> static_observer(const GeometryAt& G) {
  Tensor<double> u(4, {Slot::Upper});
  u[0] = 1.0 / std::sqrt(-G.metric.g(0, 0));
  return u;
}

}  // namespace

TEST_CASE("Petrov oracles across the catalog") {
  std::mt19937 rng(71);
  struct Want {
    const char* name;
    PetrovType type;
  } wants[] = {{"schwarzschild", PetrovType::D},
               {"godel", PetrovType::D},
               {"pp_wave", PetrovType::N},
               {"de_sitter_static", PetrovType::O},
               {"frw_flat", PetrovType::O},
               {"minkowski", PetrovType::O}};
  for (const auto& w : wants) {
    MetricSpec s = *catalog(w.name).metric;
    GeometryAt G = geometry_at(s, random_point(s, rng));
    CAPTURE(w.name);
    CHECK(petrov_type(G).petrov_type == w.type);
  }
}

TEST_CASE("Schwarzschild eigenvalue pattern 2M/r^3 (-1/2, -1/2, 1)") {
  MetricSpec s = *catalog("schwarzschild").metric;
  GeometryAt G = geometry_at(s, std::vector<double>{0.0, 4.0, 1.2, 0.3});
  PetrovReport r = petrov_type(G);
  double m = 2.0 / 64.0;  // 2M/r^3 at r = 4
  std::array<double, 3> got;
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(r.eigenvalues[i].imag()) < 1e-12);
    got[i] = r.eigenvalues[i].real();
  }
  std::sort(got.begin(), got.end());
  CHECK(got[0] == doctest::Approx(-m / 2).epsilon(1e-8));
  CHECK(got[1] == doctest::Approx(-m / 2).epsilon(1e-8));
  CHECK(got[2] == doctest::Approx(m).epsilon(1e-8));
  CHECK(r.minimal_poly_degree == 2);
}

TEST_CASE("type is invariant under the choice of frame: 20 random timelike seeds") {
  std::mt19937 rng(73);
  std::uniform_real_distribution<double> d(-0.4, 0.4);
  for (const char* name : {"schwarzschild", "godel", "pp_wave"}) {
    MetricSpec s = *catalog(name).metric;
    GeometryAt G = geometry_at(s, random_point(s, rng));
    PetrovType base = petrov_type(G).petrov_type;
    for (int trial = 0; trial < 20; ++trial) {
      // random timelike seed: boost of the canonical observer
      Tensor<double> seed = static_observer(G);
      Tensor<double> cand = seed;
      for (int i = 1; i < 4; ++i) cand[i] = d(rng);
      if (norm2(cand, G.metric) < -1e-3) seed = cand;
      FrameAt f = orthonormal_frame(G, seed);
      CHECK(f.gram_residual < 1e-10);
      CAPTURE(name);
      CHECK(petrov_from_frame(G, f).petrov_type == base);
    }
  }
}

TEST_CASE("double dual is minus the identity on the Weyl tensor") {
  MetricSpec s = *catalog("schwarzschild").metric;
  std::mt19937 rng(79);
  GeometryAt G = geometry_at(s, random_point(s, rng));
  Tensor<double> dd = left_dual(left_dual(G.weyl_cov, G.metric), G.metric);
  Tensor<double> sum = dd + G.weyl_cov;
  CHECK(frobenius(sum) / frobenius(G.weyl_cov) < 1e-12);
}

TEST_CASE("electric and magnetic parts: symmetry, trace, orthogonality, energy") {
  MetricSpec s = *catalog("godel").metric;
  std::mt19937 rng(83);
  GeometryAt G = geometry_at(s, random_point(s, rng));
  Tensor<double> u = static_observer(G);
  EHPair eh = electric_magnetic(G, u);
  for (const Tensor<double>* T : {&eh.E, &eh.H}) {
    double tr = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) tr += G.metric.g_inv(i, j) * (*T)(i, j);
    CHECK(std::abs(tr) < 1e-12);
    for (int i = 0; i < 4; ++i) {
      double dot = 0;
      for (int j = 0; j < 4; ++j) dot += (*T)(i, j) * u[j];
      CHECK(std::abs(dot) < 1e-12);
      for (int j = 0; j < 4; ++j) CHECK((*T)(i, j) == doctest::Approx((*T)(j, i)));
    }
  }
  // E and H determine the Weyl norm: ||C||^2 = 8(||E||^2 - ||H||^2) only in
  // special cases, but both must vanish together with C
  CHECK(frobenius(eh.E) + frobenius(eh.H) > 1e-6);
}

TEST_CASE("Schwarzschild static observer sees a purely electric field") {
  MetricSpec s = *catalog("schwarzschild").metric;
  std::mt19937 rng(89);
  for (int trial = 0; trial < 5; ++trial) {
    GeometryAt G = geometry_at(s, random_point(s, rng));
    EHPair eh = electric_magnetic(G, static_observer(G));
    CHECK(frobenius(eh.H) / frobenius(G.weyl_cov) < 1e-12);
    CHECK(frobenius(eh.E) > 1e-6);
  }
}

TEST_CASE("H vanishes exactly when the observer is Weyl compatible") {
  std::mt19937 rng(97);
  MetricSpec s = *catalog("schwarzschild").metric;
  GeometryAt G = geometry_at(s, random_point(s, rng));
  // compatible: static observer
  HCompatPair good = h_equals_weyl_compat(G, static_observer(G));
  CHECK(good.h_norm < 1e-12);
  CHECK(good.compat_residual < 1e-12);
  // incompatible: a generic boosted observer
  Tensor<double> u = static_observer(G);
  u[3] = 0.3 / std::sqrt(G.metric.g(3, 3));
  double n2 = norm2(u, G.metric);
  REQUIRE(n2 < 0);
  for (int i = 0; i < 4; ++i) u[i] /= std::sqrt(-n2);
  HCompatPair bad = h_equals_weyl_compat(G, u);
  CHECK(bad.h_norm > 1e-3);
  CHECK(bad.compat_residual > 1e-3);
}

TEST_CASE("generalized decomposition with T = u (x) u matches the observer form") {
  MetricSpec s = *catalog("godel").metric;
  std::mt19937 rng(101);
  GeometryAt G = geometry_at(s, random_point(s, rng));
  Tensor<double> u = static_observer(G);
  EHPair a = electric_magnetic(G, u);
  EHPair b = generalized_eh(G, outer(u, u));
  CHECK(frobenius(a.E - b.E) < 1e-12);
  CHECK(frobenius(a.H - b.H) < 1e-12);
}

TEST_CASE("alignment chain on the plane wave: k is quadruply repeated") {
  MetricSpec s = *catalog("pp_wave").metric;
  std::mt19937 rng(103);
  GeometryAt G = geometry_at(s, random_point(s, rng));
  Tensor<double> k(4, {Slot::Upper});
  k[1] = 1.0;  // the wave vector
  BelDebeverChain ch = bel_debever(G, k);
  CHECK(ch.res_I < 1e-12);
  CHECK(ch.res_IID < 1e-12);
  CHECK(ch.res_III < 1e-12);
  CHECK(ch.res_N < 1e-12);
  CHECK(ch.res_O > 1e-2);  // the curvature itself does not vanish
}

TEST_CASE("alignment chain on Schwarzschild: radial nulls stop at the D level") {
  MetricSpec s = *catalog("schwarzschild").metric;
  GeometryAt G = geometry_at(s, std::vector<double>{0.0, 5.0, 1.1, 0.4});
  Tensor<double> k(4, {Slot::Upper});
  k[0] = 1.0 / std::sqrt(-G.metric.g(0, 0));
  k[1] = 1.0 / std::sqrt(G.metric.g(1, 1));
  BelDebeverChain ch = bel_debever(G, k);
  CHECK(ch.res_I < 1e-12);
  CHECK(ch.res_IID < 1e-12);
  CHECK(ch.res_III > 1e-3);
  CHECK(ch.res_N > 1e-3);
}

TEST_CASE("principal-null search recovers a repeated direction on type D and N") {
  std::mt19937 rng(107);
  for (const char* name : {"schwarzschild", "pp_wave", "godel"}) {
    MetricSpec s = *catalog(name).metric;
    GeometryAt G = geometry_at(s, random_point(s, rng));
    PndResult pnd = find_pnd(G);
    CAPTURE(name);
    CHECK(std::abs(norm2(pnd.k, G.metric)) < 1e-8);
    CHECK(pnd.chain.res_IID < 1e-8);
  }
}

TEST_CASE("Weyl-compatible null vectors are aligned at the repeated level") {
  // constructed compatible nulls: the pp-wave vector and Schwarzschild radials
  std::mt19937 rng(109);
  MetricSpec pp = *catalog("pp_wave").metric;
  GeometryAt Gp = geometry_at(pp, random_point(pp, rng));
  Tensor<double> k(4, {Slot::Upper});
  k[1] = 1.0;
  SpecialCompatPair sp = special_via_compat(Gp, k);
  CHECK(sp.vector_compat_residual < 1e-12);
  CHECK(sp.res_IID < 1e-10);

  MetricSpec sw = *catalog("schwarzschild").metric;
  GeometryAt Gs = geometry_at(sw, random_point(sw, rng));
  for (double dir : {1.0, -1.0}) {
    Tensor<double> r(4, {Slot::Upper});
    r[0] = 1.0 / std::sqrt(-Gs.metric.g(0, 0));
    r[1] = dir / std::sqrt(Gs.metric.g(1, 1));
    SpecialCompatPair spr = special_via_compat(Gs, r);
    CHECK(spr.vector_compat_residual < 1e-12);
    CHECK(spr.res_IID < 1e-10);
  }
}

TEST_CASE("permutable dyad forces a conformally flat geometry") {
  // in the linear cosmology the comoving dyad is permutable and the Weyl
  // tensor vanishes; on Schwarzschild neither holds
  std::mt19937 rng(113);
  MetricSpec frw = *catalog("frw_flat").metric;
  GeometryAt Gf = geometry_at(frw, random_point(frw, rng));
  Tensor<double> uf(4, {Slot::Upper});
  uf[0] = 1.0;
  PermutFlatPair ok = weyl_permutable_flat_check(Gf, uf);
  CHECK(ok.permut_residual < 1e-10);
  CHECK(ok.weyl_norm < 1e-12);

  MetricSpec sw = *catalog("schwarzschild").metric;
  GeometryAt Gs = geometry_at(sw, random_point(sw, rng));
  PermutFlatPair no = weyl_permutable_flat_check(Gs, static_observer(Gs));
  CHECK(no.weyl_norm > 1e-3);
  CHECK(no.permut_residual > 1e-3);
}

TEST_CASE("frame construction rejects null seeds") {
  MetricSpec s = *catalog("pp_wave").metric;
  std::mt19937 rng(127);
  GeometryAt G = geometry_at(s, random_point(s, rng));
  Tensor<double> k(4, {Slot::Upper});
  k[1] = 1.0;  // null
  CHECK_THROWS((void)orthonormal_frame(G, k));
}
