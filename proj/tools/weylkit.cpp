// weylkit command-line tool: curvature suites, compatibility residuals,
// Petrov classification, hypersurfaces, geodesic maps.
//
// Exit codes: 0 all checks pass, 1 check failure, 2 spec/usage parse error,
// 3 degenerate geometry.

#include <CLI11.hpp>
#include <json.hpp>

#include <Eigen/Dense>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <thread>

#include "weylkit/classify.hpp"
#include "weylkit/specfile.hpp"

using json = nlohmann::ordered_json;
using namespace weylkit;

namespace {

constexpr const char* kVersion = "1.0.0";

struct RunConfig {
  std::string catalog_name;
  std::string spec_path;
  std::vector<std::string> explicit_points;
  int n_points = 5;
  unsigned long long seed = 0;
  double tol_identity = 1e-9;
  double tol_classify = 1e-7;
  std::string out_path;
};

void add_common(CLI::App* cmd, RunConfig& rc, bool with_points = true) {
  auto* cat = cmd->add_option("--catalog", rc.catalog_name, "catalog entry name");
  auto* spec = cmd->add_option("--spec", rc.spec_path, "path to a spec file");
  cat->excludes(spec);
  if (with_points) {
    cmd->add_option("--point", rc.explicit_points,
                    "explicit sample point, comma-separated coordinates (repeatable)");
    cmd->add_option("--points", rc.n_points, "number of random sample points");
    cmd->add_option("--seed", rc.seed, "sampler seed");
  }
  cmd->add_option("--tol-identity", rc.tol_identity, "identity-check tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol-classify", rc.tol_classify, "classification tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("-o,--out", rc.out_path, "report output path (default stdout)");
}

std::vector<double> parse_numbers(const std::string& s) {
  std::vector<double> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t c = s.find(',', pos);
    std::string tok = s.substr(pos, c == std::string::npos ? std::string::npos : c - pos);
    try {
      size_t used = 0;
      out.push_back(std::stod(tok, &used));
      while (used < tok.size() && std::isspace((unsigned char)tok[used])) ++used;
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw SpecParseError("cannot parse number '" + tok + "' in vector argument");
    }
    if (c == std::string::npos) break;
    pos = c + 1;
  }
  return out;
}

LoadedSpec acquire_spec(const RunConfig& rc) {
  if (!rc.spec_path.empty()) return load_spec(rc.spec_path);
  if (rc.catalog_name.empty())
    throw SpecParseError("either --catalog or --spec is required");
  CatalogEntry e = catalog(rc.catalog_name);
  if (e.metric) return *e.metric;
  return *e.embedding;
}

int spec_dim(const LoadedSpec& s) {
  if (auto* m = std::get_if<MetricSpec>(&s)) return m->dim;
  return std::get<EmbeddingSpec>(s).dim();
}
const std::string& spec_name(const LoadedSpec& s) {
  if (auto* m = std::get_if<MetricSpec>(&s)) return m->name;
  return std::get<EmbeddingSpec>(s).name;
}
const std::vector<std::pair<double, double>>& spec_ranges(const LoadedSpec& s) {
  if (auto* m = std::get_if<MetricSpec>(&s)) return m->sample_ranges;
  return std::get<EmbeddingSpec>(s).sample_ranges;
}

// Seeded rejection sampler; points with |det g| below threshold are skipped.
std::vector<std::vector<double>> sample_points(const LoadedSpec& spec, const RunConfig& rc) {
  std::vector<std::vector<double>> pts;
  const int n = spec_dim(spec);
  for (const auto& ps : rc.explicit_points) {
    std::vector<double> p = parse_numbers(ps);
    if ((int)p.size() != n)
      throw SpecParseError("--point has " + std::to_string(p.size()) + " components, expected " +
                           std::to_string(n));
    pts.push_back(std::move(p));
  }
  if (!pts.empty()) return pts;

  const auto& ranges = spec_ranges(spec);
  std::mt19937_64 rng(rc.seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  int rejections = 0;
  while ((int)pts.size() < rc.n_points) {
    std::vector<double> p(n);
    for (int i = 0; i < n; ++i)
      p[i] = ranges[i].first + (ranges[i].second - ranges[i].first) * uni(rng);
    try {
      if (auto* m = std::get_if<MetricSpec>(&spec)) {
        geometry_at(*m, p);  // throws DegenerateMetricError on bad points
      } else {
        hypersurface_geometry(std::get<EmbeddingSpec>(spec), p);
      }
    } catch (const DegenerateMetricError&) {
      if (++rejections > 1000)
        throw DegenerateMetricError("sampler: more than 1000 degenerate points rejected");
      continue;
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

int thread_budget() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("WEYLKIT_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && v < (long)hw) hw = (unsigned)v;
  }
  return (int)hw;
}

// Runs fn(i) for i in [0, n) on up to thread_budget() threads. Exceptions are
// captured and rethrown on the calling thread.
void parallel_for(int n, const std::function<void(int)>& fn) {
  int workers = std::min(n, thread_budget());
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errs(workers);
  for (int w = 0; w < workers; ++w)
    threads.emplace_back([&, w] {
      try {
        for (int i = w; i < n; i += workers) fn(i);
      } catch (...) {
        errs[w] = std::current_exception();
      }
    });
  for (auto& t : threads) t.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

struct Checks {
  json j = json::object();
  bool pass = true;
  void add(const std::string& name, double value, double tol) {
    bool ok = value < tol;
    j[name] = {{"value", value}, {"tolerance", tol}, {"pass", ok}};
    pass = pass && ok;
  }
  void add_bool(const std::string& name, bool ok, const std::string& detail = "") {
    json e = {{"pass", ok}};
    if (!detail.empty()) e["detail"] = detail;
    j[name] = e;
    pass = pass && ok;
  }
};

json report_header(const std::string& command, const LoadedSpec& spec, const RunConfig& rc) {
  json r;
  r["tool"] = "weylkit";
  r["version"] = kVersion;
  r["command"] = command;
  r["spec"] = {{"name", spec_name(spec)},
               {"dim", spec_dim(spec)},
               {"kind", std::holds_alternative<MetricSpec>(spec) ? "metric" : "embedding"}};
  r["config"] = {{"seed", rc.seed},
                 {"tol_identity", rc.tol_identity},
                 {"tol_classify", rc.tol_classify}};
  return r;
}

int finish(json& report, const Checks& checks, const RunConfig& rc) {
  report["checks"] = checks.j;
  report["pass"] = checks.pass;
  std::string text = report.dump(2);
  text.push_back('\n');
  if (rc.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(rc.out_path);
    f << text;
  }
  return checks.pass ? 0 : 1;
}

json tensor_json(const Tensor<double>& t) {
  json a = json::array();
  for (size_t i = 0; i < t.size(); ++i) a.push_back(t[i]);
  return a;
}

double agg_max(const std::vector<json>& pts, const std::string& group, const std::string& key) {
  double m = 0;
  for (const auto& p : pts) m = std::max(m, p.at(group).at(key).get<double>());
  return m;
}

// ---------------------------------------------------------------- curvature

int run_curvature(const RunConfig& rc) {
  LoadedSpec spec = acquire_spec(rc);
  auto* ms = std::get_if<MetricSpec>(&spec);
  if (!ms) throw SpecParseError("curvature needs a metric spec (use hypersurface for embeddings)");
  auto pts = sample_points(spec, rc);
  std::vector<json> blocks(pts.size());
  parallel_for((int)pts.size(), [&](int i) {
    GeometryAt G = geometry_at(*ms, pts[i]);
    json b;
    b["point"] = pts[i];
    b["signature"] = {G.metric.n_plus, G.metric.n_minus};
    b["scalar_curvature"] = G.scalar;
    b["ricci_norm"] = frobenius(G.ricci);
    b["riemann_norm"] = frobenius(G.riemann_cov);
    b["weyl_norm"] = frobenius(G.weyl_cov);
    if (G.dim() >= 3) b["independent_scalars"] = scalar_count(G.dim());
    b["residuals"] = {{"metric_compatibility", metric_compatibility_residual(G)},
                      {"first_bianchi", first_bianchi_residual(G)},
                      {"weyl_trace", weyl_trace_residual(G)},
                      {"weyl_divergence_identity", weyl_divergence_residual(G)},
                      {"second_divergence_riemann", lovelock_residual(G)},
                      {"second_divergence_weyl", dpi_residual(G)},
                      {"christoffel_fd", christoffel_fd_residual(*ms, pts[i])}};
    blocks[i] = std::move(b);
  });
  json report = report_header("curvature", spec, rc);
  report["points"] = blocks;
  json agg;
  for (const char* k : {"metric_compatibility", "first_bianchi", "weyl_trace",
                        "weyl_divergence_identity", "second_divergence_riemann",
                        "second_divergence_weyl", "christoffel_fd"})
    agg[k] = agg_max(blocks, "residuals", k);
  report["aggregate"] = agg;
  Checks checks;
  for (const char* k : {"metric_compatibility", "first_bianchi", "weyl_trace",
                        "weyl_divergence_identity", "second_divergence_riemann",
                        "second_divergence_weyl"})
    checks.add(k, agg[k].get<double>(), rc.tol_identity);
  checks.add("christoffel_fd", agg["christoffel_fd"].get<double>(), 1e-5);
  if (ms->expected_signature != std::pair<int, int>{0, 0}) {
    bool ok = true;
    for (const auto& b : blocks)
      ok = ok && b["signature"] == json{ms->expected_signature.first,
                                        ms->expected_signature.second};
    checks.add_bool("signature", ok);
  }
  return finish(report, checks, rc);
}

// ------------------------------------------------------------------- compat

int run_compat(const RunConfig& rc, const std::string& b_arg, const std::string& u_arg) {
  LoadedSpec spec = acquire_spec(rc);
  auto* ms = std::get_if<MetricSpec>(&spec);
  if (!ms) throw SpecParseError("compat needs a metric spec");
  auto pts = sample_points(spec, rc);
  const int n = ms->dim;

  std::vector<double> b_vals, u_vals;
  if (!b_arg.empty()) {
    b_vals = parse_numbers(b_arg);
    if ((int)b_vals.size() != n * n)
      throw SpecParseError("--b needs " + std::to_string(n * n) + " comma-separated values");
  }
  if (!u_arg.empty()) {
    u_vals = parse_numbers(u_arg);
    if ((int)u_vals.size() != n)
      throw SpecParseError("--u needs " + std::to_string(n) + " comma-separated values");
  }

  std::vector<json> blocks(pts.size());
  parallel_for((int)pts.size(), [&](int i) {
    GeometryAt G = geometry_at(*ms, pts[i]);
    json b;
    b["point"] = pts[i];

    auto report_b = [&](const Tensor<double>& bt, const std::string& label) {
      CompatReport cr = compat_report(bt, G, rc.tol_identity * 10);
      json e;
      e["label"] = label;
      e["residual_riemann"] = cr.residual_riemann;
      e["residual_weyl"] = cr.residual_weyl;
      e["ricci_commutator"] = cr.ricci_commutator;
      e["permutability_riemann"] = to_string(cr.permutability_riemann);
      e["permutability_weyl"] = to_string(cr.permutability_weyl);
      e["riemann_compatible"] = cr.riemann_compatible;
      e["weyl_compatible"] = cr.weyl_compatible;
      e["bridge_identity"] = bridge_identity_residual(bt, G);
      return e;
    };

    json cands = json::array();
    if (!b_vals.empty()) {
      Tensor<double> bt(n, {Slot::Lower, Slot::Lower});
      for (int k = 0; k < n * n; ++k) bt[k] = b_vals[k];
      for (int r = 0; r < n; ++r)
        for (int c = r + 1; c < n; ++c) {
          double avg = 0.5 * (bt(r, c) + bt(c, r));
          bt(r, c) = avg;
          bt(c, r) = avg;
        }
      cands.push_back(report_b(bt, "user"));
    } else {
      cands.push_back(report_b(G.metric.g, "metric"));
      cands.push_back(report_b(G.ricci, "ricci"));
      std::mt19937 rng((unsigned)(rc.seed * 1000003u + i));
      std::uniform_real_distribution<double> dist(-1.0, 1.0);
      Tensor<double> bt(n, {Slot::Lower, Slot::Lower});
      for (int r = 0; r < n; ++r)
        for (int c = r; c < n; ++c) {
          double v = dist(rng);
          bt(r, c) = v;
          bt(c, r) = v;
        }
      cands.push_back(report_b(bt, "random"));
    }
    b["candidates"] = cands;

    double bridge_max = 0;
    for (const auto& e : cands) bridge_max = std::max(bridge_max, e.at("bridge_identity").get<double>());
    b["residuals"] = {{"bridge_identity_max", bridge_max}};

    if (!u_vals.empty()) {
      Tensor<double> u(n, {Slot::Upper});
      for (int k = 0; k < n; ++k) u[k] = u_vals[k];
      json uj;
      uj["vector_compat_riemann"] = vector_compat_residual(u, G, Which::Riemann);
      uj["vector_compat_weyl"] = vector_compat_residual(u, G, Which::Weyl);
      double u2 = norm2(u, G.metric);
      uj["u_squared"] = u2;
      if (causal_character(u, G.metric) != CausalCharacter::Null) {
        DTensorResult d = d_tensor(u, G, Which::Riemann);
        uj["d_reconstruction"] = d.reconstruction_residual;
        uj["d_eigen"] = d.eigen_residual;
      }
      HallResiduals h = hall_conditions(u, G);
      uj["hall_A"] = h.res_A;
      uj["hall_B"] = h.res_B;
      uj["hall_C"] = h.res_C;
      b["observer"] = uj;
    }
    blocks[i] = std::move(b);
  });

  json report = report_header("compat", spec, rc);
  report["points"] = blocks;
  double bridge = agg_max(blocks, "residuals", "bridge_identity_max");
  report["aggregate"] = {{"bridge_identity_max", bridge}};
  Checks checks;
  checks.add("bridge_identity", bridge, rc.tol_identity);
  return finish(report, checks, rc);
}

// ----------------------------------------------------------------- classify

int run_classify(const RunConfig& rc, const std::string& obs_arg, const std::string& null_arg) {
  LoadedSpec spec = acquire_spec(rc);
  auto* ms = std::get_if<MetricSpec>(&spec);
  if (!ms) throw SpecParseError("classify needs a metric spec");
  if (ms->dim != 4) throw SpecParseError("classify needs a 4-dimensional metric");
  auto pts = sample_points(spec, rc);
  const int n = 4;

  std::vector<double> obs, nullv;
  if (!obs_arg.empty()) obs = parse_numbers(obs_arg);
  if (!null_arg.empty()) nullv = parse_numbers(null_arg);
  if (!obs.empty() && (int)obs.size() != n)
    throw SpecParseError("--observer needs 4 components");
  if (!nullv.empty() && (int)nullv.size() != n)
    throw SpecParseError("--null needs 4 components");

  std::vector<json> blocks(pts.size());
  parallel_for((int)pts.size(), [&](int i) {
    GeometryAt G = geometry_at(*ms, pts[i]);
    json b;
    b["point"] = pts[i];
    PetrovReport pr = petrov_type(G);
    json ev = json::array();
    for (auto& l : pr.eigenvalues) ev.push_back({l.real(), l.imag()});
    b["petrov"] = {{"type", to_string(pr.petrov_type)},
                   {"eigenvalues", ev},
                   {"degeneracy_tol", pr.degeneracy_tol},
                   {"minimal_poly_degree", pr.minimal_poly_degree}};
    std::complex<double> sum = pr.eigenvalues[0] + pr.eigenvalues[1] + pr.eigenvalues[2];
    b["residuals"]["eigenvalue_sum"] = std::abs(sum);

    // observer: user-given (normalized to unit timelike) or the frame seed
    Tensor<double> u(n, {Slot::Upper});
    if (!obs.empty()) {
      for (int k = 0; k < n; ++k) u[k] = obs[k];
      double u2 = norm2(u, G.metric);
      if (u2 >= 0) throw SpecParseError("--observer must be timelike");
      for (int k = 0; k < n; ++k) u[k] /= std::sqrt(-u2);
    } else {
      Eigen::Matrix4d g;
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) g(r, c) = G.metric.g(r, c);
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(g);
      int neg = 0;
      for (int k = 1; k < 4; ++k)
        if (es.eigenvalues()[k] < es.eigenvalues()[neg]) neg = k;
      for (int k = 0; k < 4; ++k) u[k] = es.eigenvectors()(k, neg);
      double u2 = norm2(u, G.metric);
      for (int k = 0; k < 4; ++k) u[k] /= std::sqrt(-u2);
    }
    EHPair eh = electric_magnetic(G, u);
    b["observer"] = tensor_json(u);
    b["electric_norm"] = frobenius(eh.E);
    b["magnetic_norm"] = frobenius(eh.H);
    double cn = frobenius(G.weyl_cov) + 1e-300;
    double einv = 0;
    {
      // E/H invariants: symmetry, trace, orthogonality to u
      for (const Tensor<double>* T : {&eh.E, &eh.H}) {
        double tr = 0;
        for (int r = 0; r < 4; ++r)
          for (int c = 0; c < 4; ++c) tr += G.metric.g_inv(r, c) * (*T)(r, c);
        einv = std::max(einv, std::abs(tr) / cn);
        for (int r = 0; r < 4; ++r) {
          double dot = 0;
          for (int c = 0; c < 4; ++c) dot += (*T)(r, c) * u[c];
          einv = std::max(einv, std::abs(dot) / cn);
          for (int c = 0; c < 4; ++c)
            einv = std::max(einv, std::abs((*T)(r, c) - (*T)(c, r)) / cn);
        }
      }
    }
    b["residuals"]["eh_invariants"] = einv;
    HCompatPair hc = h_equals_weyl_compat(G, u);
    b["h_vs_weyl_compat"] = {{"h_norm", hc.h_norm}, {"compat_residual", hc.compat_residual}};

    if (!nullv.empty()) {
      Tensor<double> k(n, {Slot::Upper});
      for (int q = 0; q < n; ++q) k[q] = nullv[q];
      BelDebeverChain ch = bel_debever(G, k);
      b["bel_debever"] = {{"res_I", ch.res_I},
                          {"res_IID", ch.res_IID},
                          {"res_III", ch.res_III},
                          {"res_N", ch.res_N},
                          {"res_O", ch.res_O}};
    } else {
      PndResult pnd = find_pnd(G);
      b["principal_null"] = {{"k", tensor_json(pnd.k)},
                             {"res_I", pnd.chain.res_I},
                             {"res_IID", pnd.chain.res_IID},
                             {"res_III", pnd.chain.res_III},
                             {"res_N", pnd.chain.res_N},
                             {"res_O", pnd.chain.res_O}};
    }
    blocks[i] = std::move(b);
  });

  json report = report_header("classify", spec, rc);
  report["points"] = blocks;
  double esum = agg_max(blocks, "residuals", "eigenvalue_sum");
  double einv = agg_max(blocks, "residuals", "eh_invariants");
  report["aggregate"] = {{"eigenvalue_sum", esum}, {"eh_invariants", einv}};
  // all points should agree on the Petrov type
  std::string t0 = blocks.empty() ? "O" : blocks[0]["petrov"]["type"].get<std::string>();
  bool same = true;
  for (const auto& b : blocks) same = same && b["petrov"]["type"] == t0;
  report["aggregate"]["petrov_type"] = same ? t0 : "mixed";
  Checks checks;
  checks.add("eigenvalue_sum", esum, rc.tol_classify);
  checks.add("eh_invariants", einv, rc.tol_classify);
  return finish(report, checks, rc);
}

// ------------------------------------------------------------- hypersurface

int run_hypersurface(const RunConfig& rc) {
  LoadedSpec spec = acquire_spec(rc);
  auto* es = std::get_if<EmbeddingSpec>(&spec);
  if (!es) throw SpecParseError("hypersurface needs an embedding spec");
  auto pts = sample_points(spec, rc);
  std::vector<json> blocks(pts.size());
  parallel_for((int)pts.size(), [&](int i) {
    HypersurfaceCompatReport r = hypersurface_compat_suite(*es, pts[i]);
    HypersurfaceGeometry h = hypersurface_geometry(*es, pts[i]);
    json b;
    b["point"] = pts[i];
    b["normal_sign"] = h.normal_sign;
    b["scalar_curvature"] = h.G.scalar;
    double ev = 0;
    for (double v : r.eigvec_compat) ev = std::max(ev, v);
    b["residuals"] = {{"gauss", r.gauss_residual},
                      {"codazzi", r.codazzi_residual},
                      {"omega_weyl_compat", r.omega_weyl_compat},
                      {"eigvec_compat_max", ev},
                      {"ricci_weyl_compat", r.ricci_weyl_compat},
                      {"omega2_riemann_compat", r.omega2_riemann_compat},
                      {"ricci_formula", r.ricci_formula_residual}};
    blocks[i] = std::move(b);
  });
  json report = report_header("hypersurface", spec, rc);
  report["points"] = blocks;
  json agg;
  for (const char* k : {"gauss", "codazzi", "omega_weyl_compat", "eigvec_compat_max",
                        "ricci_weyl_compat", "omega2_riemann_compat", "ricci_formula"})
    agg[k] = agg_max(blocks, "residuals", k);
  report["aggregate"] = agg;
  Checks checks;
  checks.add("gauss", agg["gauss"].get<double>(), rc.tol_identity);
  checks.add("codazzi", agg["codazzi"].get<double>(), rc.tol_identity);
  for (const char* k : {"omega_weyl_compat", "eigvec_compat_max", "ricci_weyl_compat",
                        "omega2_riemann_compat", "ricci_formula"})
    checks.add(k, agg[k].get<double>(), rc.tol_identity * 10);
  return finish(report, checks, rc);
}

// ------------------------------------------------------------- geodesic-map

int run_geodesic_map(const RunConfig& rc, const std::string& psi_arg) {
  LoadedSpec spec = acquire_spec(rc);
  auto* ms = std::get_if<MetricSpec>(&spec);
  if (!ms) throw SpecParseError("geodesic-map needs a metric spec");
  GeodesicMapSpec gm;
  gm.base = *ms;
  try {
    gm.psi = Expression::parse(psi_arg);
  } catch (const ParseError& e) {
    throw SpecParseError("--psi: " + std::string(e.what()) + " at offset " +
                         std::to_string(e.offset));
  }
  auto pts = sample_points(spec, rc);
  std::vector<json> blocks(pts.size());
  parallel_for((int)pts.size(), [&](int i) {
    GeodesicMapResult r = geodesic_map_deform(gm, pts[i], (unsigned)rc.seed);
    json b;
    b["point"] = pts[i];
    b["P_norm"] = frobenius(r.P);
    b["residuals"] = {{"closedness", r.closedness_residual},
                      {"p_symmetry", r.p_symmetry_residual},
                      {"ricci_trace", r.ricci_trace_residual},
                      {"compat_transfer_identity", r.identity_max}};
    blocks[i] = std::move(b);
  });
  json report = report_header("geodesic-map", spec, rc);
  report["psi"] = gm.psi.str();
  report["points"] = blocks;
  json agg;
  for (const char* k : {"closedness", "p_symmetry", "ricci_trace", "compat_transfer_identity"})
    agg[k] = agg_max(blocks, "residuals", k);
  report["aggregate"] = agg;
  Checks checks;
  for (const char* k : {"closedness", "p_symmetry", "ricci_trace", "compat_transfer_identity"})
    checks.add(k, agg[k].get<double>(), rc.tol_identity);
  return finish(report, checks, rc);
}

// ------------------------------------------------------------------ catalog

int run_catalog(const RunConfig& rc, const std::string& name) {
  json report;
  report["tool"] = "weylkit";
  report["version"] = kVersion;
  report["command"] = "catalog";
  if (name.empty()) {
    report["entries"] = catalog_names();
  } else {
    CatalogEntry e = catalog(name);
    json s;
    if (e.metric) {
      s["kind"] = "metric";
      s["name"] = e.metric->name;
      s["dim"] = e.metric->dim;
      s["coords"] = e.metric->coords;
      s["params"] = e.metric->params;
      json g = json::array();
      for (const auto& ex : e.metric->g) g.push_back(ex.str());
      s["g"] = g;
      s["signature"] = {e.metric->expected_signature.first,
                        e.metric->expected_signature.second};
    } else {
      s["kind"] = "embedding";
      s["name"] = e.embedding->name;
      s["ambient_dim"] = e.embedding->ambient_dim;
      s["ambient_eta"] = e.embedding->ambient_eta;
      s["coords"] = e.embedding->surface_coords;
      s["params"] = e.embedding->params;
      json m = json::array();
      for (const auto& ex : e.embedding->maps) m.push_back(ex.str());
      s["maps"] = m;
    }
    report["entry"] = s;
  }
  std::string text = report.dump(2);
  text.push_back('\n');
  if (rc.out_path.empty()) std::cout << text;
  else std::ofstream(rc.out_path) << text;
  return 0;
}

// ---------------------------------------------------------------- verify-all

int run_verify_all(RunConfig rc) {
  json report;
  report["tool"] = "weylkit";
  report["version"] = kVersion;
  report["command"] = "verify-all";
  Checks checks;
  json sections = json::object();

  const std::vector<std::string> metrics = {"minkowski", "schwarzschild", "de_sitter_static",
                                            "godel", "pp_wave", "frw_flat"};
  for (const auto& name : metrics) {
    MetricSpec ms = *catalog(name).metric;
    RunConfig sub = rc;
    sub.catalog_name = name;
    LoadedSpec spec = ms;
    auto pts = sample_points(spec, sub);
    double worst_id = 0, worst_fd = 0, worst_bridge = 0;
    std::mt19937 rng((unsigned)rc.seed + 17);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (const auto& p : pts) {
      GeometryAt G = geometry_at(ms, p);
      worst_id = std::max({worst_id, metric_compatibility_residual(G),
                           first_bianchi_residual(G), weyl_trace_residual(G),
                           weyl_divergence_residual(G), lovelock_residual(G), dpi_residual(G)});
      worst_fd = std::max(worst_fd, christoffel_fd_residual(ms, p));
      const int n = G.dim();
      for (int t = 0; t < 5; ++t) {
        Tensor<double> b(n, {Slot::Lower, Slot::Lower});
        for (int r = 0; r < n; ++r)
          for (int c = r; c < n; ++c) {
            double v = dist(rng);
            b(r, c) = v;
            b(c, r) = v;
          }
        worst_bridge = std::max(worst_bridge, bridge_identity_residual(b, G));
      }
    }
    sections[name] = {{"identity_max", worst_id},
                      {"christoffel_fd", worst_fd},
                      {"bridge_identity", worst_bridge}};
    checks.add(name + ".identities", worst_id, rc.tol_identity * 10);
    checks.add(name + ".christoffel_fd", worst_fd, 1e-5);
    checks.add(name + ".bridge", worst_bridge, rc.tol_identity * 10);
  }

  // classification spot checks
  {
    auto type_of = [&](const std::string& name, std::vector<double> p) {
      GeometryAt G = geometry_at(*catalog(name).metric, p);
      return std::string(to_string(petrov_type(G).petrov_type));
    };
    std::string schw = type_of("schwarzschild", {0.0, 5.0, 1.2, 0.4});
    std::string ppw = type_of("pp_wave", {0.2, 0.1, 0.6, -0.3});
    std::string des = type_of("de_sitter_static", {0.0, 0.3, 1.2, 0.7});
    sections["petrov"] = {{"schwarzschild", schw}, {"pp_wave", ppw}, {"de_sitter_static", des}};
    checks.add_bool("petrov.schwarzschild_D", schw == "D");
    checks.add_bool("petrov.pp_wave_N", ppw == "N");
    checks.add_bool("petrov.de_sitter_O", des == "O");
  }

  // hypersurfaces
  for (const std::string name : {"sphere_embedding(4)", "hyperboloid_embedding"}) {
    EmbeddingSpec es = *catalog(name).embedding;
    RunConfig sub = rc;
    LoadedSpec spec = es;
    sub.n_points = std::min(rc.n_points, 5);
    auto pts = sample_points(spec, sub);
    double worst = 0;
    for (const auto& p : pts) {
      HypersurfaceCompatReport r = hypersurface_compat_suite(es, p);
      worst = std::max({worst, r.gauss_residual, r.codazzi_residual, r.omega_weyl_compat,
                        r.ricci_weyl_compat, r.omega2_riemann_compat, r.ricci_formula_residual});
    }
    sections[name] = {{"suite_max", worst}};
    checks.add(name + ".suite", worst, rc.tol_identity * 10);
  }

  report["sections"] = sections;
  return finish(report, checks, rc);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weylkit: curvature, compatibility and classification residuals for "
               "pseudo-Riemannian metrics"};
  app.require_subcommand(1);

  RunConfig rc;
  std::string b_arg, u_arg, obs_arg, null_arg, psi_arg, catalog_arg;

  auto* c_curv = app.add_subcommand("curvature", "curvature tensors and identity residuals");
  add_common(c_curv, rc);
  auto* c_compat = app.add_subcommand("compat", "compatibility and permutability residuals");
  add_common(c_compat, rc);
  c_compat->add_option("--b", b_arg, "symmetric tensor, n*n comma-separated row-major values");
  c_compat->add_option("--u", u_arg, "vector (contravariant), n comma-separated values");
  auto* c_class = app.add_subcommand("classify", "Petrov type, E/H decomposition, null alignment");
  add_common(c_class, rc);
  c_class->add_option("--observer", obs_arg, "timelike observer components (normalized)");
  c_class->add_option("--null", null_arg, "null vector for the alignment residual chain");
  auto* c_hyp = app.add_subcommand("hypersurface", "Gauss/Codazzi and induced compatibility");
  add_common(c_hyp, rc);
  auto* c_geo = app.add_subcommand("geodesic-map", "geodesic-map deformation residuals");
  add_common(c_geo, rc);
  c_geo->add_option("--psi", psi_arg, "potential expression for the closed 1-form")->required();
  auto* c_cat = app.add_subcommand("catalog", "list or show catalog entries");
  c_cat->add_option("name", catalog_arg, "entry name (omit to list)");
  c_cat->add_option("-o,--out", rc.out_path, "report output path (default stdout)");
  auto* c_all = app.add_subcommand("verify-all", "run the full verification suite");
  add_common(c_all, rc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(c_curv)) return run_curvature(rc);
    if (app.got_subcommand(c_compat)) return run_compat(rc, b_arg, u_arg);
    if (app.got_subcommand(c_class)) return run_classify(rc, obs_arg, null_arg);
    if (app.got_subcommand(c_hyp)) return run_hypersurface(rc);
    if (app.got_subcommand(c_geo)) return run_geodesic_map(rc, psi_arg);
    if (app.got_subcommand(c_cat)) return run_catalog(rc, catalog_arg);
    if (app.got_subcommand(c_all)) return run_verify_all(rc);
  } catch (const SpecParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnknownCatalogError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DegenerateMetricError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
