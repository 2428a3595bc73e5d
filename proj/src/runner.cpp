#include "horo/runner.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "horo/fd_curvature.hpp"

namespace horo {

using nlohmann::json;

namespace {

Vec to_vec(const json& j) {
  Vec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = j[i].get<double>();
  return v;
}

Mat to_mat(const json& j) {
  const int r = static_cast<int>(j.size());
  const int c = r > 0 ? static_cast<int>(j[0].size()) : 0;
  Mat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < c; ++k) m(i, k) = j[i][k].get<double>();
  return m;
}

HPoint base_point(int n) {
  Vec v = Vec::Zero(n + 1);
  v[0] = 1.0;
  return HPoint(v);
}

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> tols = {
      {"dual_metric", 1e-9},        {"inversion", 1e-7},
      {"double_dual", 1e-6},        {"gauss_star", 1e-6},
      {"codazzi", 1e-5},            {"curvature_relation", 1e-6},
      {"conformal_gauss_map", 1e-6},{"de_sitter", 1e-9},
      {"envelope_isometry", 1e-6},  {"isometry_equivariance", 1e-10},
      {"cone_embed", 1e-12},
  };
  return tols;
}

}  // namespace

const std::vector<std::string>& registered_checks() {
  static const std::vector<std::string> names = {
      "dual_metric",   "inversion",          "double_dual",
      "gauss_star",    "codazzi",            "curvature_relation",
      "conformal_gauss_map", "de_sitter",    "envelope_isometry",
      "isometry_equivariance", "cone_embed",
  };
  return names;
}

RunConfig RunConfig::from_json(const json& j) {
  RunConfig cfg;
  cfg.echo = j;
  if (!j.contains("schema") || j["schema"].get<int>() != 1)
    throw ConfigError("config: missing or unsupported schema (expected 1)");
  cfg.n = j.value("n", 3);
  if (cfg.n < 3 || cfg.n > 5) throw ConfigError("config: n must be 3, 4 or 5");
  cfg.seed = j.value("seed", std::uint64_t{1});
  cfg.grid = j.value("grid", 200);
  if (cfg.grid <= 0) throw ConfigError("config: grid must be positive");

  if (j.contains("checks")) {
    if (j["checks"].is_string()) {
      if (j["checks"].get<std::string>() != "all")
        throw ConfigError("config: checks must be \"all\" or a list");
    } else {
      for (const auto& c : j["checks"]) cfg.checks.push_back(c.get<std::string>());
    }
  }
  for (const auto& name : cfg.checks) {
    bool known = false;
    for (const auto& r : registered_checks()) known = known || r == name;
    if (!known) throw ConfigError("config: unknown check '" + name + "'");
  }
  if (j.contains("tolerances")) {
    for (auto it = j["tolerances"].begin(); it != j["tolerances"].end(); ++it) {
      if (it.value().get<double>() < 0) throw ConfigError("config: negative tolerance");
      cfg.tolerances[it.key()] = it.value().get<double>();
    }
  }
  if (j.contains("tol")) cfg.tol_override = j["tol"].get<double>();

  if (j.contains("surface")) {
    const auto& s = j["surface"];
    cfg.family = s.value("family", "geodesic_sphere");
    if (s.contains("center")) cfg.center = to_vec(s["center"]);
    cfg.radius = s.value("radius", 1.0);
    if (s.contains("pole")) cfg.pole = to_vec(s["pole"]);
    cfg.distance = s.value("distance", 0.5);
    if (s.contains("semi_axes")) cfg.semi_axes = to_vec(s["semi_axes"]);
  }
  if (j.contains("factor")) {
    cfg.has_factor = true;
    for (const auto& t : j["factor"]["terms"]) {
      ConformalFactor::Term term;
      const std::string type = t.value("type", "constant");
      if (type == "constant") {
        term.type = ConformalFactor::Term::Type::constant;
        term.c = t.value("value", 0.0);
      } else if (type == "linear") {
        term.type = ConformalFactor::Term::Type::linear;
        term.a = to_vec(t.at("a"));
      } else if (type == "quadratic") {
        term.type = ConformalFactor::Term::Type::quadratic;
        term.Q = to_mat(t.at("Q"));
      } else if (type == "harmonic") {
        term.type = ConformalFactor::Term::Type::harmonic;
        term.ha = to_vec(t.at("a"));
        term.hb = to_vec(t.at("b"));
        term.deg = t.value("degree", 2);
        term.coef = t.value("coef", 1.0);
      } else {
        throw ConfigError("config: unknown factor term '" + type + "'");
      }
      cfg.factor_terms.push_back(std::move(term));
    }
  }
  if (j.contains("out")) {
    const auto& o = j["out"];
    cfg.report_json = o.value("report_json", "");
    cfg.report_csv = o.value("report_csv", "");
    cfg.mesh_off = o.value("mesh_off", "");
    cfg.mesh_model = o.value("mesh_model", "poincare");
    cfg.mesh_rows = o.value("mesh_rows", 20);
    cfg.mesh_cols = o.value("mesh_cols", 40);
  }
  return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: parse error: ") + e.what());
  }
  return from_json(j);
}

SurfaceFamily RunConfig::build_surface() const {
  const HPoint base = center.size() > 0 ? HPoint(center) : base_point(n);
  if (family == "geodesic_sphere") {
    if (radius <= 0) throw ConfigError("config: radius must be positive");
    return build_sphere(base, radius);
  }
  if (family == "totally_geodesic_hyperplane" || family == "equidistant") {
    Vec p = pole;
    if (p.size() == 0) {
      p = Vec::Zero(n + 1);
      p[1] = 1.0;
    }
    try {
      const DeSitterPoint ds(p);
      return family == "equidistant" ? build_equidistant(ds, distance)
                                     : build_hyperplane(ds);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("config: bad pole: ") + e.what());
    }
  }
  if (family == "klein_quadric") {
    Vec axes = semi_axes;
    if (axes.size() == 0) axes = Vec::Constant(n, 0.5);
    if (axes.size() != n) throw ConfigError("config: semi_axes must have n entries");
    try {
      return build_klein_quadric(axes);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("config: bad quadric: ") + e.what());
    }
  }
  throw ConfigError("config: unknown surface family '" + family + "'");
}

ConformalFactor RunConfig::build_factor() const {
  ConformalFactor u(n);
  if (has_factor) {
    for (const auto& t : factor_terms) {
      switch (t.type) {
        case ConformalFactor::Term::Type::constant: u.add_constant(t.c); break;
        case ConformalFactor::Term::Type::linear: u.add_linear(t.a); break;
        case ConformalFactor::Term::Type::quadratic: u.add_quadratic(t.Q); break;
        case ConformalFactor::Term::Type::harmonic:
          u.add_harmonic(t.ha, t.hb, t.deg, t.coef);
          break;
      }
    }
    return u;
  }
  // default fixture: unit constant plus a small seeded quadratic
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat Q(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) Q(i, j) = Q(j, i) = 0.02 * gauss(rng);
  u.add_constant(1.0);
  u.add_quadratic(Q);
  return u;
}

// ---------- report ----------

json Report::to_json(const RunConfig& cfg, double total_ms) const {
  json j;
  j["schema"] = 1;
  j["library_version"] = kLibraryVersion;
  j["seed"] = cfg.seed;
  j["config"] = cfg.echo;
  j["overall"] = overall_pass ? "pass" : "fail";
  json arr = json::array();
  for (const auto& c : checks) {
    json cj;
    cj["name"] = c.name;
    cj["status"] = c.pass ? "pass" : "fail";
    cj["max_deviation"] = c.max_deviation;
    cj["tolerance"] = c.tolerance;
    cj["samples"] = c.samples;
    arr.push_back(std::move(cj));
  }
  j["checks"] = arr;
  if (!extra.is_null()) j["details"] = extra;
  // timing lives outside the deterministic payload
  json timing;
  timing["total"] = total_ms;
  for (const auto& c : checks) timing[c.name] = c.timing_ms;
  j["timing_ms"] = timing;
  return j;
}

std::string Report::to_csv() const {
  std::ostringstream os;
  os << "check,status,max_deviation,tolerance,samples\n";
  for (const auto& c : checks) {
    os.precision(17);
    os << c.name << ',' << (c.pass ? "pass" : "fail") << ',' << c.max_deviation << ','
       << c.tolerance << ',' << c.samples << '\n';
  }
  return os.str();
}

void Report::write(const RunConfig& cfg, double total_ms) const {
  if (!cfg.report_json.empty()) {
    std::ofstream out(cfg.report_json);
    if (!out) throw std::runtime_error("cannot write " + cfg.report_json);
    out << to_json(cfg, total_ms).dump(2) << '\n';
  }
  if (!cfg.report_csv.empty()) {
    std::ofstream out(cfg.report_csv);
    if (!out) throw std::runtime_error("cannot write " + cfg.report_csv);
    out << to_csv();
  }
}

// ---------- individual checks ----------

namespace {

struct Fixtures {
  SurfaceFamily surface;
  ConformalFactor factor;
  GraphSurface graph;
  HPoint base;
  int n;
  std::uint64_t seed;
  int samples;
};

double check_dual_metric(const Fixtures& fx) {
  double worst = 0.0;
  for (const auto& [cid, w] : fx.surface.sample_points(fx.samples, fx.seed)) {
    const ImmersionJet jet = fx.surface.jet(w, cid);
    const DualSample d = dualize(jet);
    const Mat direct = horospherical_metric_direct(d.forms);
    worst = std::max(worst, (d.istar_pullback - direct).cwiseAbs().maxCoeff());
  }
  return worst;
}

// Bstar from the dual side: second derivatives of the tangent-horosphere
// field by finite differences, then II* = -<p, d2 phi>.
double check_inversion(const Fixtures& fx) {
  double worst = 0.0;
  const int m = fx.n - 1;
  int taken = 0;
  for (const auto& [cid, w] : fx.surface.sample_points(fx.samples, fx.seed)) {
    if (taken++ >= std::max(8, fx.samples / 4)) break;  // FD-heavy; subsample
    auto phi_at = [&](const Vec& wq) {
      return dualize(fx.surface.jet(wq, cid)).phi.xi;
    };
    SectionJet sec;
    sec.w = w;
    const double h = 2e-3;
    sec.xi = phi_at(w);
    sec.dxi.resize(m);
    sec.d2xi.assign(m, std::vector<Vec>(m));
    for (int a = 0; a < m; ++a) {
      Vec wp = w, wm = w;
      wp[a] += h;
      wm[a] -= h;
      sec.dxi[a] = (phi_at(wp) - phi_at(wm)) / (2.0 * h);
    }
    // d2 phi via FD of the analytic dphi field
    auto dphi_at = [&](const Vec& wq) {
      const DualSample d = dualize(fx.surface.jet(wq, cid));
      return d.dphi;
    };
    for (int b = 0; b < m; ++b) {
      Vec wp = w, wm = w;
      wp[b] += h;
      wm[b] -= h;
      const auto dp = dphi_at(wp);
      const auto dm = dphi_at(wm);
      for (int a = 0; a < m; ++a) sec.d2xi[a][b] = (dp[a] - dm[a]) / (2.0 * h);
    }
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b) {
        const Vec sym = 0.5 * (sec.d2xi[a][b] + sec.d2xi[b][a]);
        sec.d2xi[a][b] = sym;
        sec.d2xi[b][a] = sym;
      }
    // refresh dxi with the analytic values (xi = phi has analytic first jets)
    sec.dxi = dualize(fx.surface.jet(w, cid)).dphi;
    const StarForms sf = star_forms_of_section(sec, tangent_pole(sec));
    const FrameForms f = forms_at(fx.surface.jet(w, cid));
    const Mat EB = Mat::Identity(m, m) + f.B;
    worst = std::max(worst,
                     (sf.Bstar * EB - Mat::Identity(m, m)).cwiseAbs().maxCoeff());
  }
  return worst;
}

double check_double_dual(const Fixtures& fx) {
  double worst = 0.0;
  for (const auto& s : random_sphere(fx.n, std::max(8, fx.samples / 4), fx.seed)) {
    CenteredChart chart(s);
    const ImmersionJet jet = envelope_jet(fx.graph, chart, Vec::Zero(fx.n - 1));
    const DualSample d = dualize(jet);
    const Vec xi = fx.graph.point(s).xi;
    worst = std::max(worst, (d.phi.xi - xi).cwiseAbs().maxCoeff());
  }
  return worst;
}

double check_gauss_star(const Fixtures& fx) {
  double worst = 0.0;
  for (const auto& s : random_sphere(fx.n, fx.samples, fx.seed)) {
    const StarForms sf = star_forms(fx.graph, s);
    Eigen::GeneralizedSelfAdjointEigenSolver<Mat> ges(sf.IIstar, sf.Istar);
    const Vec k = ges.eigenvalues();
    const Mat frame = sphere_tangent_basis(s);
    for (int i = 0; i < k.size(); ++i)
      for (int j = i + 1; j < k.size(); ++j) {
        const Vec Xi = ges.eigenvectors().col(i);
        const Vec Xj = ges.eigenvectors().col(j);
        const double Kcf = conformal_sectional(fx.factor, s, frame, Xi, Xj);
        worst = std::max(worst, std::abs(Kcf - (1.0 - k[i] - k[j])));
      }
  }
  return worst;
}

double check_codazzi(const Fixtures& fx) {
  double worst = 0.0;
  for (const auto& s : random_sphere(fx.n, std::max(4, fx.samples / 8), fx.seed)) {
    worst = std::max(worst, curvature_star(fx.graph, s).codazzi_defect);
  }
  return worst;
}

double check_curvature_relation(const Fixtures& fx) {
  if (fx.n != 3) return 0.0;  // identity specific to surfaces
  double worst = 0.0;
  for (const auto& [cid, w] : fx.surface.sample_points(fx.samples, fx.seed)) {
    worst = std::max(worst, relation_check(fx.surface.jet(w, cid)).discrepancy);
  }
  // graph route: Gauss curvature of e^{2u}can vs 1 - tr Bstar
  for (const auto& s : random_sphere(fx.n, fx.samples / 2, fx.seed + 1)) {
    const StarForms sf = star_forms(fx.graph, s);
    const Mat frame = sphere_tangent_basis(s);
    Vec X = Vec::Zero(2), Y = Vec::Zero(2);
    X[0] = 1.0;
    Y[1] = 1.0;
    const double Kcf = conformal_sectional(fx.factor, s, frame, X, Y);
    worst = std::max(worst, std::abs(Kcf - (1.0 - sf.Bstar.trace())));
  }
  return worst;
}

double check_conformal_gauss_map(const Fixtures& fx) {
  double worst = 0.0;
  const Mat eta = eta_matrix(fx.n + 1);
  const ChartPhi chart(fx.base);
  for (const auto& [cid, w] : fx.surface.sample_points(fx.samples, fx.seed)) {
    const DualSample d = dualize(fx.surface.jet(w, cid));
    const double t = std::log(-mink_inner(fx.base.v, d.phi.xi));
    double rmin = 1e300, rmax = 0.0;
    const int m = static_cast<int>(d.dphi.size());
    for (int a = 0; a < m; ++a) {
      for (int rep = 0; rep < 2; ++rep) {
        Vec dir = Vec::Zero(m);
        dir[a] = 1.0;
        if (rep == 1) dir[(a + 1) % m] = 1.0;
        Vec dphi = Vec::Zero(fx.n + 1);
        for (int b = 0; b < m; ++b) dphi += dir[b] * d.dphi[b];
        // differential of the boundary direction through xi e^{-t}
        const Vec dnorm = std::exp(-t) * dphi +
                          std::exp(-2.0 * t) * mink_inner(fx.base.v, dphi) * d.phi.xi;
        const Vec dS = chart.frame().transpose() * (eta * dnorm);
        double istar = 0.0;
        for (int b = 0; b < m; ++b)
          for (int c = 0; c < m; ++c) istar += dir[b] * dir[c] * d.istar_pullback(b, c);
        const double ratio = dS.squaredNorm() / istar;
        rmin = std::min(rmin, ratio);
        rmax = std::max(rmax, ratio);
      }
    }
    worst = std::max(worst, (rmax - rmin) / rmax);
  }
  return worst;
}

double check_de_sitter(const Fixtures& fx) {
  double worst = 0.0;
  const int m = fx.n - 1;
  int taken = 0;
  for (const auto& [cid, w] : fx.surface.sample_points(fx.samples, fx.seed)) {
    if (taken++ >= std::max(8, fx.samples / 4)) break;
    const FrameForms f = forms_at(fx.surface.jet(w, cid));
    // independent route: finite differences of the normal field
    auto N_at = [&](const Vec& wq) { return forms_at(fx.surface.jet(wq, cid)).N; };
    const double h = 1e-4;
    Mat induced(m, m);
    std::vector<Vec> dN(m);
    for (int a = 0; a < m; ++a) {
      Vec wp = w, wm = w;
      wp[a] += h;
      wm[a] -= h;
      dN[a] = (N_at(wp) - N_at(wm)) / (2.0 * h);
    }
    for (int a = 0; a < m; ++a)
      for (int b = 0; b <= a; ++b)
        induced(a, b) = induced(b, a) = mink_inner(dN[a], dN[b]);
    worst = std::max(worst, (induced - f.III).cwiseAbs().maxCoeff());
  }
  return worst;
}

double check_envelope_isometry(const Fixtures& fx) {
  // sphere fixture moved by the configured factor scaled down to stay convex
  ConformalFactor small(fx.n);
  for (const auto& t : fx.factor.terms()) {
    switch (t.type) {
      case ConformalFactor::Term::Type::constant: small.add_constant(0.2 * t.c); break;
      case ConformalFactor::Term::Type::linear: small.add_linear(0.2 * t.a); break;
      case ConformalFactor::Term::Type::quadratic: small.add_quadratic(0.2 * t.Q); break;
      case ConformalFactor::Term::Type::harmonic:
        small.add_harmonic(t.ha, t.hb, t.deg, 0.2 * t.coef);
        break;
    }
  }
  const SurfaceFamily sphere = build_sphere(fx.base, 1.0);
  const SurfaceFamily moved = equidistant_envelope(sphere, small, fx.base, 16, fx.seed);
  const Mat eta = eta_matrix(fx.n + 1);
  const ChartPhi chart(fx.base);
  double worst = 0.0;
  int taken = 0;
  for (const auto& [cid, w] : sphere.sample_points(fx.samples, fx.seed)) {
    if (taken++ >= std::max(8, fx.samples / 8)) break;
    const DualSample d0 = dualize(sphere.jet(w, cid));
    const DualSample d1 = dualize(moved.jet(w, cid));
    const double t = std::log(-mink_inner(fx.base.v, d0.phi.xi));
    const Vec sdir = chart.frame().transpose() * (eta * (d0.phi.xi * std::exp(-t) - fx.base.v));
    const double uval = small.value(sdir);
    const Mat lhs = std::exp(2.0 * uval) * d0.istar_pullback;
    worst = std::max(worst, (d1.istar_pullback - lhs).cwiseAbs().maxCoeff() /
                                lhs.cwiseAbs().maxCoeff());
  }
  return worst;
}

double check_isometry_equivariance(const Fixtures& fx) {
  const int n = fx.n;
  Vec e1 = Vec::Zero(n + 1), e2 = Vec::Zero(n + 1);
  e1[1] = 1.0;
  e2[2] = 1.0;
  Vec xi0 = Vec::Zero(n + 1);
  xi0[0] = 1.0;
  xi0[1] = 1.0;
  Vec shear = Vec::Zero(n + 1);
  shear[2] = 1.0;
  Vec pole_v = Vec::Zero(n + 1);
  pole_v[n] = 1.0;
  Mat sub_rot = Mat::Identity(n, n);
  sub_rot(1, 1) = std::cos(0.4);
  sub_rot(1, 2) = -std::sin(0.4);
  sub_rot(2, 1) = std::sin(0.4);
  sub_rot(2, 2) = std::cos(0.4);

  std::vector<Isometry> gs = {
      make_rotation(fx.base, e1, e2, 0.7),
      make_translation(fx.base, e1, 0.8),
      make_parabolic(Horosphere(xi0), shear),
      extend_from_hyperplane(DeSitterPoint(pole_v), sub_rot, true),
      extend_from_hyperplane(DeSitterPoint(pole_v), sub_rot, false),
  };
  double worst = 0.0;
  int taken = 0;
  for (const auto& [cid, w] : fx.surface.sample_points(fx.samples, fx.seed)) {
    if (taken++ >= std::max(8, fx.samples / 8)) break;
    const ImmersionJet jet = fx.surface.jet(w, cid);
    const DualSample d = dualize(jet);
    for (const auto& g : gs) {
      const DualSample dg = dualize(transform(g, jet));
      worst = std::max(worst, (dg.phi.xi - g.m * d.phi.xi).cwiseAbs().maxCoeff());
      worst = std::max(worst,
                       (dg.istar_pullback - d.istar_pullback).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double check_cone_embed(const Fixtures& fx) {
  double worst = 0.0;
  for (const auto& [cid, w] : fx.surface.sample_points(fx.samples, fx.seed)) {
    const DualSample d = dualize(fx.surface.jet(w, cid));
    const Vec c = cone_embed(d.phi);
    // quadric membership: <c,c> - 1 equals <xi,xi> identically
    worst = std::max(worst, std::abs(mink_inner(c, c) - 1.0 - mink_norm_sq(d.phi.xi)));
    for (std::size_t a = 0; a < d.dphi.size(); ++a) {
      Vec dc(c.size());
      dc.head(d.dphi[a].size()) = d.dphi[a];
      dc[c.size() - 1] = 0.0;
      worst = std::max(worst,
                       std::abs(mink_inner(dc, dc) - mink_inner(d.dphi[a], d.dphi[a])));
    }
  }
  return worst;
}

}  // namespace

Report run_verify(const RunConfig& cfg) {
  Fixtures fx{cfg.build_surface(),
              cfg.build_factor(),
              GraphSurface(base_point(cfg.n), cfg.build_factor()),
              base_point(cfg.n),
              cfg.n,
              cfg.seed,
              cfg.grid};

  using CheckFn = double (*)(const Fixtures&);
  static const std::map<std::string, CheckFn> registry = {
      {"dual_metric", check_dual_metric},
      {"inversion", check_inversion},
      {"double_dual", check_double_dual},
      {"gauss_star", check_gauss_star},
      {"codazzi", check_codazzi},
      {"curvature_relation", check_curvature_relation},
      {"conformal_gauss_map", check_conformal_gauss_map},
      {"de_sitter", check_de_sitter},
      {"envelope_isometry", check_envelope_isometry},
      {"isometry_equivariance", check_isometry_equivariance},
      {"cone_embed", check_cone_embed},
  };

  std::vector<std::string> names = cfg.checks.empty() ? registered_checks() : cfg.checks;
  Report rep;
  for (const auto& name : names) {
    const auto it = registry.find(name);
    if (it == registry.end()) throw ConfigError("run_verify: unknown check '" + name + "'");
    CheckResult r;
    r.name = name;
    r.tolerance = cfg.tol_override ? *cfg.tol_override
                                   : (cfg.tolerances.count(name) ? cfg.tolerances.at(name)
                                                                 : default_tolerances().at(name));
    const auto t0 = std::chrono::steady_clock::now();
    r.max_deviation = it->second(fx);
    r.timing_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    r.samples = cfg.grid;
    r.pass = r.max_deviation <= r.tolerance;
    rep.overall_pass = rep.overall_pass && r.pass;
    rep.checks.push_back(std::move(r));
  }
  return rep;
}

Report run_dualize(const RunConfig& cfg) {
  const SurfaceFamily fam = cfg.build_surface();
  Report rep;
  json samples = json::array();
  for (const auto& [cid, w] : fam.sample_points(cfg.grid, cfg.seed)) {
    const ImmersionJet jet = fam.jet(w, cid);
    const DualSample d = dualize(jet);
    json s;
    s["chart"] = cid;
    s["phi"] = std::vector<double>(d.phi.xi.begin(), d.phi.xi.end());
    s["convexity"] = to_string(classify_convexity(d.forms));
    s["k"] = std::vector<double>(d.forms.k.begin(), d.forms.k.end());
    samples.push_back(std::move(s));
  }
  rep.extra["dual_samples"] = samples;
  return rep;
}

Report run_admissible(const RunConfig& cfg) {
  if (!cfg.has_factor) throw ConfigError("admissible: config needs a factor");
  const ConformalFactor u = cfg.build_factor();
  const auto grid = cfg.grid > 0 && cfg.grid != 200
                        ? random_sphere(cfg.n, cfg.grid, cfg.seed)
                        : default_admissibility_grid(cfg.n);
  const AdmissibilityReport rep = admissibility_test(u, grid, cfg.n);
  Report out;
  out.overall_pass = rep.cls == AdmissibilityClass::H_admissible ||
                     rep.cls == AdmissibilityClass::C_admissible;
  out.extra["admissibility"] = {
      {"class", to_string(rep.cls)},
      {"min_eig", rep.min_eig},
      {"max_eig", rep.max_eig},
      {"worst_margin", rep.worst_margin},
      {"samples", rep.samples},
      {"route_disagreement", rep.route_disagreement},
      {"max_sectional", rep.max_sectional},
      {"min_sectional", rep.min_sectional},
  };
  if (rep.worst_sample.size() > 0)
    out.extra["admissibility"]["worst_sample"] =
        std::vector<double>(rep.worst_sample.begin(), rep.worst_sample.end());
  return out;
}

Report run_reconstruct(const RunConfig& cfg) {
  Report out = run_admissible(cfg);
  if (!out.overall_pass) return out;
  const ConformalFactor u = cfg.build_factor();
  const HPoint base = base_point(cfg.n);
  const auto grid = random_sphere(cfg.n, std::min(cfg.grid, 64), cfg.seed + 1);
  const double dev = roundtrip_check(u, base, grid);
  out.extra["roundtrip_deviation"] = dev;
  const double tol = cfg.tol_override ? *cfg.tol_override : 1e-5;
  CheckResult r;
  r.name = "roundtrip";
  r.tolerance = tol;
  r.max_deviation = dev;
  r.samples = static_cast<int>(grid.size());
  r.pass = dev <= tol;
  out.checks.push_back(r);
  out.overall_pass = out.overall_pass && r.pass;
  if (!cfg.mesh_off.empty()) {
    const SurfaceFamily fam = build_reconstructed(GraphSurface(base, u));
    export_mesh(fam, cfg.mesh_off, cfg.mesh_model, cfg.mesh_rows, cfg.mesh_cols);
    out.extra["mesh"] = cfg.mesh_off;
  }
  return out;
}

void export_mesh(const SurfaceFamily& fam, const std::string& path,
                 const std::string& model, int rows, int cols) {
  if (fam.dim() != 3)
    throw std::invalid_argument("export_mesh: only surfaces in H^3 are meshable");
  if (rows <= 0 || cols <= 0) throw std::invalid_argument("export_mesh: empty_input");
  if (model != "poincare" && model != "klein")
    throw std::invalid_argument("export_mesh: model must be poincare or klein");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("export_mesh: cannot write " + path);

  Atlas atlas{3};
  const double pi = 3.14159265358979323846;
  std::vector<Vec> verts;
  verts.reserve(static_cast<std::size_t>(rows) * cols);
  for (int i = 0; i < rows; ++i) {
    const double theta = pi * (i + 0.5) / rows;  // poles avoided
    for (int j = 0; j < cols; ++j) {
      const double phi = 2.0 * pi * j / cols;
      Vec s(3);
      s << std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
          std::cos(theta);
      const auto [cid, w] = atlas.locate(s);
      const ImmersionJet jet = fam.jet(w, cid);
      const HPoint x(jet.x, 1e-6);
      verts.push_back(model == "poincare" ? to_poincare(x) : to_klein(x));
    }
  }
  const int nf = (rows - 1) * cols * 2;
  out << "OFF\n" << verts.size() << ' ' << nf << " 0\n";
  out.precision(17);
  for (const auto& v : verts) out << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
  auto id = [cols](int i, int j) { return i * cols + (j % cols); };
  for (int i = 0; i + 1 < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      out << "3 " << id(i, j) << ' ' << id(i + 1, j) << ' ' << id(i + 1, j + 1) << '\n';
      out << "3 " << id(i, j) << ' ' << id(i + 1, j + 1) << ' ' << id(i, j + 1) << '\n';
    }
}

}  // namespace horo
