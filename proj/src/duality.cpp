#include "horo/duality.hpp"

#include <cmath>

namespace horo {

DualSample dualize(const ImmersionJet& jet) {
  const int m = jet.chart_dim();
  DualSample out;
  out.forms = forms_at(jet);
  out.phi = Horosphere(jet.x + out.forms.N, 1e-8);
  out.dphi.resize(m);
  // dphi = (E + B) dx in chart coordinates
  for (int i = 0; i < m; ++i) {
    Vec dn = Vec::Zero(jet.ambient_dim());
    for (int k = 0; k < m; ++k) dn += out.forms.B(k, i) * jet.dx[k];
    out.dphi[i] = jet.dx[i] + dn;
  }
  out.istar_pullback.resize(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= i; ++j)
      out.istar_pullback(i, j) = out.istar_pullback(j, i) =
          mink_inner(out.dphi[i], out.dphi[j]);
  return out;
}

Mat weingarten_inversion(const Mat& B, double tol) {
  Eigen::VectorXcd eig = B.eigenvalues();
  for (int i = 0; i < eig.size(); ++i)
    if (std::abs(eig[i] + 1.0) <= tol)
      throw DualSingular("weingarten_inversion: principal curvature -1 (E+B singular)");
  const Mat EB = Mat::Identity(B.rows(), B.cols()) + B;
  return EB.inverse();
}

namespace {

// 2-jet of a point field by 5-point central stencils; keeps the rounding
// error of the second derivatives near 1e-10 so the analytic identities
// survive downstream with ~1e-9 headroom.
template <typename Field>
void fd_point_jet(const Field& f, const Vec& w, double h, Vec& x, std::vector<Vec>& dx,
                  std::vector<std::vector<Vec>>& d2x) {
  const int m = static_cast<int>(w.size());
  x = f(w);
  auto at = [&](int a, double da, int b, double db) {
    Vec wq = w;
    wq[a] += da;
    if (b >= 0) wq[b] += db;
    return f(wq);
  };
  dx.resize(m);
  for (int a = 0; a < m; ++a)
    dx[a] = (-at(a, 2 * h, -1, 0) + 8.0 * at(a, h, -1, 0) - 8.0 * at(a, -h, -1, 0) +
             at(a, -2 * h, -1, 0)) /
            (12.0 * h);
  d2x.assign(m, std::vector<Vec>(m));
  for (int a = 0; a < m; ++a)
    d2x[a][a] = (-at(a, 2 * h, -1, 0) + 16.0 * at(a, h, -1, 0) - 30.0 * x +
                 16.0 * at(a, -h, -1, 0) - at(a, -2 * h, -1, 0)) /
                (12.0 * h * h);
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      // mixed derivative from two 5-point first-derivative passes
      auto dfa = [&](double db) {
        Vec wq = w;
        wq[b] += db;
        return ((-at(a, 2 * h, b, db) + 8.0 * at(a, h, b, db) - 8.0 * at(a, -h, b, db) +
                 at(a, -2 * h, b, db)) /
                (12.0 * h))
            .eval();
      };
      const Vec d2 =
          (-dfa(2 * h) + 8.0 * dfa(h) - 8.0 * dfa(-h) + dfa(-2 * h)) / (12.0 * h);
      d2x[a][b] = d2;
      d2x[b][a] = d2;
    }
}

constexpr double kEnvelopeStep = 5e-3;

}  // namespace

ImmersionJet envelope_jet(const GraphSurface& g, const CenteredChart& chart, const Vec& w) {
  auto pole_at = [&](const Vec& wq) {
    return tangent_pole(graph_section_jet(g, chart, wq)).v;
  };
  ImmersionJet jet;
  jet.chart_point = w;
  fd_point_jet(pole_at, w, kEnvelopeStep, jet.x, jet.dx, jet.d2x);
  const SectionJet sec = graph_section_jet(g, chart, w);
  jet.normal_hint = sec.xi - jet.x;  // exact unit normal direction: N = xi - p
  return jet;
}

HPoint envelope_point(const GraphSurface& g, const Vec& s0) {
  CenteredChart chart(s0);
  const SectionJet jet = graph_section_jet(g, chart, Vec::Zero(g.n() - 1));
  StarForms sf = star_forms_of_section(jet, tangent_pole(jet));
  Eigen::FullPivLU<Mat> lu(sf.Bstar);
  lu.setThreshold(1e-9);
  if (!lu.isInvertible())
    throw DualSingular("envelope_point: degenerate Bstar (dual not immersed)");
  return tangent_pole(jet);
}

SurfaceFamily build_reconstructed(const GraphSurface& g) {
  const int n = g.n();
  // Jets are expressed in a chart centered at the sampled direction; the
  // atlas coordinates only select the direction.
  auto eval = [g](int chart_id, const Vec& w) {
    Atlas atlas{g.n()};
    const Vec s0 = atlas.point(chart_id, w);
    CenteredChart chart(s0);
    ImmersionJet jet = envelope_jet(g, chart, Vec::Zero(g.n() - 1));
    jet.chart_point = w;
    return jet;
  };
  auto sampler = [n](int count, std::uint64_t seed) {
    Atlas atlas{n};
    std::vector<std::pair<int, Vec>> out;
    for (const auto& s : random_sphere(n, count, seed)) out.push_back(atlas.locate(s));
    return out;
  };
  return SurfaceFamily(FamilyKind::reconstructed, n, 2, eval, sampler);
}

DeSitterSample de_sitter_dual(const ImmersionJet& jet) {
  const int m = jet.chart_dim();
  const FrameForms f = forms_at(jet);
  DeSitterSample out;
  out.point = DeSitterPoint(f.N, 1e-8);
  out.dv.resize(m);
  for (int i = 0; i < m; ++i) {
    Vec dn = Vec::Zero(jet.ambient_dim());
    for (int k = 0; k < m; ++k) dn += f.B(k, i) * jet.dx[k];
    out.dv[i] = dn;
  }
  out.induced.resize(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= i; ++j)
      out.induced(i, j) = out.induced(j, i) = mink_inner(out.dv[i], out.dv[j]);
  return out;
}

SurfaceFamily equidistant_envelope(const SurfaceFamily& S, const ConformalFactor& u,
                                   const HPoint& x0, int validation_samples,
                                   std::uint64_t seed) {
  const int n = S.dim();
  const ChartPhi chart_phi(x0);
  const Mat eta = eta_matrix(n + 1);

  // shifted dual section xi'(w) = e^{u(sdir)} phi(w) with analytic first jets
  auto shifted = [S, u, x0, chart_phi, eta](int chart_id, const Vec& w) {
    const ImmersionJet jet = S.jet(w, chart_id);
    const DualSample d = dualize(jet);
    const int m = static_cast<int>(d.dphi.size());
    const double t = std::log(-mink_inner(x0.v, d.phi.xi));
    const Vec sdir_amb = d.phi.xi * std::exp(-t) - x0.v;
    const Vec sdir = chart_phi.frame().transpose() * (eta * sdir_amb);
    double uval;
    Vec ugrad;
    Mat uhess;
    u.ambient_jet(sdir, uval, ugrad, uhess);

    SectionJet sec;
    sec.w = w;
    sec.xi = std::exp(uval) * d.phi.xi;
    sec.dxi.resize(m);
    for (int a = 0; a < m; ++a) {
      // d(sdir) through the pencil normalization xi e^{-t}
      const Vec dphi = d.dphi[a];
      const Vec dnorm =
          std::exp(-t) * dphi + std::exp(-2.0 * t) * mink_inner(x0.v, dphi) * d.phi.xi;
      const Vec dsdir = chart_phi.frame().transpose() * (eta * dnorm);
      sec.dxi[a] = std::exp(uval) * (ugrad.dot(dsdir) * d.phi.xi + dphi);
    }
    return sec;
  };

  auto shifted_full = [shifted](int chart_id, const Vec& w) {
    SectionJet sec = shifted(chart_id, w);
    const int m = static_cast<int>(sec.dxi.size());
    sec.d2xi.assign(m, std::vector<Vec>(m));
    const double h = 1e-4;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        Vec wp = w, wm = w;
        wp[b] += h;
        wm[b] -= h;
        sec.d2xi[a][b] = (shifted(chart_id, wp).dxi[a] - shifted(chart_id, wm).dxi[a]) / (2.0 * h);
      }
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b) {
        const Vec sym = 0.5 * (sec.d2xi[a][b] + sec.d2xi[b][a]);
        sec.d2xi[a][b] = sym;
        sec.d2xi[b][a] = sym;
      }
    return sec;
  };

  // convexity re-validation of the shifted graph (the paper's smallness
  // condition made concrete)
  for (const auto& [cid, w] : S.sample_points(validation_samples, seed)) {
    const SectionJet sec = shifted_full(cid, w);
    const StarForms sf = star_forms_of_section(sec, tangent_pole(sec));
    if (sf.kstar[0] <= 1e-9)
      throw DualSingular("equidistant_envelope: convexity lost at a sample, min k* = " +
                         std::to_string(sf.kstar[0]));
  }

  auto eval = [shifted](int chart_id, const Vec& w) {
    auto pole_at = [&](const Vec& wq) { return tangent_pole(shifted(chart_id, wq)).v; };
    ImmersionJet jet;
    jet.chart_point = w;
    fd_point_jet(pole_at, w, kEnvelopeStep, jet.x, jet.dx, jet.d2x);
    jet.normal_hint = shifted(chart_id, w).xi - jet.x;
    return jet;
  };
  auto sampler = [S](int count, std::uint64_t sd) { return S.sample_points(count, sd); };
  return SurfaceFamily(FamilyKind::reconstructed, n, S.chart_count(), eval, sampler);
}

RelationReport relation_check(const ImmersionJet& jet) {
  if (jet.ambient_dim() != 4)
    throw std::invalid_argument("relation_check: defined for surfaces in H^3");
  const FrameForms f = forms_at(jet);
  RelationReport r;
  r.K = f.K_gauss;
  r.H_mean = f.H_mean;
  const Mat Bstar = weingarten_inversion(f.B);
  r.Kstar_analytic = 1.0 - Bstar.trace();
  const double denom = r.K + 2.0 * r.H_mean + 2.0;
  if (std::abs(denom) < 1e-12) throw DualSingular("relation_check: K + 2H + 2 = 0");
  r.Kstar_formula = r.K / denom;
  r.discrepancy = std::abs(r.Kstar_analytic - r.Kstar_formula);
  return r;
}

}  // namespace horo
