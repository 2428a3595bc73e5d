#include "horo/horospace.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace horo {

double g0_inner(const Horosphere& xi, const Vec& v, const Vec& w, double tol) {
  const double scale = std::max(1.0, xi.xi.norm());
  if (std::abs(mink_inner(v, xi.xi)) > tol * scale * std::max(1.0, v.norm()) ||
      std::abs(mink_inner(w, xi.xi)) > tol * scale * std::max(1.0, w.norm()))
    throw std::invalid_argument("g0_inner: vectors not tangent to the cone at xi");
  return mink_inner(v, w);
}

double vertical_parameter(const Horosphere& xi1, const Horosphere& xi2, double tol) {
  const double t = std::log(xi2.xi[0] / xi1.xi[0]);
  if ((xi2.xi - std::exp(t) * xi1.xi).norm() > tol * std::max(1.0, xi2.xi.norm()))
    throw std::invalid_argument("vertical_parameter: horospheres not on one vertical line");
  return t;
}

ChartPhi::ChartPhi(const HPoint& base) : base_(base), V_(spacelike_basis(base.v)) {}

std::pair<Vec, double> ChartPhi::to_chart(const Horosphere& xi) const {
  const double t = std::log(-mink_inner(base_.v, xi.xi));
  const Vec dir = xi.xi * std::exp(-t) - base_.v;  // unit vector of base^perp
  Vec s = V_.transpose() * (eta_matrix(base_.ambient_dim()) * dir);
  return {std::move(s), t};
}

Horosphere ChartPhi::from_chart(const Vec& s, double t) const {
  if (std::abs(s.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("ChartPhi::from_chart: |s| != 1");
  return Horosphere(std::exp(t) * (base_.v + V_ * s));
}

GraphSurface::GraphSurface(HPoint base_point, ConformalFactor factor)
    : base(std::move(base_point)), V(spacelike_basis(base.v)), u(std::move(factor)) {
  if (u.dim() != base.ambient_dim() - 1)
    throw std::invalid_argument("GraphSurface: factor dimension != n");
}

Horosphere GraphSurface::point(const Vec& s) const {
  return Horosphere(std::exp(u.value(s)) * (base.v + V * s));
}

SectionJet graph_section_jet(const GraphSurface& g, const CenteredChart& chart, const Vec& w) {
  const int m = g.n() - 1;
  Vec s;
  Mat ds;
  std::vector<Mat> d2s;
  chart.jet(w, s, ds, d2s);

  double uval;
  Vec ugrad;
  Mat uhess;
  g.u.ambient_jet(s, uval, ugrad, uhess);

  // chain rule for U(w) = u(s(w)); the radial terms cancel along the sphere
  Vec dU(m);
  for (int b = 0; b < m; ++b) dU[b] = ugrad.dot(ds.col(b));
  Mat d2U(m, m);
  for (int b = 0; b < m; ++b)
    for (int c = 0; c < m; ++c)
      d2U(b, c) = ds.col(b).dot(uhess * ds.col(c)) + ugrad.dot(d2s[b].col(c));

  const double eu = std::exp(uval);
  const Vec ray = g.base.v + g.V * s;

  SectionJet jet;
  jet.w = w;
  jet.xi = eu * ray;
  jet.dxi.resize(m);
  for (int b = 0; b < m; ++b) jet.dxi[b] = eu * (dU[b] * ray + g.V * ds.col(b));
  jet.d2xi.assign(m, std::vector<Vec>(m));
  for (int b = 0; b < m; ++b)
    for (int c = 0; c < m; ++c)
      jet.d2xi[b][c] = eu * ((d2U(b, c) + dU[b] * dU[c]) * ray + dU[b] * (g.V * ds.col(c)) +
                             dU[c] * (g.V * ds.col(b)) + g.V * d2s[b].col(c));
  return jet;
}

HPoint tangent_pole(const SectionJet& jet) {
  const int m = static_cast<int>(jet.dxi.size());
  const int dim = static_cast<int>(jet.xi.size());
  Mat rows(m + 1, dim);
  rows.row(0) = eta_apply(jet.xi).transpose();
  for (int i = 0; i < m; ++i) rows.row(i + 1) = eta_apply(jet.dxi[i]).transpose();
  Vec rhs = Vec::Zero(m + 1);
  rhs[0] = -1.0;
  Eigen::CompleteOrthogonalDecomposition<Mat> cod(rows);
  if (cod.rank() < m + 1)
    throw std::invalid_argument("tangent_pole: degenerate section (not immersed)");
  const Vec pstar = cod.solve(rhs);
  // the residual line is the null ray of xi; it meets <p,p> = -1 exactly once
  const double lambda = 0.5 * (mink_norm_sq(pstar) + 1.0);
  return HPoint(pstar + lambda * jet.xi, 1e-6);
}

TGHyperplane tangent_hyperplane(const GraphSurface& g, const Vec& s0) {
  CenteredChart chart(s0);
  const SectionJet jet = graph_section_jet(g, chart, Vec::Zero(g.n() - 1));
  return TGHyperplane{tangent_pole(jet)};
}

double hyperplane_height(const TGHyperplane& hp, const ChartPhi& chart, const Vec& s) {
  return -std::log(-mink_inner(hp.pole.v, chart.base().v + chart.frame() * s));
}

StarForms star_forms_of_section(const SectionJet& jet, const HPoint& pole) {
  const int m = static_cast<int>(jet.dxi.size());
  StarForms sf;
  sf.Istar.resize(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b <= a; ++b)
      sf.Istar(a, b) = sf.Istar(b, a) = mink_inner(jet.dxi[a], jet.dxi[b]);
  if (jet.d2xi.empty())
    throw std::invalid_argument("star_forms_of_section: second derivatives required");
  sf.IIstar.resize(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b <= a; ++b)
      sf.IIstar(a, b) = sf.IIstar(b, a) = -mink_inner(pole.v, jet.d2xi[a][b]);
  if (!sf.IIstar.allFinite()) throw std::invalid_argument("star_forms: non-finite Hessian");
  Eigen::LLT<Mat> llt(sf.Istar);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("star_forms: section not space-like");
  sf.Bstar = llt.solve(sf.IIstar);
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> ges(sf.IIstar, sf.Istar);
  sf.kstar = ges.eigenvalues();
  return sf;
}

StarForms star_forms(const GraphSurface& g, const Vec& s0) {
  CenteredChart chart(s0);
  const SectionJet jet = graph_section_jet(g, chart, Vec::Zero(g.n() - 1));
  StarForms sf = star_forms_of_section(jet, tangent_pole(jet));
  // chart basis at the center is 2E; present the forms on the frame E
  sf.Istar *= 0.25;
  sf.IIstar *= 0.25;
  return sf;
}

StarClass classify_star(const StarForms& sf, double eps) {
  bool all_pos = true, window = true;
  for (int i = 0; i < sf.kstar.size(); ++i) {
    all_pos = all_pos && sf.kstar[i] > eps;
    window = window && sf.kstar[i] > eps && sf.kstar[i] < 1.0 - eps;
  }
  if (window) return StarClass::tamely_convex;
  if (all_pos) return StarClass::convex;
  return StarClass::neither;
}

const char* to_string(StarClass c) {
  switch (c) {
    case StarClass::spacelike: return "spacelike";
    case StarClass::convex: return "convex";
    case StarClass::tamely_convex: return "tamely_convex";
    case StarClass::neither: return "neither";
  }
  return "?";
}

namespace {

// Bstar field in the fixed centered chart (components in chart coordinates).
Mat bstar_chart_at(const GraphSurface& g, const CenteredChart& chart, const Vec& w) {
  const SectionJet jet = graph_section_jet(g, chart, w);
  return star_forms_of_section(jet, tangent_pole(jet)).Bstar;
}

}  // namespace

StarCurvature curvature_star(const GraphSurface& g, const Vec& s0) {
  const int m = g.n() - 1;
  StarCurvature out;
  out.forms = star_forms(g, s0);

  // Istar-orthonormal eigenframe of Bstar
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> ges(out.forms.IIstar, out.forms.Istar);
  const Vec k = ges.eigenvalues();
  out.sectionals.resize(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      out.sectionals(i, j) = i == j ? 0.0 : 1.0 - k[i] - k[j];
  out.Kstar = 1.0 - out.forms.Bstar.trace();

  // Gauss formula: R*(X,Y)Z = R0 + II*(X,Z)Y - II*(Y,Z)X - I*(Y,Z)B*X + I*(X,Z)B*Y,
  // assembled in the eigenframe where I* = id and II* = diag(k)
  out.riemann.assign(m * m, Mat::Zero(m, m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Mat& R = out.riemann[i * m + j];
      for (int kk = 0; kk < m; ++kk) {
        Vec comp = Vec::Zero(m);  // components of R*(e_i,e_j)e_k
        comp[i] += (kk == j ? 1.0 : 0.0);   // I*(Y,Z) X
        comp[j] -= (kk == i ? 1.0 : 0.0);   // -I*(X,Z) Y
        comp[j] += (kk == i ? k[i] : 0.0);  // II*(X,Z) Y
        comp[i] -= (kk == j ? k[j] : 0.0);  // -II*(Y,Z) X
        comp[i] -= (kk == j ? k[i] : 0.0);  // -I*(Y,Z) B*X
        comp[j] += (kk == i ? k[j] : 0.0);  // I*(X,Z) B*Y
        R.row(kk) = comp.transpose();       // lowered with I* = id in this frame
      }
    }

  // Codazzi defect of D*B* in the centered chart; FD step 1e-4, one
  // Richardson pass.  Christoffels of I* = e^{2Phi} delta are analytic.
  CenteredChart chart(s0);
  const Vec g_tan = g.u.tangential_gradient(s0);
  Vec dPhi(m);
  for (int a = 0; a < m; ++a) dPhi[a] = 2.0 * g_tan.dot(chart.E.col(a));
  auto gamma = [&](int kk, int a, int b) {
    return (kk == a ? dPhi[b] : 0.0) + (kk == b ? dPhi[a] : 0.0) - (a == b ? dPhi[kk] : 0.0);
  };
  const Mat B0 = bstar_chart_at(g, chart, Vec::Zero(m));
  const double h = 1e-4;
  std::vector<Mat> dB(m);
  for (int a = 0; a < m; ++a) {
    auto central = [&](double step) {
      Vec wp = Vec::Zero(m), wm = Vec::Zero(m);
      wp[a] = step;
      wm[a] = -step;
      return ((bstar_chart_at(g, chart, wp) - bstar_chart_at(g, chart, wm)) / (2.0 * step))
          .eval();
    };
    const Mat d1 = central(h);
    const Mat d2 = central(h / 2.0);
    dB[a] = (4.0 * d2 - d1) / 3.0;
  }
  double defect = 0.0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int kk = 0; kk < m; ++kk) {
        double da = dB[a](kk, b), db = dB[b](kk, a);
        for (int l = 0; l < m; ++l) {
          da += gamma(kk, a, l) * B0(l, b) - gamma(l, a, b) * B0(kk, l);
          db += gamma(kk, b, l) * B0(l, a) - gamma(l, b, a) * B0(kk, l);
        }
        defect = std::max(defect, std::abs(da - db));
      }
  out.codazzi_defect = defect;
  return out;
}

Vec cone_embed(const Horosphere& xi) {
  Vec out(xi.xi.size() + 1);
  out.head(xi.xi.size()) = xi.xi;
  out[xi.xi.size()] = 1.0;
  return out;
}

ConformalReport boundary_conformal_report(const Isometry& g, const TGHyperplane& hp,
                                          const Vec& s) {
  const int dim = hp.pole.ambient_dim();
  const Mat V = spacelike_basis(hp.pole.v);
  const Vec xih = hp.pole.v + V * s;
  const Vec gxi = g.m * xih;
  const double a = -1.0 / mink_inner(hp.pole.v, gxi);

  const Mat E = sphere_tangent_basis(s);
  std::vector<double> factors;
  const Mat eta = eta_matrix(dim);
  auto push_dir = [&](const Vec& X) {
    const Vec dgxi = g.m * (V * X);
    const double da = a * a * mink_inner(hp.pole.v, dgxi);
    const Vec dy = a * dgxi + da * gxi;          // derivative of the projected point
    const Vec dS = V.transpose() * (eta * dy);   // back to intrinsic sphere coords
    factors.push_back(dS.norm() / X.norm());
  };
  for (int i = 0; i < E.cols(); ++i) push_dir(E.col(i));
  for (int i = 0; i + 1 < E.cols(); ++i) push_dir((E.col(i) + E.col(i + 1)).eval());

  double fmin = factors[0], fmax = factors[0], mean = 0.0;
  for (double f : factors) {
    fmin = std::min(fmin, f);
    fmax = std::max(fmax, f);
    mean += f;
  }
  mean /= factors.size();
  return ConformalReport{mean, (fmax - fmin) / mean};
}

}  // namespace horo
