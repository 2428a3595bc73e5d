#include "horo/admissibility.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace horo {

CurvatureData conformal_curvature(const ConformalFactor& u, const Vec& s) {
  const int m = u.dim();      // sphere lives in R^m
  const int mm = m - 1;       // sphere dimension
  if (mm < 2) throw std::invalid_argument("conformal_curvature: needs n >= 3");
  CurvatureData cd;
  cd.frame = sphere_tangent_basis(s);

  double val;
  Vec grad;
  Mat hess;
  u.ambient_jet(s, val, grad, hess);
  cd.u_value = val;
  const Vec gv = cd.frame.transpose() * grad;  // tangential gradient components
  const Mat Ht = u.tangential_hessian(s, cd.frame);
  const double lap = Ht.trace();
  const double nd2 = gv.squaredNorm();

  // ric_h = ric_can - (mm-2)(Hess u - du du) - (lap u + (mm-2)|du|^2) can
  cd.ric = (mm - 1.0) * Mat::Identity(mm, mm);
  cd.ric -= (mm - 2.0) * (Ht - gv * gv.transpose());
  cd.ric -= (lap + (mm - 2.0) * nd2) * Mat::Identity(mm, mm);
  cd.S_scalar =
      std::exp(-2.0 * val) * (mm * (mm - 1.0) - 2.0 * (mm - 1.0) * lap -
                              (mm - 1.0) * (mm - 2.0) * nd2);
  return cd;
}

double conformal_sectional(const ConformalFactor& u, const Vec& s, const Mat& frame,
                           const Vec& X, const Vec& Y) {
  double val;
  Vec grad;
  Mat hess;
  u.ambient_jet(s, val, grad, hess);
  const Vec gv = frame.transpose() * grad;
  const Mat Ht = u.tangential_hessian(s, frame);
  const Mat W = Ht - gv * gv.transpose() + 0.5 * gv.squaredNorm() *
                                               Mat::Identity(Ht.rows(), Ht.cols());
  // can-orthonormalize the plane
  Vec Xn = X / X.norm();
  Vec Yp = Y - Y.dot(Xn) * Xn;
  const double yn = Yp.norm();
  if (yn < 1e-12) throw std::invalid_argument("conformal_sectional: degenerate plane");
  Yp /= yn;
  return std::exp(-2.0 * val) * (1.0 - Xn.dot(W * Xn) - Yp.dot(W * Yp));
}

NormalizedFactor::NormalizedFactor(const GraphSurface& g, const Vec& x) : g_(&g) {
  pole_ = tangent_hyperplane(g, x).pole;
  const Mat eta = eta_matrix(g.base.ambient_dim());
  pv_ = g.V.transpose() * (eta * pole_.v);
  p0_ = -mink_inner(pole_.v, g.base.v);
}

double NormalizedFactor::value(const Vec& y) const {
  return g_->u.value(y) + std::log(p0_ - pv_.dot(y));
}

Vec NormalizedFactor::tangential_gradient(const Vec& y) const {
  const double G = p0_ - pv_.dot(y);
  const Vec grad_log = -pv_ / G;
  const Vec tan_log = grad_log - grad_log.dot(y) * y;
  return g_->u.tangential_gradient(y) + tan_log;
}

Mat NormalizedFactor::tangential_hessian(const Vec& y, const Mat& E) const {
  const double G = p0_ - pv_.dot(y);
  const Vec bE = E.transpose() * pv_;
  const int mm = static_cast<int>(E.cols());
  // Hess_S log G = -(b.X)(b.Y)/G^2 + ((b.y)/G) <X,Y>
  Mat H = -(bE * bE.transpose()) / (G * G);
  H += (pv_.dot(y) / G) * Mat::Identity(mm, mm);
  return g_->u.tangential_hessian(y, E) + H;
}

const char* to_string(AdmissibilityClass c) {
  switch (c) {
    case AdmissibilityClass::C_admissible: return "C_admissible";
    case AdmissibilityClass::H_admissible: return "H_admissible";
    case AdmissibilityClass::boundary: return "boundary";
    case AdmissibilityClass::neither: return "neither";
  }
  return "?";
}

Vec principal_from_ricci(const CurvatureData& cd, int n) {
  if (n < 4)
    throw std::invalid_argument("principal_from_ricci: n_too_small (formula divides by n-3)");
  // h-orthonormal frame: scale the can-ON frame by e^{-u}
  const double e2u = std::exp(2.0 * cd.u_value);
  Eigen::SelfAdjointEigenSolver<Mat> es(cd.ric);
  Vec k(es.eigenvalues().size());
  for (int i = 0; i < k.size(); ++i) {
    const double ric_ii = es.eigenvalues()[i] / e2u;
    k[i] = (cd.S_scalar - 2.0 * (n - 2.0) * ric_ii) / (2.0 * (n - 2.0) * (n - 3.0)) + 0.5;
  }
  std::sort(k.begin(), k.end());
  return k;
}

std::vector<Vec> default_admissibility_grid(int n) {
  switch (n) {
    case 3: return fibonacci_sphere(2000);
    case 4: return product_grid_sphere(4, 32);
    case 5: return product_grid_sphere(5, 32);
    default: throw std::invalid_argument("default_admissibility_grid: n must be 3, 4 or 5");
  }
}

AdmissibilityReport admissibility_test(const ConformalFactor& u, const std::vector<Vec>& grid,
                                       int n) {
  if (grid.empty()) throw std::invalid_argument("admissibility_test: empty grid");
  if (u.dim() != n) throw std::invalid_argument("admissibility_test: factor dim != n");
  Vec base = Vec::Zero(n + 1);
  base[0] = 1.0;
  const GraphSurface g(HPoint(base), u);

  AdmissibilityReport rep;
  rep.samples = static_cast<int>(grid.size());
  rep.min_eig = 1e300;
  rep.max_eig = -1e300;
  rep.min_sectional = 1e300;
  rep.max_sectional = -1e300;
  for (const auto& s : grid) {
    const StarForms sf = star_forms(g, s);
    const double lo = sf.kstar[0], hi = sf.kstar[sf.kstar.size() - 1];
    if (lo < rep.min_eig) {
      rep.min_eig = lo;
      rep.worst_sample = s;
    }
    rep.max_eig = std::max(rep.max_eig, hi);
    // sectional range via the Gauss formula on the eigenframe
    for (int i = 0; i < sf.kstar.size(); ++i)
      for (int j = i + 1; j < sf.kstar.size(); ++j) {
        const double K = 1.0 - sf.kstar[i] - sf.kstar[j];
        rep.min_sectional = std::min(rep.min_sectional, K);
        rep.max_sectional = std::max(rep.max_sectional, K);
      }
    if (n >= 4) {
      const Vec kr = principal_from_ricci(conformal_curvature(u, s), n);
      Vec kh = sf.kstar;
      std::sort(kh.begin(), kh.end());
      rep.route_disagreement =
          std::max(rep.route_disagreement, (kr - kh).cwiseAbs().maxCoeff());
    }
  }
  rep.worst_margin = rep.min_eig;

  const double eps = 1e-9;
  if (std::abs(rep.min_eig) <= eps)
    rep.cls = AdmissibilityClass::boundary;
  else if (rep.min_eig > eps && rep.max_eig < 1.0 - eps)
    rep.cls = AdmissibilityClass::C_admissible;
  else if (rep.min_eig > eps)
    rep.cls = AdmissibilityClass::H_admissible;
  else
    rep.cls = AdmissibilityClass::neither;
  return rep;
}

SurfaceFamily reconstruct_surface(const ConformalFactor& u, const HPoint& x0,
                                  const std::vector<Vec>& grid) {
  const int n = x0.ambient_dim() - 1;
  const AdmissibilityReport rep = admissibility_test(u, grid, n);
  if (rep.cls != AdmissibilityClass::H_admissible &&
      rep.cls != AdmissibilityClass::C_admissible) {
    throw NotAdmissible(
        std::string("reconstruct_surface: factor not H-admissible (") + to_string(rep.cls) +
            "), min Hessian eigenvalue " + std::to_string(rep.min_eig),
        rep.worst_sample, rep.worst_margin);
  }
  return build_reconstructed(GraphSurface(x0, u));
}

SurfaceFamily reconstruct_surface(const ConformalFactor& u, const HPoint& x0) {
  return reconstruct_surface(u, x0, default_admissibility_grid(x0.ambient_dim() - 1));
}

double roundtrip_check(const ConformalFactor& u, const HPoint& x0,
                       const std::vector<Vec>& grid) {
  const GraphSurface g(x0, u);
  const int m = g.n() - 1;
  double worst = 0.0;
  for (const auto& s : grid) {
    CenteredChart chart(s);
    const ImmersionJet jet = envelope_jet(g, chart, Vec::Zero(m));
    const DualSample d = dualize(jet);
    // expected: e^{2u} times the chart round metric (4 Id at the center)
    const double scale = 4.0 * std::exp(2.0 * u.value(s));
    const Mat expect = scale * Mat::Identity(m, m);
    worst = std::max(worst, (d.istar_pullback - expect).cwiseAbs().maxCoeff() / scale);
  }
  return worst;
}

}  // namespace horo
