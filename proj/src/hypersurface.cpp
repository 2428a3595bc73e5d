#include "horo/hypersurface.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "horo/isometry.hpp"
#include "horo/sphere_chart.hpp"

namespace horo {

double ImmersionJet::tangency_residual() const {
  double r = std::abs(mink_norm_sq(x) + 1.0);
  for (const auto& d : dx) r = std::max(r, std::abs(mink_inner(x, d)));
  return r;
}

FrameForms forms_at(const ImmersionJet& jet) {
  const int m = jet.chart_dim();
  const int dim = jet.ambient_dim();
  if (m != dim - 2) throw std::invalid_argument("forms_at: not a hypersurface jet");
  if (jet.tangency_residual() > 1e-8)
    throw std::invalid_argument("forms_at: jet violates hyperboloid tangency");

  std::vector<Vec> dx(m);
  for (int i = 0; i < m; ++i) dx[i] = tangent_project(jet.x, jet.dx[i]);

  FrameForms f;
  f.I.resize(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= i; ++j) f.I(i, j) = f.I(j, i) = mink_inner(dx[i], dx[j]);
  Eigen::LLT<Mat> llt(f.I);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("forms_at: rank-deficient immersion (I not positive definite)");

  // unit normal: kernel of span{x, dx}, sign fixed by the orientation hint
  Mat rows(m + 1, dim);
  rows.row(0) = eta_apply(jet.x).transpose();
  for (int i = 0; i < m; ++i) rows.row(i + 1) = eta_apply(dx[i]).transpose();
  Eigen::JacobiSVD<Mat> svd(rows, Eigen::ComputeFullV);
  Vec N = svd.matrixV().col(dim - 1);
  const double n2 = mink_norm_sq(N);
  if (n2 < 1e-12) throw std::invalid_argument("forms_at: non-normalizable normal");
  N /= std::sqrt(n2);
  if (jet.normal_hint.size() == 0)
    throw std::invalid_argument("forms_at: orientation hint required");
  if (mink_inner(N, jet.normal_hint) < 0) N = -N;
  f.N = N;

  if (jet.d2x.empty()) throw std::invalid_argument("forms_at: jet lacks second derivatives");
  f.II.resize(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= i; ++j)
      f.II(i, j) = f.II(j, i) = -mink_inner(N, jet.d2x[i][j]);

  f.B = llt.solve(f.II);
  f.III = f.B.transpose() * f.I * f.B;

  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> ges(f.II, f.I);
  f.k = ges.eigenvalues();
  f.H_mean = f.B.trace() / m;
  f.K_gauss = f.B.determinant() - 1.0;
  return f;
}

Mat horospherical_metric_direct(const FrameForms& f) { return f.I + 2.0 * f.II + f.III; }

ConvexityClass classify_convexity(const FrameForms& f, double eps) {
  bool singular = false, all_pos = true, all_nonneg = true, all_hconvex = true;
  for (int i = 0; i < f.k.size(); ++i) {
    const double k = f.k[i];
    singular = singular || std::abs(k + 1.0) <= eps;
    all_pos = all_pos && k > eps;
    all_nonneg = all_nonneg && k > -eps;
    all_hconvex = all_hconvex && k > -1.0 + eps;
  }
  if (singular) return ConvexityClass::dual_singular;
  if (all_pos) return ConvexityClass::convex;
  if (all_nonneg) return ConvexityClass::weakly;
  if (all_hconvex) return ConvexityClass::strictly_h_convex;
  return ConvexityClass::none;
}

const char* to_string(ConvexityClass c) {
  switch (c) {
    case ConvexityClass::dual_singular: return "dual_singular";
    case ConvexityClass::convex: return "convex";
    case ConvexityClass::weakly: return "weakly";
    case ConvexityClass::strictly_h_convex: return "strictly_H_convex";
    case ConvexityClass::none: return "none";
  }
  return "?";
}

Vec gauss_map(const ImmersionJet& jet) { return jet.x + forms_at(jet).N; }

namespace {

std::vector<std::pair<int, Vec>> sphere_atlas_samples(int m, int count, std::uint64_t seed) {
  Atlas atlas{m};
  std::vector<std::pair<int, Vec>> out;
  out.reserve(count);
  for (const auto& s : random_sphere(m, count, seed)) out.push_back(atlas.locate(s));
  return out;
}

std::vector<std::pair<int, Vec>> window_samples(int k, int count, std::uint64_t seed,
                                                double radius) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-radius, radius);
  std::vector<std::pair<int, Vec>> out;
  out.reserve(count);
  while (static_cast<int>(out.size()) < count) {
    Vec w(k);
    for (int i = 0; i < k; ++i) w[i] = unif(rng);
    if (w.norm() <= radius) out.emplace_back(0, std::move(w));
  }
  return out;
}

}  // namespace

SurfaceFamily build_sphere(const HPoint& center, double radius) {
  if (radius <= 0.0) throw std::invalid_argument("build_sphere: radius must be positive");
  const int n = center.ambient_dim() - 1;
  const Mat V = spacelike_basis(center.v);
  const Vec c = center.v;
  const double ch = std::cosh(radius), sh = std::sinh(radius);
  auto eval = [=](int chart, const Vec& w) {
    Atlas atlas{n};
    Vec s;
    Mat ds;
    std::vector<Mat> d2s;
    atlas.jet(chart, w, s, ds, d2s);
    ImmersionJet jet;
    jet.chart_point = w;
    jet.x = ch * c + sh * (V * s);
    jet.dx.resize(n - 1);
    for (int i = 0; i < n - 1; ++i) jet.dx[i] = sh * (V * ds.col(i));
    jet.d2x.assign(n - 1, std::vector<Vec>(n - 1));
    for (int i = 0; i < n - 1; ++i)
      for (int j = 0; j < n - 1; ++j) jet.d2x[i][j] = sh * (V * d2s[i].col(j));
    jet.normal_hint = sh * c + ch * (V * s);  // exact outward normal
    return jet;
  };
  auto sampler = [n](int count, std::uint64_t seed) {
    return sphere_atlas_samples(n, count, seed);
  };
  return SurfaceFamily(FamilyKind::geodesic_sphere, n, 2, eval, sampler);
}

namespace {

// graph chart of the totally geodesic hyperplane pole^perp:
// x(q) = sqrt(1+|q|^2) b0 + sum q_i b_i in the frame of the pole
SurfaceFamily build_equidistant_impl(const DeSitterPoint& pole, double distance,
                                     FamilyKind kind) {
  const int dim = static_cast<int>(pole.v.size());
  const int n = dim - 1;
  const Mat F = hyperplane_frame(pole.v);
  const Vec p = pole.v;
  const double ch = std::cosh(distance), sh = std::sinh(distance);
  auto eval = [=](int, const Vec& q) {
    const int k = n - 1;
    const double r2 = q.squaredNorm();
    const double a = std::sqrt(1.0 + r2);
    Vec xh = a * F.col(0);
    for (int i = 0; i < k; ++i) xh += q[i] * F.col(i + 1);
    ImmersionJet jet;
    jet.chart_point = q;
    jet.x = ch * xh + sh * p;
    jet.dx.resize(k);
    std::vector<Vec> dxh(k);
    for (int i = 0; i < k; ++i) {
      dxh[i] = (q[i] / a) * F.col(0) + F.col(i + 1);
      jet.dx[i] = ch * dxh[i];
    }
    jet.d2x.assign(k, std::vector<Vec>(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        const double dij = (i == j ? 1.0 : 0.0) / a - q[i] * q[j] / (a * a * a);
        jet.d2x[i][j] = ch * dij * F.col(0);
      }
    jet.normal_hint = sh * xh + ch * p;  // exact normal, away from the hyperplane
    return jet;
  };
  auto sampler = [n](int count, std::uint64_t seed) {
    return window_samples(n - 1, count, seed, 1.2);
  };
  return SurfaceFamily(kind, n, 1, eval, sampler);
}

}  // namespace

SurfaceFamily build_hyperplane(const DeSitterPoint& pole) {
  return build_equidistant_impl(pole, 0.0, FamilyKind::totally_geodesic_hyperplane);
}

SurfaceFamily build_equidistant(const DeSitterPoint& pole, double distance) {
  return build_equidistant_impl(pole, distance, FamilyKind::equidistant);
}

SurfaceFamily build_klein_quadric(const Vec& semi_axes) {
  const int n = static_cast<int>(semi_axes.size());
  for (int i = 0; i < n; ++i)
    if (semi_axes[i] <= 0.0 || semi_axes[i] >= 1.0)
      throw std::invalid_argument("build_klein_quadric: semi-axes must lie in (0,1)");
  const Vec axes = semi_axes;
  auto eval = [=](int chart, const Vec& w) {
    Atlas atlas{n};
    Vec s;
    Mat ds;
    std::vector<Mat> d2s;
    atlas.jet(chart, w, s, ds, d2s);
    const int k = n - 1;
    const Vec f = axes.cwiseProduct(s);
    std::vector<Vec> df(k), d2f(k * k);
    for (int i = 0; i < k; ++i) df[i] = axes.cwiseProduct(ds.col(i));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) d2f[i * k + j] = axes.cwiseProduct(d2s[i].col(j));
    const double g = f.squaredNorm();
    if (g >= 1.0) throw std::invalid_argument("build_klein_quadric: point outside the ball");
    const double r = 1.0 / std::sqrt(1.0 - g);
    const double r3 = r * r * r, r5 = r3 * r * r;
    Vec dr(k);
    for (int i = 0; i < k; ++i) dr[i] = r3 * f.dot(df[i]);
    ImmersionJet jet;
    jet.chart_point = w;
    jet.x.resize(n + 1);
    jet.x[0] = r;
    jet.x.tail(n) = r * f;
    jet.dx.resize(k);
    for (int i = 0; i < k; ++i) {
      Vec v(n + 1);
      v[0] = dr[i];
      v.tail(n) = dr[i] * f + r * df[i];
      jet.dx[i] = std::move(v);
    }
    jet.d2x.assign(k, std::vector<Vec>(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        const double d2r = 3.0 * r5 * f.dot(df[i]) * f.dot(df[j]) +
                           r3 * (df[i].dot(df[j]) + f.dot(d2f[i * k + j]));
        Vec v(n + 1);
        v[0] = d2r;
        v.tail(n) = d2r * f + dr[i] * df[j] + dr[j] * df[i] + r * d2f[i * k + j];
        jet.d2x[i][j] = std::move(v);
      }
    // outward orientation: away from the enclosed base point e0
    Vec c = Vec::Zero(n + 1);
    c[0] = 1.0;
    jet.normal_hint = -(c + mink_inner(c, jet.x) * jet.x);
    return jet;
  };
  auto sampler = [n](int count, std::uint64_t seed) {
    return sphere_atlas_samples(n, count, seed);
  };
  return SurfaceFamily(FamilyKind::klein_quadric, n, 2, eval, sampler);
}

SurfaceFamily build_horosphere_surface(const Horosphere& xi) {
  const int dim = static_cast<int>(xi.xi.size());
  const int n = dim - 1;
  // move the standard pencil (1,1,0,...) onto xi: spatial rotation + boost
  const double scale = xi.xi[0];
  Vec u = xi.xi.tail(n) / scale;  // unit spatial direction
  Mat R = Mat::Identity(dim, dim);
  {
    Vec e1 = Vec::Zero(n);
    e1[0] = 1.0;
    const Vec v = u - e1;
    const double vn2 = v.squaredNorm();
    if (vn2 > 1e-14)  // Householder reflection e1 -> u, then fix orientation
      R.bottomRightCorner(n, n) -= (2.0 / vn2) * (v * v.transpose());
  }
  Mat Boost = Mat::Identity(dim, dim);
  const double L = std::log(scale);
  Boost(0, 0) = std::cosh(L);
  Boost(0, 1) = Boost(1, 0) = std::sinh(L);
  Boost(1, 1) = std::cosh(L);
  const Mat M = R * Boost;
  const Vec xiv = xi.xi;
  auto eval = [=](int, const Vec& v) {
    const int k = n - 1;
    ImmersionJet jet;
    jet.chart_point = v;
    Vec x(dim);
    x[0] = 1.0 + 0.5 * v.squaredNorm();
    x[1] = 0.5 * v.squaredNorm();
    x.tail(k) = v;
    jet.x = M * x;
    jet.dx.resize(k);
    for (int i = 0; i < k; ++i) {
      Vec d = Vec::Zero(dim);
      d[0] = v[i];
      d[1] = v[i];
      d[2 + i] = 1.0;
      jet.dx[i] = M * d;
    }
    jet.d2x.assign(k, std::vector<Vec>(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        Vec d = Vec::Zero(dim);
        d[0] = d[1] = (i == j ? 1.0 : 0.0);
        jet.d2x[i][j] = M * d;
      }
    jet.normal_hint = xiv - jet.x;  // toward the ideal point
    return jet;
  };
  auto sampler = [n](int count, std::uint64_t seed) {
    return window_samples(n - 1, count, seed, 1.5);
  };
  return SurfaceFamily(FamilyKind::horosphere, n, 1, eval, sampler);
}

ImmersionJet transform(const Isometry& g, const ImmersionJet& jet) {
  ImmersionJet out = jet;
  out.x = g.m * jet.x;
  for (auto& d : out.dx) d = g.m * d;
  for (auto& row : out.d2x)
    for (auto& d : row) d = g.m * d;
  if (jet.normal_hint.size() > 0) out.normal_hint = g.m * jet.normal_hint;
  return out;
}

}  // namespace horo
