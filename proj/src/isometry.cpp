#include "horo/isometry.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace horo {

Isometry::Isometry(Mat matrix, IsometryKind k, double tol) : m(std::move(matrix)), kind(k) {
  const int dim = static_cast<int>(m.rows());
  const Mat eta = eta_matrix(dim);
  if ((m.transpose() * eta * m - eta).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("Isometry: matrix does not preserve the form");
  if (m(0, 0) <= 0.0)
    throw std::invalid_argument("Isometry: not future-preserving");
}

Isometry identity_isometry(int ambient_dim) {
  return Isometry(Mat::Identity(ambient_dim, ambient_dim), IsometryKind::composite);
}

Isometry compose(const Isometry& a, const Isometry& b) {
  return Isometry(a.m * b.m, IsometryKind::composite);
}

Isometry make_rotation(const HPoint& center, const Vec& a, const Vec& b, double angle) {
  const int dim = center.ambient_dim();
  Vec u = tangent_project(center.v, a);
  double n2 = mink_norm_sq(u);
  if (n2 < 1e-14) throw std::invalid_argument("make_rotation: degenerate plane vector a");
  u /= std::sqrt(n2);
  Vec w = tangent_project(center.v, b);
  w -= mink_inner(w, u) * u;
  n2 = mink_norm_sq(w);
  if (n2 < 1e-14) throw std::invalid_argument("make_rotation: plane vectors not independent");
  w /= std::sqrt(n2);

  const Vec ul = eta_apply(u), wl = eta_apply(w);
  Mat m = Mat::Identity(dim, dim);
  m += std::sin(angle) * (w * ul.transpose() - u * wl.transpose());
  m += (std::cos(angle) - 1.0) * (u * ul.transpose() + w * wl.transpose());
  return Isometry(std::move(m), IsometryKind::rotation);
}

Isometry make_translation(const HPoint& x, const Vec& dir, double length) {
  const int dim = x.ambient_dim();
  Vec w = tangent_project(x.v, dir);
  const double n2 = mink_norm_sq(w);
  if (n2 < 1e-14) throw std::invalid_argument("make_translation: degenerate direction");
  w /= std::sqrt(n2);

  const Vec xl = eta_apply(x.v), wl = eta_apply(w);
  Mat m = Mat::Identity(dim, dim);
  m += (std::cosh(length) - 1.0) * (-x.v * xl.transpose() + w * wl.transpose());
  m += std::sinh(length) * (x.v * wl.transpose() - w * xl.transpose());
  return Isometry(std::move(m), IsometryKind::translation);
}

Isometry make_translation(const HPoint& x, const HPoint& y) {
  const double d = hdist(x, y);
  if (d < 1e-14) return identity_isometry(x.ambient_dim());
  const Vec w = tangent_project(x.v, y.v);
  Isometry g = make_translation(x, w, d);
  g.kind = IsometryKind::translation;
  return g;
}

Isometry make_parabolic(const Horosphere& fixed, const Vec& shear) {
  const int dim = static_cast<int>(fixed.xi.size());
  const Vec& xi = fixed.xi;
  Vec v = shear;
  // the generator needs <v,xi> = 0; remove any pencil leakage along xi is
  // impossible (xi is null), so require tangency outright
  if (std::abs(mink_inner(v, xi)) > 1e-8 * std::max(1.0, v.norm() * xi.norm()))
    throw std::invalid_argument("make_parabolic: shear not tangent to the cone at xi");
  const double v2 = mink_norm_sq(v);
  if (v2 < 1e-14) throw std::invalid_argument("make_parabolic: shear parallel to xi");

  // G u = <v,u> xi - <xi,u> v is nilpotent of order 3; exp(G) is quadratic.
  const Vec vl = eta_apply(v), xil = eta_apply(xi);
  Mat G = xi * vl.transpose() - v * xil.transpose();
  Mat m = Mat::Identity(dim, dim) + G + 0.5 * (G * G);
  return Isometry(std::move(m), IsometryKind::parabolic);
}

Isometry extend_from_hyperplane(const DeSitterPoint& pole, const Mat& sub, bool positive) {
  const int dim = static_cast<int>(pole.v.size());
  if (sub.rows() != dim - 1 || sub.cols() != dim - 1)
    throw std::invalid_argument("extend_from_hyperplane: sub-isometry has wrong size");
  const Mat frame = hyperplane_frame(pole.v);
  // validate sub against the induced (n-1,1) form
  const Mat eta_sub = eta_matrix(dim - 1);
  if ((sub.transpose() * eta_sub * sub - eta_sub).cwiseAbs().maxCoeff() > 1e-8)
    throw std::invalid_argument("extend_from_hyperplane: sub does not preserve the form");
  if (sub(0, 0) <= 0.0)
    throw std::invalid_argument("extend_from_hyperplane: sub not future-preserving");

  Mat F(dim, dim);
  F.leftCols(dim - 1) = frame;
  F.col(dim - 1) = pole.v;
  const double det_sub = sub.determinant();
  const double eps = positive ? (det_sub > 0 ? 1.0 : -1.0) : (det_sub > 0 ? -1.0 : 1.0);
  Mat D = Mat::Zero(dim, dim);
  D.topLeftCorner(dim - 1, dim - 1) = sub;
  D(dim - 1, dim - 1) = eps;
  // F is an eta-orthonormal frame, so F^{-1} = eta F^t eta
  const Mat eta = eta_matrix(dim);
  Mat m = F * D * (eta * F.transpose() * eta);
  return Isometry(std::move(m), IsometryKind::extension);
}

namespace {

// null directions of the restriction of the form to an eigenspace (columns of V)
void null_directions_in(const Mat& V, double lambda, NullSpectrum& out) {
  const int d = static_cast<int>(V.cols());
  Mat Q(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) Q(i, j) = mink_inner(V.col(i), V.col(j));
  Eigen::SelfAdjointEigenSolver<Mat> es(Q);
  const Vec ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  std::vector<int> neg, zero, pos;
  for (int i = 0; i < d; ++i) {
    if (std::abs(ev[i]) <= 1e-7 * scale) zero.push_back(i);
    else if (ev[i] < 0) neg.push_back(i);
    else pos.push_back(i);
  }
  auto emit = [&](Vec dir) {
    if (std::abs(dir[0]) < 1e-9 * dir.norm()) return;  // not a usable null ray
    if (dir[0] < 0) dir = -dir;
    dir /= dir[0];
    for (const auto& l : out.lines)
      if ((l.direction - dir).norm() < 1e-6) return;
    out.lines.push_back({dir, lambda, std::abs(lambda - 1.0) <= 1e-9});
  };
  for (int i : zero) emit(V * es.eigenvectors().col(i));
  if (!neg.empty() && !pos.empty()) {
    if (static_cast<int>(neg.size() + pos.size()) > 2 || neg.size() > 1) {
      out.degenerate_cone = true;  // a whole cone of null directions
      return;
    }
    // Lorentzian 2-plane: exactly two null lines
    const Vec up = V * es.eigenvectors().col(pos[0]) / std::sqrt(ev[pos[0]]);
    const Vec un = V * es.eigenvectors().col(neg[0]) / std::sqrt(-ev[neg[0]]);
    emit(un + up);
    emit(un - up);
  }
}

}  // namespace

NullSpectrum invariant_null_spectrum(const Isometry& g) {
  const int dim = g.ambient_dim();
  NullSpectrum out;
  Eigen::EigenSolver<Mat> es(g.m);
  // Cluster the computed eigenvalues: a Jordan block (parabolic) splits its
  // eigenvalue by ~eps^{1/3}, but the cluster mean recovers it to ~eps^{2/3}.
  std::vector<std::complex<double>> sums;
  std::vector<int> counts;
  for (int i = 0; i < dim; ++i) {
    const std::complex<double> lam = es.eigenvalues()[i];
    bool placed = false;
    for (std::size_t c = 0; c < sums.size() && !placed; ++c) {
      if (std::abs(lam - sums[c] / static_cast<double>(counts[c])) <= 1e-5) {
        sums[c] += lam;
        counts[c] += 1;
        placed = true;
      }
    }
    if (!placed) {
      sums.push_back(lam);
      counts.push_back(1);
    }
  }
  std::vector<double> reals;
  for (std::size_t c = 0; c < sums.size(); ++c) {
    const std::complex<double> mean = sums[c] / static_cast<double>(counts[c]);
    if (std::abs(mean.imag()) <= 1e-9 * std::max(1.0, std::abs(mean)))
      reals.push_back(mean.real());
  }
  for (double lam : reals) {
    // eigenspace via SVD nullspace of (M - lambda I); robust for Jordan blocks
    Eigen::JacobiSVD<Mat> svd(g.m - lam * Mat::Identity(dim, dim), Eigen::ComputeFullV);
    const Vec sv = svd.singularValues();
    const double cut = 1e-8 * std::max(1.0, sv[0]);
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i) rank += sv[i] > cut ? 1 : 0;
    const int nullity = dim - rank;
    if (nullity == 0) continue;
    null_directions_in(svd.matrixV().rightCols(nullity), lam, out);
  }
  std::sort(out.lines.begin(), out.lines.end(),
            [](const NullLine& a, const NullLine& b) { return a.eigenvalue < b.eigenvalue; });
  return out;
}

}  // namespace horo
