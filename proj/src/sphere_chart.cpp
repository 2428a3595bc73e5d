#include "horo/sphere_chart.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace horo {

Mat sphere_tangent_basis(const Vec& s) {
  const int m = static_cast<int>(s.size());
  Mat E(m, m - 1);
  int found = 0;
  for (int i = 0; i < m && found < m - 1; ++i) {
    Vec v = Vec::Zero(m);
    v[i] = 1.0;
    v -= (v.dot(s)) * s;
    for (int j = 0; j < found; ++j) v -= v.dot(E.col(j)) * E.col(j);
    const double n = v.norm();
    if (n > 1e-7) E.col(found++) = v / n;
  }
  if (found != m - 1) throw std::runtime_error("sphere_tangent_basis: degenerate point");
  return E;
}

CenteredChart::CenteredChart(Vec center) : s0(std::move(center)), E(sphere_tangent_basis(s0)) {}

Vec CenteredChart::point(const Vec& w) const {
  const double r2 = w.squaredNorm();
  return (2.0 * (E * w) + (1.0 - r2) * s0) / (1.0 + r2);
}

void CenteredChart::jet(const Vec& w, Vec& s, Mat& ds, std::vector<Mat>& d2s) const {
  const int k = m() - 1;
  const double r2 = w.squaredNorm();
  const double D = 1.0 + r2;
  s = (2.0 * (E * w) + (1.0 - r2) * s0) / D;
  ds.resize(m(), k);
  for (int b = 0; b < k; ++b)
    ds.col(b) = 2.0 * E.col(b) / D - (4.0 * w[b]) * (E * w) / (D * D) -
                (4.0 * w[b] / (D * D)) * s0;
  d2s.assign(k, Mat());
  // second derivatives of s_E = 2w/D and s_n = 2/D - 1, pushed through [E | s0]
  std::vector<Vec> cols(k);
  for (int b = 0; b < k; ++b) {
    Mat block(m(), k);
    for (int c = 0; c < k; ++c) {
      Vec t = (-4.0 * w[c]) * E.col(b) / (D * D) + (-4.0 * w[b]) * E.col(c) / (D * D) -
              4.0 * (b == c ? 1.0 : 0.0) * (E * w) / (D * D) +
              16.0 * w[b] * w[c] * (E * w) / (D * D * D);
      t += (-4.0 * (b == c ? 1.0 : 0.0) / (D * D) + 16.0 * w[b] * w[c] / (D * D * D)) * s0;
      block.col(c) = t;
    }
    d2s[b] = block;  // d2s[b].col(c) = d^2 s / dw_b dw_c
  }
}

Vec Atlas::point(int chart, const Vec& w) const {
  const double r2 = w.squaredNorm();
  Vec s(m);
  s.head(m - 1) = 2.0 * w / (1.0 + r2);
  s[m - 1] = (chart == 0 ? 1.0 : -1.0) * (1.0 - r2) / (1.0 + r2);
  return s;
}

void Atlas::jet(int chart, const Vec& w, Vec& s, Mat& ds, std::vector<Mat>& d2s) const {
  const int k = m - 1;
  const double sign = chart == 0 ? 1.0 : -1.0;
  const double r2 = w.squaredNorm();
  const double D = 1.0 + r2;
  s = point(chart, w);
  ds.resize(m, k);
  for (int b = 0; b < k; ++b) {
    Vec col = Vec::Zero(m);
    for (int i = 0; i < k; ++i)
      col[i] = 2.0 * (i == b ? 1.0 : 0.0) / D - 4.0 * w[b] * w[i] / (D * D);
    col[m - 1] = -sign * 4.0 * w[b] / (D * D);
    ds.col(b) = col;
  }
  d2s.assign(k, Mat::Zero(m, k));
  for (int b = 0; b < k; ++b)
    for (int c = 0; c < k; ++c) {
      Vec t = Vec::Zero(m);
      for (int i = 0; i < k; ++i)
        t[i] = -4.0 * ((i == b ? 1.0 : 0.0) * w[c] + (i == c ? 1.0 : 0.0) * w[b] +
                       (b == c ? 1.0 : 0.0) * w[i]) /
                   (D * D) +
               16.0 * w[b] * w[c] * w[i] / (D * D * D);
      t[m - 1] = sign * (-4.0 * (b == c ? 1.0 : 0.0) / (D * D) + 16.0 * w[b] * w[c] / (D * D * D));
      d2s[b].col(c) = t;
    }
}

std::pair<int, Vec> Atlas::locate(const Vec& s) const {
  const int chart = s[m - 1] >= 0.0 ? 0 : 1;
  const double sign = chart == 0 ? 1.0 : -1.0;
  const Vec w = s.head(m - 1) / (1.0 + sign * s[m - 1]);
  return {chart, w};
}

std::vector<Vec> fibonacci_sphere(int count) {
  std::vector<Vec> pts;
  pts.reserve(count);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / count;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    Vec s(3);
    s << r * std::cos(phi), r * std::sin(phi), z;
    pts.push_back(std::move(s));
  }
  return pts;
}

std::vector<Vec> product_grid_sphere(int m, int per_axis) {
  // spherical angles theta_1..theta_{m-2} in (0,pi), theta_{m-1} in [0,2pi)
  std::vector<Vec> pts;
  const int k = m - 1;
  std::vector<int> idx(k, 0);
  const double pi = std::numbers::pi;
  while (true) {
    Vec ang(k);
    for (int j = 0; j < k - 1; ++j) ang[j] = pi * (idx[j] + 0.5) / per_axis;
    ang[k - 1] = 2.0 * pi * (idx[k - 1] + 0.5) / per_axis;
    Vec s(m);
    double prod = 1.0;
    for (int j = 0; j < k; ++j) {
      s[j] = prod * std::cos(ang[j]);
      prod *= std::sin(ang[j]);
    }
    s[m - 1] = prod;
    pts.push_back(std::move(s));
    int c = k - 1;
    while (c >= 0 && ++idx[c] == per_axis) idx[c--] = 0;
    if (c < 0) break;
  }
  return pts;
}

std::vector<Vec> random_sphere(int m, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Vec> pts;
  pts.reserve(count);
  while (static_cast<int>(pts.size()) < count) {
    Vec s(m);
    for (int i = 0; i < m; ++i) s[i] = gauss(rng);
    const double n = s.norm();
    if (n < 1e-6) continue;
    pts.push_back(s / n);
  }
  return pts;
}

}  // namespace horo
