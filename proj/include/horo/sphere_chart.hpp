#pragma once

#include <cstdint>
#include <vector>

#include "horo/minkowski.hpp"

namespace horo {

/// Orthonormal basis of the tangent space of S^{m-1} at s (columns, m x (m-1)).
Mat sphere_tangent_basis(const Vec& s);

/// Stereographic chart of S^{m-1} centered at s0: the chart map sends
/// w in R^{m-1} to (2w, 1-|w|^2)/(1+|w|^2) in the basis [E | s0], so the
/// center corresponds to w = 0 with ds/dw(0) = 2E.
struct CenteredChart {
  Vec s0;  // in R^m
  Mat E;   // m x (m-1), ON tangent basis at s0

  explicit CenteredChart(Vec center);

  int m() const { return static_cast<int>(s0.size()); }

  Vec point(const Vec& w) const;
  /// 1- and 2-jets of the chart map at arbitrary w (closed form).
  void jet(const Vec& w, Vec& s, Mat& ds, std::vector<Mat>& d2s) const;
};

/// Fixed two-chart stereographic atlas of S^{m-1} (charts from the
/// south/north poles of the last coordinate axis).
struct Atlas {
  int m;

  Vec point(int chart, const Vec& w) const;
  void jet(int chart, const Vec& w, Vec& s, Mat& ds, std::vector<Mat>& d2s) const;
  /// Chart assignment: chart 0 for s_m >= 0, chart 1 otherwise.
  std::pair<int, Vec> locate(const Vec& s) const;
};

// ---- sample grids on S^{m-1} ----

/// Fibonacci lattice on S^2 (m = 3 only); near-uniform low-discrepancy set.
std::vector<Vec> fibonacci_sphere(int count);

/// Product grid in spherical angles, about per_axis^(m-1) points.
std::vector<Vec> product_grid_sphere(int m, int per_axis);

/// Seeded uniform samples (normalized Gaussians).
std::vector<Vec> random_sphere(int m, int count, std::uint64_t seed);

}  // namespace horo
