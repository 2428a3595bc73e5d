#pragma once

#include <functional>
#include <vector>

#include "horo/minkowski.hpp"

namespace horo {

/// Finite-difference curvature of a metric given by chart components.
/// Independent of the analytic curvature paths: consumes only pointwise
/// metric evaluations (Christoffels and their derivatives by central
/// differences).
using MetricField = std::function<Mat(const Vec&)>;

struct FdCurvature {
  std::vector<Mat> riemann;  // R[i*m+j](k,l) = R(e_i,e_j,e_k,e_l), coordinate frame
  Mat g;                     // metric at the base point
};

FdCurvature fd_riemann(const MetricField& metric, const Vec& w, double step = 1e-3);

/// Sectional curvature from an FdCurvature result on the plane of two
/// coordinate-frame vectors.
double fd_sectional(const FdCurvature& R, const Vec& X, const Vec& Y);

}  // namespace horo
