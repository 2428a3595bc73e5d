#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace horo {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Default tolerance for type invariants (|<x,x>+1| etc.).
inline constexpr double kFormTol = 1e-10;

/// Minkowski bilinear form <u,v> = -u0 v0 + sum_{i>=1} ui vi.
inline double mink_inner(const Vec& u, const Vec& v) {
  if (u.size() != v.size())
    throw std::invalid_argument("mink_inner: dimension mismatch");
  return -u[0] * v[0] + u.tail(u.size() - 1).dot(v.tail(v.size() - 1));
}

inline double mink_norm_sq(const Vec& v) { return mink_inner(v, v); }

/// Lowered vector eta*v = (-v0, v1, ..., vn).
inline Vec eta_apply(const Vec& v) {
  Vec w = v;
  w[0] = -w[0];
  return w;
}

inline Mat eta_matrix(int dim) {
  Vec d = Vec::Ones(dim);
  d[0] = -1.0;
  return d.asDiagonal();
}

inline bool is_finite(const Vec& v) { return v.allFinite(); }

}  // namespace horo
