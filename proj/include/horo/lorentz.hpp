#pragma once

#include <cmath>
#include <stdexcept>

#include "horo/minkowski.hpp"

namespace horo {

/// Point on the hyperboloid model: <v,v> = -1, v0 > 0.
struct HPoint {
  Vec v;

  HPoint() = default;
  explicit HPoint(Vec coords, double tol = kFormTol) : v(std::move(coords)) {
    if (!is_finite(v)) throw std::invalid_argument("HPoint: non-finite entries");
    if (std::abs(mink_norm_sq(v) + 1.0) > tol)
      throw std::invalid_argument("HPoint: <v,v> != -1");
    if (v[0] <= 0.0) throw std::invalid_argument("HPoint: not future-pointing");
  }

  int ambient_dim() const { return static_cast<int>(v.size()); }
};

/// Point on the de Sitter sphere: <v,v> = 1 (poles of totally geodesic hyperplanes).
struct DeSitterPoint {
  Vec v;

  DeSitterPoint() = default;
  explicit DeSitterPoint(Vec coords, double tol = kFormTol) : v(std::move(coords)) {
    if (!is_finite(v)) throw std::invalid_argument("DeSitterPoint: non-finite entries");
    if (std::abs(mink_norm_sq(v) - 1.0) > tol)
      throw std::invalid_argument("DeSitterPoint: <v,v> != 1");
  }
};

/// Horosphere, represented by a future null vector xi.  The surface is
/// {x in H^n : <x,xi> = -1}; scaling xi by e^t moves the horosphere
/// distance t along its pencil, toward the ideal point.
struct Horosphere {
  Vec xi;

  Horosphere() = default;
  explicit Horosphere(Vec coords, double tol = kFormTol) : xi(std::move(coords)) {
    if (!is_finite(xi)) throw std::invalid_argument("Horosphere: non-finite entries");
    const double scale = xi.squaredNorm();
    if (std::abs(mink_norm_sq(xi)) > tol * std::max(1.0, scale))
      throw std::invalid_argument("Horosphere: <xi,xi> != 0");
    if (xi[0] <= 0.0) throw std::invalid_argument("Horosphere: not future-pointing");
  }

  /// Equidistant horosphere at signed distance t along the pencil.
  Horosphere scaled(double t) const { return Horosphere(std::exp(t) * xi); }
};

/// Hyperbolic distance arccosh(-<x,y>).  The product is clamped to [1,oo)
/// to absorb rounding near coincident points.
inline double hdist(const HPoint& x, const HPoint& y) {
  const double c = std::max(1.0, -mink_inner(x.v, y.v));
  return std::acosh(c);
}

/// Exponential map: cosh(t) x + sinh(t) w for a unit tangent w at x.
inline HPoint geodesic_point(const HPoint& x, const Vec& w, double t,
                             double tol = 1e-8) {
  if (std::abs(mink_norm_sq(w) - 1.0) > tol)
    throw std::invalid_argument("geodesic_point: w not unit");
  if (std::abs(mink_inner(w, x.v)) > tol)
    throw std::invalid_argument("geodesic_point: w not tangent at x");
  return HPoint(std::cosh(t) * x.v + std::sinh(t) * w);
}

/// Busemann function -log(-<x,xi>): zero on the horosphere of xi,
/// increasing toward the ideal point; substituting e^a xi subtracts a.
inline double busemann(const Horosphere& xi, const HPoint& x) {
  return -std::log(-mink_inner(x.v, xi.xi));
}

/// Unit tangent at x pointing toward the ideal point of xi.
inline Vec ideal_direction(const HPoint& x, const Horosphere& xi) {
  return -xi.xi / mink_inner(x.v, xi.xi) - x.v;
}

/// Projection of an ambient vector onto the tangent space of H^n at x.
inline Vec tangent_project(const Vec& x, const Vec& v) {
  return v + mink_inner(v, x) * x;
}

// ---- ball models (I/O only; the hyperboloid is the working representation) ----

inline Vec to_poincare(const HPoint& x) {
  return x.v.tail(x.v.size() - 1) / (1.0 + x.v[0]);
}

inline HPoint from_poincare(const Vec& b) {
  // extended precision keeps the 1 - |b|^2 cancellation off the round trip
  long double r2 = 0.0L;
  for (int i = 0; i < b.size(); ++i) r2 += static_cast<long double>(b[i]) * b[i];
  if (r2 >= 1.0L) throw std::invalid_argument("from_poincare: |b| >= 1");
  const long double d = 1.0L - r2;
  Vec v(b.size() + 1);
  v[0] = static_cast<double>((1.0L + r2) / d);
  for (int i = 0; i < b.size(); ++i)
    v[i + 1] = static_cast<double>(2.0L * static_cast<long double>(b[i]) / d);
  return HPoint(v);
}

inline Vec to_klein(const HPoint& x) {
  return x.v.tail(x.v.size() - 1) / x.v[0];
}

inline HPoint from_klein(const Vec& k) {
  long double r2 = 0.0L;
  for (int i = 0; i < k.size(); ++i) r2 += static_cast<long double>(k[i]) * k[i];
  if (r2 >= 1.0L) throw std::invalid_argument("from_klein: |k| >= 1");
  const long double s = 1.0L / std::sqrt(1.0L - r2);
  Vec v(k.size() + 1);
  v[0] = static_cast<double>(s);
  for (int i = 0; i < k.size(); ++i)
    v[i + 1] = static_cast<double>(s * static_cast<long double>(k[i]));
  return HPoint(v);
}

/// Orthonormal (Euclidean for the induced metric) basis of x^perp for a
/// hyperboloid point x; columns span the spacelike complement.
Mat spacelike_basis(const Vec& x);

/// Orthonormal frame of pole^perp for a de Sitter pole: first column
/// timelike future, the rest spacelike.  Columns F satisfy F^t eta F =
/// diag(-1,1,...,1).
Mat hyperplane_frame(const Vec& pole);

}  // namespace horo
