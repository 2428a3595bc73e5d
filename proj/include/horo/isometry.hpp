#pragma once

#include <vector>

#include "horo/lorentz.hpp"

namespace horo {

enum class IsometryKind { rotation, translation, parabolic, extension, composite };

/// Element of O(n,1) preserving the Minkowski form and the future cone.
struct Isometry {
  Mat m;
  IsometryKind kind = IsometryKind::composite;

  Isometry() = default;
  Isometry(Mat matrix, IsometryKind k, double tol = kFormTol);

  int ambient_dim() const { return static_cast<int>(m.rows()); }

  HPoint operator()(const HPoint& x) const { return HPoint(m * x.v); }
  DeSitterPoint operator()(const DeSitterPoint& p) const { return DeSitterPoint(m * p.v); }
  Horosphere operator()(const Horosphere& h) const { return Horosphere(m * h.xi); }
  Vec operator()(const Vec& v) const { return m * v; }
};

Isometry identity_isometry(int ambient_dim);
Isometry compose(const Isometry& a, const Isometry& b);

/// Rotation by `angle` fixing `center`, in the 2-plane spanned by a, b
/// (projected to the tangent space at center and orthonormalized).
Isometry make_rotation(const HPoint& center, const Vec& a, const Vec& b, double angle);

/// Hyperbolic translation of the given length along the geodesic through x
/// with unit tangent direction dir.
Isometry make_translation(const HPoint& x, const Vec& dir, double length);

/// Translation along the axis through two points, by their distance.
Isometry make_translation(const HPoint& x, const HPoint& y);

/// Parabolic isometry fixing the horosphere (and its whole pencil's ideal
/// point): exp of the nilpotent generator u -> <shear,u> xi - <xi,u> shear.
/// The shear must be orthogonal to xi and not parallel to it.
Isometry make_parabolic(const Horosphere& fixed, const Vec& shear);

/// Extend an isometry of the totally geodesic hyperplane pole^perp to H^n.
/// `sub` is an n x n matrix in the frame hyperplane_frame(pole.v); there
/// are exactly two extensions (pole -> +-pole) and `positive` selects the
/// orientation-preserving one.
Isometry extend_from_hyperplane(const DeSitterPoint& pole, const Mat& sub, bool positive);

struct NullLine {
  Vec direction;        // future null, normalized to direction[0] = 1
  double eigenvalue;    // lambda with M xi = lambda xi
  bool fixed_pointwise; // lambda == 1: every horosphere on the line fixed
};

/// Invariant vertical lines of an isometry: future null eigenvectors.
/// degenerate_cone flags eigenspaces containing a whole cone of null
/// directions (identity-like elements).
struct NullSpectrum {
  std::vector<NullLine> lines;
  bool degenerate_cone = false;
  int fixed_count() const {
    int c = 0;
    for (const auto& l : lines) c += l.fixed_pointwise ? 1 : 0;
    return c;
  }
};

NullSpectrum invariant_null_spectrum(const Isometry& g);

}  // namespace horo
