#pragma once

#include "horo/duality.hpp"
#include "horo/horospace.hpp"

namespace horo {

struct NotAdmissible : std::runtime_error {
  Vec worst_sample;
  double worst_margin;
  NotAdmissible(const std::string& what, Vec sample, double margin)
      : std::runtime_error(what), worst_sample(std::move(sample)), worst_margin(margin) {}
};

/// Ricci and scalar curvature of h = e^{2u} can on S^{m-1}, by the
/// closed-form conformal transformation of the round metric.  Components
/// are given on the orthonormal (for can) tangent frame in `frame`.
struct CurvatureData {
  Mat ric;         // bilinear form components on the frame
  double S_scalar; // scalar curvature of h
  Mat frame;       // m x (m-1) columns, can-orthonormal tangent basis
  double u_value;  // conformal factor at the sample
};

CurvatureData conformal_curvature(const ConformalFactor& u, const Vec& s);

/// Sectional curvature of h = e^{2u} can on the plane spanned by two
/// tangent vectors (components on a can-ON basis).
double conformal_sectional(const ConformalFactor& u, const Vec& s, const Mat& frame,
                           const Vec& X, const Vec& Y);

/// The normalized factor u_x of a graph at base sample x: the unique
/// function with e^{-2 u_x} h round and u_x(x) = du_x(x) = 0, realized as
/// u_x(y) = u(y) + log(-<p, x0 + V y>) with p the tangent pole at x.
class NormalizedFactor {
 public:
  NormalizedFactor(const GraphSurface& g, const Vec& x);

  const HPoint& pole() const { return pole_; }
  double value(const Vec& y) const;
  Vec tangential_gradient(const Vec& y) const;
  /// Covariant Hessian w.r.t. can on the frame E at y.
  Mat tangential_hessian(const Vec& y, const Mat& E) const;

 private:
  const GraphSurface* g_;
  HPoint pole_;
  Vec pv_;  // intrinsic coordinates of the pole's spatial part
  double p0_;
};

enum class AdmissibilityClass { C_admissible, H_admissible, boundary, neither };

const char* to_string(AdmissibilityClass c);

struct AdmissibilityReport {
  AdmissibilityClass cls = AdmissibilityClass::neither;
  double min_eig = 0.0, max_eig = 0.0;  // of Hess_h(u_x) over the grid
  Vec worst_sample;                     // sample attaining min_eig
  double worst_margin = 0.0;            // min_eig (distance to the H boundary)
  int samples = 0;
  double route_disagreement = 0.0;      // n >= 4: Hessian vs Ricci route
  double max_sectional = 0.0, min_sectional = 0.0;
};

/// Per-sample Hessian eigenvalues of the normalized factor (these are the
/// k*_i of the graph); for n >= 4 also the Ricci-form route of the
/// closed-form criterion, with agreement asserted in the report.
AdmissibilityReport admissibility_test(const ConformalFactor& u, const std::vector<Vec>& grid,
                                       int n);

/// Principal k*_i from the Ricci data (n >= 4 only; the formula divides
/// by n-3).
Vec principal_from_ricci(const CurvatureData& cd, int n);

/// Default certification grid: 2000 low-discrepancy points for n = 3,
/// product grids of 32^{n-1} for n in {4,5}.
std::vector<Vec> default_admissibility_grid(int n);

/// Envelope family of the graph of u over the hyperplane of x0; requires
/// an H-admissible factor (throws NotAdmissible with diagnostics).
SurfaceFamily reconstruct_surface(const ConformalFactor& u, const HPoint& x0,
                                  const std::vector<Vec>& grid);
SurfaceFamily reconstruct_surface(const ConformalFactor& u, const HPoint& x0);

/// Max relative deviation over the grid of the reconstructed surface's
/// horospherical metric from e^{2u} can (dualize on the envelope jets).
double roundtrip_check(const ConformalFactor& u, const HPoint& x0,
                       const std::vector<Vec>& grid);

}  // namespace horo
