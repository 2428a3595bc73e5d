#pragma once

#include <functional>
#include <vector>

#include "horo/conformal_factor.hpp"
#include "horo/isometry.hpp"
#include "horo/lorentz.hpp"
#include "horo/sphere_chart.hpp"

namespace horo {

/// Degenerate metric of the space of horospheres: the restriction of the
/// Minkowski form to the tangent space of the null cone at xi.  The kernel
/// is exactly the radial (vertical) direction.
double g0_inner(const Horosphere& xi, const Vec& v, const Vec& w, double tol = 1e-8);

/// Signed distance t with xi2 = e^t xi1 (the two horospheres are
/// equidistant members of one pencil).  Throws if not on one ray.
double vertical_parameter(const Horosphere& xi1, const Horosphere& xi2, double tol = 1e-10);

/// Chart of the space of horospheres based at x0: xi <-> (s, t) with
/// xi = e^t (x0 + V s), s a unit vector of R^n.  The pullback of g0 is
/// e^{2t} can_{S^{n-1}}; vertical lines map to {s} x R with matching
/// parameter.
class ChartPhi {
 public:
  explicit ChartPhi(const HPoint& base);

  const HPoint& base() const { return base_; }
  const Mat& frame() const { return V_; }  // columns: ON basis of x0^perp

  std::pair<Vec, double> to_chart(const Horosphere& xi) const;
  Horosphere from_chart(const Vec& s, double t) const;

 private:
  HPoint base_;
  Mat V_;
};

/// Totally geodesic hyperplane of the horosphere space: all horospheres
/// through the pole, {xi : <pole, xi> = -1}.
struct TGHyperplane {
  HPoint pole;
};

/// Space-like graph over the totally geodesic hyperplane of `base`:
/// xi(s) = e^{u(s)} (base + V s).
struct GraphSurface {
  HPoint base;
  Mat V;  // ON basis of base^perp, columns
  ConformalFactor u;

  GraphSurface(HPoint base_point, ConformalFactor factor);

  int n() const { return base.ambient_dim() - 1; }
  Horosphere point(const Vec& s) const;
};

/// 2-jet of a space-like section of the cone in some chart.
struct SectionJet {
  Vec w;                          // chart point
  Vec xi;
  std::vector<Vec> dxi;
  std::vector<std::vector<Vec>> d2xi;  // may be empty when only the pole is needed
};

/// Pole of the tangent totally geodesic hyperplane of a section: the
/// unique hyperboloid point with <p,xi> = -1, <p,dxi> = 0.  The linear
/// system determines p up to the null line of xi, and the line meets the
/// hyperboloid exactly once, on the future branch.
HPoint tangent_pole(const SectionJet& jet);

/// Analytic section jet of a graph surface in the centered chart at s0.
SectionJet graph_section_jet(const GraphSurface& g, const CenteredChart& chart, const Vec& w);

TGHyperplane tangent_hyperplane(const GraphSurface& g, const Vec& s0);

/// Graph height of a hyperplane in the chart of x0 at direction s:
/// t_p(s) = -log(-<pole, x0 + V s>).
double hyperplane_height(const TGHyperplane& hp, const ChartPhi& chart, const Vec& s);

struct StarForms {
  Mat Istar, IIstar;  // in an orthonormal basis of the tangent space at s0
  Mat Bstar;
  Vec kstar;          // ascending
};

/// Fundamental forms of a space-like section at a chart point: IIstar is
/// the Hessian of the height above the tangent hyperplane, computed as
/// -<p, d2xi> at the critical point; Bstar = Istar^{-1} IIstar.
StarForms star_forms_of_section(const SectionJet& jet, const HPoint& pole);

/// Star forms of a graph at s0 (analytic path, centered chart).
StarForms star_forms(const GraphSurface& g, const Vec& s0);

enum class StarClass { spacelike, convex, tamely_convex, neither };

/// convex: all k* > eps; tamely convex: all k* in (eps, 1-eps).
StarClass classify_star(const StarForms& sf, double eps = 1e-9);

const char* to_string(StarClass c);

struct StarCurvature {
  std::vector<Mat> riemann;  // R[i*m+j](k,l) = Istar(R*(e_i,e_j) e_k, e_l), ON frame
  Mat sectionals;            // K*_{ij} = 1 - k*_i - k*_j in the Bstar eigenframe
  double Kstar = 0.0;        // n = 3: 1 - tr(Bstar)
  double codazzi_defect = 0.0;
  StarForms forms;
};

/// Curvature data of the induced metric of a graph: Riemann tensor by the
/// degenerate-space Gauss formula, sectional curvatures in the Bstar
/// eigenframe, and the Codazzi symmetrization defect of D*B* (finite
/// differences of the analytic Bstar field, step 1e-4 with one Richardson
/// extrapolation).
StarCurvature curvature_star(const GraphSurface& g, const Vec& s0);

/// Isometric embedding of the horosphere space into the de Sitter quadric
/// of (n+2)-dimensional Minkowski space: xi -> q0 + i(xi) with q0 the unit
/// spacelike vector of the added last coordinate.
Vec cone_embed(const Horosphere& xi);

struct ConformalReport {
  double factor = 0.0;            // pointwise conformal factor
  double direction_spread = 0.0;  // max relative deviation across directions
};

/// Compose an isometry with the vertical projection back onto a totally
/// geodesic hyperplane; the induced boundary map is conformal and the
/// factor is direction-independent.
ConformalReport boundary_conformal_report(const Isometry& g, const TGHyperplane& hp,
                                          const Vec& s);

}  // namespace horo
