#pragma once

#include "horo/horospace.hpp"
#include "horo/hypersurface.hpp"

namespace horo {

/// Raised when a dual construction degenerates (some principal curvature
/// equals -1, so E + B is singular).
struct DualSingular : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A hypersurface sample together with its dual data: the tangent
/// horosphere phi = x + N, its chart derivatives dphi = (E+B) dx, and the
/// pullback metric <dphi, dphi>.
struct DualSample {
  FrameForms forms;
  Horosphere phi;
  std::vector<Vec> dphi;
  Mat istar_pullback;
};

DualSample dualize(const ImmersionJet& jet);

/// B* = (E+B)^{-1}.  Throws DualSingular when E+B is singular within tol.
Mat weingarten_inversion(const Mat& B, double tol = 1e-9);

/// Envelope point of a graph: the pole of the tangent hyperplane at s0,
/// as a hypersurface jet with finite-difference chart derivatives (step
/// 1e-3 with one Richardson pass) and the exact normal field xi - p.
ImmersionJet envelope_jet(const GraphSurface& g, const CenteredChart& chart, const Vec& w);
HPoint envelope_point(const GraphSurface& g, const Vec& s0);

/// The envelope hypersurface of a graph as a sampled family over the
/// two-chart atlas of S^{n-1}.
SurfaceFamily build_reconstructed(const GraphSurface& g);

struct DeSitterSample {
  DeSitterPoint point;
  std::vector<Vec> dv;
  Mat induced;  // <dN,dN> = III
};

/// Polar dual: the unit normal viewed in the de Sitter sphere.
DeSitterSample de_sitter_dual(const ImmersionJet& jet);

/// Move every tangent horosphere of S distance u along its pencil and
/// return the envelope family.  u is evaluated on the boundary direction
/// of the tangent horosphere in the chart of x0.  Throws DualSingular
/// with the offending sample when convexity of the shifted graph fails.
SurfaceFamily equidistant_envelope(const SurfaceFamily& S, const ConformalFactor& u,
                                   const HPoint& x0, int validation_samples = 64,
                                   std::uint64_t seed = 1);

struct RelationReport {
  double K = 0.0;
  double H_mean = 0.0;
  double Kstar_analytic = 0.0;  // 1 - tr((E+B)^{-1})
  double Kstar_formula = 0.0;   // K / (K + 2H + 2)
  double discrepancy = 0.0;
};

/// Both routes of the curvature relation for n = 3 surfaces.
RelationReport relation_check(const ImmersionJet& jet);

}  // namespace horo
