#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "horo/lorentz.hpp"

namespace horo {

struct Isometry;

/// A hypersurface sample: chart point, position in H^n, first and second
/// chart derivatives.
struct ImmersionJet {
  Vec chart_point;
  Vec x;                          // on the hyperboloid
  std::vector<Vec> dx;            // n-1 tangent vectors
  std::vector<std::vector<Vec>> d2x;  // symmetric
  Vec normal_hint;                // orientation: N chosen with <N,hint> > 0

  int ambient_dim() const { return static_cast<int>(x.size()); }
  int chart_dim() const { return static_cast<int>(dx.size()); }

  /// dx tangency / hyperboloid residuals (for invariant checks).
  double tangency_residual() const;
};

struct FrameForms {
  Mat I, II, III;   // symmetric bilinear forms in chart coordinates
  Mat B;            // shape operator, dN = B dx in chart coordinates
  Vec N;            // unit normal
  Vec k;            // principal curvatures (ascending)
  double H_mean = 0.0;
  double K_gauss = 0.0;  // det(B) - 1, meaningful for n = 3
};

/// Forms of a hypersurface sample.  N is the kernel direction of
/// span{x, dx}, oriented by the jet's normal_hint; II_ij = -<N, d2x_ij>.
FrameForms forms_at(const ImmersionJet& jet);

/// The horospherical metric candidate I + 2 II + III.
Mat horospherical_metric_direct(const FrameForms& f);

enum class ConvexityClass { dual_singular, convex, weakly, strictly_h_convex, none };

/// Eigenvalue classification with tolerance 1e-9: dual_singular when some
/// |k_i + 1| <= eps; convex when all k_i > eps; weakly when all k_i > -eps;
/// strictly_h_convex when all k_i > -1 + eps.
ConvexityClass classify_convexity(const FrameForms& f, double eps = 1e-9);

const char* to_string(ConvexityClass c);

/// Ideal point of the normal ray: the null vector x + N.
Vec gauss_map(const ImmersionJet& jet);

enum class FamilyKind {
  geodesic_sphere,
  totally_geodesic_hyperplane,
  equidistant,
  klein_quadric,
  reconstructed,
  horosphere,  // dual-singular test fixture
};

/// An analytic (or envelope-backed) jet evaluator over a chart atlas.
class SurfaceFamily {
 public:
  using Evaluator = std::function<ImmersionJet(int, const Vec&)>;
  using Sampler = std::function<std::vector<std::pair<int, Vec>>(int, std::uint64_t)>;

  SurfaceFamily() = default;
  SurfaceFamily(FamilyKind kind, int n, int charts, Evaluator eval, Sampler sampler)
      : kind_(kind), n_(n), charts_(charts), eval_(std::move(eval)),
        sampler_(std::move(sampler)) {}

  FamilyKind kind() const { return kind_; }
  int dim() const { return n_; }            // ambient H^n dimension
  int chart_count() const { return charts_; }

  ImmersionJet jet(const Vec& w, int chart = 0) const { return eval_(chart, w); }
  std::vector<std::pair<int, Vec>> sample_points(int count, std::uint64_t seed) const {
    return sampler_(count, seed);
  }

 private:
  FamilyKind kind_ = FamilyKind::geodesic_sphere;
  int n_ = 0;
  int charts_ = 0;
  Evaluator eval_;
  Sampler sampler_;
};

SurfaceFamily build_sphere(const HPoint& center, double radius);
SurfaceFamily build_hyperplane(const DeSitterPoint& pole);
SurfaceFamily build_equidistant(const DeSitterPoint& pole, double distance);
/// Euclidean ellipsoid in the Klein ball with the given semi-axes (all in
/// (0,1)), lifted to the hyperboloid.
SurfaceFamily build_klein_quadric(const Vec& semi_axes);

/// Horosphere of xi as a parametrized hypersurface, oriented toward the
/// ideal point (the dual-singular fixture: B = -E).
SurfaceFamily build_horosphere_surface(const Horosphere& xi);

/// Transform a jet by an isometry (chart untouched).
ImmersionJet transform(const Isometry&, const ImmersionJet&);

}  // namespace horo
