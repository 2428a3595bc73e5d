#pragma once

#include <vector>

#include "horo/minkowski.hpp"

namespace horo {

/// Smooth scalar field u on S^{m-1} (unit sphere of a fixed spacelike
/// hyperplane, in its intrinsic R^m coordinates), exposed as a 2-jet
/// oracle.  Terms are smooth extensions to R^m with closed-form ambient
/// derivatives; tangential quantities are obtained by projection:
///   grad_S u = P_s grad,   Hess_S u(X,Y) = X.hess.Y - (s.grad) X.Y.
class ConformalFactor {
 public:
  struct Term {
    enum class Type { constant, linear, quadratic, harmonic } type;
    double c = 0.0;   // constant
    Vec a;            // linear <a,s>
    Mat Q;            // quadratic <Qs,s>
    Vec ha, hb;       // harmonic: coef * Re((s.(ha + i hb))^deg), |ha|=|hb|, ha.hb=0
    int deg = 2;
    double coef = 0.0;
  };

  explicit ConformalFactor(int dim) : dim_(dim) {}

  static ConformalFactor constant(int dim, double c);
  static ConformalFactor linear(const Vec& a);
  static ConformalFactor quadratic(const Mat& Q);
  static ConformalFactor harmonic(const Vec& a, const Vec& b, int deg, double coef);

  ConformalFactor& add_constant(double c);
  ConformalFactor& add_linear(const Vec& a);
  ConformalFactor& add_quadratic(const Mat& Q);
  ConformalFactor& add_harmonic(const Vec& a, const Vec& b, int deg, double coef);

  int dim() const { return dim_; }
  const std::vector<Term>& terms() const { return terms_; }

  /// Ambient extension derivatives at a sphere point s.
  void ambient_jet(const Vec& s, double& value, Vec& grad, Mat& hess) const;

  double value(const Vec& s) const;
  /// Gradient of u along the sphere, as a vector of R^m orthogonal to s.
  Vec tangential_gradient(const Vec& s) const;
  /// Covariant Hessian w.r.t. the round metric, in the tangent basis E
  /// (columns): H_ab = Hess_S u(E_a, E_b).
  Mat tangential_hessian(const Vec& s, const Mat& E) const;

  /// Precompose with a rotation R of R^m: returns s -> u(R^t s).
  ConformalFactor rotated(const Mat& R) const;

 private:
  int dim_;
  std::vector<Term> terms_;
};

}  // namespace horo
