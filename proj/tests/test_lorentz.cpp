#include <doctest.h>

#include <cmath>
#include <random>

#include "horo/lorentz.hpp"
#include "horo/sphere_chart.hpp"

using namespace horo;

namespace {

Vec v3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

}  // namespace

TEST_CASE("mink_inner signature") {
  CHECK(mink_inner(v3(1, 0, 0), v3(1, 0, 0)) == -1.0);
  CHECK(mink_inner(v3(0, 1, 0), v3(0, 1, 0)) == 1.0);
  CHECK(mink_inner(v3(1, 1, 0), v3(1, 1, 0)) == 0.0);
  CHECK_THROWS_AS(mink_inner(v3(1, 0, 0), Vec::Zero(4)), std::invalid_argument);
  // bilinear + symmetric on random vectors
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int i = 0; i < 50; ++i) {
    Vec a(4), b(4), c(4);
    for (int k = 0; k < 4; ++k) {
      a[k] = g(rng);
      b[k] = g(rng);
      c[k] = g(rng);
    }
    const double lam = g(rng);
    CHECK(mink_inner(a, b) == doctest::Approx(mink_inner(b, a)).epsilon(1e-14));
    CHECK(mink_inner(a + lam * c, b) ==
          doctest::Approx(mink_inner(a, b) + lam * mink_inner(c, b)).epsilon(1e-12));
  }
}

TEST_CASE("type invariants") {
  CHECK_THROWS_AS(HPoint(v3(1, 1, 1)), std::invalid_argument);
  CHECK_THROWS_AS(HPoint(v3(-1, 0, 0)), std::invalid_argument);
  CHECK_THROWS_AS(Horosphere(v3(1, 0, 0)), std::invalid_argument);
  CHECK_THROWS_AS(DeSitterPoint(v3(1, 1, 0)), std::invalid_argument);
  CHECK_NOTHROW(Horosphere(v3(2, 0, 2)));
  CHECK_NOTHROW(DeSitterPoint(v3(0, 1, 0)));
}

TEST_CASE("hdist on geodesics") {
  const HPoint o(v3(1, 0, 0));
  CHECK(hdist(o, HPoint(v3(std::cosh(1), std::sinh(1), 0))) == doctest::Approx(1.0));
  CHECK(hdist(o, o) == 0.0);
  CHECK(hdist(o, HPoint(v3(std::cosh(2), 0, std::sinh(2)))) == doctest::Approx(2.0));
}

TEST_CASE("geodesic_point") {
  const HPoint o(v3(1, 0, 0));
  const Vec e1 = v3(0, 1, 0), e2 = v3(0, 0, 1);
  CHECK((geodesic_point(o, e1, 1).v - v3(std::cosh(1), std::sinh(1), 0)).norm() < 1e-14);
  CHECK((geodesic_point(o, e1, 0).v - o.v).norm() == 0.0);
  CHECK((geodesic_point(o, e2, -1).v - v3(std::cosh(1), 0, -std::sinh(1))).norm() < 1e-14);
  CHECK_THROWS_AS(geodesic_point(o, v3(0, 2, 0), 1), std::invalid_argument);
  CHECK_THROWS_AS(geodesic_point(o, v3(1, 1, 0), 1), std::invalid_argument);
  // hdist(x, exp_x(t w)) = |t|
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int i = 0; i < 20; ++i) {
    Vec w = v3(0, g(rng), g(rng));
    w /= std::sqrt(mink_norm_sq(w));
    const double t = g(rng);
    CHECK(hdist(o, geodesic_point(o, w, t)) == doctest::Approx(std::abs(t)).epsilon(1e-10));
  }
}

TEST_CASE("busemann matches the ray limit") {
  const Horosphere xi(v3(1, 1, 0));
  for (double s : {-0.7, 0.0, 0.4, 1.3}) {
    const HPoint x(v3(std::cosh(s), std::sinh(s), 0));
    CHECK(busemann(xi, x) == doctest::Approx(s).epsilon(1e-12));
  }
  // numerical limit d(gamma(t), x0) - d(gamma(t), x) along gamma -> xi
  const HPoint x0(v3(1, 0, 0));
  Vec xv(3);
  xv << std::cosh(0.7), std::sinh(0.7) * 0.2, std::sinh(0.7) * std::sqrt(1 - 0.04);
  const HPoint x(xv);
  const HPoint far = geodesic_point(x0, v3(0, 1, 0), 18.0);
  CHECK(hdist(far, x0) - hdist(far, x) == doctest::Approx(busemann(xi, x)).epsilon(1e-7));
  // level set and scaling
  CHECK(busemann(xi, x0) == doctest::Approx(0.0));
  CHECK(busemann(xi.scaled(2.0), x) == doctest::Approx(busemann(xi, x) - 2.0));
}

TEST_CASE("busemann increases along rays toward the ideal point") {
  const Horosphere xi(v3(1, 1, 0));
  const HPoint x0(v3(1, 0, 0));
  const Vec w = ideal_direction(x0, xi);
  CHECK(std::abs(mink_norm_sq(w) - 1.0) < 1e-12);
  for (double t : {0.3, 1.1, 2.4}) {
    CHECK(busemann(xi, geodesic_point(x0, w, t)) == doctest::Approx(t).epsilon(1e-12));
  }
}

TEST_CASE("model conversions") {
  const HPoint o(v3(1, 0, 0));
  CHECK(to_poincare(o).norm() == 0.0);
  CHECK(to_klein(o).norm() == 0.0);
  const HPoint x(v3(std::cosh(1), std::sinh(1), 0));
  CHECK(to_poincare(x).norm() == doctest::Approx(std::tanh(0.5)).epsilon(1e-12));
  CHECK(to_klein(x).norm() == doctest::Approx(std::tanh(1.0)).epsilon(1e-12));
  // closed-form oracle: hdist of the inverse equals the radius
  CHECK(hdist(o, from_poincare(to_poincare(x))) == doctest::Approx(1.0).epsilon(1e-12));

  Vec big(2);
  big << 0.8, 0.8;
  CHECK_THROWS_AS(from_poincare(big), std::invalid_argument);
  CHECK_THROWS_AS(from_klein(big), std::invalid_argument);
}

TEST_CASE("model round trips to 1e-12 below radius 5") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> ur(0.0, 5.0);
  double worst_p = 0.0, worst_k = 0.0, worst_rel = 0.0;
  for (int i = 0; i < 1000; ++i) {
    Vec dir(3);
    dir << 0, g(rng), g(rng);
    if (dir.norm() < 1e-9) continue;
    dir /= std::sqrt(mink_norm_sq(dir));
    const HPoint x = geodesic_point(HPoint(v3(1, 0, 0)), dir, ur(rng));
    // ball-side round trip (the contracting direction) measured absolutely
    const Vec bp = to_poincare(x), bk = to_klein(x);
    worst_p = std::max(worst_p, (to_poincare(from_poincare(bp)) - bp).cwiseAbs().maxCoeff());
    worst_k = std::max(worst_k, (to_klein(from_klein(bk)) - bk).cwiseAbs().maxCoeff());
    // hyperboloid-side round trip relative to x0: the Klein chart quantizes
    // at ~cosh^3(r) ulp near the far range, so only the relative reading
    // can hold at radius 5 (and at ~2e-12, the two-rounding floor)
    const double scale = x.v[0];
    worst_rel = std::max(
        worst_rel, (from_klein(to_klein(x)).v - x.v).cwiseAbs().maxCoeff() / scale);
    worst_rel = std::max(
        worst_rel, (from_poincare(to_poincare(x)).v - x.v).cwiseAbs().maxCoeff() / scale);
  }
  CHECK(worst_p < 1e-12);
  CHECK(worst_k < 1e-12);
  CHECK(worst_rel < 2e-12);
}

TEST_CASE("poincare conversion is conformal") {
  // pushed-forward inner products have a direction-independent ratio
  std::mt19937_64 rng(13);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    Vec dir(4);
    dir << 0, g(rng), g(rng), g(rng);
    dir /= std::sqrt(mink_norm_sq(dir));
    Vec o = Vec::Zero(4);
    o[0] = 1.0;
    const HPoint x = geodesic_point(HPoint(o), dir, 1.3);
    const double h = 1e-6;
    auto push = [&](const Vec& t) {
      const HPoint xp(((std::cosh(h) * x.v + std::sinh(h) * t)).eval());
      return ((to_poincare(xp) - to_poincare(x)) / h).eval();
    };
    const Mat E = spacelike_basis(x.v);
    double rmin = 1e300, rmax = 0.0;
    for (int a = 0; a < E.cols(); ++a) {
      const double r = push(E.col(a)).squaredNorm();
      rmin = std::min(rmin, r);
      rmax = std::max(rmax, r);
    }
    CHECK((rmax - rmin) / rmax < 1e-5);  // finite-difference resolution
  }
}

TEST_CASE("spacelike_basis and hyperplane_frame") {
  Vec xv(4);
  xv << std::cosh(0.9), 0.3, std::sqrt(std::sinh(0.9) * std::sinh(0.9) - 0.09), 0;
  const Mat V = spacelike_basis(xv);
  for (int i = 0; i < V.cols(); ++i) {
    CHECK(std::abs(mink_inner(V.col(i), xv)) < 1e-12);
    for (int j = 0; j < V.cols(); ++j)
      CHECK(mink_inner(V.col(i), V.col(j)) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
  }
  Vec pv(4);
  pv << 0.4, std::sqrt(1.16), 0, 0;
  const Mat F = hyperplane_frame(pv);
  const Mat eta = eta_matrix(4);
  const Mat gram = F.transpose() * eta * F;
  CHECK((gram - eta_matrix(3)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(F(0, 0) > 0);
}
