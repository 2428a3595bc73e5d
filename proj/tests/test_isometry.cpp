#include <doctest.h>

#include <cmath>
#include <random>

#include "horo/isometry.hpp"

using namespace horo;

namespace {

Vec v3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

HPoint origin(int n) {
  Vec v = Vec::Zero(n + 1);
  v[0] = 1.0;
  return HPoint(v);
}

std::vector<Isometry> fixture_isometries(int n) {
  Vec e1 = Vec::Zero(n + 1), e2 = Vec::Zero(n + 1);
  e1[1] = 1.0;
  e2[2] = 1.0;
  Vec xi = Vec::Zero(n + 1);
  xi[0] = xi[1] = 1.0;
  Vec shear = Vec::Zero(n + 1);
  shear[2] = 1.0;
  Vec pole = Vec::Zero(n + 1);
  pole[n] = 1.0;
  Mat sub = Mat::Identity(n, n);
  sub(0, 0) = std::cosh(0.3);
  sub(0, 1) = sub(1, 0) = std::sinh(0.3);
  sub(1, 1) = std::cosh(0.3);
  return {
      make_rotation(origin(n), e1, e2, 0.7),
      make_translation(origin(n), e1, 1.0),
      make_parabolic(Horosphere(xi), shear),
      extend_from_hyperplane(DeSitterPoint(pole), sub, true),
      extend_from_hyperplane(DeSitterPoint(pole), sub, false),
      compose(make_rotation(origin(n), e1, e2, 0.3), make_translation(origin(n), e2, 0.5)),
  };
}

}  // namespace

TEST_CASE("rotation half-turn in H^2 is diag(1,-1,-1)") {
  const Isometry g = make_rotation(origin(2), v3(0, 1, 0), v3(0, 0, 1), M_PI);
  Mat expect = Mat::Identity(3, 3);
  expect(1, 1) = expect(2, 2) = -1.0;
  CHECK((g.m - expect).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("translation is the boost in the (0,1) block") {
  const Isometry g = make_translation(origin(2), v3(0, 1, 0), 1.0);
  CHECK(g.m(0, 0) == doctest::Approx(std::cosh(1.0)).epsilon(1e-14));
  CHECK(g.m(0, 1) == doctest::Approx(std::sinh(1.0)).epsilon(1e-14));
  CHECK(g.m(1, 0) == doctest::Approx(std::sinh(1.0)).epsilon(1e-14));
  CHECK(g.m(2, 2) == doctest::Approx(1.0));
  // axis points move exactly the length
  for (double s : {-1.0, 0.0, 0.7}) {
    const HPoint x(v3(std::cosh(s), std::sinh(s), 0));
    CHECK(hdist(x, g(x)) == doctest::Approx(1.0).epsilon(1e-12));
  }
  // two-point form agrees
  const HPoint y(v3(std::cosh(1), std::sinh(1), 0));
  const Isometry g2 = make_translation(origin(2), y);
  CHECK((g2.m - g.m).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("parabolic fixes xi exactly") {
  const Horosphere xi(v3(1, 1, 0));
  const Isometry g = make_parabolic(xi, v3(0, 0, 1.3));
  CHECK((g.m * xi.xi - xi.xi).cwiseAbs().maxCoeff() < 1e-14);
  CHECK_THROWS_AS(make_parabolic(xi, v3(1, 0, 0)), std::invalid_argument);
  // non-identity on the rest of the cone
  CHECK((g.m * v3(1, -1, 0) - v3(1, -1, 0)).cwiseAbs().maxCoeff() > 0.1);
}

TEST_CASE("extend_from_hyperplane") {
  Vec pole = Vec::Zero(4);
  pole[3] = 1.0;
  SUBCASE("identity extends to the identity with the + flag") {
    const Isometry g = extend_from_hyperplane(DeSitterPoint(pole), Mat::Identity(3, 3), true);
    CHECK((g.m - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
    const Isometry h = extend_from_hyperplane(DeSitterPoint(pole), Mat::Identity(3, 3), false);
    CHECK(h.m.determinant() == doctest::Approx(-1.0).epsilon(1e-10));
  }
  SUBCASE("the two extensions differ exactly by the pole reflection") {
    Mat sub = Mat::Identity(3, 3);
    sub(1, 1) = std::cos(0.4);
    sub(1, 2) = -std::sin(0.4);
    sub(2, 1) = std::sin(0.4);
    sub(2, 2) = std::cos(0.4);
    const Isometry gp = extend_from_hyperplane(DeSitterPoint(pole), sub, true);
    const Isometry gm = extend_from_hyperplane(DeSitterPoint(pole), sub, false);
    CHECK(gp.m.determinant() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(gm.m.determinant() == doctest::Approx(-1.0).epsilon(1e-10));
    // both restrict identically to the hyperplane
    const Mat F = hyperplane_frame(pole);
    CHECK(((gp.m * F) - (gm.m * F)).cwiseAbs().maxCoeff() < 1e-12);
    // and differ on the pole
    CHECK((gp.m * pole - pole).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((gm.m * pole + pole).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("hdist is invariant under every constructed isometry") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int n : {2, 3, 4}) {
    for (const auto& iso : fixture_isometries(n)) {
      for (int trial = 0; trial < 10; ++trial) {
        Vec a = Vec::Zero(n + 1), b = Vec::Zero(n + 1);
        for (int i = 1; i <= n; ++i) {
          a[i] = 0.8 * g(rng);
          b[i] = 0.8 * g(rng);
        }
        a[0] = std::sqrt(1.0 + a.tail(n).squaredNorm());
        b[0] = std::sqrt(1.0 + b.tail(n).squaredNorm());
        const HPoint x(a), y(b);
        CHECK(hdist(iso(x), iso(y)) == doctest::Approx(hdist(x, y)).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("invariant_null_spectrum") {
  SUBCASE("elliptic rotation of H^2 has no invariant null line") {
    const Isometry g = make_rotation(origin(2), v3(0, 1, 0), v3(0, 0, 1), 0.7);
    const NullSpectrum sp = invariant_null_spectrum(g);
    CHECK(sp.lines.empty());
    CHECK_FALSE(sp.degenerate_cone);
  }
  SUBCASE("translation: two invariant lines, eigenvalues e^{+-1}, none fixed") {
    const Isometry g = make_translation(origin(2), v3(0, 1, 0), 1.0);
    const NullSpectrum sp = invariant_null_spectrum(g);
    REQUIRE(sp.lines.size() == 2);
    CHECK(sp.lines[0].eigenvalue == doctest::Approx(std::exp(-1.0)).epsilon(1e-10));
    CHECK(sp.lines[1].eigenvalue == doctest::Approx(std::exp(1.0)).epsilon(1e-10));
    CHECK(sp.fixed_count() == 0);
  }
  SUBCASE("parabolic: the line of xi is fixed pointwise") {
    const Horosphere xi(v3(1, 1, 0));
    const Isometry g = make_parabolic(xi, v3(0, 0, 0.9));
    const NullSpectrum sp = invariant_null_spectrum(g);
    REQUIRE(sp.lines.size() == 1);
    CHECK(sp.lines[0].fixed_pointwise);
    CHECK((sp.lines[0].direction - xi.xi).cwiseAbs().maxCoeff() < 1e-9);
  }
  SUBCASE("parabolic in H^3 still fixes exactly one line") {
    Vec xi4 = Vec::Zero(4);
    xi4[0] = xi4[1] = 1.0;
    Vec shear = Vec::Zero(4);
    shear[2] = 1.1;
    const Isometry g = make_parabolic(Horosphere(xi4), shear);
    const NullSpectrum sp = invariant_null_spectrum(g);
    REQUIRE(sp.lines.size() == 1);
    CHECK(sp.lines[0].fixed_pointwise);
  }
  SUBCASE("axial rotation of H^3 fixes the two axis endpoints pointwise") {
    Vec e2 = Vec::Zero(4), e3 = Vec::Zero(4);
    e2[2] = 1.0;
    e3[3] = 1.0;
    const Isometry g = make_rotation(origin(3), e2, e3, 0.9);
    const NullSpectrum sp = invariant_null_spectrum(g);
    CHECK(sp.lines.size() == 2);
    CHECK(sp.fixed_count() == 2);
  }
}

TEST_CASE("isometry validation rejects bad matrices") {
  Mat m = Mat::Identity(3, 3);
  m(0, 0) = -1.0;
  m(1, 1) = -1.0;
  CHECK_THROWS_AS(Isometry(m, IsometryKind::composite), std::invalid_argument);
  CHECK_THROWS_AS(Isometry(2.0 * Mat::Identity(3, 3), IsometryKind::composite),
                  std::invalid_argument);
}
