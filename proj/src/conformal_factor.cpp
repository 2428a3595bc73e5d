#include "horo/conformal_factor.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace horo {

ConformalFactor ConformalFactor::constant(int dim, double c) {
  ConformalFactor u(dim);
  u.add_constant(c);
  return u;
}

ConformalFactor ConformalFactor::linear(const Vec& a) {
  ConformalFactor u(static_cast<int>(a.size()));
  u.add_linear(a);
  return u;
}

ConformalFactor ConformalFactor::quadratic(const Mat& Q) {
  ConformalFactor u(static_cast<int>(Q.rows()));
  u.add_quadratic(Q);
  return u;
}

ConformalFactor ConformalFactor::harmonic(const Vec& a, const Vec& b, int deg, double coef) {
  ConformalFactor u(static_cast<int>(a.size()));
  u.add_harmonic(a, b, deg, coef);
  return u;
}

ConformalFactor& ConformalFactor::add_constant(double c) {
  Term t;
  t.type = Term::Type::constant;
  t.c = c;
  terms_.push_back(std::move(t));
  return *this;
}

ConformalFactor& ConformalFactor::add_linear(const Vec& a) {
  if (a.size() != dim_) throw std::invalid_argument("ConformalFactor: bad linear size");
  Term t;
  t.type = Term::Type::linear;
  t.a = a;
  terms_.push_back(std::move(t));
  return *this;
}

ConformalFactor& ConformalFactor::add_quadratic(const Mat& Q) {
  if (Q.rows() != dim_ || Q.cols() != dim_)
    throw std::invalid_argument("ConformalFactor: bad quadratic size");
  Term t;
  t.type = Term::Type::quadratic;
  t.Q = 0.5 * (Q + Q.transpose());
  terms_.push_back(std::move(t));
  return *this;
}

ConformalFactor& ConformalFactor::add_harmonic(const Vec& a, const Vec& b, int deg, double coef) {
  if (a.size() != dim_ || b.size() != dim_)
    throw std::invalid_argument("ConformalFactor: bad harmonic size");
  if (std::abs(a.dot(b)) > 1e-12 || std::abs(a.norm() - b.norm()) > 1e-12)
    throw std::invalid_argument("ConformalFactor: harmonic needs |a|=|b|, a.b=0");
  if (deg < 1) throw std::invalid_argument("ConformalFactor: harmonic degree < 1");
  Term t;
  t.type = Term::Type::harmonic;
  t.ha = a;
  t.hb = b;
  t.deg = deg;
  t.coef = coef;
  terms_.push_back(std::move(t));
  return *this;
}

void ConformalFactor::ambient_jet(const Vec& s, double& value, Vec& grad, Mat& hess) const {
  value = 0.0;
  grad = Vec::Zero(dim_);
  hess = Mat::Zero(dim_, dim_);
  for (const auto& t : terms_) {
    switch (t.type) {
      case Term::Type::constant:
        value += t.c;
        break;
      case Term::Type::linear:
        value += t.a.dot(s);
        grad += t.a;
        break;
      case Term::Type::quadratic:
        value += s.dot(t.Q * s);
        grad += 2.0 * (t.Q * s);
        hess += 2.0 * t.Q;
        break;
      case Term::Type::harmonic: {
        // Re((s.z)^d) with z = a + i b null complex vector: harmonic polynomial
        const std::complex<double> sz(s.dot(t.ha), s.dot(t.hb));
        const std::complex<double> p = std::pow(sz, t.deg);
        const std::complex<double> pm1 = t.deg >= 1 ? std::pow(sz, t.deg - 1) : 0.0;
        const std::complex<double> pm2 = t.deg >= 2 ? std::pow(sz, t.deg - 2) : 0.0;
        value += t.coef * p.real();
        for (int i = 0; i < dim_; ++i) {
          const std::complex<double> zi(t.ha[i], t.hb[i]);
          grad[i] += t.coef * (static_cast<double>(t.deg) * pm1 * zi).real();
          for (int j = 0; j < dim_; ++j) {
            const std::complex<double> zj(t.ha[j], t.hb[j]);
            hess(i, j) +=
                t.coef * (static_cast<double>(t.deg) * (t.deg - 1) * pm2 * zi * zj).real();
          }
        }
        break;
      }
    }
  }
}

double ConformalFactor::value(const Vec& s) const {
  double v;
  Vec g;
  Mat h;
  ambient_jet(s, v, g, h);
  return v;
}

Vec ConformalFactor::tangential_gradient(const Vec& s) const {
  double v;
  Vec g;
  Mat h;
  ambient_jet(s, v, g, h);
  return g - g.dot(s) * s;
}

Mat ConformalFactor::tangential_hessian(const Vec& s, const Mat& E) const {
  double v;
  Vec g;
  Mat h;
  ambient_jet(s, v, g, h);
  const double radial = g.dot(s);
  Mat H = E.transpose() * h * E;
  H -= radial * Mat::Identity(E.cols(), E.cols());
  return H;
}

ConformalFactor ConformalFactor::rotated(const Mat& R) const {
  ConformalFactor out(dim_);
  for (const auto& t : terms_) {
    switch (t.type) {
      case Term::Type::constant:
        out.add_constant(t.c);
        break;
      case Term::Type::linear:
        out.add_linear(R * t.a);
        break;
      case Term::Type::quadratic:
        out.add_quadratic(R * t.Q * R.transpose());
        break;
      case Term::Type::harmonic:
        out.add_harmonic(R * t.ha, R * t.hb, t.deg, t.coef);
        break;
    }
  }
  return out;
}

}  // namespace horo
