#include "horo/fd_curvature.hpp"

namespace horo {

namespace {

// Christoffel symbols G[k](i,j) at w by central differences of the metric
std::vector<Mat> christoffel(const MetricField& metric, const Vec& w, double h) {
  const int m = static_cast<int>(w.size());
  const Mat g0 = metric(w);
  const Mat ginv = g0.inverse();
  std::vector<Mat> dg(m);
  for (int i = 0; i < m; ++i) {
    Vec wp = w, wm = w;
    wp[i] += h;
    wm[i] -= h;
    dg[i] = (metric(wp) - metric(wm)) / (2.0 * h);
  }
  std::vector<Mat> G(m, Mat::Zero(m, m));
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        double s = 0.0;
        for (int l = 0; l < m; ++l)
          s += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        G[k](i, j) = 0.5 * s;
      }
  return G;
}

}  // namespace

FdCurvature fd_riemann(const MetricField& metric, const Vec& w, double step) {
  const int m = static_cast<int>(w.size());
  FdCurvature out;
  out.g = metric(w);
  const auto G0 = christoffel(metric, w, step);
  std::vector<std::vector<Mat>> dG(m);  // dG[i][k](j,l) = d_i G^k_{jl}
  for (int i = 0; i < m; ++i) {
    Vec wp = w, wm = w;
    wp[i] += step;
    wm[i] -= step;
    const auto Gp = christoffel(metric, wp, step);
    const auto Gm = christoffel(metric, wm, step);
    dG[i].resize(m);
    for (int k = 0; k < m; ++k) dG[i][k] = (Gp[k] - Gm[k]) / (2.0 * step);
  }
  // R^l_{kij} = d_i G^l_{jk} - d_j G^l_{ik} + G^l_{im} G^m_{jk} - G^l_{jm} G^m_{ik}
  out.riemann.assign(m * m, Mat::Zero(m, m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        Vec up = Vec::Zero(m);
        for (int l = 0; l < m; ++l) {
          double v = dG[i][l](j, k) - dG[j][l](i, k);
          for (int mm = 0; mm < m; ++mm)
            v += G0[l](i, mm) * G0[mm](j, k) - G0[l](j, mm) * G0[mm](i, k);
          up[l] = v;
        }
        const Vec low = out.g * up;  // lower the first index
        for (int l = 0; l < m; ++l) out.riemann[i * m + j](k, l) = low[l];
      }
  return out;
}

double fd_sectional(const FdCurvature& R, const Vec& X, const Vec& Y) {
  const int m = static_cast<int>(X.size());
  double num = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
          num += X[i] * Y[j] * Y[k] * X[l] * R.riemann[i * m + j](k, l);
  const double den = X.dot(R.g * X) * Y.dot(R.g * Y) - std::pow(X.dot(R.g * Y), 2);
  return num / den;
}

}  // namespace horo
