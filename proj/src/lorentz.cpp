#include "horo/lorentz.hpp"

namespace horo {

Mat spacelike_basis(const Vec& x) {
  const int dim = static_cast<int>(x.size());
  Mat basis(dim, dim - 1);
  int found = 0;
  for (int i = 0; i < dim && found < dim - 1; ++i) {
    Vec v = Vec::Zero(dim);
    v[i] = 1.0;
    // project out x (timelike: <x,x> = -1) then previous columns
    v += mink_inner(v, x) * x;
    for (int j = 0; j < found; ++j) v -= mink_inner(v, basis.col(j)) * basis.col(j);
    const double n2 = mink_norm_sq(v);
    if (n2 > 1e-12) basis.col(found++) = v / std::sqrt(n2);
  }
  if (found != dim - 1) throw std::runtime_error("spacelike_basis: degenerate input");
  return basis;
}

Mat hyperplane_frame(const Vec& pole) {
  const int dim = static_cast<int>(pole.size());
  Mat frame(dim, dim - 1);
  // timelike column first: project e0 out of the pole direction
  Vec t = Vec::Zero(dim);
  t[0] = 1.0;
  t -= mink_inner(t, pole) * pole;  // <pole,pole> = 1
  double n2 = mink_norm_sq(t);
  if (n2 >= -1e-12) throw std::runtime_error("hyperplane_frame: pole not spacelike");
  t /= std::sqrt(-n2);
  if (t[0] < 0) t = -t;
  frame.col(0) = t;
  int found = 1;
  for (int i = 1; i < dim && found < dim - 1; ++i) {
    Vec v = Vec::Zero(dim);
    v[i] = 1.0;
    v -= mink_inner(v, pole) * pole;
    v += mink_inner(v, t) * t;  // t timelike
    for (int j = 1; j < found; ++j) v -= mink_inner(v, frame.col(j)) * frame.col(j);
    n2 = mink_norm_sq(v);
    if (n2 > 1e-12) frame.col(found++) = v / std::sqrt(n2);
  }
  if (found != dim - 1) throw std::runtime_error("hyperplane_frame: degenerate input");
  return frame;
}

}  // namespace horo
