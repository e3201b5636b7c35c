#include "hhardy/hgroup.hpp"

#include <cmath>

#include "hhardy/errors.hpp"

namespace hh {

HPoint HPoint::from_rw(int n, double r, double w) {
  HPoint p;
  p.z.assign(2 * static_cast<size_t>(n), 0.0);
  p.z[0] = r;
  p.w = w;
  return p;
}

HPoint group_mul(const HPoint &x, const HPoint &y) {
  if (x.z.size() != y.z.size())
    throw InvalidInput("group_mul: points have different n");
  HPoint out;
  out.z.resize(x.z.size());
  double im = 0.0;
  for (size_t j = 0; j < x.z.size(); j += 2) {
    out.z[j] = x.z[j] + y.z[j];
    out.z[j + 1] = x.z[j + 1] + y.z[j + 1];
    // Im(z_j * conj(z'_j))
    im += x.z[j + 1] * y.z[j] - x.z[j] * y.z[j + 1];
  }
  out.w = x.w + y.w + 0.5 * im;
  return out;
}

HPoint group_inv(const HPoint &x) {
  HPoint out = x;
  for (double &c : out.z) c = -c;
  out.w = -x.w;
  return out;
}

HPoint dilate(const HPoint &x, double r) {
  if (!(r > 0.0)) throw DomainError("dilate: r must be positive");
  HPoint out = x;
  for (double &c : out.z) c *= r;
  out.w = r * r * x.w;
  return out;
}

double z_norm2(const HPoint &x) {
  double s = 0.0;
  for (double c : x.z) s += c * c;
  return s;
}

double homogeneous_norm(const HPoint &x) {
  const double r2 = z_norm2(x);
  return std::sqrt(std::sqrt(r2 * r2 + 16.0 * x.w * x.w));
}

double u_weight_rw(int n, double r, double w, double s, double delta) {
  if (delta < 0.0) throw DomainError("u_weight: delta must be nonnegative");
  const double a = delta + 0.25 * r * r;
  const double base = a * a + w * w;
  if (base == 0.0) throw SingularPointError("u_weight: origin with delta = 0");
  return std::pow(base, -0.5 * (s + n + 1));
}

double u_weight(const HPoint &x, double s, double delta) {
  return u_weight_rw(x.n(), std::sqrt(z_norm2(x)), x.w, s, delta);
}

double omega_weight_rw(double r, double w) {
  const double r2 = r * r;
  const double nrm2 = std::sqrt(r2 * r2 + 16.0 * w * w);
  if (nrm2 == 0.0) throw SingularPointError("omega_weight: origin");
  return r2 / nrm2;
}

double omega_weight(const HPoint &x) {
  return omega_weight_rw(std::sqrt(z_norm2(x)), x.w);
}

} // namespace hh
