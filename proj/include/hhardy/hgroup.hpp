#pragma once
#include <cmath>
#include <vector>

namespace hh {

// Point (z, w) of the Heisenberg group; z stored as interleaved (re, im).
struct HPoint {
  std::vector<double> z;
  double w = 0.0;

  int n() const { return static_cast<int>(z.size() / 2); }
  // z = (r, 0, ..., 0): canonical representative of a z-radial orbit.
  static HPoint from_rw(int n, double r, double w);
};

struct GroupParams {
  int n = 1;
  int Q() const { return 2 * n + 2; }
};

HPoint group_mul(const HPoint &x, const HPoint &y);
HPoint group_inv(const HPoint &x);
HPoint dilate(const HPoint &x, double r);

double z_norm2(const HPoint &x);
double homogeneous_norm(const HPoint &x);
inline double homogeneous_norm_rw(double r, double w) {
  const double r2 = r * r;
  return std::sqrt(std::sqrt(r2 * r2 + 16.0 * w * w));
}

// ((delta + |z|^2/4)^2 + w^2)^{-(s+n+1)/2}
double u_weight(const HPoint &x, double s, double delta);
double u_weight_rw(int n, double r, double w, double s, double delta);

// |z|^2 / |x|^2, in [0, 1].
double omega_weight(const HPoint &x);
double omega_weight_rw(double r, double w);

} // namespace hh
