#pragma once
#include <string>

#include "hhardy/numerics.hpp"
#include "hhardy/spectral.hpp"

namespace hh {

enum class Variant { Nonhomog, Homog };
std::string variant_name(Variant v);

struct InequalityReport {
  std::string theorem;
  std::string function_id;
  int n = 1;
  double s = 0.0;
  double delta = 0.0;  // 0 for homogeneous statements
  double constant = 0.0;
  double constant_printed = 0.0;  // NaN when it agrees with `constant`
  double lhs = 0.0, lhs_err = 0.0;
  double rhs = 0.0, rhs_err = 0.0;
  double ratio = 0.0;
  double ratio_err = 0.0;        // combined relative error of the ratio
  double ratio_printed = 0.0;    // ratio with the printed constant
  double truncation = 0.0;       // one-sided spectral truncation (rhs can only be larger)
  // ratio <= 1 + 3 * combined error
  bool holds() const;
};

// int |f|^2 ((delta + r^2/4)^2 + w^2)^{p}
QuadResult weighted_norm_nonhomog(const RadialFunction &f, double p, double delta, int n, double rel_tol = 1e-9);
// int |f|^2 |x|^{2p}
QuadResult weighted_norm_homog(const RadialFunction &f, double p, int n, double rel_tol = 1e-9);
// Characteristic size of f in the homogeneous norm.
double spatial_scale(const RadialFunction &f);

InequalityReport hardy_nonhomog(const RadialFunction &f, double s, double delta, int n, double rel_tol = 1e-7);
InequalityReport hardy_homog(const RadialFunction &f, double s, int n, double rel_tol = 1e-7);
InequalityReport hardy_pure(const RadialFunction &f, double s, double delta, int n, Variant variant,
                            double rel_tol = 1e-7);
InequalityReport uncertainty(const RadialFunction &f, double s, double delta, int n, Variant variant,
                             double rel_tol = 1e-7);

struct CauchySchwarzReport {
  double l2 = 0.0;     // int |f|^2
  double bound = 0.0;  // (int |f|^2 W)^{1/2} (int |f|^2 / W)^{1/2}
};
CauchySchwarzReport uncertainty_midstep(const RadialFunction &f, double s, double delta, int n, Variant variant);

struct GroundStateReport {
  std::string theorem;
  std::string function_id;
  int n = 1;
  double s = 0.0;
  double delta = 0.0;
  double quad_form = 0.0, quad_form_err = 0.0;
  double weighted = 0.0, weighted_err = 0.0;
  double constant = 0.0;      // C_{s,delta} or B_{n,s}
  double hs_value = 0.0, hs_err = 0.0;
  double mc_constant = 0.0;   // a_{n,s} or b_{n,s}
  double mc_constant_printed = 0.0;
  McResult mc;                // raw double integral, without the constant
  double double_integral = 0.0, double_integral_err = 0.0;
  double z_score() const;
  bool agrees(double n_sigma = 2.0) const;
};

GroundStateReport ground_state_nonhomog(const RadialFunction &f, double s, double delta, int n,
                                        const McConfig &cfg, double rel_tol = 1e-8);
// Requires f to vanish near the origin (support metadata).
GroundStateReport ground_state_homog(const RadialFunction &f, double s, int n, const McConfig &cfg,
                                     double rel_tol = 1e-8);

struct HlsReport {
  int n = 1;
  double s = 0.0;
  double sharp_constant = 0.0;  // C_{s,1}
  double weak_constant = 0.0;   // from the HLS and Hoelder steps
  double ratio = 0.0;           // sharp / weak
  double expected_ratio = 0.0;  // 2^{s/(n+1)}
  double k_closed = 0.0;        // pi^{n+1} 2^{-2n} / Gamma(n+1)
  double k_sphere = 0.0;        // 2^{-2n-1} omega_{2n+1}
  QuadResult k_quadrature;
};
HlsReport hls_weak_compare(double s, int n);

} // namespace hh
