#include "hhardy/heatkernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hhardy/errors.hpp"

namespace hh {

double x_over_sinh(double x) {
  const double a = std::abs(x);
  if (a < 1e-4) {
    const double x2 = a * a;
    return 1.0 - x2 / 6.0 + 7.0 * x2 * x2 / 360.0;
  }
  if (a > 700.0) return 2.0 * a * std::exp(-a);
  return a / std::sinh(a);
}

double x_coth(double x) {
  const double a = std::abs(x);
  if (a < 1e-4) {
    const double x2 = a * a;
    return 1.0 + x2 / 3.0 - x2 * x2 / 45.0;
  }
  if (a > 20.0) return a;
  return a / std::tanh(a);
}

namespace {

// log(x / sinh x) for x >= 0 without overflow.
double log_x_over_sinh(double x) {
  const double a = std::abs(x);
  if (a < 1.0) return std::log(x_over_sinh(a));
  return std::log(2.0 * a) - a - std::log1p(-std::exp(-2.0 * a));
}

} // namespace

double q_lambda(double t, double lambda, double r, int n) {
  if (!(t > 0.0)) throw DomainError("q_lambda: t must be positive");
  const double x = t * lambda;
  // lambda / sinh(t lambda) = (x / sinh x) / t ; lambda coth(t lambda) = (x coth x) / t
  const double logv = -n * std::log(4.0 * std::numbers::pi * t) + n * log_x_over_sinh(x) -
                      0.25 * x_coth(x) * r * r / t;
  return std::exp(logv);
}

double nonhomog_lambda_factor(double t, double lambda, double s) {
  return std::exp((s + 1.0) * log_x_over_sinh(t * lambda));
}

double homog_lambda_factor(double t, double lambda, double s) {
  const double a = std::abs(t * lambda);
  // log cosh a = a + log1p(exp(-2a)) - log 2
  const double log_cosh = a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
  return std::exp(log_cosh + (2.0 - s) * log_x_over_sinh(a));
}

double homog_lambda_factor_coth(double t, double lambda, double s) {
  const double a = std::abs(t * lambda);
  if (a == 0.0) throw SingularPointError("homog_lambda_factor_coth: lambda = 0");
  return x_coth(a) / a * std::exp((2.0 - s) * log_x_over_sinh(a));
}

namespace {

QuadResult invert(const HeatParams &p, double r, double w, double rel_tol, bool homog) {
  if (!(p.t > 0.0)) throw DomainError("modified kernel: t must be positive");
  if (!(p.s > 0.0 && p.s < 1.0)) throw DomainError("modified kernel: need 0 < s < 1");
  const int n = p.n;
  const double t = p.t, s = p.s;
  auto integrand = [&](double lam) {
    const double fac = homog ? homog_lambda_factor(t, lam, s) : nonhomog_lambda_factor(t, lam, s);
    return std::cos(lam * w) * q_lambda(t, lam, r, n) * fac;
  };
  // Envelope decay rate in lambda for t*lambda >= 1.
  const double rate = (homog ? (n + 1.0 - s) : (n + s + 1.0)) * t + 0.25 * r * r;
  // Bound on |integrand| for large lambda, used for the truncation point.
  const double p_exp = homog ? 2.0 - s : s + 1.0;
  auto envelope = [&](double lam) {
    return std::pow(4.0 * std::numbers::pi, -n) * std::pow(2.4 * lam, n) *
           std::pow(2.4 * lam * t, p_exp) * std::exp(-rate * lam);
  };
  const double mag = std::pow(4.0 * std::numbers::pi * t, -n) / (rate * std::numbers::pi);
  // Cancellation in the cosine transform floors the error near 1e-14 * mag.
  const double abs_tol = 2e-13 * mag;
  double lmax = 20.0 / rate;
  while (envelope(lmax) * 4.0 / rate > 0.05 * abs_tol) lmax *= 1.5;

  std::vector<double> pts{0.0};
  const double aw = std::abs(w);
  int panels = 8;
  if (aw > 0.0) panels = std::clamp(static_cast<int>(lmax * aw / std::numbers::pi) + 1, 8, 2000);
  for (int i = 1; i <= panels; ++i) pts.push_back(lmax * i / panels);

  QuadOptions o;
  o.tol = {abs_tol, rel_tol};
  o.max_intervals = 20000;
  // Roundoff summed over many oscillation panels can sit above abs_tol; the
  // error estimate is returned for the caller to judge.
  o.throw_on_failure = false;
  QuadResult q = integrate_breakpoints(integrand, pts, o);
  q.value /= std::numbers::pi;
  q.abs_err_estimate /= std::numbers::pi;
  return q;
}

} // namespace

QuadResult modified_kernel_nonhomog_q(const HeatParams &p, double r, double w, double rel_tol) {
  return invert(p, r, w, rel_tol, false);
}

QuadResult modified_kernel_homog_q(const HeatParams &p, double r, double w, double rel_tol) {
  return invert(p, r, w, rel_tol, true);
}

double modified_kernel_nonhomog(double t, double s, const HPoint &x) {
  return modified_kernel_nonhomog_q({t, s, x.n()}, std::sqrt(z_norm2(x)), x.w).value;
}

double modified_kernel_homog(double t, double s, const HPoint &x) {
  return modified_kernel_homog_q({t, s, x.n()}, std::sqrt(z_norm2(x)), x.w).value;
}

QuadResult modified_kernel_mass(const HeatParams &p, bool homogeneous, double rel_tol) {
  // The kernels are even in w and decay exponentially in |w| / t along the centre
  // and like exp(-r^2 / 4t) in r; beyond |w| = 16 t less than 1e-10 of the mass remains.
  QuadOptions o;
  o.tol = {1e-13, rel_tol};
  o.max_intervals = 4000;
  long evals = 0;
  const double W = 16.0 * p.t;
  auto F = [&](double w, double r) {
    QuadResult q = invert(p, r, w, rel_tol * 1e-2, homogeneous);
    evals += q.evaluations;
    return q.value;
  };
  const double omega = sphere_area(2 * p.n - 1);
  auto outer = [&](double r) {
    QuadOptions oi = o;
    oi.tol = {1e-15 * std::pow(4.0 * std::numbers::pi * p.t, -p.n) * p.t, 0.1 * rel_tol};
    const QuadResult q = integrate_breakpoints([&](double w) { return F(w, r); },
                                               {0.0, W / 16.0, W / 8.0, W / 4.0, W / 2.0, W}, oi);
    return 2.0 * omega * q.value * std::pow(r, 2 * p.n - 1);
  };
  QuadResult q = integrate_semi_infinite(outer, 2.0 * p.n - 1.0, o, 2.0 * std::sqrt(p.t));
  q.evaluations += evals;
  return q;
}

} // namespace hh
