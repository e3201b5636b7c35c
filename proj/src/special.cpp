#include <cmath>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "hhardy/errors.hpp"
#include "hhardy/numerics.hpp"

namespace hh {

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive");
  return boost::math::lgamma(x);
}

double gamma_ratio(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("gamma_ratio: arguments must be positive");
  return std::exp(log_gamma(a) - log_gamma(b));
}

double abs_gamma_neg(double s) {
  if (!(s > 0.0)) throw DomainError("abs_gamma_neg: s must be positive");
  const double sn = std::sin(std::numbers::pi * s);
  if (std::abs(sn) < 1e-300 || s == std::floor(s))
    throw DomainError("abs_gamma_neg: pole at nonnegative integer");
  // Gamma(-s) Gamma(1+s) = -pi / sin(pi s)
  return std::numbers::pi / (std::abs(sn) * std::exp(log_gamma(1.0 + s)));
}

double laguerre(int k, double alpha, double x) {
  if (k < 0 || !(alpha > -1.0)) throw DomainError("laguerre: need k >= 0, alpha > -1");
  double prev = 1.0;
  if (k == 0) return prev;
  double cur = 1.0 + alpha - x;
  for (int j = 1; j < k; ++j) {
    const double next = ((2.0 * j + 1.0 + alpha - x) * cur - (j + alpha) * prev) / (j + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

void laguerre_sequence(int kmax, double alpha, double x, std::vector<double> &out) {
  out.resize(static_cast<size_t>(kmax) + 1);
  out[0] = 1.0;
  if (kmax == 0) return;
  out[1] = 1.0 + alpha - x;
  for (int j = 1; j < kmax; ++j)
    out[j + 1] = ((2.0 * j + 1.0 + alpha - x) * out[j] - (j + alpha) * out[j - 1]) / (j + 1.0);
}

double sphere_area(int m) {
  const double h = 0.5 * (m + 1);
  return 2.0 * std::pow(std::numbers::pi, h) / std::exp(log_gamma(h));
}

} // namespace hh
