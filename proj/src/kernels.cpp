#include "hhardy/kernels.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "hhardy/errors.hpp"
#include "hhardy/heatkernel.hpp"
#include "hhardy/spectral.hpp"

namespace hh {

namespace {

constexpr double kPi = std::numbers::pi;

void require_unit(double s, const char *who) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError(std::string(who) + ": need 0 < s < 1");
}

} // namespace

double const_C_s_delta(int n, double s, double delta) {
  if (!(s > 0.0 && s < 0.5 * (n + 1))) throw DomainError("C_s_delta: need 0 < s < (n+1)/2");
  if (!(delta > 0.0)) throw DomainError("C_s_delta: delta must be positive");
  return std::exp(s * std::log(4.0 * delta) + 2.0 * log_gamma(0.5 * (1 + n + s)) -
                  2.0 * log_gamma(0.5 * (1 + n - s)));
}

double const_c_nonhomog(int n, double s) {
  require_unit(s, "c_nonhomog");
  return std::exp((n + 1 + 3 * s) * std::numbers::ln2 - (n + 1) * std::log(kPi) +
                  2.0 * log_gamma(0.5 * (n + s + 1)));
}

double const_c_nonhomog_printed(int n, double s) {
  require_unit(s, "c_nonhomog_printed");
  return std::exp((n - 1 + 3 * s) * std::numbers::ln2 - (n + 1) * std::log(kPi) +
                  2.0 * log_gamma(0.5 * (n + s + 1)));
}

double const_c_homog(int n, double s) {
  require_unit(s, "c_homog");
  return std::exp((n + 4 - 3 * s) * std::numbers::ln2 - (n + 1) * std::log(kPi) +
                  log_gamma(0.5 * (n - s + 3)) + log_gamma(0.5 * (n + 1 - s)));
}

double const_c_homog_printed(int n, double s) {
  require_unit(s, "c_homog_printed");
  return std::exp((n + 5 - 3 * s) * std::numbers::ln2 - (n + 1) * std::log(kPi) +
                  log_gamma(0.5 * (n - s + 3)) + log_gamma(0.5 * (n + 1 - s)));
}

double const_a(int n, double s) { return const_c_nonhomog(n, s) / (2.0 * abs_gamma_neg(s)); }
double const_a_printed(int n, double s) {
  return const_c_nonhomog_printed(n, s) / (2.0 * abs_gamma_neg(s));
}
double const_b(int n, double s) { return const_c_homog(n, s) / (2.0 * abs_gamma_neg(1.0 - s)); }
double const_b_printed(int n, double s) {
  return const_c_homog_printed(n, s) / (2.0 * abs_gamma_neg(1.0 - s));
}

double const_hardy_homog(int n, double s) {
  require_unit(s, "hardy_homog constant");
  return std::exp(3 * s * std::numbers::ln2 + 2.0 * log_gamma(0.5 * (n + s)) -
                  log_gamma(1.0 - s) - 2.0 * log_gamma(0.5 * n));
}

double const_hardy_homog_printed(int n, double s) {
  require_unit(s, "hardy_homog_printed");
  return std::exp((2 * n + 3 * s) * std::numbers::ln2 + 2.0 * log_gamma(0.5 * (n + s)) -
                  log_gamma(1.0 - s) - 2.0 * log_gamma(0.5 * n));
}

double const_B_ground(int n, double s) { return const_hardy_homog(n, 1.0 - s); }

double const_g(int n, double s) {
  if (!(s > 0.0 && s < n + 1.0)) throw DomainError("g_s: need 0 < s < n+1");
  return std::exp((n + 1 - 3 * s) * std::numbers::ln2 + 2.0 * log_gamma(0.5 * (n + 1 - s)) -
                  (n + 1) * std::log(kPi) - log_gamma(s));
}

double const_Vs_bound(int n, double s) {
  require_unit(s, "V_s bound");
  return (n + 2.0 - s) / (n + s);
}

double const_e_euclid(int m, double s) {
  require_unit(s, "e_{m,s}");
  return std::exp(s * std::log(4.0) + log_gamma(0.5 * m + s) - 0.5 * m * std::log(kPi)) /
         (2.0 * abs_gamma_neg(s));
}

double const_E_euclid(int m, double s) {
  require_unit(s, "E_{m,s}");
  if (!(s < 0.5 * m)) throw DomainError("E_{m,s}: need s < m/2");
  return std::exp(s * std::log(4.0) + 2.0 * log_gamma(0.25 * (m + 2 * s)) -
                  2.0 * log_gamma(0.25 * (m - 2 * s)));
}

double kernel_Ks_nonhomog_rw(int n, double s, double r, double w) {
  const double nrm = homogeneous_norm_rw(r, w);
  if (nrm == 0.0) throw SingularPointError("kernel_Ks_nonhomog: origin");
  return const_c_nonhomog(n, s) * std::pow(nrm, -(2.0 * n + 2.0) - 2.0 * s);
}

double kernel_Ks_homog_rw(int n, double s, double r, double w) {
  const double nrm = homogeneous_norm_rw(r, w);
  if (nrm == 0.0) throw SingularPointError("kernel_Ks_homog: origin");
  return const_c_homog(n, s) * omega_weight_rw(r, w) * std::pow(nrm, -(2.0 * n + 2.0) - 2.0 * (1.0 - s));
}

double kernel_Ks_nonhomog(double s, const HPoint &x) {
  return kernel_Ks_nonhomog_rw(x.n(), s, std::sqrt(z_norm2(x)), x.w);
}

double kernel_Ks_homog(double s, const HPoint &x) {
  return kernel_Ks_homog_rw(x.n(), s, std::sqrt(z_norm2(x)), x.w);
}

double fundamental_solution_rw(int n, double s, double r, double w) {
  const double nrm = homogeneous_norm_rw(r, w);
  if (nrm == 0.0) throw SingularPointError("fundamental_solution: origin");
  return const_g(n, s) * std::pow(nrm, -(2.0 * n + 2.0) + 2.0 * s);
}

double fundamental_solution(double s, const HPoint &x) {
  return fundamental_solution_rw(x.n(), s, std::sqrt(z_norm2(x)), x.w);
}

QuadResult fundamental_solution_pairing(int n, double s, double delta, double rel_tol) {
  if (!(s > 0.0 && s < n + 1.0)) throw DomainError("fundamental_solution_pairing: need 0 < s < n+1");
  if (!(delta > 0.0)) throw DomainError("fundamental_solution_pairing: delta must be positive");
  const double C = std::exp(s * std::log(4.0 * delta) + 2.0 * log_gamma(0.5 * (n + 1 + s)) -
                            2.0 * log_gamma(0.5 * (n + 1 - s)));
  auto F = [&](double r, double w) {
    return C * fundamental_solution_rw(n, s, r, w) * u_weight_rw(n, r, w, s, delta);
  };
  QuadOptions o;
  o.tol = {0.0, rel_tol};
  return integrate_hn_polar(F, n, o, 2.0 * s - 2.0 * n - 2.0, std::sqrt(delta), true);
}

namespace {

QuadResult t_oracle(int n, double s, double r, double w, double rel_tol, bool homog) {
  require_unit(s, "kernel oracle");
  const double nrm = homogeneous_norm_rw(r, w);
  if (nrm == 0.0) throw SingularPointError("kernel oracle: origin");
  const double power = homog ? s - 2.0 : -s - 1.0;
  long evals = 0;
  auto inner = [&](double t) {
    const HeatParams hp{t, s, n};
    QuadResult q = homog ? modified_kernel_homog_q(hp, r, w, rel_tol * 1e-3)
                         : modified_kernel_nonhomog_q(hp, r, w, rel_tol * 1e-3);
    evals += q.evaluations;
    return q;
  };
  auto f = [&](double t) { return inner(t).value * std::pow(t, power); };
  // The integrand vanishes faster than any power as t -> 0, but the inversion
  // only resolves it down to a cancellation floor. Start where it is lost in
  // that floor or negligible against the peak.
  const double S = 0.25 * nrm * nrm;
  double t_lo = S, peak = 0.0;
  for (int i = 0; i < 80; ++i) {
    const QuadResult q = inner(t_lo);
    const double g = std::abs(q.value) * std::pow(t_lo, power);
    peak = std::max(peak, g);
    if (g < 1e-14 * peak || std::abs(q.value) < 4.0 * q.abs_err_estimate) break;
    t_lo /= 1.25;
  }
  QuadOptions o;
  o.tol = {0.0, rel_tol};
  o.max_intervals = 2000;
  QuadResult q = integrate_interval(f, t_lo, S, o);
  const QuadResult tail = integrate_semi_infinite([&](double u) { return f(S + u); }, 0.0, o, S);
  q.value += tail.value;
  q.abs_err_estimate += tail.abs_err_estimate;
  q.evaluations += tail.evaluations;
  q.evaluations += evals;
  return q;
}

} // namespace

QuadResult kernel_nonhomog_oracle(int n, double s, double r, double w, double rel_tol) {
  QuadResult q = t_oracle(n, s, r, w, rel_tol, false);
  return q;
}

QuadResult kernel_homog_oracle(int n, double s, double r, double w, double rel_tol) {
  return t_oracle(n, s, r, w, rel_tol, true);
}

ConstantsTable constants_table(int n, double s, double delta) {
  if (n < 1) throw DomainError("constants_table: n must be positive");
  ConstantsTable c;
  c.n = n;
  c.s = s;
  c.delta = delta;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  auto fill = [&](double &slot, const char *name, auto &&fn) {
    try {
      slot = fn();
    } catch (const DomainError &) {
      slot = nan;
      c.unavailable.emplace_back(name);
    }
  };
  fill(c.C_s_delta, "C_s_delta", [&] { return const_C_s_delta(n, s, delta); });
  fill(c.c_ns_nonhomog, "c_ns_nonhomog", [&] { return const_c_nonhomog(n, s); });
  fill(c.c_ns_homog, "c_ns_homog", [&] { return const_c_homog(n, s); });
  fill(c.a_ns, "a_ns", [&] { return const_a(n, s); });
  fill(c.b_ns, "b_ns", [&] { return const_b(n, s); });
  fill(c.hardy_homog, "hardy_homog", [&] { return const_hardy_homog(n, s); });
  fill(c.B_ns, "B_ns", [&] { return const_B_ground(n, s); });
  fill(c.g_s, "g_s", [&] { return const_g(n, s); });
  fill(c.Us_norm, "Us_norm", [&] { return op_norm_Us(s, n, 100000); });
  fill(c.Vs_bound, "Vs_bound", [&] { return const_Vs_bound(n, s); });
  fill(c.e_ns, "e_ns", [&] { return const_e_euclid(n, s); });
  fill(c.E_ns, "E_ns", [&] { return const_E_euclid(n, s); });
  fill(c.c_ns_nonhomog_printed, "c_ns_nonhomog_printed", [&] { return const_c_nonhomog_printed(n, s); });
  fill(c.c_ns_homog_printed, "c_ns_homog_printed", [&] { return const_c_homog_printed(n, s); });
  fill(c.a_ns_printed, "a_ns_printed", [&] { return const_a_printed(n, s); });
  fill(c.b_ns_printed, "b_ns_printed", [&] { return const_b_printed(n, s); });
  fill(c.hardy_homog_printed, "hardy_homog_printed", [&] { return const_hardy_homog_printed(n, s); });
  fill(c.B_ns_printed, "B_ns_printed", [&] { return const_hardy_homog_printed(n, 1.0 - s); });
  return c;
}

} // namespace hh
