#pragma once
#include <string>
#include <vector>

#include "hhardy/hgroup.hpp"
#include "hhardy/numerics.hpp"

namespace hh {

// Named constants. Entries outside their parameter range are NaN and listed
// in `unavailable`. The *_printed fields hold the values as printed in the
// source text where they differ from the values confirmed by quadrature.
struct ConstantsTable {
  int n = 1;
  double s = 0.5;
  double delta = 1.0;

  double C_s_delta = 0;        // non-homogeneous sharp Hardy constant
  double c_ns_nonhomog = 0;    // K_s(x) = c |x|^{-Q-2s}
  double c_ns_homog = 0;       // K_s(x) = c omega(x) |x|^{-Q-2(1-s)}
  double a_ns = 0;             // c_ns_nonhomog / (2|Gamma(-s)|)
  double b_ns = 0;             // c_ns_homog / (2|Gamma(s-1)|)
  double hardy_homog = 0;      // homogeneous Hardy constant at s
  double B_ns = 0;             // homogeneous Hardy constant at 1-s (ground state)
  double g_s = 0;              // fundamental solution constant
  double Us_norm = 0;          // sup-norm of the U_s multiplier
  double Vs_bound = 0;         // (n+2-s)/(n+s)
  double e_ns = 0;             // Euclidean (dimension n) double-integral constant
  double E_ns = 0;             // Euclidean sharp Hardy constant

  double c_ns_nonhomog_printed = 0;
  double c_ns_homog_printed = 0;
  double a_ns_printed = 0;
  double b_ns_printed = 0;
  double hardy_homog_printed = 0;
  double B_ns_printed = 0;

  std::vector<std::string> unavailable;
};

double const_C_s_delta(int n, double s, double delta);
double const_c_nonhomog(int n, double s);
double const_c_nonhomog_printed(int n, double s);
double const_c_homog(int n, double s);
double const_c_homog_printed(int n, double s);
double const_a(int n, double s);
double const_a_printed(int n, double s);
double const_b(int n, double s);
double const_b_printed(int n, double s);
double const_hardy_homog(int n, double s);
double const_hardy_homog_printed(int n, double s);
double const_B_ground(int n, double s);  // const_hardy_homog(n, 1 - s)
double const_g(int n, double s);
double const_Vs_bound(int n, double s);
double const_e_euclid(int m, double s);
double const_E_euclid(int m, double s);

double kernel_Ks_nonhomog(double s, const HPoint &x);
double kernel_Ks_homog(double s, const HPoint &x);
double kernel_Ks_nonhomog_rw(int n, double s, double r, double w);
double kernel_Ks_homog_rw(int n, double s, double r, double w);
// g_s(x); s in (0, (n+1)/2).
double fundamental_solution(double s, const HPoint &x);
double fundamental_solution_rw(int n, double s, double r, double w);

// int_0^inf K_t^s(x) t^{-s-1} dt and int_0^inf K_t^s(x) t^{s-2} dt.
QuadResult kernel_nonhomog_oracle(int n, double s, double r, double w, double rel_tol = 1e-9);
QuadResult kernel_homog_oracle(int n, double s, double r, double w, double rel_tol = 1e-9);

// Weak delta_0 pairing <g_s, L_s u_{-s,delta}> = int g_s C u_{s,delta}, using the
// eigen-relation L_s u_{-s,delta} = (4 delta)^s Gamma-ratio^2 u_{s,delta}.
// Should equal u_{-s,delta}(0) = delta^{-(n+1-s)}.
QuadResult fundamental_solution_pairing(int n, double s, double delta, double rel_tol = 1e-10);

ConstantsTable constants_table(int n, double s, double delta);

} // namespace hh
