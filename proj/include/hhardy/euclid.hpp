#pragma once
#include <functional>
#include <string>
#include <vector>

#include "hhardy/hardy.hpp"
#include "hhardy/numerics.hpp"

namespace hh {

// Point of R^m.
struct EuclidPoint {
  std::vector<double> x;
  int dim() const { return static_cast<int>(x.size()); }
  double norm() const;
};

using EuclidFn = std::function<double(const EuclidPoint &)>;

// Radial function on R^m given by its profile phi(|x|). Only m = 1 and m = 3
// are supported by the double-integral routines.
struct EuclidRadial {
  std::string id;
  std::function<double(double)> profile;
  double scale = 1.0;
  double operator()(double r) const { return profile(r); }
};

EuclidRadial euclid_gaussian(double a);  // e^{-a|x|^2}

// Heat semigroup applied to e^{-|x|^2}.
double euclid_gaussian_heat(double t, int m, double r);

double euclid_g_alpha(double alpha, int m, const EuclidPoint &x);
double euclid_g_alpha_r(double alpha, int m, double r);
// Defining t-integral.
QuadResult euclid_g_alpha_oracle(double alpha, int m, double r, double rel_tol = 1e-11);

double euclid_kernel_Gs(double s, int m, const EuclidPoint &x);
double euclid_kernel_Gs_r(double s, int m, double r);
double euclid_kernel_Gs_constant(double s, int m);
// |Gamma(-s)|^{-1} int_0^inf G_t(x) t^{-s-1} dt
QuadResult euclid_kernel_Gs_oracle(double s, int m, double r, double rel_tol = 1e-11);

struct PvOptions {
  double rho = 0.05;      // first excluded radius; rho/2 and rho/4 follow
  double rel_tol = 1e-10;
};

struct FracLaplacianResult {
  double value = 0.0;
  double raw[3] = {0.0, 0.0, 0.0};  // truncated integrals at rho, rho/2, rho/4
  double err = 0.0;
};

// Principal value of int (f(x) - f(y)) G_s(x - y) dy, with a symmetric ball
// excluded around x and the radius extrapolated to 0. m in {1, 3}.
FracLaplacianResult euclid_frac_laplacian(const EuclidFn &f, double s, int m, const EuclidPoint &x,
                                          const PvOptions &opt = {});
// Semigroup value |Gamma(-s)|^{-1} int (f(x) - e^{-t Delta} f(x)) t^{-1-s} dt for e^{-|x|^2}.
QuadResult euclid_frac_laplacian_gaussian_oracle(double s, int m, double r, double rel_tol = 1e-11);

// <Delta^s f, f> for e^{-a|x|^2} from the Fourier side.
double euclid_gaussian_quadratic_form(double a, double s, int m);

// int int F(|x|, |y|) |x - y|^{-m-2s} dx dy for symmetric F, m in {1, 3}.
QuadResult euclid_radial_pair_integral(const std::function<double(double, double)> &F, double s, int m,
                                       double scale = 1.0, double rel_tol = 1e-9);
// e_{m,s} int int |f(x) - f(y)|^2 |x - y|^{-m-2s} dx dy
QuadResult euclid_quadratic_form(const EuclidRadial &f, double s, int m, double rel_tol = 1e-9);
// int |f|^2 |x|^{-2s}
QuadResult euclid_weighted_norm(const EuclidRadial &f, double s, int m, double rel_tol = 1e-10);

// E_{m,s} from 4^s Gamma(m/2-alpha+s) Gamma(alpha) / (Gamma(alpha-s) Gamma(m/2-alpha)).
double euclid_alpha_constant(double s, int m, double alpha);

InequalityReport euclid_hardy(const EuclidRadial &f, double s, int m, double rel_tol = 1e-9);

struct EuclidGroundState {
  int m = 1;
  double s = 0.0;
  double alpha = 0.0;
  double quad_form = 0.0, quad_form_err = 0.0;
  double weighted = 0.0, weighted_err = 0.0;  // int |u|^2 g_{alpha-s} / g_alpha
  double lhs = 0.0;                           // quad_form - weighted
  double rhs = 0.0, rhs_err = 0.0;            // e_{m,s} int int |v(x)-v(y)|^2 ... g_alpha g_alpha
  double rel_diff() const;
};

// Requires 0 < s < alpha < m/2.
EuclidGroundState euclid_ground_state(const EuclidRadial &u, double s, int m, double alpha,
                                      double rel_tol = 1e-9);

// <g_alpha, e^{-|x|^2}> in space, and on the Fourier side with symbol |xi|^{-beta}.
struct PairingReport {
  double alpha = 0.0;
  int m = 1;
  double spatial = 0.0;
  double fourier_2alpha = 0.0;  // beta = 2 alpha
  double fourier_alpha = 0.0;   // beta = alpha
  double rel_err_2alpha() const;
  double rel_err_alpha() const;
};
PairingReport euclid_g_alpha_pairing(double alpha, int m);

} // namespace hh
