#pragma once
#include "hhardy/hgroup.hpp"
#include "hhardy/numerics.hpp"

namespace hh {

struct HeatParams {
  double t = 1.0;
  double s = 0.5;
  int n = 1;
};

// x / sinh(x) and x coth(x), with series below |x| < 1e-4 and exponential
// forms for large |x|.
double x_over_sinh(double x);
double x_coth(double x);

// (4 pi)^{-n} (lambda / sinh t lambda)^n exp(-lambda coth(t lambda) r^2 / 4)
double q_lambda(double t, double lambda, double r, int n);

// Factor multiplying q_lambda in the lambda-transform of each modified kernel.
double nonhomog_lambda_factor(double t, double lambda, double s);
// cosh(t lambda) (lambda t / sinh lambda t)^{2-s}
double homog_lambda_factor(double t, double lambda, double s);
// coth(t lambda) (lambda t / sinh lambda t)^{2-s}, as in the kernel's defining
// display; singular like 1/(t lambda) at lambda = 0.
double homog_lambda_factor_coth(double t, double lambda, double s);

// Cosine inversion pi^{-1} int_0^inf cos(lambda w) q_lambda(...) factor(...) dlambda.
QuadResult modified_kernel_nonhomog_q(const HeatParams &p, double r, double w, double rel_tol = 1e-11);
QuadResult modified_kernel_homog_q(const HeatParams &p, double r, double w, double rel_tol = 1e-11);

double modified_kernel_nonhomog(double t, double s, const HPoint &x);
double modified_kernel_homog(double t, double s, const HPoint &x);

// int_{H^n} of each kernel by direct quadrature of the inverted kernel.
QuadResult modified_kernel_mass(const HeatParams &p, bool homogeneous, double rel_tol = 1e-9);

} // namespace hh
