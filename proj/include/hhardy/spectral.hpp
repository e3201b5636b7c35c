#pragma once
#include <complex>
#include <functional>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "hhardy/numerics.hpp"

namespace hh {

enum class MultiplierTag { Identity, PurePower, Conformal, ConformalInverse, Lambda };

struct MultiplierKind {
  MultiplierTag tag = MultiplierTag::Identity;
  double s = 0.0;

  static MultiplierKind identity() { return {MultiplierTag::Identity, 0.0}; }
  static MultiplierKind pure_power(double s) { return {MultiplierTag::PurePower, s}; }
  static MultiplierKind conformal(double s) { return {MultiplierTag::Conformal, s}; }
  static MultiplierKind conformal_inverse(double s) { return {MultiplierTag::ConformalInverse, s}; }
  static MultiplierKind lambda_op(double s) { return {MultiplierTag::Lambda, s}; }
  std::string name() const;
};

// k may be real (used by the Euler-Maclaurin tail); integer k is the spectrum.
double multiplier_value(const MultiplierKind &kind, double k, double lambda, int n);
double log_multiplier_value(const MultiplierKind &kind, double k, double lambda, int n);

// coef * r^{2j} w^m exp(-a r^2 - b w^2)
struct PolyGaussAtom {
  double coef = 1.0;
  int j = 0;
  int m = 0;
  double a = 1.0;
  double b = 1.0;
};

// coef * u_{s,delta}
struct UWeightAtom {
  double coef = 1.0;
  int n = 1;
  double s = 0.0;
  double delta = 1.0;
};

// Arbitrary profile supported in r <= r_max, |w| <= w_max.
struct NumericAtom {
  std::function<double(double, double)> f;
  double r_max = 1.0;
  double w_max = 1.0;
};

using Atom = std::variant<PolyGaussAtom, UWeightAtom, NumericAtom>;

struct SupportInfo {
  double r_max = std::numeric_limits<double>::infinity();
  double w_max = std::numeric_limits<double>::infinity();
  double norm_min = 0.0;            // f vanishes for |x| < norm_min
  int origin_vanishing_order = 0;   // f = O(|x|^order) at the origin
  bool away_from_origin() const { return norm_min > 0.0 || origin_vanishing_order >= 4; }
};

class RadialFunction {
public:
  std::string id;
  std::vector<Atom> atoms;
  SupportInfo support;
  // Characteristic lambda scale of the spectrum (used as the split point of
  // the lambda quadrature).
  double decay_hint = 1.0;

  double eval(double r, double w) const;
  bool closed_form() const;

  RadialFunction &add(const RadialFunction &other, double weight = 1.0);
  RadialFunction scaled(double c) const;
};

RadialFunction make_poly_gaussian(double coef, int j, int m, double a, double b);
RadialFunction make_gaussian(double a = 1.0, double b = 1.0);
RadialFunction make_u_function(int n, double s, double delta);
// (r^4 + 16 w^2)^p exp(-a r^2 - b w^2) = |x|^{4p} e^{...}, expanded into atoms.
RadialFunction make_norm_power_gaussian(int p, double a, double b);
RadialFunction make_numeric(std::string id, std::function<double(double, double)> f, double r_max,
                            double w_max, double norm_min = 0.0);
// Smooth bump of the homogeneous norm supported in rho1 < |x| < rho2.
RadialFunction make_annulus_bump(double rho1, double rho2);

struct SpectralCoeffs {
  int n = 1;
  std::vector<double> lambda_grid;
  int k_max = 0;
  // coeffs[i][k] for lambda_grid[i]; real and imaginary parts of c_k^lambda.
  std::vector<std::vector<double>> coeffs;
  std::vector<std::vector<double>> coeffs_im;
  std::vector<double> degeneracy;  // d_k = binom(k+n-1, n-1)
  double kappa = 1.0;
};

double degeneracy(int n, double k);
// phi_k^lambda(r) = L_k^{n-1}(|lambda| r^2 / 2) exp(-|lambda| r^2 / 4)
double laguerre_function(int k, int n, double lambda, double r);

// Closed-form c_k^lambda for closed-form functions; k may be real.
std::complex<double> closed_form_coefficient(const RadialFunction &f, int n, double k, double lambda);

// f^lambda(r) = int f(r, w) e^{i lambda w} dw, per atom: closed form for
// poly-Gaussians, Basset's integral for u-weights, Gauss-Legendre otherwise.
std::complex<double> w_transform(const RadialFunction &f, double lambda, double r);

// Laguerre projection by radial quadrature of the w-transform.
SpectralCoeffs laguerre_coeffs(const RadialFunction &f, int n, const std::vector<double> &lambda_grid,
                               int k_max);
// Reconstructs f^lambda(r) from one coefficient slice.
std::complex<double> reconstruct_slice(const SpectralCoeffs &c, size_t lambda_index, double r);
// Ratio f^lambda(r)/reconstruction with kappa = 1 on a Gaussian slice; must be
// constant in r.
double calibrate_kappa(int n, double lambda);

struct SpectralSum {
  double value = 0.0;
  double tail = 0.0;      // Euler-Maclaurin tail included in value
  double omitted = 0.0;   // estimated mass beyond the truncation (not included)
  int terms = 0;
  bool truncated = false;
};

// S(lambda) = sum_k m(k, lambda) d_k |c_k^lambda|^2
SpectralSum spectral_sum(const RadialFunction &f, const MultiplierKind &kind, int n, double lambda);

struct QuadFormResult {
  QuadResult quad;
  double truncation_bound = 0.0;  // one-sided: true value >= quad.value
  bool closed_form_coefficients = true;
};

// <Op f, f> = (2 pi)^{-n-1} int_R |lambda|^n S(lambda) dlambda
QuadFormResult quadratic_form(const RadialFunction &f, const MultiplierKind &kind, int n,
                              double rel_tol = 1e-8);

// int_0^inf exp(-a(2x+1)) x^{b-1} (1+x)^{-c} dx
double ch_L(double a, double b, double c);
// Cowling-Haagerup coefficient of u_{s,delta}; s may be negative.
double ch_coefficient(double k, double delta, double lambda, double s, int n);

double op_norm_Us(double s, int n, long k_search_max);
struct UsScan {
  double sup = 0.0;
  long argmax = 0;        // -1 when the k -> infinity limit attains the sup
  double limit_value = 1.0;
  double value_at_kmax = 0.0;
};
UsScan op_norm_Us_scan(double s, int n, long k_search_max);

struct VsBoundReport {
  long k_max = 0;
  double max_multiplier = 0.0;
  double bound = 0.0;
  long violations_final = 0;         // multiplier > (n+2-s)/(n+s)
  long violations_intermediate = 0;  // multiplier > (2k+n+2-s)/(2k+n+s)
};
// V_s multiplier ((2k+n)/2)^{1-s} Gamma(x+s/2)/Gamma(x+1-s/2), x = (2k+n)/2.
double vs_multiplier(double s, int n, long k);
VsBoundReport vs_bound_check(double s, int n, long k_max);

} // namespace hh
