#pragma once
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "hhardy/hgroup.hpp"

namespace hh {

struct QuadResult {
  double value = 0.0;
  double abs_err_estimate = 0.0;
  long evaluations = 0;
};

// Stop when err <= max(abs, rel * |value|).
struct Tol {
  double abs = 1e-10;
  double rel = 1e-10;
};

struct QuadOptions {
  Tol tol;
  int max_intervals = 6000;
  // When false, exhausting the budget returns the best estimate instead of
  // throwing ConvergenceError.
  bool throw_on_failure = true;
};

using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;

// Special functions
double log_gamma(double x);
double gamma_ratio(double a, double b);
// |Gamma(-s)| for s > 0 not an integer, via the reflection formula.
double abs_gamma_neg(double s);
double laguerre(int k, double alpha, double x);
// out[k] = L_k^alpha(x) for k = 0..kmax.
void laguerre_sequence(int kmax, double alpha, double x, std::vector<double> &out);
// Surface measure of the unit sphere S^{m} in R^{m+1}.
double sphere_area(int m);

// Adaptive Gauss-Kronrod (21 point) with a global error queue.
QuadResult integrate_interval(const Fn1 &f, double a, double b, const QuadOptions &opt);
QuadResult integrate_breakpoints(const Fn1 &f, const std::vector<double> &pts,
                                 const QuadOptions &opt);

// int_0^inf f(t) dt for f(t) ~ t^p near 0 (p > -1). The range is split at
// `scale`; t = scale*u^{1/(1+p)} on the left, t = scale/u on the right.
QuadResult integrate_semi_infinite(const Fn1 &f, double endpoint_exponent,
                                   const QuadOptions &opt, double scale = 1.0);
QuadResult integrate_semi_infinite(const Fn1 &f, double endpoint_exponent, double tol,
                                   double scale = 1.0);

// int over H^n of a z-radial F(r, w) = omega_{2n-1} int_0^inf int_R F r^{2n-1} dw dr.
QuadResult integrate_hn_radial(const Fn2 &F, int n, const QuadOptions &opt,
                               double r_scale = 1.0, double w_scale = 1.0);
QuadResult integrate_hn_radial(const Fn2 &F, int n, double tol);

// Same integral in homogeneous polar coordinates |z|^2 = rho^2 cos a,
// 4w = rho^2 sin a, where dz dw = omega rho^{2n+1} cos^{n-1}a / 4 drho da.
// `rho_exponent` is the power of rho carried by F near the origin, so weights
// like |x|^{-2s} are integrated without ball exclusion.
QuadResult integrate_hn_polar(const Fn2 &F, int n, const QuadOptions &opt,
                              double rho_exponent = 0.0, double rho_scale = 1.0,
                              bool even_in_w = false);

// Monte Carlo

struct McConfig {
  long long samples = 1000000;
  std::uint64_t seed = 42;
  int strata = 64;   // independent sub-streams, each with a derived seed
  int threads = 0;   // 0: HHARDY_THREADS from the environment, else 1
};

int resolve_threads(int requested);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform();  // in (0, 1)
  double normal();
  bool coin() { return (eng_() >> 63) != 0; }

private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Two-piece power law on (0, inf): density ~ rho^{inner-1} below scale and
// rho^{-outer-1} above.
struct RadialLaw {
  double scale = 1.0;
  double inner = 2.0;
  double outer = 1.0;
  double sample(Rng &rng) const;
  double pdf(double rho) const;
};

// Density on H^n built from a radial law in homogeneous polar coordinates,
// with the angle a distributed like cos^{n-1} a and the z-direction uniform.
struct HnSampler {
  int n = 1;
  RadialLaw law;
  HPoint sample(Rng &rng) const;
  double density(const HPoint &x) const;
  double density_rw(double r, double w) const;
};

struct McResult {
  QuadResult quad;      // abs_err_estimate is the standard error
  double std_error = 0.0;
  long long samples = 0;
  double max_abs_weight = 0.0;
};

// G(x, y, h) with h = y^{-1} x.
using PairIntegrand = std::function<double(const HPoint &, const HPoint &, const HPoint &)>;

// Estimates the integral of G over H^n x H^n with the symmetric density
// p(x, y) = q_h(y^{-1}x) (q_x(x) + q_x(y)) / 2 and the symmetrised integrand
// (G(x,y) + G(y,x)) / 2, so swapping the arguments of G leaves the estimate
// bitwise unchanged.
McResult mc_double_integral(const PairIntegrand &G, const HnSampler &x_sampler,
                            const HnSampler &h_sampler, const McConfig &cfg);

} // namespace hh
