#include <doctest.h>

#include <cmath>
#include <numbers>

#include <gsl/gsl_sf_gamma.h>
#include <gsl/gsl_sf_laguerre.h>

#include "hhardy/errors.hpp"
#include "hhardy/numerics.hpp"

using namespace hh;
constexpr double kPi = std::numbers::pi;

TEST_CASE("gamma helpers") {
  for (double x : {0.3, 1.0, 2.5, 17.25, 140.0}) CHECK(log_gamma(x) == doctest::Approx(gsl_sf_lngamma(x)).epsilon(1e-14));
  CHECK(gamma_ratio(3.5, 1.25) == doctest::Approx(std::exp(gsl_sf_lngamma(3.5) - gsl_sf_lngamma(1.25))).epsilon(1e-14));
  CHECK(abs_gamma_neg(0.5) == doctest::Approx(2.0 * std::sqrt(kPi)).epsilon(1e-15));
  CHECK(abs_gamma_neg(0.25) == doctest::Approx(std::abs(gsl_sf_gamma(-0.25))).epsilon(1e-14));
}

TEST_CASE("Laguerre polynomials against GSL") {
  for (int k : {0, 1, 5, 30})
    for (double alpha : {0.0, 1.0, 2.5})
      for (double x : {0.1, 2.0, 15.0})
        CHECK(laguerre(k, alpha, x) == doctest::Approx(gsl_sf_laguerre_n(k, alpha, x)).epsilon(1e-11));
  std::vector<double> seq;
  laguerre_sequence(12, 1.0, 3.3, seq);
  REQUIRE(seq.size() == 13);
  for (int k = 0; k <= 12; ++k) CHECK(seq[k] == doctest::Approx(gsl_sf_laguerre_n(k, 1.0, 3.3)).epsilon(1e-12));
}

TEST_CASE("sphere areas") {
  CHECK(sphere_area(1) == doctest::Approx(2.0 * kPi));
  CHECK(sphere_area(2) == doctest::Approx(4.0 * kPi));
  CHECK(sphere_area(3) == doctest::Approx(2.0 * kPi * kPi));
}

TEST_CASE("adaptive quadrature") {
  QuadOptions o;
  o.tol = {0.0, 1e-13};
  CHECK(integrate_interval([](double x) { return std::sin(x); }, 0.0, kPi, o).value == doctest::Approx(2.0).epsilon(1e-13));
  // endpoint singularity and algebraic tail
  const QuadResult g = integrate_semi_infinite([](double t) { return std::exp(-t) / std::sqrt(t); }, -0.5, o);
  CHECK(g.value == doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));
  const QuadResult c = integrate_semi_infinite([](double t) { return 1.0 / (1.0 + t * t); }, 0.0, o);
  CHECK(c.value == doctest::Approx(0.5 * kPi).epsilon(1e-12));
  const QuadResult b = integrate_breakpoints([](double x) { return std::abs(x - 0.3); }, {0.0, 0.3, 1.0}, o);
  CHECK(b.value == doctest::Approx(0.5 * (0.09 + 0.49)).epsilon(1e-13));
}

TEST_CASE("quadrature budget") {
  QuadOptions o;
  o.tol = {0.0, 1e-15};
  o.max_intervals = 3;
  auto f = [](double x) { return std::sin(1.0 / (x + 1e-3)); };
  CHECK_THROWS_AS(integrate_interval(f, 0.0, 1.0, o), ConvergenceError);
  o.throw_on_failure = false;
  CHECK_NOTHROW(integrate_interval(f, 0.0, 1.0, o));
  auto bad = [](double) { return std::nan(""); };
  CHECK_THROWS(integrate_interval(bad, 0.0, 1.0, QuadOptions{}));
}

TEST_CASE("integrals over the Heisenberg group") {
  // int e^{-r^2 - w^2} over H^1 = 2 pi * 1/2 * sqrt(pi)
  auto F = [](double r, double w) { return std::exp(-r * r - w * w); };
  const double exact = kPi * std::sqrt(kPi);
  CHECK(integrate_hn_radial(F, 1, 1e-11).value == doctest::Approx(exact).epsilon(1e-10));
  QuadOptions o;
  o.tol = {0.0, 1e-11};
  CHECK(integrate_hn_polar(F, 1, o).value == doctest::Approx(exact).epsilon(1e-10));
  CHECK(integrate_hn_polar(F, 1, o, 0.0, 1.0, true).value == doctest::Approx(exact).epsilon(1e-10));
  // n = 2: omega_3 / 2 * int r^3 e^{-r^2} ... = 2 pi^2 * 1/2 * sqrt(pi)
  CHECK(integrate_hn_radial(F, 2, 1e-11).value == doctest::Approx(kPi * kPi * std::sqrt(kPi)).epsilon(1e-10));
  // |x|^{-2s} weight integrable at the origin
  auto G = [](double r, double w) { return std::exp(-r * r - w * w) * std::pow(homogeneous_norm_rw(r, w), -1.0); };
  const double polar = integrate_hn_polar(G, 1, o, -1.0).value;
  CHECK(polar == doctest::Approx(integrate_hn_radial(G, 1, 1e-10).value).epsilon(1e-7));
}

TEST_CASE("random streams") {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 10; ++i) {
    const double u = a.uniform();
    CHECK(u == b.uniform());
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
  CHECK(a.uniform() != c.uniform());
  CHECK(derive_seed(42, 0) != derive_seed(42, 1));
  CHECK(derive_seed(42, 5) == derive_seed(42, 5));
  CHECK(resolve_threads(3) == 3);
}

TEST_CASE("radial law is a probability density") {
  const RadialLaw law{1.5, 3.0, 2.0};
  QuadOptions o;
  o.tol = {0.0, 1e-12};
  CHECK(integrate_semi_infinite([&](double r) { return law.pdf(r); }, 2.0, o, 1.5).value ==
        doctest::Approx(1.0).epsilon(1e-10));
  Rng rng(1);
  int below = 0;
  for (int i = 0; i < 20000; ++i) below += law.sample(rng) < 1.5;
  const double p_below = integrate_interval([&](double r) { return law.pdf(r); }, 0.0, 1.5, o).value;
  CHECK(std::abs(below / 20000.0 - p_below) < 0.02);
}

TEST_CASE("Monte Carlo pair integral is symmetric and thread independent") {
  HnSampler xs{1, RadialLaw{1.0, 4.0, 3.0}};
  HnSampler hs{1, RadialLaw{1.0, 4.0, 3.0}};
  PairIntegrand G = [](const HPoint &x, const HPoint &y, const HPoint &) {
    return std::exp(-z_norm2(x) - x.w * x.w) * std::exp(-2.0 * z_norm2(y) - y.w * y.w);
  };
  PairIntegrand Gswap = [&](const HPoint &x, const HPoint &y, const HPoint &h) { return G(y, x, h); };
  McConfig cfg;
  cfg.samples = 40000;
  cfg.seed = 9;
  cfg.threads = 1;
  const McResult one = mc_double_integral(G, xs, hs, cfg);
  const McResult swapped = mc_double_integral(Gswap, xs, hs, cfg);
  cfg.threads = 3;
  const McResult three = mc_double_integral(G, xs, hs, cfg);
  CHECK(one.quad.value == swapped.quad.value);
  CHECK(one.quad.value == three.quad.value);
  CHECK(one.std_error == three.std_error);
  // product of two Gaussian integrals
  const double exact = (kPi * std::sqrt(kPi)) * (kPi / 2.0 * std::sqrt(kPi));
  CHECK(std::abs(one.quad.value - exact) < 5.0 * one.std_error);
}
