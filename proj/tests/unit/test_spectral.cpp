#include <doctest.h>

#include <cmath>
#include <numbers>

#include <gsl/gsl_sf_gamma.h>
#include <gsl/gsl_sf_hyperg.h>

#include "hhardy/errors.hpp"
#include "hhardy/hardy.hpp"
#include "hhardy/kernels.hpp"
#include "hhardy/spectral.hpp"

using namespace hh;
constexpr double kPi = std::numbers::pi;

TEST_CASE("L(a,b,c) equals e^{-a} Gamma(b) U(b, b+1-c, 2a)") {
  for (double a : {0.2, 0.7, 3.0})
    for (double b : {0.6, 1.3, 2.5})
      for (double c : {0.4, 2.1, 3.7}) {
        const double ref = std::exp(-a) * gsl_sf_gamma(b) * gsl_sf_hyperg_U(b, b + 1.0 - c, 2.0 * a);
        CHECK(ch_L(a, b, c) == doctest::Approx(ref).epsilon(1e-9));
      }
  CHECK(ch_L(0.7, 1.3, 2.1) == doctest::Approx(0.108437378594594047239955868024).epsilon(1e-12));
}

TEST_CASE("degeneracy and Laguerre functions") {
  CHECK(degeneracy(1, 7) == doctest::Approx(1.0));
  CHECK(degeneracy(3, 4) == doctest::Approx(15.0));
  CHECK(laguerre_function(0, 1, 2.0, 1.0) == doctest::Approx(std::exp(-0.5)));
  CHECK(laguerre_function(1, 1, 2.0, 1.0) == doctest::Approx((1.0 - 1.0) * std::exp(-0.5)).epsilon(1e-14));
}

TEST_CASE("multipliers") {
  const double lam = 1.3, s = 0.4;
  for (int n : {1, 2})
    for (int k : {0, 3, 50}) {
      const double x = 2.0 * k + n;
      const double conformal = std::pow(2.0 * lam, s) * std::exp(gsl_sf_lngamma((x + 1 + s) / 2) - gsl_sf_lngamma((x + 1 - s) / 2));
      CHECK(multiplier_value(MultiplierKind::conformal(s), k, lam, n) == doctest::Approx(conformal).epsilon(1e-13));
      CHECK(multiplier_value(MultiplierKind::pure_power(s), k, lam, n) == doctest::Approx(std::pow(x * lam, s)).epsilon(1e-13));
      CHECK(multiplier_value(MultiplierKind::identity(), k, lam, n) == 1.0);
      CHECK(multiplier_value(MultiplierKind::conformal(s), k, lam, n) *
                multiplier_value(MultiplierKind::conformal_inverse(s), k, lam, n) ==
            doctest::Approx(1.0).epsilon(1e-13));
      CHECK(std::exp(log_multiplier_value(MultiplierKind::conformal(s), k, lam, n)) ==
            doctest::Approx(multiplier_value(MultiplierKind::conformal(s), k, lam, n)).epsilon(1e-13));
    }
}

TEST_CASE("Laguerre projection reproduces closed-form coefficients") {
  const std::vector<double> lams{0.4, 1.5, 8.0};
  for (const RadialFunction &f : {make_gaussian(1.0, 1.0), make_poly_gaussian(1.0, 1, 2, 2.0, 0.5), make_u_function(1, 0.3, 1.0)}) {
    const SpectralCoeffs c = laguerre_coeffs(f, 1, lams, 6);
    for (size_t i = 0; i < lams.size(); ++i)
      for (int k = 0; k <= 6; ++k) {
        const double ref = closed_form_coefficient(f, 1, k, lams[i]).real();
        CHECK(c.coeffs[i][k] == doctest::Approx(ref).epsilon(1e-7).scale(1e-12));
      }
  }
}

TEST_CASE("coefficient at the degenerate ratio lambda = 4a is finite") {
  const RadialFunction f = make_poly_gaussian(1.0, 1, 0, 2.0, 1.0);
  for (int k : {0, 1, 2, 5}) {
    const double c = closed_form_coefficient(f, 1, k, 8.0).real();
    CHECK(std::isfinite(c));
    const double near = closed_form_coefficient(f, 1, k, 8.0 * (1 + 1e-9)).real();
    CHECK(std::abs(c - near) <= 1e-6 * std::abs(near) + 1e-12);
  }
}

TEST_CASE("spectral normalisation") {
  for (int n : {1, 2})
    for (double lam : {0.5, 3.0}) CHECK(calibrate_kappa(n, lam) == doctest::Approx(1.0).epsilon(1e-10));
  // Plancherel: <f, f> from the spectral side equals int |f|^2
  const RadialFunction g = make_gaussian(1.0, 1.0);
  const double l2 = kPi / 2.0 * std::sqrt(kPi / 2.0);
  CHECK(quadratic_form(g, MultiplierKind::identity(), 1).quad.value == doctest::Approx(l2).epsilon(1e-8));
  CHECK(weighted_norm_nonhomog(g, 0.0, 1.0, 1).value == doctest::Approx(l2).epsilon(1e-9));
}

TEST_CASE("Cowling-Haagerup coefficients of u") {
  // k-independence of the ratio c_k(s) / c_k(-s) times the multiplier
  const double s = 0.5, d = 1.0;
  for (double lam : {0.4, 1.5}) {
    double first = 0.0;
    for (int k = 0; k <= 10; ++k) {
      const double r = multiplier_value(MultiplierKind::conformal(s), k, lam, 1) * ch_coefficient(k, d, lam, -s, 1) /
                       ch_coefficient(k, d, lam, s, 1);
      if (k == 0) first = r;
      CHECK(r == doctest::Approx(first).epsilon(1e-9));
    }
    CHECK(first == doctest::Approx(const_C_s_delta(1, s, d)).epsilon(1e-9));
  }
}

TEST_CASE("operator norm scans") {
  for (int n : {1, 2})
    for (double s : {0.25, 0.75}) {
      const UsScan scan = op_norm_Us_scan(s, n, 10000);
      CHECK(scan.sup >= 1.0);
      CHECK(scan.sup == doctest::Approx(op_norm_Us(s, n, 10000)));
      const VsBoundReport v = vs_bound_check(s, n, 10000);
      CHECK(v.violations_final == 0);
      CHECK(v.violations_intermediate == 0);
      CHECK(v.bound == doctest::Approx((n + 2.0 - s) / (n + s)));
      CHECK(v.max_multiplier <= v.bound);
    }
}

TEST_CASE("coefficient argument checks") {
  CHECK_THROWS_AS(closed_form_coefficient(make_gaussian(), 1, 0, 0.0), DomainError);
  CHECK_THROWS_AS(make_u_function(1, 0.3, 0.0), InvalidInput);
  CHECK_THROWS_AS(laguerre_coeffs(make_gaussian(), 0, {1.0}, 3), InvalidInput);
}
