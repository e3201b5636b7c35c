#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hhardy/errors.hpp"
#include "hhardy/hardy.hpp"
#include "hhardy/kernels.hpp"

using namespace hh;
constexpr double kPi = std::numbers::pi;

TEST_CASE("weighted norms of a Gaussian") {
  const RadialFunction g = make_gaussian(1.0, 1.0);
  // int e^{-2r^2 - 2w^2} over H^1
  const double l2 = kPi / 2.0 * std::sqrt(kPi / 2.0);
  CHECK(weighted_norm_homog(g, 0.0, 1).value == doctest::Approx(l2).epsilon(1e-9));
  CHECK(weighted_norm_nonhomog(g, 0.0, 3.0, 1).value == doctest::Approx(l2).epsilon(1e-9));
  // the non-homogeneous weight at p is bounded by delta^{2p} and by the homogeneous one
  const double wn = weighted_norm_nonhomog(g, -0.5, 1.0, 1).value;
  CHECK(wn < l2);
  CHECK(wn > 0.0);
}

TEST_CASE("the optimizer attains the non-homogeneous constant") {
  for (double s : {0.3, 0.7})
    for (double d : {0.5, 2.0}) {
      const InequalityReport r = hardy_nonhomog(make_u_function(1, -s, d), s, d, 1);
      CHECK(r.ratio == doctest::Approx(1.0).epsilon(1e-6));
      CHECK(r.holds());
    }
}

TEST_CASE("all inequalities hold for a Gaussian") {
  const RadialFunction g = make_gaussian(1.0, 1.0);
  for (double s : {0.3, 0.5, 0.7}) {
    for (const InequalityReport &r :
         {hardy_nonhomog(g, s, 1.0, 1), hardy_homog(g, s, 1), hardy_pure(g, s, 1.0, 1, Variant::Nonhomog),
          hardy_pure(g, s, 1.0, 1, Variant::Homog), uncertainty(g, s, 1.0, 1, Variant::Nonhomog),
          uncertainty(g, s, 1.0, 1, Variant::Homog)}) {
      CAPTURE(r.theorem);
      CHECK(r.holds());
      CHECK(r.ratio > 0.05);
      CHECK(r.ratio < 1.0);
    }
  }
}

TEST_CASE("ratios are dilation invariant for the homogeneous inequality") {
  // g(x) and g(delta_k x) give the same ratio
  const double k = 1.5;
  const InequalityReport a = hardy_homog(make_gaussian(1.0, 1.0), 0.5, 1);
  const InequalityReport b = hardy_homog(make_gaussian(k * k, k * k * k * k), 0.5, 1);
  CHECK(a.ratio == doctest::Approx(b.ratio).epsilon(1e-6));
}

TEST_CASE("uncertainty with an infinite weighted norm") {
  RadialFunction f = make_u_function(1, -0.5, 1.0);
  f.add(make_gaussian(), 0.5);
  const InequalityReport r = uncertainty(f, 0.5, 1.0, 1, Variant::Nonhomog);
  CHECK(std::isinf(r.rhs));
  CHECK(r.ratio == 0.0);
  CHECK(r.holds());
}

TEST_CASE("Cauchy-Schwarz step of the uncertainty principle") {
  const CauchySchwarzReport c = uncertainty_midstep(make_poly_gaussian(1.0, 1, 0, 1.0, 1.0), 0.5, 1.0, 1, Variant::Nonhomog);
  CHECK(c.l2 <= c.bound * (1 + 1e-9));
}

TEST_CASE("HLS comparison") {
  for (int n : {1, 2})
    for (double s : {0.25, 0.5, 0.75}) {
      const HlsReport h = hls_weak_compare(s, n);
      CHECK(h.ratio == doctest::Approx(std::pow(2.0, s / (n + 1))).epsilon(1e-14));
      CHECK(h.k_quadrature.value == doctest::Approx(h.k_closed).epsilon(1e-8));
      CHECK(h.k_sphere == doctest::Approx(h.k_closed).epsilon(1e-14));
    }
}

TEST_CASE("ground-state identities agree with Monte Carlo") {
  McConfig cfg;
  cfg.samples = 200000;
  cfg.seed = 42;
  cfg.threads = 1;
  const GroundStateReport a = ground_state_nonhomog(make_gaussian(1.0, 1.0), 0.5, 1.0, 1, cfg);
  CHECK(std::abs(a.z_score()) < 3.0);
  const GroundStateReport b = ground_state_nonhomog(make_gaussian(1.0, 1.0), 0.5, 1.0, 1, cfg);
  CHECK(a.double_integral == b.double_integral);
  const GroundStateReport opt = ground_state_nonhomog(make_u_function(1, -0.5, 1.0), 0.5, 1.0, 1, cfg);
  CHECK(opt.mc.quad.value == 0.0);
  CHECK(std::abs(opt.hs_value) < 1e-6 * opt.quad_form);
  const GroundStateReport h = ground_state_homog(make_norm_power_gaussian(1, 1.0, 1.0), 0.5, 1, cfg);
  CHECK(std::abs(h.z_score()) < 3.0);
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(hardy_nonhomog(make_gaussian(), 1.2, 1.0, 1), DomainError);
  CHECK_THROWS_AS(hardy_homog(make_gaussian(), 1.0, 2), DomainError);
  CHECK_THROWS_AS(hardy_nonhomog(make_gaussian(), 0.5, -1.0, 1), DomainError);
}
