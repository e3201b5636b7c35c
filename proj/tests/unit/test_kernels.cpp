#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "hhardy/errors.hpp"
#include "hhardy/kernels.hpp"
#include "hhardy/numerics.hpp"

using namespace hh;
constexpr double kPi = std::numbers::pi;

// Reference constants evaluated independently in 30-digit arithmetic.
TEST_CASE("sharp constants, frozen values") {
  CHECK(const_C_s_delta(1, 0.5, 1.0) == doctest::Approx(1.09421980761323831941838497035).epsilon(1e-14));
  CHECK(const_C_s_delta(2, 0.75, 0.5) == doctest::Approx(1.72385210547382383482589534944).epsilon(1e-14));
  CHECK(const_c_nonhomog(1, 0.5) == doctest::Approx(0.941775540443748945324388141828).epsilon(1e-14));
  CHECK(const_c_nonhomog(2, 0.25) == doctest::Approx(0.348807181512008035638273281107).epsilon(1e-14));
  CHECK(const_c_homog(1, 0.5) == doctest::Approx(1.29102333995121917461779803287).epsilon(1e-14));
  CHECK(const_hardy_homog(1, 0.5) == doctest::Approx(0.762759763501813188062325980964).epsilon(1e-14));
  CHECK(const_E_euclid(1, 0.25) == doctest::Approx(0.13999967745248263086609615966).epsilon(1e-14));
  CHECK(const_E_euclid(3, 0.7) == doctest::Approx(0.48544248433422072305071478018).epsilon(1e-14));
}

TEST_CASE("printed constants differ by fixed factors") {
  for (int n : {1, 2, 3})
    for (double s : {0.2, 0.5, 0.9}) {
      CHECK(const_c_nonhomog_printed(n, s) / const_c_nonhomog(n, s) == doctest::Approx(0.25).epsilon(1e-14));
      CHECK(const_c_homog_printed(n, s) / const_c_homog(n, s) == doctest::Approx(2.0).epsilon(1e-14));
      CHECK(const_hardy_homog_printed(n, s) / const_hardy_homog(n, s) == doctest::Approx(std::pow(4.0, n)).epsilon(1e-13));
      CHECK(const_a(n, s) == doctest::Approx(const_c_nonhomog(n, s) / (2.0 * abs_gamma_neg(s))));
      CHECK(const_B_ground(n, s) == doctest::Approx(const_hardy_homog(n, 1.0 - s)));
    }
}

TEST_CASE("C_{s,delta} scales like (4 delta)^s") {
  for (double d : {0.3, 2.0, 7.5}) CHECK(const_C_s_delta(2, 0.6, d) / const_C_s_delta(2, 0.6, 1.0) == doctest::Approx(std::pow(d, 0.6)));
}

TEST_CASE("fundamental solution of the sublaplacian") {
  for (int n : {1, 2, 3}) {
    const double folland = std::pow(2.0, n - 2) * std::pow(kPi, -n - 1) * std::pow(std::tgamma(0.5 * n), 2);
    CHECK(const_g(n, 1.0) == doctest::Approx(folland).epsilon(1e-14));
    const double r = 0.7, w = -0.4;
    const double nrm = homogeneous_norm_rw(r, w);
    CHECK(fundamental_solution_rw(n, 1.0, r, w) == doctest::Approx(folland * std::pow(nrm, -2.0 * n)).epsilon(1e-14));
  }
  CHECK(const_g(1, 1.0) == doctest::Approx(0.159154943091895335768883763373).epsilon(1e-15));
}

TEST_CASE("weak pairing of the fundamental solution") {
  for (int n : {1, 2})
    for (double s : {0.5, 1.0})
      for (double d : {0.5, 2.0})
        CHECK(fundamental_solution_pairing(n, s, d).value == doctest::Approx(std::pow(d, -(n + 1 - s))).epsilon(1e-8));
}

TEST_CASE("kernel closed forms against the subordination integral") {
  for (int n : {1, 2}) {
    for (double s : {0.3, 0.7}) {
      for (auto [r, w] : {std::pair{0.4, 0.9}, std::pair{1.6, -0.2}}) {
        CHECK(kernel_nonhomog_oracle(n, s, r, w).value ==
              doctest::Approx(kernel_Ks_nonhomog_rw(n, s, r, w)).epsilon(1e-7));
        CHECK(kernel_homog_oracle(n, s, r, w).value == doctest::Approx(kernel_Ks_homog_rw(n, s, r, w)).epsilon(1e-7));
      }
    }
  }
}

TEST_CASE("kernels are homogeneous of the right degree") {
  const double s = 0.4, r = 0.9, w = 0.3, k = 1.7;
  const int n = 1;
  const double Q = 2 * n + 2;
  CHECK(kernel_Ks_nonhomog_rw(n, s, k * r, k * k * w) ==
        doctest::Approx(std::pow(k, -Q - 2 * s) * kernel_Ks_nonhomog_rw(n, s, r, w)).epsilon(1e-13));
  CHECK(kernel_Ks_homog_rw(n, s, k * r, k * k * w) ==
        doctest::Approx(std::pow(k, -Q - 2 * (1 - s)) * kernel_Ks_homog_rw(n, s, r, w)).epsilon(1e-13));
}

TEST_CASE("constants table and domains") {
  const ConstantsTable t = constants_table(1, 0.5, 1.0);
  CHECK(t.C_s_delta == doctest::Approx(const_C_s_delta(1, 0.5, 1.0)));
  // E_{m,s} needs s < m/2
  CHECK(t.unavailable == std::vector<std::string>{"E_ns"});
  const ConstantsTable big = constants_table(2, 1.2, 1.0);
  CHECK(std::isfinite(big.C_s_delta));
  CHECK(std::isnan(big.c_ns_nonhomog));
  CHECK_FALSE(big.unavailable.empty());
  CHECK_THROWS_AS(const_C_s_delta(1, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(const_C_s_delta(1, 0.5, 0.0), DomainError);
  CHECK_THROWS_AS(const_c_homog(1, 1.0), DomainError);
  CHECK_THROWS_AS(kernel_nonhomog_oracle(1, 0.5, 0.0, 0.0), SingularPointError);
}
