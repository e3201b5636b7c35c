#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hhardy/errors.hpp"
#include "hhardy/euclid.hpp"
#include "hhardy/kernels.hpp"

using namespace hh;
constexpr double kPi = std::numbers::pi;

TEST_CASE("kernel constants against frozen values") {
  CHECK(euclid_kernel_Gs_r(0.5, 1, 1.0) == doctest::Approx(0.318309886183790671537767526745).epsilon(1e-13));
  CHECK(euclid_kernel_Gs_r(0.3, 3, 1.0) == doctest::Approx(0.0585935624515058976257112409187).epsilon(1e-13));
  CHECK(euclid_g_alpha_r(0.6, 3, 1.0) == doctest::Approx(0.0560938519268653931166387691937).epsilon(1e-13));
  CHECK(euclid_kernel_Gs_r(0.3, 3, 2.0) == doctest::Approx(euclid_kernel_Gs_r(0.3, 3, 1.0) * std::pow(2.0, -3.6)).epsilon(1e-13));
  CHECK(euclid_kernel_Gs(0.5, 1, EuclidPoint{{-1.0}}) == doctest::Approx(1.0 / kPi).epsilon(1e-13));
}

TEST_CASE("kernels match their defining integrals") {
  for (double r : {0.3, 1.0, 2.5}) {
    CHECK(euclid_kernel_Gs_oracle(0.5, 1, r).value == doctest::Approx(euclid_kernel_Gs_r(0.5, 1, r)).epsilon(1e-9));
    CHECK(euclid_kernel_Gs_oracle(0.3, 3, r).value == doctest::Approx(euclid_kernel_Gs_r(0.3, 3, r)).epsilon(1e-9));
    CHECK(euclid_g_alpha_oracle(0.6, 3, r).value == doctest::Approx(euclid_g_alpha_r(0.6, 3, r)).epsilon(1e-9));
    CHECK(euclid_g_alpha_oracle(0.2, 1, r).value == doctest::Approx(euclid_g_alpha_r(0.2, 1, r)).epsilon(1e-9));
  }
}

TEST_CASE("heat semigroup on a Gaussian") {
  CHECK(euclid_gaussian_heat(0.0, 1, 0.7) == doctest::Approx(std::exp(-0.49)).epsilon(1e-15));
  // (1 + 4t)^{-m/2} e^{-r^2 / (1 + 4t)}
  CHECK(euclid_gaussian_heat(0.5, 3, 1.0) == doctest::Approx(std::pow(3.0, -1.5) * std::exp(-1.0 / 3.0)).epsilon(1e-14));
}

TEST_CASE("principal value agrees with the semigroup formula") {
  const EuclidRadial g = euclid_gaussian(1.0);
  auto f = [&](const EuclidPoint &p) { return g(p.norm()); };
  for (double x : {0.0, 0.8}) {
    const FracLaplacianResult pv = euclid_frac_laplacian(f, 0.5, 1, EuclidPoint{{x}});
    CHECK(pv.value == doctest::Approx(euclid_frac_laplacian_gaussian_oracle(0.5, 1, x).value).epsilon(1e-6));
  }
  const FracLaplacianResult pv3 = euclid_frac_laplacian(f, 0.3, 3, EuclidPoint{{0.5, 0.0, 0.0}});
  CHECK(pv3.value == doctest::Approx(euclid_frac_laplacian_gaussian_oracle(0.3, 3, 0.5).value).epsilon(1e-5));
}

TEST_CASE("double-integral quadratic form matches the Fourier side") {
  for (int m : {1, 3})
    for (double s : {0.25, 0.6}) {
      CAPTURE(m);
      CAPTURE(s);
      CHECK(euclid_quadratic_form(euclid_gaussian(1.0), s, m).value ==
            doctest::Approx(euclid_gaussian_quadratic_form(1.0, s, m)).epsilon(1e-7));
    }
  // <Delta^s f, f> scales like a^{s - m/2}
  CHECK(euclid_gaussian_quadratic_form(2.0, 0.4, 3) ==
        doctest::Approx(euclid_gaussian_quadratic_form(1.0, 0.4, 3) * std::pow(2.0, 0.4 - 1.5)).epsilon(1e-13));
}

TEST_CASE("Hardy ratios against frozen values") {
  const InequalityReport a = euclid_hardy(euclid_gaussian(1.0), 0.3, 1);
  CHECK(a.ratio == doctest::Approx(0.324919696232898593878236630012).epsilon(1e-7));
  const InequalityReport b = euclid_hardy(euclid_gaussian(1.0), 0.7, 3);
  CHECK(b.ratio == doctest::Approx(0.51294725619587556709504842934).epsilon(1e-7));
  CHECK(a.holds());
  CHECK(b.holds());
  CHECK(euclid_hardy(euclid_gaussian(3.0), 0.3, 1).ratio == doctest::Approx(a.ratio).epsilon(1e-7));
}

TEST_CASE("alpha-choice identity") {
  CHECK(const_E_euclid(1, 0.25) == doctest::Approx(0.13999967745248263086609615966).epsilon(1e-14));
  CHECK(const_E_euclid(3, 0.7) == doctest::Approx(0.48544248433422072305071478018).epsilon(1e-14));
  CHECK(euclid_alpha_constant(0.25, 1, 0.375) == doctest::Approx(const_E_euclid(1, 0.25)).epsilon(1e-14));
  CHECK(euclid_alpha_constant(0.7, 3, 1.1) == doctest::Approx(const_E_euclid(3, 0.7)).epsilon(1e-14));
  // other alphas give smaller constants
  CHECK(euclid_alpha_constant(0.25, 1, 0.3) < const_E_euclid(1, 0.25));
  CHECK(euclid_alpha_constant(0.7, 3, 0.9) < const_E_euclid(3, 0.7));
}

TEST_CASE("ground-state identity") {
  const EuclidGroundState gs = euclid_ground_state(euclid_gaussian(1.0), 0.25, 1, 0.375);
  CHECK(gs.rel_diff() < 1e-5);
  CHECK(gs.lhs > 0.0);
}

TEST_CASE("Fourier pairing needs the symbol |xi|^{-2 alpha}") {
  const PairingReport p = euclid_g_alpha_pairing(0.6, 3);
  CHECK(p.rel_err_2alpha() < 1e-8);
  CHECK(p.rel_err_alpha() == doctest::Approx(0.302).epsilon(0.01));
  const PairingReport q = euclid_g_alpha_pairing(0.3, 1);
  CHECK(q.rel_err_2alpha() < 1e-8);
  CHECK(q.rel_err_alpha() > 1e-2);
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(euclid_kernel_Gs_r(1.2, 1, 1.0), DomainError);
  CHECK_THROWS_AS(euclid_g_alpha_r(0.6, 1, 1.0), DomainError);
  CHECK_THROWS_AS(euclid_ground_state(euclid_gaussian(1.0), 0.4, 1, 0.3), DomainError);
}
