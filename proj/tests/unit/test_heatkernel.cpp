#include <doctest.h>

#include <cmath>
#include <numbers>

#include <gsl/gsl_integration.h>

#include "hhardy/errors.hpp"
#include "hhardy/heatkernel.hpp"

using namespace hh;
constexpr double kPi = std::numbers::pi;

namespace {

struct Slice {
  double t, r, s;
  int n;
  bool homog;
};

double slice_fn(double lam, void *p) {
  const auto *a = static_cast<const Slice *>(p);
  const double fac = a->homog ? homog_lambda_factor(a->t, lam, a->s) : nonhomog_lambda_factor(a->t, lam, a->s);
  return q_lambda(a->t, lam, a->r, a->n) * fac;
}

// Independent cosine inversion with the QAWF Fourier integrator.
double gsl_kernel(const Slice &sl, double w) {
  gsl_integration_workspace *ws = gsl_integration_workspace_alloc(2000);
  gsl_integration_workspace *cyc = gsl_integration_workspace_alloc(2000);
  gsl_integration_qawo_table *tab = gsl_integration_qawo_table_alloc(w, 1.0, GSL_INTEG_COSINE, 50);
  gsl_function F{&slice_fn, const_cast<Slice *>(&sl)};
  double res = 0.0, err = 0.0;
  gsl_integration_qawf(&F, 0.0, 1e-13, 2000, ws, cyc, tab, &res, &err);
  gsl_integration_qawo_table_free(tab);
  gsl_integration_workspace_free(cyc);
  gsl_integration_workspace_free(ws);
  return res / kPi;
}

} // namespace

TEST_CASE("x/sinh x and x coth x across regimes") {
  for (double x : {1e-9, 1e-5, 0.3, 2.0, 40.0, 800.0}) {
    const double ref = x < 700 ? x / std::sinh(x) : 0.0;
    if (x > 1e-6 && x < 700) CHECK(x_over_sinh(x) == doctest::Approx(ref).epsilon(1e-13));
    CHECK(x_coth(x) == doctest::Approx(x < 1e-6 ? 1.0 : x / std::tanh(x)).epsilon(1e-13));
  }
  CHECK(x_over_sinh(0.0) == 1.0);
  CHECK(x_coth(0.0) == 1.0);
  CHECK(x_over_sinh(-0.7) == doctest::Approx(x_over_sinh(0.7)));
  CHECK(x_over_sinh(800.0) >= 0.0);
  CHECK(x_over_sinh(800.0) < 1e-300);
}

TEST_CASE("lambda slice at lambda = 0 is the Euclidean heat kernel") {
  const double t = 0.7, r = 1.1;
  CHECK(q_lambda(t, 0.0, r, 1) == doctest::Approx(std::exp(-r * r / (4.0 * t)) / (4.0 * kPi * t)).epsilon(1e-14));
  CHECK(q_lambda(t, 1e-8, r, 2) == doctest::Approx(q_lambda(t, 0.0, r, 2)).epsilon(1e-12));
}

TEST_CASE("modified kernels against an independent Fourier integrator") {
  for (bool homog : {false, true}) {
    for (const Slice &sl : {Slice{0.5, 0.4, 0.5, 1, homog}, Slice{2.0, 1.5, 0.25, 1, homog}, Slice{1.0, 0.8, 0.75, 2, homog}}) {
      for (double w : {0.1, 0.9}) {
        const HeatParams p{sl.t, sl.s, sl.n};
        const double mine = homog ? modified_kernel_homog_q(p, sl.r, w).value : modified_kernel_nonhomog_q(p, sl.r, w).value;
        CHECK(mine == doctest::Approx(gsl_kernel(sl, w)).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("modified kernels are even in w, the non-homogeneous one positive") {
  for (double t : {0.1, 1.0, 5.0}) {
    for (double w : {0.0, 0.3, 2.0}) {
      const HPoint x = HPoint::from_rw(1, 0.6, w), xm = HPoint::from_rw(1, 0.6, -w);
      const double a = modified_kernel_nonhomog(t, 0.5, x), b = modified_kernel_homog(t, 0.5, x);
      CHECK(a > 0.0);
      CHECK(modified_kernel_nonhomog(t, 0.5, xm) == doctest::Approx(a).epsilon(1e-12));
      CHECK(modified_kernel_homog(t, 0.5, xm) == doctest::Approx(b).epsilon(1e-12));
    }
  }
}

TEST_CASE("homogeneous kernel changes sign") {
  // 30-digit cosine transforms
  CHECK(modified_kernel_homog(0.1, 0.5, HPoint::from_rw(1, 0.6, 0.3)) ==
        doctest::Approx(-0.01277851213941782583971355).epsilon(1e-8));
  CHECK(modified_kernel_homog(1.0, 0.5, HPoint::from_rw(1, 0.6, 2.0)) ==
        doctest::Approx(-0.001965806607947121034306135).epsilon(1e-8));
}

TEST_CASE("modified kernels have unit mass") {
  for (double t : {0.3, 3.0}) {
    CHECK(modified_kernel_mass({t, 0.5, 1}, false).value == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(modified_kernel_mass({t, 0.5, 1}, true).value == doctest::Approx(1.0).epsilon(1e-7));
  }
}

TEST_CASE("parameter checks") {
  CHECK_THROWS_AS(modified_kernel_nonhomog_q({0.0, 0.5, 1}, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(modified_kernel_homog_q({1.0, 1.0, 1}, 1.0, 0.0), DomainError);
}
