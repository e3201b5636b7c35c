#include <doctest.h>

#include <cmath>

#include "hhardy/hgroup.hpp"
#include "hhardy/numerics.hpp"

using namespace hh;

namespace {

HPoint random_point(Rng &rng, int n) {
  HPoint x;
  x.z.resize(2 * n);
  for (double &c : x.z) c = 2.0 * rng.normal();
  x.w = 3.0 * rng.normal();
  return x;
}

void check_equal(const HPoint &a, const HPoint &b, double tol) {
  REQUIRE(a.z.size() == b.z.size());
  for (size_t i = 0; i < a.z.size(); ++i) CHECK(a.z[i] == doctest::Approx(b.z[i]).epsilon(tol));
  CHECK(a.w == doctest::Approx(b.w).epsilon(tol));
}

} // namespace

TEST_CASE("group law is associative with identity and inverses") {
  Rng rng(7);
  for (int n : {1, 2, 3}) {
    const HPoint e = HPoint::from_rw(n, 0.0, 0.0);
    for (int i = 0; i < 50; ++i) {
      const HPoint x = random_point(rng, n), y = random_point(rng, n), z = random_point(rng, n);
      check_equal(group_mul(group_mul(x, y), z), group_mul(x, group_mul(y, z)), 1e-12);
      check_equal(group_mul(x, e), x, 1e-15);
      const HPoint xi = group_mul(x, group_inv(x));
      CHECK(z_norm2(xi) < 1e-24);
      CHECK(std::abs(xi.w) < 1e-12);
    }
  }
}

TEST_CASE("centre coordinate picks up the symplectic form") {
  Rng rng(11);
  for (int i = 0; i < 20; ++i) {
    const HPoint x = random_point(rng, 2), y = random_point(rng, 2);
    const HPoint xy = group_mul(x, y), yx = group_mul(y, x);
    for (size_t k = 0; k < x.z.size(); ++k) CHECK(xy.z[k] == doctest::Approx(yx.z[k]));
    // commutator lies in the centre and is antisymmetric
    CHECK(xy.w - x.w - y.w == doctest::Approx(-(yx.w - x.w - y.w)).epsilon(1e-12));
  }
}

TEST_CASE("dilations are automorphisms and scale the norm") {
  Rng rng(3);
  for (int i = 0; i < 30; ++i) {
    const HPoint x = random_point(rng, 1), y = random_point(rng, 1);
    const double r = 0.1 + 3.0 * rng.uniform();
    check_equal(dilate(group_mul(x, y), r), group_mul(dilate(x, r), dilate(y, r)), 1e-12);
    CHECK(homogeneous_norm(dilate(x, r)) == doctest::Approx(r * homogeneous_norm(x)).epsilon(1e-13));
    CHECK(homogeneous_norm(group_inv(x)) == doctest::Approx(homogeneous_norm(x)).epsilon(1e-14));
  }
}

TEST_CASE("homogeneous norm in (r, w) form") {
  CHECK(homogeneous_norm_rw(1.0, 0.0) == doctest::Approx(1.0));
  CHECK(homogeneous_norm_rw(0.0, 0.25) == doctest::Approx(1.0));
  CHECK(homogeneous_norm(HPoint::from_rw(2, 1.5, -0.7)) == doctest::Approx(homogeneous_norm_rw(1.5, 0.7)));
}

TEST_CASE("u weight and omega weight") {
  const double s = 0.3, d = 1.7;
  CHECK(u_weight_rw(1, 0.0, 0.0, s, d) == doctest::Approx(std::pow(d, -(s + 2.0))).epsilon(1e-15));
  const double a = d + 0.25 * 0.8 * 0.8;
  CHECK(u_weight_rw(2, 0.8, 0.4, s, d) == doctest::Approx(std::pow(a * a + 0.16, -(s + 3.0) / 2.0)).epsilon(1e-15));
  CHECK(u_weight(HPoint::from_rw(2, 0.8, 0.4), s, d) == doctest::Approx(u_weight_rw(2, 0.8, 0.4, s, d)));
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const double r = 3.0 * rng.uniform(), w = 3.0 * rng.normal();
    const double om = omega_weight_rw(r, w);
    CHECK(om >= 0.0);
    CHECK(om <= 1.0);
  }
  CHECK(omega_weight_rw(1.0, 0.0) == doctest::Approx(1.0));
}
