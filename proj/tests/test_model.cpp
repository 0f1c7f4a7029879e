#include <cmath>

#include <doctest.h>

#include "heun/error.hpp"
#include "heun/model.hpp"

using namespace heun;

TEST_CASE("exponents at the A=10 ground-state energy") {
  const Exponents ex = derive_exponents({10.0, 1.0, 0}, -0.093111277969);
  CHECK(ex.alpha == doctest::Approx(0.305141).epsilon(1e-6));
  CHECK(ex.mu == doctest::Approx(1.638587).epsilon(1e-6));
  CHECK(ex.beta == doctest::Approx(std::sqrt(10.0)).epsilon(1e-15));
  CHECK(std::abs(2.0 * ex.alpha * ex.mu - 1.0) < 1e-14);
  CHECK(std::abs(ex.alpha * ex.alpha - 0.093111277969) < 1e-15);
}

TEST_CASE("exponents at a quasi-polynomial point and at A = 0") {
  const Exponents q = derive_exponents({64.0, 1.0, 0}, -1.0 / 16.0);
  CHECK(q.alpha == 0.25);
  CHECK(q.mu == 2.0);
  CHECK(q.beta == 8.0);
  const Exponents c = derive_exponents({0.0, 1.0, 0}, -0.25);
  CHECK(c.alpha == 0.5);
  CHECK(c.mu == 1.0);
  CHECK(c.beta == 0.0);
}

TEST_CASE("exponents reject non-negative energy") {
  CHECK_THROWS_AS(derive_exponents({1.0, 1.0, 0}, 0.0), DomainError);
  CHECK_THROWS_AS(derive_exponents({1.0, 1.0, 0}, 0.3), DomainError);
}

TEST_CASE("confluent Heun coefficients") {
  const DcheCoefficients b = dche_coefficients({1.0, 1.0, 0}, -0.139037013);
  CHECK(b.b_m2 == -1.0);
  CHECK(b.b_m1 == 0.0);
  CHECK(b.b_0 == -0.25);
  CHECK(b.b_1 == 1.0);
  CHECK(b.b_2 == -0.139037013);
  CHECK(dche_coefficients({5.0, 1.0, 2}, -0.0276154597).b_0 == -6.25);
}

TEST_CASE("scale law") {
  const ScaledPair s = rescale(1.0, -0.139037013, 2.0);
  CHECK(s.A == 0.25);
  CHECK(s.E == doctest::Approx(-0.556148052).epsilon(1e-12));
  const ScaledPair h = rescale(25.0, -0.077060194, 0.5);
  CHECK(h.A == 100.0);
  CHECK(h.E == doctest::Approx(-0.0192650485).epsilon(1e-12));
  const ScaledPair id = rescale(3.7, -0.2, 1.0);
  CHECK(id.A == 3.7);
  CHECK(id.E == -0.2);

  // Group action: two steps equal one.
  for (double z1 : {0.5, 2.0, 3.0}) {
    for (double z2 : {0.7, 1.3}) {
      const ScaledPair two = rescale(rescale(7.0, -0.05, z1).A, rescale(7.0, -0.05, z1).E, z2);
      const ScaledPair one = rescale(7.0, -0.05, z1 * z2);
      CHECK(std::abs(two.A / one.A - 1.0) < 1e-14);
      CHECK(std::abs(two.E / one.E - 1.0) < 1e-14);
    }
  }
  CHECK_THROWS_AS(rescale(1.0, -0.1, 0.0), DomainError);
  CHECK_THROWS_AS(rescale(1.0, -0.1, -2.0), DomainError);
}

TEST_CASE("Coulomb levels") {
  CHECK(coulomb_energy(0, 0) == -0.25);
  CHECK(coulomb_energy(1, 0) == -0.0625);
  CHECK(coulomb_energy(0, 2) == doctest::Approx(-1.0 / 36.0));
}

TEST_CASE("solver parameter checks") {
  CHECK_NOTHROW(require_solver_params({1.0, 1.0, 0}));
  CHECK_THROWS_AS(require_solver_params({0.0, 1.0, 0}), DomainError);
  CHECK_THROWS_AS(require_solver_params({-1.0, 1.0, 0}), DomainError);
  CHECK_THROWS_AS(require_solver_params({1.0, 0.0, 0}), DomainError);
  CHECK_THROWS_AS(require_solver_params({1.0, -1.0, 0}), DomainError);
  CHECK_THROWS_AS(require_solver_params({1.0, 1.0, -1}), DomainError);
  CHECK_THROWS_AS(require_solver_params({NAN, 1.0, 0}), DomainError);
  CHECK_THROWS_AS(require_bound_energy(0.0), DomainError);
  CHECK_THROWS_AS(require_bound_energy(1e-3), DomainError);
  CHECK_NOTHROW(require_bound_energy(-1e-3));
}
