#include <cmath>

#include <doctest.h>

#include "heun/error.hpp"
#include "heun/floquet.hpp"
#include "heun/series.hpp"
#include "heun/shooting.hpp"

using namespace heun;

namespace {
const ProblemParams kParams{10.0, 1.0, 0};
}

TEST_CASE("A=10 ground state connection data") {
  const ConnectionResult r = eigen_connection(kParams, -0.12, -0.07);
  CHECK(std::abs(r.E + 0.093111277969) < 1e-11);
  CHECK(std::abs(std::abs(r.zeta1) - 1.0) < 1e-12);
  CHECK(r.zeta2 == -std::conj(r.zeta1));
  CHECK(r.zeta1.imag() > 0.0);
  CHECK(std::abs(r.zeta1 - cplx(-0.059000052486, 0.998257979586)) < 1e-10);
  CHECK(std::abs(r.a0 - cplx(0.0, -2.5451305418)) < 1e-9);
  CHECK(std::abs(r.b0 - cplx(0.0, -4.1825205880)) < 1e-9);
  const cplx ratio = r.a0 / r.b0;
  CHECK(std::abs(ratio.imag()) < 1e-8);
  CHECK(std::abs(ratio.real() / (2.5451305418 / 4.1825205880) - 1.0) < 1e-8);
  CHECK(r.zeta_residual < 1e-8);
}

TEST_CASE("connected solution matches both recessive series") {
  // Near the origin the Floquet pair is dominant on the positive axis and
  // their combination cancels; the negative axis is free of that.
  const ConnectionResult r = find_energy_floquet(kParams, 0);
  const AsymptoticSeries inf = asym_coeffs_infinity(kParams, r.E, r.a0, kDefaultSeriesTerms);
  const AsymptoticSeries zero = asym_coeffs_zero(kParams, r.E, r.b0, kDefaultSeriesTerms);
  const FloquetValue far = eval_connection(r, r.z_far);
  const SeriesEvaluation sf = eval_asymptotic(inf, r.z_far, 1e-8);
  CHECK(std::abs(far.w - sf.value) / std::abs(sf.value) < 1e-8);
  CHECK(std::abs(far.dw - sf.derivative) / std::abs(sf.derivative) < 1e-8);
  for (double z : {-r.z_near, -0.5 * r.z_near}) {
    const FloquetValue near = eval_connection(r, z);
    const SeriesEvaluation sn = eval_asymptotic(zero, z, 1e-6);
    CHECK(std::abs(near.w - sn.value) / std::abs(sn.value) < 1e-8);
  }
  const FloquetValue nfar = eval_connection(r, -r.z_far);
  CHECK(std::abs(nfar.w - eval_asymptotic(inf, -r.z_far, 1e-8).value) / std::abs(nfar.w) < 1e-8);
}

TEST_CASE("Floquet and shooting eigenvalues agree") {
  for (int l = 0; l <= 2; ++l) {
    for (double A : {0.01, 10.0, 65.0}) {
      for (int n = 0; n <= 2; ++n) {
        const ProblemParams p{A, 1.0, l};
        CAPTURE(l);
        CAPTURE(A);
        CAPTURE(n);
        CHECK(std::abs(find_energy_floquet(p, n).E - find_energy(p, n).E) < 1e-9);
      }
    }
  }
}

TEST_CASE("characteristic function is real and changes sign at the eigenvalue") {
  const ConnectionData lo = connection_data(-0.0932, kParams);
  const ConnectionData hi = connection_data(-0.0930, kParams);
  CHECK(std::abs(lo.characteristic.imag()) < 1e-8 * std::abs(lo.characteristic));
  CHECK(lo.characteristic.real() * hi.characteristic.real() < 0.0);
}

TEST_CASE("non-default Z") {
  const ProblemParams p{0.25, 2.0, 0};
  CHECK(std::abs(find_energy_floquet(p, 0).E - find_energy(p, 0).E) < 1e-9);
}

TEST_CASE("connection rejects degenerate input") {
  CHECK_THROWS_AS(find_energy_floquet({0.0, 1.0, 0}, 0), DomainError);
  CHECK_THROWS_AS(find_energy_floquet({1.0, 0.0, 0}, 0), DomainError);
  CHECK_THROWS_AS(connection_data(0.0, kParams), DomainError);
}
