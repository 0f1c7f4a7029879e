#include <cmath>

#include <doctest.h>

#include "heun/error.hpp"
#include "heun/series.hpp"
#include "heun/shooting.hpp"

using namespace heun;

namespace {
const ProblemParams kParams{10.0, 1.0, 0};
constexpr double kE = -0.093111277969;
}  // namespace

TEST_CASE("recurrence residuals of all four series") {
  for (int l : {0, 2}) {
    const ProblemParams p{10.0, 1.0, l};
    for (auto kind : {SeriesKind::InfinityRecessive, SeriesKind::InfinityDominant,
                      SeriesKind::ZeroRecessive, SeriesKind::ZeroDominant}) {
      const AsymptoticSeries s =
          kind == SeriesKind::InfinityRecessive ? asym_coeffs_infinity(p, kE, 1.0, 60)
          : kind == SeriesKind::ZeroRecessive   ? asym_coeffs_zero(p, kE, 1.0, 60)
                                                : dominant_coeffs(kind, p, kE, 1.0, 60);
      REQUIRE(s.coefficients.size() > 10);
      double worst = 0.0;
      for (int m = 1; m < static_cast<int>(s.coefficients.size()); ++m) {
        worst = std::max(worst, s.recurrence_residual(m));
      }
      INFO(to_string(kind));
      CHECK(worst < 1e-10);
    }
  }
}

TEST_CASE("leading behaviour") {
  const Exponents ex = derive_exponents(kParams, kE);
  const AsymptoticSeries inf = asym_coeffs_infinity(kParams, kE, 1.0, kDefaultSeriesTerms);
  const double z = 400.0;
  const cplx v = eval_asymptotic(inf, z).value * std::exp(ex.alpha * z) * std::pow(z, -ex.mu);
  CHECK(std::abs(v - 1.0) < 1e-2);
  CHECK(std::abs(v - 1.0) > 0.0);

  const AsymptoticSeries zero = asym_coeffs_zero(kParams, kE, 1.0, kDefaultSeriesTerms);
  const double s = 0.01;
  const cplx u = eval_asymptotic(zero, s).value / (std::exp(-ex.beta / s) * s);
  CHECK(std::abs(u - 1.0) < 1e-2);
}

TEST_CASE("Wronskian of the pair at infinity does not depend on z") {
  const AsymptoticSeries rec = asym_coeffs_infinity(kParams, kE, 1.0, kDefaultSeriesTerms);
  const AsymptoticSeries dom =
      dominant_coeffs(SeriesKind::InfinityDominant, kParams, kE, 1.0, kDefaultSeriesTerms);
  auto wr = [&](double z) {
    const SeriesEvaluation a = eval_asymptotic(rec, z, 1e-10);
    const SeriesEvaluation b = eval_asymptotic(dom, z, 1e-10);
    return a.value * b.derivative - a.derivative * b.value;
  };
  const cplx w1 = wr(60.0), w2 = wr(120.0);
  // Leading terms give W = 2 alpha.
  const double alpha = derive_exponents(kParams, kE).alpha;
  CHECK(std::abs(w1 - w2) / std::abs(w1) < 1e-9);
  CHECK(std::abs(w1 - 2.0 * alpha) / (2.0 * alpha) < 1e-9);
}

TEST_CASE("series values agree with direct integration") {
  // Each recessive solution is integrated in the direction in which it grows.
  const AsymptoticSeries inf = asym_coeffs_infinity(kParams, kE, 1.0, kDefaultSeriesTerms);
  const double z1 = far_point(kParams, kE), z2 = 1.5 * z1;
  const SeriesEvaluation a = eval_asymptotic(inf, z2, 1e-10);
  const SeriesEvaluation b = eval_asymptotic(inf, z1, 1e-10);
  const SolutionPoint end =
      propagate(kParams, kE, {z2, a.value.real(), a.derivative.real()}, z1, 1e-13);
  CHECK(std::abs(end.w - b.value.real()) / std::abs(b.value) < 1e-8);
  CHECK(std::abs(end.dw - b.derivative.real()) / std::abs(b.derivative) < 1e-8);

  const AsymptoticSeries zero = asym_coeffs_zero(kParams, kE, 1.0, kDefaultSeriesTerms);
  const double s1 = near_point(kParams, kE), s2 = 0.7 * s1;
  const SeriesEvaluation c = eval_asymptotic(zero, s2, 1e-10);
  const SeriesEvaluation d = eval_asymptotic(zero, s1, 1e-10);
  const SolutionPoint out =
      propagate(kParams, kE, {s2, c.value.real(), c.derivative.real()}, s1, 1e-13);
  CHECK(std::abs(out.w - d.value.real()) / std::abs(d.value) < 1e-8);
}

TEST_CASE("projection points reach the series tolerance") {
  const double zf = far_point(kParams, kE);
  const double zn = near_point(kParams, kE);
  const Exponents ex = derive_exponents(kParams, kE);
  CHECK(zf >= 10.0 / ex.alpha);
  CHECK(zn <= ex.beta / 10.0);
  CHECK(zn >= ex.beta / 40.0);
  const AsymptoticSeries inf = asym_coeffs_infinity(kParams, kE, 1.0, kDefaultSeriesTerms);
  const AsymptoticSeries zero = asym_coeffs_zero(kParams, kE, 1.0, kDefaultSeriesTerms);
  CHECK(eval_asymptotic(inf, zf, 1.0).relative_error() < kSeriesTolerance);
  CHECK(eval_asymptotic(zero, zn, 1.0).relative_error() < kSeriesTolerance);
}

TEST_CASE("series outside the asymptotic regime are refused") {
  const AsymptoticSeries inf = asym_coeffs_infinity(kParams, kE, 1.0, kDefaultSeriesTerms);
  CHECK_THROWS_AS(eval_asymptotic(inf, 0.5, 1e-10), AsymptoticRegimeError);
  const AsymptoticSeries zero = asym_coeffs_zero(kParams, kE, 1.0, kDefaultSeriesTerms);
  CHECK_THROWS_AS(eval_asymptotic(zero, 30.0, 1e-10), AsymptoticRegimeError);
}

TEST_CASE("derivative is analytic, matching a central difference") {
  const AsymptoticSeries inf = asym_coeffs_infinity(kParams, kE, 1.0, kDefaultSeriesTerms);
  const double z = 80.0, h = 1e-4;
  const SeriesEvaluation e = eval_asymptotic(inf, z, 1e-10);
  const cplx fd =
      (eval_asymptotic(inf, z + h, 1e-10).value - eval_asymptotic(inf, z - h, 1e-10).value) /
      (2.0 * h);
  CHECK(std::abs(fd - e.derivative) / std::abs(e.derivative) < 1e-7);
  CHECK(e.truncation_index >= 1);
}

TEST_CASE("series constructors reject A = 0 and E >= 0") {
  CHECK_THROWS_AS(asym_coeffs_zero({0.0, 1.0, 0}, -0.25, 1.0, 20), DomainError);
  CHECK_THROWS_AS(asym_coeffs_infinity(kParams, 0.0, 1.0, 20), DomainError);
}
