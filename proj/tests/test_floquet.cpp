#include <cmath>

#include <doctest.h>

#include "heun/error.hpp"
#include "heun/floquet.hpp"
#include "heun/shooting.hpp"
#include "oracles.hpp"

using namespace heun;

namespace {
const ProblemParams kParams{10.0, 1.0, 0};
constexpr double kE = -0.093111277969;
const cplx kNu{0.0, 0.918988880508};
}  // namespace

TEST_CASE("determinant vanishes at a tabulated index and its integer shifts") {
  const ProblemParams p{0.5, 1.0, 0};
  const cplx nu{0.0, 0.487816983037};
  CHECK(std::abs(floquet_determinant(nu, -0.1533318066, p)) < 1e-8);
  CHECK(std::abs(floquet_determinant(nu + 1.0, -0.1533318066, p)) < 1e-8);
  CHECK(std::abs(floquet_determinant(cplx(0.0, 0.3), -0.1533318066, p)) > 1e-4);
}

TEST_CASE("coefficients decay on both sides") {
  // Minimal solutions fall off like sqrt|E| / n for n -> +inf and sqrt(A) / n
  // for n -> -inf.
  const FloquetSolution s = laurent_coefficients(kNu, kE, kParams, 60);
  double prev_up = INFINITY, prev_down = INFINITY;
  for (int n = 10; n <= 50; n += 10) {
    const double up = std::abs(s.c(n + 1) / s.c(n));
    const double down = std::abs(s.c(-n - 1) / s.c(-n));
    CHECK(up < prev_up);
    CHECK(down < prev_down);
    prev_up = up;
    prev_down = down;
  }
  CHECK(prev_up < 0.02);
  CHECK(prev_down < 0.1);
  const TailBasis tb = tail_basis(kNu, kE, kParams, 40, TailSide::Plus);
  CHECK(tb.n_first == -1);
  CHECK(tb.n_last > 40);
}

TEST_CASE("indices at tabulated energies") {
  struct Row {
    double A;
    int l;
    double E;
    cplx nu;
  };
  // Energies carry ten printed digits, so the index is pinned only to ~1e-9.
  const Row rows[] = {{0.5, 0, -0.1533318066, {0.0, 0.487816983037}},
                      {65.0, 1, -0.0448293862, {0.5, 0.898656568840}},
                      {0.5, 2, -0.0277607452, {0.000919514453, 0.0}},
                      {65.0, 0, -0.0622769642, {0.5, 0.556566003844}}};
  for (const Row& r : rows) {
    const IndexPair ip = find_indices(r.E, {r.A, 1.0, r.l});
    CAPTURE(r.A);
    CAPTURE(r.l);
    CHECK(std::abs(ip.nu1 - r.nu) < 1e-8);
    CHECK(ip.residual < 1e-9);
    if (r.nu.real() == 0.5) {
      CHECK(std::abs(ip.nu2 - std::conj(ip.nu1)) < 1e-15);
    } else {
      CHECK(std::abs(ip.nu2 + ip.nu1) < 1e-15);
    }
  }
}

TEST_CASE("A=10 ground-state index and a seeded search") {
  CHECK(std::abs(find_indices(kE, kParams).nu1 - kNu) < 1e-11);
  CHECK(std::abs(find_indices(kE, kParams, 0, kNu + cplx(1e-3, 1e-3)).nu1 - kNu) < 1e-11);
}

TEST_CASE("Laurent coefficients satisfy the recurrence") {
  const FloquetSolution s = laurent_coefficients(kNu, kE, kParams, 40);
  CHECK(s.c(0) == cplx(1.0, 0.0));
  for (int n = -38; n <= 38; ++n) CHECK(s.recurrence_residual(n) < 1e-10);
  CHECK(std::abs(s.c(40)) < 1e-15 * std::abs(s.c(1)) * 1e6);
  CHECK(std::abs(s.c(-40)) < 1e-12);
}

TEST_CASE("conjugate index gives conjugate coefficients") {
  const FloquetSolution a = laurent_coefficients(kNu, kE, kParams, 30);
  const FloquetSolution b = laurent_coefficients(std::conj(kNu), kE, kParams, 30);
  for (int n = -30; n <= 30; ++n) {
    CHECK(std::abs(b.c(n) - std::conj(a.c(n))) < 1e-12 * std::max(1.0, std::abs(a.c(n))));
  }
}

TEST_CASE("Floquet solutions solve the equation and keep a constant Wronskian") {
  const FloquetSolution w1 = laurent_coefficients(kNu, kE, kParams, 40);
  const FloquetSolution w2 = laurent_coefficients(-kNu, kE, kParams, 40);
  auto wr = [&](double z) {
    const FloquetValue u = eval_floquet(w1, z), v = eval_floquet(w2, z);
    return u.w * v.dw - u.dw * v.w;
  };
  const cplx ref = wr(3.0);
  for (double z : {1.5, 6.0, 9.0}) {
    CHECK(in_annulus(w1, z));
    CHECK(std::abs(wr(z) - ref) / std::abs(ref) < 1e-9);
  }
  // Integrating from z = 3 reproduces the series at z = 6.
  const FloquetValue a = eval_floquet(w1, 3.0), b = eval_floquet(w1, 6.0);
  const SolutionPoint re = propagate(kParams, kE, {3.0, a.w.real(), a.dw.real()}, 6.0, 1e-13);
  const SolutionPoint im = propagate(kParams, kE, {3.0, a.w.imag(), a.dw.imag()}, 6.0, 1e-13);
  CHECK(std::abs(cplx(re.w, im.w) - b.w) / std::abs(b.w) < 1e-9);
}

TEST_CASE("monodromy oracle") {
  CHECK(oracle::monodromy_distance(kParams, kE, kNu) < 1e-8);
  const ProblemParams half{65.0, 1.0, 1};
  const double E = find_energy(half, 0).E;
  CHECK(oracle::monodromy_distance(half, E, find_indices(E, half).nu1) < 1e-8);
  const ProblemParams real{0.5, 1.0, 2};
  const double Er = find_energy(real, 0).E;
  const cplx nr = find_indices(Er, real).nu1;
  CHECK(nr.imag() == 0.0);
  CHECK(oracle::monodromy_distance(real, Er, nr) < 1e-8);
}

TEST_CASE("indices near coincidence at a quasi-polynomial point") {
  // A = 64, l = 0 has w = exp(-z/4 - 8/z) z (1 + z/4) at E = -1/16: the two
  // indices meet at 0 and separate like sqrt(E - E0).
  const ProblemParams p{64.0, 1.0, 0};
  const double E0 = -1.0 / 16.0;
  CHECK(std::abs(find_indices(E0, p).nu1) < 1e-6);
  const cplx below = find_indices(E0 - 1e-8, p).nu1;
  const cplx below_far = find_indices(E0 - 1e-6, p).nu1;
  const cplx above = find_indices(E0 + 1e-8, p).nu1;
  CHECK(below.imag() == 0.0);
  CHECK(above.real() == 0.0);
  CHECK(std::abs(std::abs(below_far) / std::abs(below) - 10.0) < 1e-2);
  CHECK(std::abs(std::abs(above) / std::abs(below) - 1.0) < 1e-3);
}

TEST_CASE("index search rejects degenerate input") {
  CHECK_THROWS_AS(find_indices(0.0, kParams), DomainError);
  CHECK_THROWS_AS(find_indices(0.01, kParams), DomainError);
  CHECK_THROWS_AS(find_indices(kE, {0.0, 1.0, 0}), DomainError);
  CHECK_THROWS_AS(find_indices(kE, {10.0, -1.0, 0}), DomainError);
  CHECK_THROWS_AS(tail_basis(kNu, kE, {0.0, 1.0, 0}, 20, TailSide::Plus), DomainError);
}
