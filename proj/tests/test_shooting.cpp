#include <cmath>
#include <vector>

#include <doctest.h>

#include "heun/error.hpp"
#include "heun/model.hpp"
#include "heun/shooting.hpp"

using namespace heun;

TEST_CASE("mismatch vanishes at an eigenvalue only") {
  const ProblemParams p{1.0, 1.0, 0};
  CHECK(std::abs(mismatch(-0.139037013, p)) < 1e-8);
  CHECK(std::abs(mismatch(-0.10, p)) > 1e-3);
}

TEST_CASE("eigenvalues") {
  CHECK(std::abs(find_energy({0.0001, 1.0, 0}, 0).E + 0.245429530) < 1e-8);
  CHECK(std::abs(find_energy({25.0, 1.0, 1}, 1).E + 0.023926758) < 1e-8);
  CHECK(std::abs(find_energy({1.0, 1.0, 0}, 0).E + 0.139037013) < 1e-8);
}

// Mass beyond the sampled window. The ODE is integrated from z_edge * stretch
// towards the window, the stable direction for the recessive solution, and
// scaled to match the sample at the edge.
double tail_norm(const ProblemParams& p, double E, const WavePoint& edge, double stretch) {
  const int m = 2000;
  const double x0 = std::log(edge.z * stretch), x1 = std::log(edge.z);
  std::vector<double> zs;
  for (int i = 1; i <= m; ++i) zs.push_back(std::exp(x0 + (x1 - x0) * i / m));
  const double a = std::sqrt(-E), b = std::sqrt(p.A);
  const double z0 = std::exp(x0);
  const double w0 = 1e-200;
  const double dw0 = stretch > 1.0 ? -a * w0 : b / (z0 * z0) * w0;
  const std::vector<SolutionPoint> pts = propagate_to(p, E, {z0, w0, dw0}, zs, 1e-12);
  const double scale = edge.w / pts.back().w;
  double acc = 0.0;
  double prev_f = 0.0, prev_x = x0;
  for (int i = 0; i < m; ++i) {
    const double w = scale * pts[i].w;
    const double f = w * w * pts[i].z, x = std::log(pts[i].z);
    acc += 0.5 * (prev_f + f) * (x - prev_x);
    prev_f = f;
    prev_x = x;
  }
  return std::abs(acc);
}

TEST_CASE("eigenfunctions: node count, sign and normalization") {
  for (int l : {0, 1, 2}) {
    for (double A : {0.01, 10.0, 100.0}) {
      for (int n = 0; n <= 3; ++n) {
        const BoundState st = find_energy({A, 1.0, l}, n);
        CAPTURE(l);
        CAPTURE(A);
        CAPTURE(n);
        CHECK(st.n == n);
        CHECK(count_nodes(st.wave_samples) == n);
        // Positive just above the origin.
        for (const auto& s : st.wave_samples) {
          if (std::abs(s.w) > 1e-8) {
            CHECK(s.w > 0.0);
            break;
          }
        }
        // Trapezoid in ln z, the grid's natural variable.
        double norm = 0.0;
        for (std::size_t i = 1; i < st.wave_samples.size(); ++i) {
          const auto& a = st.wave_samples[i - 1];
          const auto& b = st.wave_samples[i];
          norm += 0.5 * (a.w * a.w * a.z + b.w * b.w * b.z) * std::log(b.z / a.z);
        }
        norm += tail_norm({A, 1.0, l}, st.E, st.wave_samples.front(), 1.0 / 16.0);
        norm += tail_norm({A, 1.0, l}, st.E, st.wave_samples.back(), 8.0);
        CHECK(std::abs(norm - 1.0) < 1e-6);
      }
    }
  }
}

TEST_CASE("energies increase with A") {
  const std::vector<double> As{0.0001, 0.01, 1.0, 25.0, 100.0};
  for (int l = 0; l <= 2; ++l) {
    for (int n = 0; n <= 2; ++n) {
      double prev = -1.0;
      for (double A : As) {
        const double E = find_energy({A, 1.0, l}, n).E;
        CHECK(E > prev);
        prev = E;
      }
    }
  }
}

TEST_CASE("matching point does not move the eigenvalue") {
  const ProblemParams p{10.0, 1.0, 1};
  const BoundState ref = find_energy(p, 1);
  const ShootingConfig base = resolve_config(p, ref.E, {});
  for (double f : {0.5, 2.0}) {
    ShootingConfig cfg;
    cfg.z_match = std::clamp(base.z_match * f, 1.5 * base.z_near, 0.5 * base.z_far);
    CHECK(std::abs(find_energy(p, 1, cfg).E - ref.E) < 1e-10);
  }
}

TEST_CASE("scale-law covariance") {
  for (double zh : {0.5, 2.0, 3.0}) {
    for (auto [A, l, n] : {std::tuple{1.0, 0, 0}, std::tuple{25.0, 1, 1}, std::tuple{10.0, 2, 2}}) {
      const double E1 = find_energy({A, 1.0, l}, n).E;
      const ScaledPair s = rescale(A, E1, zh);
      const double E2 = find_energy({s.A, zh, l}, n).E;
      CAPTURE(zh);
      CHECK(std::abs(E2 - s.E) < 1e-8 * std::abs(s.E));
    }
  }
}

TEST_CASE("Coulomb limit") {
  for (int l = 0; l <= 2; ++l) {
    for (int n = 0; n <= 1; ++n) {
      const double ec = coulomb_energy(n, l);
      CHECK(std::abs(find_energy({1e-6, 1.0, l}, n).E - ec) < 1e-3);
    }
  }
  for (int l = 1; l <= 2; ++l) {
    double prev = 1.0;
    for (double A : {1e-4, 1e-6, 1e-8}) {
      const double gap = std::abs(find_energy({A, 1.0, l}, 0).E - coulomb_energy(0, l));
      CHECK(gap < prev);
      prev = gap;
    }
  }
}

TEST_CASE("recessive Wronskian changes sign across an eigenvalue") {
  const ProblemParams p{1.0, 1.0, 0};
  const double E = find_energy(p, 0).E;
  CHECK(recessive_wronskian(E - 1e-4, p) * recessive_wronskian(E + 1e-4, p) < 0.0);
}

TEST_CASE("invalid input") {
  CHECK_THROWS_AS(find_energy({0.0, 1.0, 0}, 0), DomainError);
  CHECK_THROWS_AS(find_energy({1.0, 0.0, 0}, 0), DomainError);
  CHECK_THROWS_AS(find_energy({1.0, -1.0, 0}, 0), DomainError);
  CHECK_THROWS_AS(find_energy({1.0, 1.0, 0}, -1), DomainError);
  CHECK_THROWS_AS(mismatch(0.0, {1.0, 1.0, 0}), DomainError);
  ShootingConfig bad;
  bad.rk_tolerance = 1e-3;
  CHECK_THROWS_AS(find_energy({1.0, 1.0, 0}, 0, bad), DomainError);
}
