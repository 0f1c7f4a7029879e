#include <cmath>
#include <vector>

#include <doctest.h>

#include "heun/error.hpp"
#include "heun/quasipoly.hpp"
#include "heun/shooting.hpp"
#include "heun/wavefunction.hpp"

using namespace heun;

TEST_CASE("quasi-polynomial state is reproduced up to a constant") {
  const ProblemParams p{64.0, 1.0, 0};
  std::vector<double> zs;
  for (double z = 0.3; z < 80.0; z *= 1.25) zs.push_back(z);
  const Wavefunction wf = sample_wavefunction(p, 0, zs);
  CHECK(std::abs(wf.E + 1.0 / 16.0) < 1e-10);
  const QuasiPolyResult q = solve_quasipoly({2, 0, 1.0});
  REQUIRE(q.beta_roots.size() == 1);
  double ratio = 0.0;
  bool seen[4] = {false, false, false, false};
  for (const auto& s : wf.samples) {
    seen[static_cast<int>(s.source)] = true;
    const double exact = quasipoly_wave(q, 0, s.z).w;
    if (exact < 1e-30) continue;
    if (ratio == 0.0) ratio = s.w / exact;
    CAPTURE(s.z);
    CHECK(std::abs(s.w / exact / ratio - 1.0) < 1e-8);
  }
  CHECK((seen[0] && seen[3] && (seen[1] || seen[2])));
}

TEST_CASE("normalized, positive near the origin, and consistent with shooting") {
  const ProblemParams p{10.0, 1.0, 1};
  const BoundState st = find_energy(p, 2);
  std::vector<double> zs;
  for (std::size_t i = 0; i < st.wave_samples.size(); i += 200) zs.push_back(st.wave_samples[i].z);
  const Wavefunction wf = sample_wavefunction_at(p, st.E, zs);
  for (std::size_t k = 0; k < zs.size(); ++k) {
    CHECK(std::abs(wf.samples[k].w - st.wave_samples[200 * k].w) < 1e-6);
  }

  // Norm on a fine grid.
  std::vector<double> fine;
  const double z0 = 0.05, z1 = 400.0;
  const int m = 20000;
  for (int i = 0; i <= m; ++i) fine.push_back(z0 * std::pow(z1 / z0, double(i) / m));
  const Wavefunction f = sample_wavefunction_at(p, st.E, fine);
  double norm = 0.0;
  for (int i = 1; i <= m; ++i) {
    const auto& a = f.samples[i - 1];
    const auto& b = f.samples[i];
    norm += 0.5 * (a.w * a.w + b.w * b.w) * (b.z - a.z);
  }
  CHECK(std::abs(norm - 1.0) < 1e-6);
  CHECK(f.samples.front().w >= 0.0);
  int changes = 0;
  for (int i = 1; i <= m; ++i) {
    if ((f.samples[i - 1].w > 0) != (f.samples[i].w > 0) && std::abs(f.samples[i].w) > 1e-12) ++changes;
  }
  CHECK(changes == 2);
}

TEST_CASE("sample points must be positive") {
  const std::vector<double> bad{1.0, 0.0};
  CHECK_THROWS_AS(sample_wavefunction({10.0, 1.0, 0}, 0, bad), DomainError);
  CHECK_THROWS_AS(sample_wavefunction_at({10.0, 1.0, 0}, 0.1, std::vector<double>{1.0}), DomainError);
}
