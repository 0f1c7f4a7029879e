#include "heun/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "heun/error.hpp"
#include "heun/series.hpp"
#include "heun/shooting.hpp"

namespace heun {
namespace {

// Laurent samples are trusted while the two Floquet pieces cancel by less
// than this factor; the connection coefficients carry ~1e-12 relative error.
constexpr double kMaxCancellation = 1e3;
constexpr double kRkTolerance = 1e-13;

// Sum of |c_n z^(n+nu)| for real z > 0.
double magnitude_sum(const FloquetSolution& s, double z) {
  const double lz = std::log(z);
  double acc = 0.0;
  for (int n = -s.N; n <= s.N; ++n) {
    const double c = std::abs(s.c(n));
    if (c > 0.0) acc += std::exp(std::log(c) + (n + s.nu.real()) * lz);
  }
  return acc;
}

class Evaluator {
 public:
  Evaluator(const ProblemParams& params, const ConnectionResult& res)
      : params_(params),
        res_(res),
        rinf_(asym_coeffs_infinity(params, res.E, 1.0, kDefaultSeriesTerms)),
        r0_(asym_coeffs_zero(params, res.E, 1.0, kDefaultSeriesTerms)),
        phase_(std::abs(res.b0) / res.b0) {}

  // zs need not be sorted.
  std::vector<WaveSample> operator()(std::span<const double> zs) const {
    std::vector<WaveSample> out(zs.size());
    std::vector<std::size_t> from_near, from_far;
    const double mid = std::sqrt(res_.z_near * res_.z_far);
    for (std::size_t i = 0; i < zs.size(); ++i) {
      const double z = zs[i];
      if (z <= res_.z_near) {
        out[i] = {z, (phase_ * res_.b0 * eval_asymptotic(r0_, z, 1e-6).value).real(),
                  SampleSource::SeriesZero};
      } else if (z >= res_.z_far) {
        out[i] = {z, (phase_ * res_.a0 * eval_asymptotic(rinf_, z, 1e-6).value).real(),
                  SampleSource::SeriesInfinity};
      } else {
        const cplx w = eval_connection(res_, z).w;
        const double pieces = std::abs(res_.zeta1) * magnitude_sum(res_.floquet1, z) +
                              std::abs(res_.zeta2) * magnitude_sum(res_.floquet2, z);
        if (pieces <= kMaxCancellation * std::abs(w)) {
          out[i] = {z, (phase_ * w).real(), SampleSource::Laurent};
        } else {
          (z < mid ? from_near : from_far).push_back(i);
        }
      }
    }
    integrate(from_near, zs, res_.z_near, phase_ * res_.b0, r0_, out);
    integrate(from_far, zs, res_.z_far, phase_ * res_.a0, rinf_, out);
    return out;
  }

 private:
  // Integrates away from an endpoint, where the recessive solution grows.
  void integrate(std::vector<std::size_t>& idx, std::span<const double> zs, double z0,
                 cplx coeff, const AsymptoticSeries& series, std::vector<WaveSample>& out) const {
    if (idx.empty()) return;
    const bool outward = z0 < zs[idx.front()];
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return outward ? zs[a] < zs[b] : zs[a] > zs[b];
    });
    std::vector<double> targets;
    for (std::size_t i : idx) targets.push_back(zs[i]);
    const SeriesEvaluation s = eval_asymptotic(series, z0, 1e-8);
    const SolutionPoint start{z0, (coeff * s.value).real(), (coeff * s.derivative).real()};
    const std::vector<SolutionPoint> pts = propagate_to(params_, res_.E, start, targets, kRkTolerance);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      out[idx[k]] = {zs[idx[k]], pts[k].w, SampleSource::Integration};
    }
  }

  ProblemParams params_;
  const ConnectionResult& res_;
  AsymptoticSeries rinf_, r0_;
  cplx phase_;
};

}  // namespace

std::string to_string(SampleSource s) {
  switch (s) {
    case SampleSource::SeriesZero: return "series0";
    case SampleSource::Laurent: return "laurent";
    case SampleSource::Integration: return "ode";
    case SampleSource::SeriesInfinity: return "series_inf";
  }
  return "?";
}

Wavefunction sample_wavefunction_at(const ProblemParams& params, double E,
                                    std::span<const double> zs) {
  require_solver_params(params);
  require_bound_energy(E);
  for (double z : zs)
    if (!(z > 0.0)) throw DomainError("sample points must be positive");

  Wavefunction wf;
  const double d = 1e-7 * std::abs(E);
  wf.connection = eigen_connection(params, E - d, std::min(E + d, -1e-300));
  wf.E = wf.connection.E;
  const Evaluator eval(params, wf.connection);

  // Simpson in x = ln z; w^2 dz = w^2 z dx.
  const double x0 = std::log(wf.connection.z_near) - 8.0;
  const double x1 = std::log(wf.connection.z_far) + 4.0;
  const int m = 4000;
  const double h = (x1 - x0) / m;
  std::vector<double> grid(m + 1);
  for (int i = 0; i <= m; ++i) grid[i] = std::exp(x0 + i * h);
  const std::vector<WaveSample> g = eval(grid);
  double sum = 0.0;
  for (int i = 0; i <= m; ++i) {
    const double weight = (i == 0 || i == m) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    sum += weight * g[i].w * g[i].w * g[i].z;
  }
  wf.norm = sum * h / 3.0;
  if (!(wf.norm > 0.0) || !std::isfinite(wf.norm)) {
    throw SolverError("normalization", "wave function norm is not finite");
  }
  const double scale = 1.0 / std::sqrt(wf.norm);
  wf.samples = eval(zs);
  for (auto& s : wf.samples) s.w *= scale;
  return wf;
}

Wavefunction sample_wavefunction(const ProblemParams& params, int n, std::span<const double> zs) {
  return sample_wavefunction_at(params, find_energy_floquet(params, n).E, zs);
}

}  // namespace heun
