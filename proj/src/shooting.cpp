#include "heun/shooting.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

#include "heun/error.hpp"
#include "heun/series.hpp"

namespace heun {
namespace {

namespace odeint = boost::numeric::odeint;
using State = std::array<double, 2>;

struct LogRadial {
  double A, q0, Z, E;
  void operator()(const State& s, State& d, double x) const {
    const double z = std::exp(x);
    d[0] = s[1];
    d[1] = (A / (z * z) + q0 - Z * z - E * z * z) * s[0];
  }
};

LogRadial make_system(const ProblemParams& p, double E) {
  const double half = p.l + 0.5;
  return {p.A, half * half, p.Z, E};
}

State to_state(const SolutionPoint& pt) {
  const double rz = std::sqrt(pt.z);
  const double y = pt.w / rz;
  return {y, rz * pt.dw - 0.5 * y};
}

SolutionPoint from_state(double x, const State& s, double scale) {
  const double z = std::exp(x);
  const double rz = std::sqrt(z);
  return {z, rz * s[0] / scale, (s[1] + 0.5 * s[0]) / (rz * scale)};
}

template <class Run>
void guarded(Run&& run) {
  try {
    run();
  } catch (const odeint::step_adjustment_error& e) {
    throw SolverError("integration", std::string("step size underflow: ") + e.what());
  } catch (const odeint::no_progress_error& e) {
    throw SolverError("integration", std::string("no progress: ") + e.what());
  }
}

SolutionPoint recessive_at_zero(const ProblemParams& params, double E, double z) {
  const auto ser = asym_coeffs_zero(params, E, 1.0, kDefaultSeriesTerms);
  const auto ev = eval_asymptotic(ser, z, 1e-8);
  return {z, ev.value.real(), ev.derivative.real()};
}

SolutionPoint recessive_at_infinity(const ProblemParams& params, double E, double z) {
  const auto ser = asym_coeffs_infinity(params, E, 1.0, kDefaultSeriesTerms);
  const auto ev = eval_asymptotic(ser, z, 1e-8);
  return {z, ev.value.real(), ev.derivative.real()};
}

// Bottom of V(z) = A/z^4 + L/z^2 - Z/z: the positive root of Z z^3 - 2L z^2 - 4A = 0.
double well_minimum(const ProblemParams& p) {
  const double L = p.centrifugal();
  auto f = [&](double z) { return p.Z * z * z * z - 2.0 * L * z * z - 4.0 * p.A; };
  double hi = std::max(1.0, 2.0 * L / p.Z + std::cbrt(4.0 * p.A / p.Z) + 1.0);
  double lo = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

double simpson_norm(const std::vector<WavePoint>& s) {
  // Uniform in x = ln z: integral of w^2 dz = integral of w^2 z dx.
  const std::size_t n = s.size();
  const double h = std::log(s.back().z / s.front().z) / static_cast<double>(n - 1);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = s[i].w * s[i].w * s[i].z;
    const double wgt = (i == 0 || i == n - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    acc += wgt * f;
  }
  return acc * h / 3.0;
}

// Integral of w^2 dz for a recessive series between z0 and z1, Simpson in ln z.
double series_tail_norm(const AsymptoticSeries& ser, double z0, double z1) {
  constexpr int m = 800;
  const double x0 = std::log(z0), h = (std::log(z1) - x0) / m;
  double acc = 0.0;
  for (int i = 0; i <= m; ++i) {
    const double z = std::exp(x0 + i * h);
    const double w = eval_asymptotic(ser, z, 1e-6).value.real();
    const double wgt = (i == 0 || i == m) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    acc += wgt * w * w * z;
  }
  return std::abs(acc * h / 3.0);
}

}  // namespace

SolutionPoint propagate(const ProblemParams& params, double E, SolutionPoint start,
                        double z_end, double rk_tolerance,
                        const std::function<void(const SolutionPoint&)>& observer) {
  if (!(start.z > 0.0) || !(z_end > 0.0)) throw DomainError("propagate needs z > 0");
  const LogRadial sys = make_system(params, E);
  State s = to_state(start);
  const double scale = 1.0 / std::max({std::abs(s[0]), std::abs(s[1]), 1e-300});
  s[0] *= scale;
  s[1] *= scale;
  const double x0 = std::log(start.z), x1 = std::log(z_end);
  if (x0 == x1) return start;
  auto stepper = odeint::make_controlled<odeint::runge_kutta_fehlberg78<State>>(
      rk_tolerance * 1e-3, rk_tolerance);
  guarded([&] {
    if (observer) {
      odeint::integrate_adaptive(stepper, sys, s, x0, x1, (x1 - x0) / 200.0,
                                 [&](const State& st, double x) {
                                   observer(from_state(x, st, scale));
                                 });
    } else {
      odeint::integrate_adaptive(stepper, sys, s, x0, x1, (x1 - x0) / 200.0);
    }
  });
  return from_state(x1, s, scale);
}

std::vector<SolutionPoint> propagate_to(const ProblemParams& params, double E,
                                        SolutionPoint start, std::span<const double> zs,
                                        double rk_tolerance) {
  std::vector<SolutionPoint> out;
  out.reserve(zs.size());
  if (zs.empty()) return out;
  const LogRadial sys = make_system(params, E);
  State s = to_state(start);
  const double scale = 1.0 / std::max({std::abs(s[0]), std::abs(s[1]), 1e-300});
  s[0] *= scale;
  s[1] *= scale;
  std::vector<double> xs;
  xs.reserve(zs.size() + 1);
  xs.push_back(std::log(start.z));
  for (double z : zs) xs.push_back(std::log(z));
  auto stepper = odeint::make_controlled<odeint::runge_kutta_fehlberg78<State>>(
      rk_tolerance * 1e-3, rk_tolerance);
  const double dx0 = (xs.back() - xs.front()) / 200.0;
  if (dx0 == 0.0) {
    for (std::size_t i = 0; i < zs.size(); ++i) out.push_back(start);
    return out;
  }
  bool first = true;
  guarded([&] {
    odeint::integrate_times(stepper, sys, s, xs.begin(), xs.end(), dx0,
                            [&](const State& st, double x) {
                              if (first) {
                                first = false;
                                return;
                              }
                              out.push_back(from_state(x, st, scale));
                            });
  });
  return out;
}

ShootingConfig resolve_config(const ProblemParams& params, double E, ShootingConfig cfg) {
  require_solver_params(params);
  require_bound_energy(E);
  if (cfg.rk_tolerance < 1e-14 || cfg.rk_tolerance > 1e-6) {
    throw DomainError("rk_tolerance must lie in [1e-14, 1e-6]");
  }
  const double beta = std::sqrt(params.A);
  if (cfg.z_near <= 0.0) cfg.z_near = near_point(params, E, cfg.series_tolerance);
  cfg.z_near = std::max(cfg.z_near, beta / 40.0);
  if (cfg.z_far <= 0.0) cfg.z_far = far_point(params, E, cfg.series_tolerance);
  if (cfg.z_match <= 0.0) {
    const double lo = cfg.z_near * 2.0, hi = cfg.z_far / 2.0;
    cfg.z_match = lo < hi ? std::clamp(well_minimum(params), lo, hi)
                          : std::sqrt(cfg.z_near * cfg.z_far);
  }
  if (!(cfg.z_near < cfg.z_match && cfg.z_match < cfg.z_far)) {
    throw DomainError("shooting configuration needs z_near < z_match < z_far");
  }
  return cfg;
}

SolutionPoint integrate_from_zero(double E, const ProblemParams& params,
                                  const ShootingConfig& cfg) {
  const ShootingConfig c = resolve_config(params, E, cfg);
  return propagate(params, E, recessive_at_zero(params, E, c.z_near), c.z_match,
                   c.rk_tolerance);
}

SolutionPoint integrate_from_infinity(double E, const ProblemParams& params,
                                      const ShootingConfig& cfg) {
  const ShootingConfig c = resolve_config(params, E, cfg);
  return propagate(params, E, recessive_at_infinity(params, E, c.z_far), c.z_match,
                   c.rk_tolerance);
}

double mismatch(double E, const ProblemParams& params, const ShootingConfig& cfg) {
  const ShootingConfig c = resolve_config(params, E, cfg);
  const SolutionPoint out = integrate_from_zero(E, params, c);
  const SolutionPoint in = integrate_from_infinity(E, params, c);
  const double wr = out.w * in.dw - out.dw * in.w;
  const double den = std::abs(out.w) * std::abs(in.dw) + std::abs(out.dw) * std::abs(in.w);
  return wr / den;
}

double recessive_wronskian(double E, const ProblemParams& params, const ShootingConfig& cfg) {
  const ShootingConfig c = resolve_config(params, E, cfg);
  const SolutionPoint out = integrate_from_zero(E, params, c);
  const SolutionPoint in = integrate_from_infinity(E, params, c);
  return out.w * in.dw - out.dw * in.w;
}

std::vector<WavePoint> eigenfunction(double E, const ProblemParams& params,
                                     const ShootingConfig& cfg, double* norm) {
  const ShootingConfig c = resolve_config(params, E, cfg);
  const int npts = std::max(11, c.wave_points | 1);
  std::vector<double> grid(npts);
  const double lx0 = std::log(c.z_near), lx1 = std::log(c.z_far);
  for (int i = 0; i < npts; ++i) grid[i] = std::exp(lx0 + (lx1 - lx0) * i / (npts - 1));
  grid.front() = c.z_near;
  grid.back() = c.z_far;

  std::vector<double> below, above;
  for (double z : grid) (z < c.z_match ? below : above).push_back(z);
  below.push_back(c.z_match);
  std::reverse(above.begin(), above.end());
  above.push_back(c.z_match);

  const SolutionPoint start0 = recessive_at_zero(params, E, c.z_near);
  const SolutionPoint startinf = recessive_at_infinity(params, E, c.z_far);
  std::vector<SolutionPoint> outward = propagate_to(params, E, start0, below, c.rk_tolerance);
  std::vector<SolutionPoint> inward = propagate_to(params, E, startinf, above, c.rk_tolerance);

  const SolutionPoint& mo = outward.back();
  const SolutionPoint& mi = inward.back();
  const double zm = c.z_match;
  const double scale = (mo.w * mi.w + zm * zm * mo.dw * mi.dw) /
                       (mi.w * mi.w + zm * zm * mi.dw * mi.dw);

  std::vector<WavePoint> samples;
  samples.reserve(npts);
  for (std::size_t i = 0; i + 1 < outward.size(); ++i) samples.push_back({outward[i].z, outward[i].w});
  for (std::size_t i = inward.size() - 1; i-- > 0;) samples.push_back({inward[i].z, scale * inward[i].w});
  // The tails outside [z_near, z_far] come from the starting series.
  const double inner = series_tail_norm(asym_coeffs_zero(params, E, 1.0, kDefaultSeriesTerms),
                                        c.z_near * std::exp(-8.0), c.z_near);
  const double outer = series_tail_norm(asym_coeffs_infinity(params, E, 1.0, kDefaultSeriesTerms),
                                        c.z_far, c.z_far * std::exp(4.0));
  const double nrm = simpson_norm(samples) + inner + scale * scale * outer;
  const double inv = 1.0 / std::sqrt(nrm);
  for (auto& p : samples) p.w *= inv;
  if (norm) *norm = nrm;
  return samples;
}

int count_nodes(std::span<const WavePoint> samples) {
  int nodes = 0;
  int last_change = -1000;
  int last_sign = 0;
  for (int i = 0; i < static_cast<int>(samples.size()); ++i) {
    const double w = samples[i].w;
    const int sg = (w > 0.0) - (w < 0.0);
    if (sg == 0) continue;
    if (last_sign != 0 && sg != last_sign) {
      if (i - last_change < 3) throw DomainError("sampling too coarse to resolve nodes");
      ++nodes;
      last_change = i;
    }
    last_sign = sg;
  }
  return nodes;
}

BoundState find_energy(const ProblemParams& params, int n, const ShootingConfig& cfg) {
  require_solver_params(params);
  if (n < 0) throw DomainError("node count must be non-negative");
  const double z2 = params.Z * params.Z;
  const double e_lo = cfg.e_lo < 0.0 ? cfg.e_lo : 1.2 * coulomb_energy(0, params.l) * z2;
  const double e_hi = cfg.e_hi < 0.0 ? cfg.e_hi : -1e-4 * z2;
  if (!(e_lo < e_hi)) throw DomainError("empty energy window");
  auto mu_of = [&](double E) { return params.Z / (2.0 * std::sqrt(-E)); };
  auto e_of = [&](double mu) { return -z2 / (4.0 * mu * mu); };
  auto at = [&](double E) {
    ShootingConfig c = cfg;
    c.z_far = cfg.z_far;
    return mismatch(E, params, c);
  };

  const double mu_end = mu_of(e_hi);
  const double step = 0.1;
  double mu_prev = mu_of(e_lo);
  double e_prev = e_lo;
  double f_prev = at(e_prev);
  int roots = 0;
  for (double mu = mu_prev + step; mu_prev < mu_end; mu += step) {
    const double mu_here = std::min(mu, mu_end);
    const double e_here = e_of(mu_here);
    const double f_here = at(e_here);
    if ((f_prev < 0.0) != (f_here < 0.0)) {
      if (roots == n) {
        ShootingConfig fixed = resolve_config(params, e_here, cfg);
        auto f = [&](double E) { return mismatch(E, params, fixed); };
        std::uintmax_t iters = static_cast<std::uintmax_t>(cfg.max_bisections);
        const auto r = boost::math::tools::toms748_solve(
            f, e_prev, e_here, f(e_prev), f(e_here),
            boost::math::tools::eps_tolerance<double>(50), iters);
        BoundState st;
        st.E = 0.5 * (r.first + r.second);
        st.l = params.l;
        st.config = resolve_config(params, st.E, cfg);
        st.mismatch = mismatch(st.E, params, st.config);
        st.wave_samples = eigenfunction(st.E, params, st.config, &st.norm);
        st.n = count_nodes(st.wave_samples);
        if (st.n != n) {
          throw SolverError("node-count", "eigenfunction has " + std::to_string(st.n) +
                                              " nodes, expected " + std::to_string(n));
        }
        return st;
      }
      ++roots;
    }
    mu_prev = mu_here;
    e_prev = e_here;
    f_prev = f_here;
  }
  throw SolverError("energy-scan", "no eigenvalue with " + std::to_string(n) +
                                       " nodes in the scanned window");
}

}  // namespace heun
