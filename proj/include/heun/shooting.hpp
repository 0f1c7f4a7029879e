#pragma once

#include <functional>
#include <span>
#include <vector>

#include "heun/model.hpp"

namespace heun {

/// Point on a real solution of the radial equation: (z, w(z), w'(z)).
struct SolutionPoint {
  double z = 0.0;
  double w = 0.0;
  double dw = 0.0;
};

/// Integrates the radial equation from `start` to z_end with an adaptive
/// Runge-Kutta-Fehlberg 7(8) pair in the variable x = ln z (where the
/// equation becomes y'' = (A e^{-2x} + (l+1/2)^2 - Z e^x - E e^{2x}) y,
/// y = z^{-1/2} w). `observer`, if set, sees every accepted step.
SolutionPoint propagate(const ProblemParams& params, double E, SolutionPoint start,
                        double z_end, double rk_tolerance,
                        const std::function<void(const SolutionPoint&)>& observer = {});

/// Same integration, reporting the solution at each requested abscissa
/// (monotone in the direction of integration).
std::vector<SolutionPoint> propagate_to(const ProblemParams& params, double E,
                                        SolutionPoint start, std::span<const double> zs,
                                        double rk_tolerance);

struct ShootingConfig {
  double z_near = 0.0;   ///< 0: chosen from the series at the origin
  double z_far = 0.0;    ///< 0: chosen from the series at infinity
  double z_match = 0.0;  ///< 0: bottom of the potential well, clamped inside
  double rk_tolerance = 1e-12;
  double series_tolerance = 1e-11;
  double e_lo = 0.0;  ///< scan window; 0 selects the default window
  double e_hi = 0.0;
  int max_bisections = 200;
  int wave_points = 8001;
};

/// Fills the zero fields of `cfg` for this (params, E); validates ordering.
ShootingConfig resolve_config(const ProblemParams& params, double E, ShootingConfig cfg);

/// Recessive-at-origin solution (b_0 = 1) advanced to z_match.
SolutionPoint integrate_from_zero(double E, const ProblemParams& params,
                                  const ShootingConfig& cfg);

/// Recessive-at-infinity solution (a_0 = 1) brought inward to z_match.
SolutionPoint integrate_from_infinity(double E, const ProblemParams& params,
                                      const ShootingConfig& cfg);

/// Normalized Wronskian (w_out w_in' - w_out' w_in) / (|w_out||w_in'| + |w_out'||w_in|)
/// at z_match; zero exactly at eigenvalues, values in [-1, 1].
double mismatch(double E, const ProblemParams& params, const ShootingConfig& cfg = {});

/// Raw Wronskian W[R0, Rinf] of the two recessive solutions normalized by
/// their leading asymptotic coefficients (b_0 = a_0 = 1). Independent of z.
double recessive_wronskian(double E, const ProblemParams& params, const ShootingConfig& cfg = {});

struct WavePoint {
  double z = 0.0;
  double w = 0.0;
};

struct BoundState {
  double E = 0.0;
  int n = 0;
  int l = 0;
  double mismatch = 0.0;
  std::vector<WavePoint> wave_samples;  ///< z_near .. z_far, normalized, w > 0 near 0
  double norm = 1.0;                    ///< integral of w^2 before normalization
  ShootingConfig config;
};

/// Bound state with n nodes. Scans E on a grid uniform in mu = Z / (2 sqrt(-E))
/// for sign changes of the mismatch, refines the (n+1)-th root by TOMS 748,
/// then checks the node count of the assembled eigenfunction.
BoundState find_energy(const ProblemParams& params, int n, const ShootingConfig& cfg = {});

/// Normalized eigenfunction at a given (converged) energy, assembled from the
/// outward branch below z_match and the inward branch above it.
std::vector<WavePoint> eigenfunction(double E, const ProblemParams& params,
                                     const ShootingConfig& cfg, double* norm = nullptr);

/// Strict sign changes of w over the samples. Throws DomainError when two
/// sign changes are fewer than three samples apart (sampling too coarse).
int count_nodes(std::span<const WavePoint> samples);

}  // namespace heun
