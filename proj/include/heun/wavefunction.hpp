#pragma once

#include <span>
#include <string>
#include <vector>

#include "heun/floquet.hpp"
#include "heun/model.hpp"

namespace heun {

enum class SampleSource { SeriesZero, Laurent, Integration, SeriesInfinity };
std::string to_string(SampleSource s);

struct WaveSample {
  double z = 0.0;
  double w = 0.0;
  SampleSource source = SampleSource::Laurent;
};

struct Wavefunction {
  double E = 0.0;
  ConnectionResult connection;
  double norm = 1.0;  ///< integral of |w|^2 before normalization
  std::vector<WaveSample> samples;
};

/// Normalized real eigenfunction with n nodes, positive near the origin.
/// Uses b0 R0 below z_near, a0 Rinf above z_far and the Floquet pair between,
/// except where the pair cancels too strongly on the positive axis; there the
/// sample comes from integrating the equation away from the nearer endpoint.
Wavefunction sample_wavefunction(const ProblemParams& params, int n, std::span<const double> zs);

/// Same, at a known eigenvalue (bracketed to +-1e-7 relative).
Wavefunction sample_wavefunction_at(const ProblemParams& params, double E,
                                    std::span<const double> zs);

}  // namespace heun
