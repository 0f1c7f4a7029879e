#include "heun/model.hpp"

#include <cmath>
#include <string>

#include "heun/error.hpp"

namespace heun {

void require_bound_energy(double E) {
  if (!std::isfinite(E) || E >= 0.0) {
    throw DomainError("energy must be negative for a bound state (got E = " +
                      std::to_string(E) + ")");
  }
}

void require_solver_params(const ProblemParams& params) {
  if (!std::isfinite(params.A) || !std::isfinite(params.Z)) {
    throw DomainError("parameters must be finite");
  }
  if (params.A <= 0.0) {
    throw DomainError("A must be positive; A = 0 changes the singularity class at the origin");
  }
  if (params.Z <= 0.0) {
    throw DomainError("Z must be positive (attractive Coulomb term)");
  }
  if (params.l < 0) {
    throw DomainError("angular momentum l must be non-negative");
  }
}

Exponents derive_exponents(const ProblemParams& params, double E) {
  require_bound_energy(E);
  if (!(params.A >= 0.0)) {
    throw DomainError("A must be non-negative");
  }
  const double alpha = std::sqrt(-E);
  return {alpha, params.Z / (2.0 * alpha), std::sqrt(params.A)};
}

DcheCoefficients dche_coefficients(const ProblemParams& params, double E) {
  return {-params.A, 0.0, -params.centrifugal() - 0.25, params.Z, E};
}

ScaledPair rescale(double A_ref, double E_ref, double z_hat) {
  if (!(z_hat > 0.0) || !std::isfinite(z_hat)) {
    throw DomainError("rescale target Z must be positive");
  }
  return {A_ref / (z_hat * z_hat), E_ref * z_hat * z_hat};
}

double coulomb_energy(int n, int l) {
  const double k = static_cast<double>(n + l + 1);
  return -1.0 / (4.0 * k * k);
}

}  // namespace heun
