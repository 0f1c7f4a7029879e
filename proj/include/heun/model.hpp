#pragma once

#include <complex>

namespace heun {

using cplx = std::complex<double>;

/// Dimensionless parameters of the radial problem
///
///   z^2 w'' + (-A/z^2 - l(l+1) + Z z + E z^2) w = 0,
///
/// i.e. a particle bound by V(r) = A/r^4 - Z/r (units hbar^2/2m = r0 = 1).
struct ProblemParams {
  double A = 0.0;  ///< supersingular intensity
  double Z = 1.0;  ///< Coulomb intensity
  int l = 0;       ///< angular momentum

  double centrifugal() const { return static_cast<double>(l) * (l + 1); }
};

/// Characteristic exponents of the recessive solutions at the two singular
/// points: exp(-alpha z) z^mu at infinity, exp(-beta/z) z at the origin.
struct Exponents {
  double alpha = 0.0;
  double mu = 0.0;
  double beta = 0.0;
};

/// Coefficients of B(z) = sum_{p=-2}^{2} B_p z^p in D^2 y + B(z) y = 0, D = z d/dz.
struct DcheCoefficients {
  double b_m2 = 0.0;
  double b_m1 = 0.0;
  double b_0 = 0.0;
  double b_1 = 0.0;
  double b_2 = 0.0;
};

/// A (A, E) pair mapped to another Coulomb intensity.
struct ScaledPair {
  double A = 0.0;
  double E = 0.0;
};

/// Throws DomainError if E >= 0 or A < 0.
Exponents derive_exponents(const ProblemParams& params, double E);

DcheCoefficients dche_coefficients(const ProblemParams& params, double E);

/// Maps a Z = 1 eigen-pair (A, E) onto Coulomb intensity z_hat:
/// A -> A / z_hat^2, E -> z_hat^2 E. Throws DomainError for z_hat <= 0.
ScaledPair rescale(double A_ref, double E_ref, double z_hat);

/// Pure Coulomb level -1 / (4 (n + l + 1)^2) at Z = 1.
double coulomb_energy(int n, int l);

/// Checks the preconditions shared by the Floquet and shooting solvers
/// (A > 0, Z > 0, l >= 0, finite values); throws DomainError otherwise.
void require_solver_params(const ProblemParams& params);

/// Throws DomainError unless E is a finite negative number.
void require_bound_energy(double E);

}  // namespace heun
