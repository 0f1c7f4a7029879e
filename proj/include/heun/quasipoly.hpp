#pragma once

#include <complex>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "heun/model.hpp"

namespace heun {

using hp_float = boost::multiprecision::cpp_bin_float_50;

/// Which expansion the closure polynomial in beta was built from.
enum class BetaProcedure { ViaA, ViaB, ViaXi };
std::string to_string(BetaProcedure p);

struct QuasiPolyProblem {
  int p = 2;  ///< degree of v plus one; mu = p
  int l = 0;
  double Z = 1.0;

  double alpha() const { return Z / (2.0 * p); }
  double energy() const { return -Z * Z / (4.0 * p * p); }
};

/// Throws DomainError unless p >= 1, l >= 0, Z > 0.
void require_quasipoly_problem(const QuasiPolyProblem& q);

/// Closure polynomial in beta, ascending coefficients, with the factor
/// beta^m at beta = 0 removed and scaled to be monic.
struct BetaPolynomial {
  BetaProcedure provenance = BetaProcedure::ViaXi;
  bool exact = false;                 ///< built in rational arithmetic
  std::vector<hp_float> coefficients;
  std::vector<std::string> exact_text;  ///< rational coefficients (exact only), before scaling

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
  hp_float operator()(const hp_float& beta) const;
};

BetaPolynomial beta_polynomial_via_a(const QuasiPolyProblem& q);
BetaPolynomial beta_polynomial_via_b(const QuasiPolyProblem& q);
BetaPolynomial beta_polynomial_via_xi(const QuasiPolyProblem& q);

/// All roots of a polynomial (companion matrix eigenvalues), real ones
/// polished by Newton in 50-digit arithmetic.
std::vector<std::complex<double>> polynomial_roots(const BetaPolynomial& poly);

/// xi_0 .. xi_{last} at a numeric beta (xi_0 = 1).
std::vector<double> xi_chain(const QuasiPolyProblem& q, double beta, int last);

struct QuasiPolyResult {
  QuasiPolyProblem problem;
  double E = 0.0;
  std::vector<double> beta_roots;   ///< real beta > 0, ascending
  std::vector<double> A_values;     ///< beta^2
  std::vector<std::vector<double>> xi;  ///< xi_0 .. xi_{p-1} per root
  std::vector<double> termination;  ///< max_{p <= j <= p+3} |xi_j| / max|xi| per root
  std::vector<std::complex<double>> rejected_roots;  ///< complex or non-positive
  std::vector<BetaPolynomial> polynomials;           ///< via_xi, via_a, via_b
  double cross_check = 0.0;  ///< largest relative root disagreement between procedures
  std::string note;
};

/// Quasi-polynomial solutions w = exp(-alpha z - beta/z) z v(z), deg v = p-1.
/// Throws SolverError("cross-check") if the procedures disagree beyond 1e-10.
QuasiPolyResult solve_quasipoly(const QuasiPolyProblem& q);

struct ClosedFormValue {
  double w = 0.0;
  double dw = 0.0;
  double d2w = 0.0;
};

/// Closed-form solution for root k of the result (unnormalized, v(0) = 1).
ClosedFormValue quasipoly_wave(const QuasiPolyResult& r, std::size_t k, double z);

struct QuasiPolyCheck {
  double beta = 0.0;
  double A = 0.0;
  double shooting_mismatch = 0.0;
  double ode_residual = 0.0;  ///< max over 20 sample points, relative to the largest term
  int nodes = 0;              ///< positive real zeros of v
  bool passed = false;
};

/// Confirms each root against the shooting solver and the ODE itself.
std::vector<QuasiPolyCheck> validate_quasipoly(const QuasiPolyResult& r);

}  // namespace heun
