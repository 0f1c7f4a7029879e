#pragma once

#include <array>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "heun/model.hpp"

namespace heun {

/// Laurent coefficients of a Floquet solution satisfy
///
///   -A c_{n+2} + ((n+nu)(n+nu-1) - l(l+1)) c_n + Z c_{n-1} + E c_{n-2} = 0.
///
/// For n -> +inf two solutions decay (c_n ~ (+-alpha)^n / n!) and two grow;
/// for n -> -inf likewise with beta. A Floquet index nu is a value for which
/// the two decaying subspaces intersect.
enum class TailSide { Plus, Minus };

/// Two solutions spanning the decaying subspace on one side, generated by
/// running the recurrence away from that side (backward for Plus, forward
/// for Minus) from beyond the window, re-orthonormalized as they go.
struct TailBasis {
  TailSide side = TailSide::Plus;
  int n_first = 0;  ///< smallest stored index
  int n_last = 0;   ///< largest stored index
  std::array<std::vector<cplx>, 2> columns;

  cplx at(int column, int n) const { return columns[column][n - n_first]; }
};

/// Default window half-width: max(20, ceil(10 sqrt(max(A, |E|, Z)))).
int default_window(const ProblemParams& params, double E);

/// Plus side stores n in [-1, N + pad], Minus side n in [-N - pad, 2].
/// Throws DomainError if A = 0 or E = 0 (the recurrence cannot be run).
TailBasis tail_basis(cplx nu, double E, const ProblemParams& params, int N, TailSide side);

/// Determinant of the 4x4 matrix of the two plus-side and two minus-side
/// basis solutions at n = -1..2, each column scaled to unit norm. Vanishes
/// exactly when a two-sided decaying solution exists at this nu.
cplx floquet_determinant(cplx nu, double E, const ProblemParams& params, int N = 0);

struct IndexPair {
  cplx nu1;
  cplx nu2;
  double residual = 0.0;  ///< |floquet_determinant(nu1)|
};

/// Floquet indices at energy E. nu1 is reduced to Re nu in [0, 1), Im nu >= 0
/// (real indices to [0, 1/2]); nu2 = -nu1, or 1 - nu1 = conj(nu1) when
/// Re nu1 = 1/2. `seed` skips the line scan when it converges.
IndexPair find_indices(double E, const ProblemParams& params, int N = 0,
                       std::optional<cplx> seed = std::nullopt);

struct FloquetSolution {
  cplx nu;
  int N = 0;
  std::vector<cplx> coefficients;  ///< c_n for n in [-N, N]
  ProblemParams params;
  double E = 0.0;

  cplx c(int n) const { return coefficients[n + N]; }
  /// Recurrence residual at row n relative to the row's largest term.
  double recurrence_residual(int n) const;
};

/// The two-sided decaying solution at a root nu, scaled so c_0 = 1. Throws
/// SolverError("laurent") if the matching matrix does not have a
/// one-dimensional null space.
FloquetSolution laurent_coefficients(cplx nu, double E, const ProblemParams& params, int N);

struct FloquetValue {
  cplx w;
  cplx dw;
};

/// w = z^nu sum c_n z^n and its derivative (principal branch of z^nu).
/// Throws DomainError("annulus too narrow; increase N") when the window's
/// edge terms exceed 1e-10 of the summed magnitudes.
FloquetValue eval_floquet(const FloquetSolution& sol, cplx z);

/// True when eval_floquet would accept z.
bool in_annulus(const FloquetSolution& sol, cplx z, double tol = 1e-10);

struct ConnectionOptions {
  int N = 0;                    ///< starting window (0: default_window)
  double z_far = 0.0;           ///< 0: far_point
  double z_near = 0.0;          ///< 0: near_point
  double series_tolerance = 1e-11;
  double energy_tolerance = 1e-12;
  int max_iterations = 200;
};

using Matrix2c = Eigen::Matrix2cd;

struct ConnectionData {
  double E = 0.0;
  IndexPair indices;
  FloquetSolution w1, w2;
  double z_far = 0.0, z_near = 0.0;
  /// Row 0: dominant-at-infinity content of w_j, W[w_j, Rinf] / W[Dinf, Rinf].
  /// Row 1: dominant-at-origin content, W[w_j, R0] / W[D0, R0].
  Matrix2c M;
  cplx wronskian12;  ///< W[w1, w2]
  /// det M / W[w1, w2] = W[Rinf, R0] / (-4 alpha beta); real for real
  /// parameters and zero exactly at eigenvalues.
  cplx characteristic;
};

ConnectionData connection_data(double E, const ProblemParams& params,
                               const ConnectionOptions& opts = {},
                               std::optional<cplx> nu_seed = std::nullopt);

/// Only the 2x2 matrix of connection_data.
Matrix2c connection_matrix(double E, const ProblemParams& params,
                           const ConnectionOptions& opts = {});

struct ConnectionResult {
  double E = 0.0;
  cplx nu1, nu2;
  cplx zeta1, zeta2;
  cplx a0, b0;
  FloquetSolution floquet1, floquet2;
  double z_far = 0.0, z_near = 0.0;  ///< projection points (annulus covers both)
  double characteristic = 0.0;  ///< |det M / W12| at E
  double zeta_residual = 0.0;   ///< |M zeta| / |M|
  int iterations = 0;
};

/// Eigenvalue inside [e_lo, e_hi] from the connection condition det M = 0,
/// with zeta normalized as |zeta1| = 1, zeta2 = -conj(zeta1), Im zeta1 > 0
/// (complex indices) or zeta real with zeta1 > 0, |zeta| = 1 (real indices).
ConnectionResult eigen_connection(const ProblemParams& params, double e_lo, double e_hi,
                                  const ConnectionOptions& opts = {});

/// Bound state with n nodes via the connection condition alone: scans E on
/// a grid uniform in mu and counts sign changes of the characteristic.
ConnectionResult find_energy_floquet(const ProblemParams& params, int n,
                                     const ConnectionOptions& opts = {});

/// zeta1 w1 + zeta2 w2 at z.
FloquetValue eval_connection(const ConnectionResult& res, cplx z);

}  // namespace heun
