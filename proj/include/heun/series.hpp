#pragma once

#include <vector>

#include "heun/model.hpp"

namespace heun {

/// The four formal solutions attached to the irregular singular points.
///
///   InfinityRecessive  exp(-alpha z) z^{ mu} sum a_m z^{-m}
///   InfinityDominant   exp(+alpha z) z^{-mu} sum a_m z^{-m}
///   ZeroRecessive      exp(-beta / z) z    sum b_m z^{m}
///   ZeroDominant       exp(+beta / z) z    sum b_m z^{m}
enum class SeriesKind { InfinityRecessive, InfinityDominant, ZeroRecessive, ZeroDominant };

const char* to_string(SeriesKind kind);

struct AsymptoticSeries {
  SeriesKind kind = SeriesKind::InfinityRecessive;
  /// a_m or b_m; coefficients[0] is the leading coefficient. Stored complex
  /// so connection coefficients can be folded in directly.
  std::vector<cplx> coefficients;
  ProblemParams params;
  double E = 0.0;

  cplx leading_coefficient() const { return coefficients.front(); }
  bool at_infinity() const {
    return kind == SeriesKind::InfinityRecessive || kind == SeriesKind::InfinityDominant;
  }
  bool recessive() const {
    return kind == SeriesKind::InfinityRecessive || kind == SeriesKind::ZeroRecessive;
  }

  /// Residual of the defining recurrence at row m (1 <= m < size), relative
  /// to the largest term of that row.
  double recurrence_residual(int m) const;
};

struct SeriesEvaluation {
  cplx value;
  cplx derivative;
  int truncation_index = 1;    ///< number of terms summed
  double error_estimate = 0.0; ///< |first omitted term| times the prefactor

  double relative_error() const;
};

/// a_m at infinity: -2 alpha m a_m = ((m-mu)(m-1-mu) - l(l+1)) a_{m-1} - A a_{m-3}.
/// Generation stops early (fewer than max_terms coefficients) if the
/// factorially growing coefficients approach overflow.
AsymptoticSeries asym_coeffs_infinity(const ProblemParams& params, double E, cplx a0,
                                      int max_terms);

/// b_m at the origin: -2 beta m b_m = (m(m-1) - l(l+1)) b_{m-1} + Z b_{m-2} + E b_{m-3}.
AsymptoticSeries asym_coeffs_zero(const ProblemParams& params, double E, cplx b0,
                                  int max_terms);

/// Growing counterparts: same recurrences with (alpha, mu) -> (-alpha, -mu) at
/// infinity and beta -> -beta at the origin.
AsymptoticSeries dominant_coeffs(SeriesKind kind, const ProblemParams& params, double E,
                                 cplx leading, int max_terms);

/// Value and analytic derivative of the prefactored series at z (principal
/// branch for complex z), cut at the smallest term. Throws
/// AsymptoticRegimeError when error_estimate / |value| > max_relative_error.
SeriesEvaluation eval_asymptotic(const AsymptoticSeries& series, cplx z,
                                 double max_relative_error = 1e-6);

inline constexpr int kDefaultSeriesTerms = 240;
inline constexpr double kSeriesTolerance = 1e-11;

/// Smallest z >= start/alpha at which the recessive series at infinity
/// reaches the relative tolerance.
double far_point(const ProblemParams& params, double E, double rel_tol = kSeriesTolerance,
                 double start = 10.0);

/// Largest z <= beta/start (and >= beta/40) at which the recessive series at
/// the origin reaches the relative tolerance.
double near_point(const ProblemParams& params, double E, double rel_tol = kSeriesTolerance,
                  double start = 10.0);

}  // namespace heun
