#include "heun/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "heun/error.hpp"

namespace heun {
namespace {

constexpr double kOverflowGuard = 1e250;

// sign = +1 for the recessive solution, -1 for the dominant one.
double kind_sign(SeriesKind kind) {
  return (kind == SeriesKind::InfinityRecessive || kind == SeriesKind::ZeroRecessive) ? 1.0
                                                                                      : -1.0;
}

AsymptoticSeries build_infinity(SeriesKind kind, const ProblemParams& params, double E,
                                cplx a0, int max_terms) {
  if (max_terms < 1) throw DomainError("series needs at least one term");
  const Exponents ex = derive_exponents(params, E);
  if (!(ex.alpha > 0.0)) throw DomainError("alpha = 0: no asymptotic series at infinity");
  const double s = kind_sign(kind);
  const double alpha = s * ex.alpha;
  const double mu = s * ex.mu;
  const double L = params.centrifugal();

  AsymptoticSeries out{kind, {a0}, params, E};
  out.coefficients.reserve(static_cast<std::size_t>(max_terms) + 1);
  auto a = [&](int m) -> cplx { return m < 0 ? cplx{} : out.coefficients[m]; };
  for (int m = 1; m <= max_terms; ++m) {
    const cplx rhs = ((m - mu) * (m - 1 - mu) - L) * a(m - 1) - params.A * a(m - 3);
    const cplx am = rhs / (-2.0 * alpha * m);
    if (!(std::abs(am) < kOverflowGuard)) break;
    out.coefficients.push_back(am);
  }
  return out;
}

AsymptoticSeries build_zero(SeriesKind kind, const ProblemParams& params, double E, cplx b0,
                            int max_terms) {
  if (max_terms < 1) throw DomainError("series needs at least one term");
  if (!(params.A > 0.0)) throw DomainError("beta = 0: no asymptotic series at the origin");
  const double beta = kind_sign(kind) * std::sqrt(params.A);
  const double L = params.centrifugal();

  AsymptoticSeries out{kind, {b0}, params, E};
  out.coefficients.reserve(static_cast<std::size_t>(max_terms) + 1);
  auto b = [&](int m) -> cplx { return m < 0 ? cplx{} : out.coefficients[m]; };
  for (int m = 1; m <= max_terms; ++m) {
    const cplx rhs = (m * (m - 1.0) - L) * b(m - 1) + params.Z * b(m - 2) + E * b(m - 3);
    const cplx bm = rhs / (-2.0 * beta * m);
    if (!(std::abs(bm) < kOverflowGuard)) break;
    out.coefficients.push_back(bm);
  }
  return out;
}

}  // namespace

const char* to_string(SeriesKind kind) {
  switch (kind) {
    case SeriesKind::InfinityRecessive: return "infinity-recessive";
    case SeriesKind::InfinityDominant: return "infinity-dominant";
    case SeriesKind::ZeroRecessive: return "zero-recessive";
    case SeriesKind::ZeroDominant: return "zero-dominant";
  }
  return "?";
}

double AsymptoticSeries::recurrence_residual(int m) const {
  const int size = static_cast<int>(coefficients.size());
  if (m < 1 || m >= size) throw DomainError("recurrence row out of range");
  auto c = [&](int k) -> cplx { return k < 0 ? cplx{} : coefficients[k]; };
  const double s = kind_sign(kind);
  const double L = params.centrifugal();
  cplx terms[4];
  if (at_infinity()) {
    const Exponents ex = derive_exponents(params, E);
    const double alpha = s * ex.alpha, mu = s * ex.mu;
    terms[0] = 2.0 * alpha * m * c(m);
    terms[1] = ((m - mu) * (m - 1 - mu) - L) * c(m - 1);
    terms[2] = -params.A * c(m - 3);
    terms[3] = 0.0;
  } else {
    const double beta = s * std::sqrt(params.A);
    terms[0] = 2.0 * beta * m * c(m);
    terms[1] = (m * (m - 1.0) - L) * c(m - 1);
    terms[2] = params.Z * c(m - 2);
    terms[3] = E * c(m - 3);
  }
  double scale = 0.0;
  cplx sum{};
  for (const cplx& t : terms) {
    scale = std::max(scale, std::abs(t));
    sum += t;
  }
  return scale == 0.0 ? 0.0 : std::abs(sum) / scale;
}

double SeriesEvaluation::relative_error() const {
  const double v = std::abs(value);
  if (v == 0.0) return error_estimate == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return error_estimate / v;
}

AsymptoticSeries asym_coeffs_infinity(const ProblemParams& params, double E, cplx a0,
                                      int max_terms) {
  return build_infinity(SeriesKind::InfinityRecessive, params, E, a0, max_terms);
}

AsymptoticSeries asym_coeffs_zero(const ProblemParams& params, double E, cplx b0,
                                  int max_terms) {
  return build_zero(SeriesKind::ZeroRecessive, params, E, b0, max_terms);
}

AsymptoticSeries dominant_coeffs(SeriesKind kind, const ProblemParams& params, double E,
                                 cplx leading, int max_terms) {
  switch (kind) {
    case SeriesKind::InfinityDominant:
      return build_infinity(kind, params, E, leading, max_terms);
    case SeriesKind::ZeroDominant:
      return build_zero(kind, params, E, leading, max_terms);
    default:
      throw DomainError("dominant_coeffs expects a dominant series kind");
  }
}

SeriesEvaluation eval_asymptotic(const AsymptoticSeries& series, cplx z,
                                 double max_relative_error) {
  if (!(std::abs(z) > 0.0)) throw DomainError("series evaluation needs z != 0");
  const auto& c = series.coefficients;
  const int size = static_cast<int>(c.size());
  const bool inf = series.at_infinity();
  const cplx step = inf ? 1.0 / z : z;

  // Terms t_m = c_m step^m. The cut is placed at the smallest pair
  // |t_m| + |t_{m+1}| so that an isolated vanishing coefficient (b_1 = 0 for
  // l = 0, for instance) does not pass for convergence.
  std::vector<cplx> terms(size);
  cplx power = 1.0;
  for (int m = 0; m < size; ++m) {
    terms[m] = c[m] * power;
    power *= step;
  }
  int cut = size;  // number of terms summed
  double omitted = 0.0;
  if (size >= 3) {
    double best = std::numeric_limits<double>::infinity();
    for (int m = 1; m + 1 < size; ++m) {
      const double pair = std::abs(terms[m]) + std::abs(terms[m + 1]);
      if (pair < best) {
        best = pair;
        cut = m;
      }
      // Far past the minimum the terms only grow; stop scanning.
      if (pair > 1e6 * best && best < std::abs(terms[0])) break;
    }
    omitted = std::max(std::abs(terms[cut]), std::abs(terms[cut + 1]));
  }

  cplx sum{}, dsum{};
  for (int m = 0; m < cut; ++m) {
    sum += terms[m];
    // d/dz of c_m z^{-m} is -m c_m z^{-m-1}; of c_m z^m it is m c_m z^{m-1}.
    dsum += (inf ? -static_cast<double>(m) : static_cast<double>(m)) * terms[m] / z;
  }

  const double s = kind_sign(series.kind);
  cplx pref, dlog;
  if (inf) {
    const Exponents ex = derive_exponents(series.params, series.E);
    const double alpha = s * ex.alpha, mu = s * ex.mu;
    pref = std::exp(-alpha * z + mu * std::log(z));
    dlog = -alpha + mu / z;
  } else {
    const double beta = s * std::sqrt(series.params.A);
    pref = std::exp(-beta / z) * z;
    dlog = beta / (z * z) + 1.0 / z;
  }

  SeriesEvaluation out;
  out.value = pref * sum;
  out.derivative = pref * (dlog * sum + dsum);
  out.truncation_index = cut;
  out.error_estimate = std::abs(pref) * omitted;
  // Judged on the bare sum: the prefactor may underflow deep in the tail.
  const double rel = sum == cplx{} ? out.relative_error() : omitted / std::abs(sum);
  if (!(rel <= max_relative_error)) {
    throw AsymptoticRegimeError(
        rel,
        std::string("asymptotic regime not reached for ") + to_string(series.kind) +
            " series at |z| = " + std::to_string(std::abs(z)) + " (relative error estimate " +
            std::to_string(out.relative_error()) + ")");
  }
  return out;
}

double far_point(const ProblemParams& params, double E, double rel_tol, double start) {
  const Exponents ex = derive_exponents(params, E);
  const AsymptoticSeries rec = asym_coeffs_infinity(params, E, 1.0, kDefaultSeriesTerms);
  double z = start / ex.alpha;
  const double z_max = 400.0 / ex.alpha;
  while (z < z_max) {
    if (eval_asymptotic(rec, z, std::numeric_limits<double>::infinity()).relative_error() <
        rel_tol)
      return z;
    z *= 1.05;
  }
  throw SolverError("far-point", "recessive series at infinity never reached tolerance");
}

double near_point(const ProblemParams& params, double E, double rel_tol, double start) {
  const AsymptoticSeries rec = asym_coeffs_zero(params, E, 1.0, kDefaultSeriesTerms);
  const double beta = std::sqrt(params.A);
  double z = beta / start;
  const double z_min = beta / 40.0;
  while (z > z_min) {
    if (eval_asymptotic(rec, z, std::numeric_limits<double>::infinity()).relative_error() <
        rel_tol)
      return z;
    z /= 1.05;
  }
  return z_min;
}

}  // namespace heun
