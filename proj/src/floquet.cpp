#include "heun/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <boost/math/tools/roots.hpp>

#include "heun/error.hpp"
#include "heun/series.hpp"

namespace heun {
namespace {

constexpr int kPad = 12;
constexpr int kMaxWindow = 1600;
constexpr double kIndexResidual = 1e-9;
// Projection points sit as close to the annulus centre as the series allow:
// Laurent sums cancel like z^(2 mu) on the positive axis.
constexpr double kFarStart = 2.0;
constexpr double kNearStart = 2.0;

using Matrix4c = Eigen::Matrix4cd;

// Orthonormalizes the 4-entry windows [lo, lo+3] of the two columns, applying
// the same 2x2 transform to the stored entries in [from, to].
void orthonormalize(std::array<std::vector<cplx>, 2>& cols, int lo, int from, int to) {
  auto& c0 = cols[0];
  auto& c1 = cols[1];
  double n0 = 0.0;
  for (int k = lo; k < lo + 4; ++k) n0 += std::norm(c0[k]);
  n0 = std::sqrt(n0);
  for (int k = from; k <= to; ++k) c0[k] /= n0;
  cplx proj{};
  for (int k = lo; k < lo + 4; ++k) proj += std::conj(c0[k]) * c1[k];
  for (int k = from; k <= to; ++k) c1[k] -= proj * c0[k];
  double n1 = 0.0;
  for (int k = lo; k < lo + 4; ++k) n1 += std::norm(c1[k]);
  n1 = std::sqrt(n1);
  for (int k = from; k <= to; ++k) c1[k] /= n1;
}

Matrix4c matching_matrix(const TailBasis& plus, const TailBasis& minus) {
  Matrix4c m;
  for (int r = 0; r < 4; ++r) {
    const int n = r - 1;
    m(r, 0) = plus.at(0, n);
    m(r, 1) = plus.at(1, n);
    m(r, 2) = minus.at(0, n);
    m(r, 3) = minus.at(1, n);
  }
  return m;
}

bool nearly(double a, double b, double tol) { return std::abs(a - b) < tol; }

// Representative of {+-nu + k}: Im >= 0, Re in [0, 1), real values in [0, 1/2].
// For real parameters at real E the index lies on one of the three families
// (real, imaginary, 1/2 + imaginary), so rounding residue is snapped away.
cplx canonical_index(cplx nu) {
  if (nu.imag() < 0.0) nu = -nu;
  double re = nu.real() - std::floor(nu.real());
  double im = nu.imag();
  if (std::abs(im) < 1e-11) {
    im = 0.0;
    if (re > 0.5) re = 1.0 - re;
  } else {
    if (nearly(re, 0.0, 1e-9) || nearly(re, 1.0, 1e-9)) re = 0.0;
    if (nearly(re, 0.5, 1e-9)) re = 0.5;
  }
  return {re, im};
}

std::optional<cplx> newton_index(double E, const ProblemParams& params, int N, cplx nu) {
  auto f = [&](cplx v) { return floquet_determinant(v, E, params, N); };
  cplx fv = f(nu);
  for (int it = 0; it < 80; ++it) {
    if (std::abs(fv) < 1e-15) break;
    const double h = 1e-8 * std::clamp(std::abs(nu), 1e-6, 1.0);
    const cplx fx = (f(nu + h) - fv) / h;
    const cplx fy = (f(nu + cplx(0.0, h)) - fv) / h;
    const double det = fx.real() * fy.imag() - fy.real() * fx.imag();
    if (det == 0.0 || !std::isfinite(det)) return std::nullopt;
    const double dx = (-fv.real() * fy.imag() + fy.real() * fv.imag()) / det;
    const double dy = (-fx.real() * fv.imag() + fx.imag() * fv.real()) / det;
    cplx step(dx, dy);
    if (std::abs(step) > 0.25) step *= 0.25 / std::abs(step);
    cplx trial = nu + step;
    cplx ft = f(trial);
    for (int k = 0; k < 30 && std::abs(ft) > std::abs(fv); ++k) {
      step *= 0.5;
      trial = nu + step;
      ft = f(trial);
    }
    if (std::abs(ft) > std::abs(fv)) break;
    nu = trial;
    fv = ft;
    if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(nu))) break;
  }
  if (!(std::abs(fv) < kIndexResidual)) return std::nullopt;
  return nu;
}

// The matching determinant is not equally well conditioned for every integer
// representative of an index; near-integer indices can be much sharper at one
// than at the next.
int best_shift(cplx nu, double E, const ProblemParams& params, int N) {
  int best = 0;
  double size = std::numeric_limits<double>::infinity();
  for (int k : {0, 1, -1}) {
    const double d = std::abs(floquet_determinant(nu + double(k), E, params, N));
    if (d < size) size = d, best = k;
  }
  return best;
}

// Near nu = c (c = 0 or 1/2) the indices nu and -nu coincide modulo 1 and the
// determinant has a double root in nu. For real E the index is real or
// c + imaginary there, so s = (nu - c)^2 is real and the root is simple in s.
// The sign of Re(conj(J) D) with J = dD/ds brackets it.
std::optional<cplx> degenerate_index(double E, const ProblemParams& params, int N, double c) {
  constexpr double s_max = 0.05 * 0.05;
  auto offset = [](double s) { return s >= 0.0 ? cplx(std::sqrt(s), 0.0) : cplx(0.0, std::sqrt(-s)); };
  std::optional<cplx> best;
  double best_size = kIndexResidual;
  for (double k : {0.0, 1.0, -1.0}) {
    auto D = [&](double s) { return floquet_determinant(c + k + offset(s), E, params, N); };
    const cplx J = (D(s_max) - D(-s_max)) / (2.0 * s_max);
    if (J == cplx{}) continue;
    auto f = [&](double s) { return (std::conj(J) * D(s)).real(); };
    double lo = -s_max, hi = s_max;
    double flo = f(lo), fhi = f(hi);
    if (!(flo * fhi < 0.0)) continue;
    boost::uintmax_t iters = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(
        f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(52), iters);
    const double s = std::abs(f(a)) < std::abs(f(b)) ? a : b;
    const double size = std::abs(D(s));
    if (size < best_size) best_size = size, best = c + k + offset(s);
  }
  return best;
}

}  // namespace

int default_window(const ProblemParams& params, double E) {
  const double big = std::max({std::abs(params.A), std::abs(E), std::abs(params.Z)});
  return std::max(20, static_cast<int>(std::ceil(10.0 * std::sqrt(big))));
}

TailBasis tail_basis(cplx nu, double E, const ProblemParams& params, int N, TailSide side) {
  if (params.A == 0.0 || E == 0.0) {
    throw DomainError("Laurent recurrence degenerates for A = 0 or E = 0");
  }
  if (N < 4) throw DomainError("tail window too small");
  const double A = params.A, Z = params.Z, L = params.centrifugal();
  auto d = [&](int n) {
    const cplx t = static_cast<double>(n) + nu;
    return t * (t - 1.0) - L;
  };

  TailBasis tb;
  tb.side = side;
  if (side == TailSide::Plus) {
    tb.n_first = -1;
    tb.n_last = N + kPad;
  } else {
    tb.n_first = -N - kPad;
    tb.n_last = 2;
  }
  const int len = tb.n_last - tb.n_first + 1;
  for (auto& col : tb.columns) col.assign(len, cplx{});
  auto idx = [&](int n) { return n - tb.n_first; };

  if (side == TailSide::Plus) {
    tb.columns[0][idx(tb.n_last)] = 1.0;
    tb.columns[1][idx(tb.n_last - 1)] = 1.0;
    for (int n = tb.n_last - 2; n >= 1; --n) {
      for (auto& col : tb.columns) {
        col[idx(n - 2)] =
            (A * col[idx(n + 2)] - d(n) * col[idx(n)] - Z * col[idx(n - 1)]) / E;
      }
      orthonormalize(tb.columns, idx(n - 2), idx(n - 2), len - 1);
    }
  } else {
    tb.columns[0][idx(tb.n_first)] = 1.0;
    tb.columns[1][idx(tb.n_first + 1)] = 1.0;
    for (int n = tb.n_first + 2; n <= 0; ++n) {
      for (auto& col : tb.columns) {
        col[idx(n + 2)] =
            (d(n) * col[idx(n)] + Z * col[idx(n - 1)] + E * col[idx(n - 2)]) / A;
      }
      orthonormalize(tb.columns, idx(n - 1), 0, idx(n + 2));
    }
  }
  return tb;
}

cplx floquet_determinant(cplx nu, double E, const ProblemParams& params, int N) {
  if (N <= 0) N = default_window(params, E);
  const TailBasis plus = tail_basis(nu, E, params, N, TailSide::Plus);
  const TailBasis minus = tail_basis(nu, E, params, N, TailSide::Minus);
  Matrix4c m = matching_matrix(plus, minus);
  for (int c = 0; c < 4; ++c) m.col(c).normalize();
  return m.determinant();
}

IndexPair find_indices(double E, const ProblemParams& params, int N, std::optional<cplx> seed) {
  require_solver_params(params);
  require_bound_energy(E);
  if (N <= 0) N = default_window(params, E);

  std::optional<cplx> root;
  if (seed) root = newton_index(E, params, N, *seed);

  if (!root) {
    // Scan the three families seen for real parameters: real nu,
    // imaginary nu and 1/2 + imaginary nu. Offsets keep the grid off the
    // degenerate points nu = 0 and nu = 1/2.
    struct Candidate {
      double size;
      cplx nu;
    };
    std::vector<Candidate> seeds;
    auto scan_line = [&](auto point, double t0, double t1, double dt) {
      std::vector<Candidate> line;
      for (double t = t0; t <= t1; t += dt) {
        const cplx v = point(t);
        line.push_back({std::abs(floquet_determinant(v, E, params, N)), v});
      }
      for (std::size_t i = 0; i < line.size(); ++i) {
        const bool left = i == 0 || line[i].size <= line[i - 1].size;
        const bool right = i + 1 == line.size() || line[i].size <= line[i + 1].size;
        if (left && right) seeds.push_back(line[i]);
      }
    };
    const double y_max = 6.0;
    scan_line([](double t) { return cplx(t, 0.0); }, 0.0071, 0.9971, 0.02);
    scan_line([](double t) { return cplx(0.0, t); }, 0.0071, y_max, 0.02);
    scan_line([](double t) { return cplx(0.5, t); }, 0.0071, y_max, 0.02);
    std::sort(seeds.begin(), seeds.end(),
              [](const Candidate& a, const Candidate& b) { return a.size < b.size; });
    for (const auto& s : seeds) {
      root = newton_index(E, params, N, s.nu);
      if (root) break;
    }
  }
  // Indices close to 0 or 1/2 are resolved again as simple roots in (nu - c)^2.
  for (double c : {0.0, 0.5}) {
    bool near = false;
    if (root) {
      const cplx v = canonical_index(*root);
      for (double k : {0.0, 1.0}) near = near || std::abs(v - c - k) < 0.05;
    }
    if (root && !near) continue;
    if (auto r = degenerate_index(E, params, N, c)) {
      root = r;
      break;
    }
  }
  if (!root) {
    throw SolverError("index-search", "no Floquet index found (E = " + std::to_string(E) + ")");
  }

  IndexPair out;
  out.nu1 = canonical_index(*root);
  const bool half = out.nu1.real() == 0.5 && out.nu1.imag() > 0.0;
  out.nu2 = half ? 1.0 - out.nu1 : -out.nu1;
  out.residual = std::abs(floquet_determinant(out.nu1 + double(best_shift(out.nu1, E, params, N)),
                                             E, params, N));
  return out;
}

double FloquetSolution::recurrence_residual(int n) const {
  if (n - 2 < -N || n + 2 > N) throw DomainError("recurrence row outside the window");
  const double L = params.centrifugal();
  const cplx t = static_cast<double>(n) + nu;
  const cplx terms[4] = {-params.A * c(n + 2), (t * (t - 1.0) - L) * c(n),
                         params.Z * c(n - 1), E * c(n - 2)};
  double scale = 0.0;
  cplx sum{};
  for (const cplx& x : terms) {
    scale = std::max(scale, std::abs(x));
    sum += x;
  }
  return scale == 0.0 ? 0.0 : std::abs(sum) / scale;
}

FloquetSolution laurent_coefficients(cplx nu, double E, const ProblemParams& params, int N) {
  require_solver_params(params);
  require_bound_energy(E);
  if (N <= 0) N = default_window(params, E);
  // Work at the representative nu + k and relabel c_n = c'_{n-k}.
  const int k = best_shift(nu, E, params, N + 1);
  const cplx shifted = nu + double(k);
  const TailBasis plus = tail_basis(shifted, E, params, N + 1, TailSide::Plus);
  const TailBasis minus = tail_basis(shifted, E, params, N + 1, TailSide::Minus);
  const Matrix4c m = matching_matrix(plus, minus);
  Eigen::JacobiSVD<Matrix4c> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  if (!(s(3) <= 1e-7 * s(0))) {
    throw SolverError("laurent", "nu is not a Floquet index (smallest singular value ratio " +
                                     std::to_string(s(3) / s(0)) + ")");
  }
  if (!(s(2) > 1e-10 * s(0))) {
    throw SolverError("laurent", "two-sided decaying solution is not unique");
  }
  const Eigen::Vector4cd v = svd.matrixV().col(3);

  FloquetSolution sol;
  sol.nu = nu;
  sol.N = N;
  sol.params = params;
  sol.E = E;
  sol.coefficients.assign(2 * N + 1, cplx{});
  for (int n = -N; n <= N; ++n) {
    const int j = n - k;
    sol.coefficients[n + N] = j >= 0 ? v(0) * plus.at(0, j) + v(1) * plus.at(1, j)
                                    : -(v(2) * minus.at(0, j) + v(3) * minus.at(1, j));
  }
  double cmax = 0.0;
  for (const cplx& x : sol.coefficients) cmax = std::max(cmax, std::abs(x));
  // c_0 = 1 unless c_0 is (nearly) zero, then the largest coefficient is 1.
  std::size_t ref = static_cast<std::size_t>(N);
  if (std::abs(sol.coefficients[ref]) < 1e-12 * cmax) {
    ref = std::max_element(sol.coefficients.begin(), sol.coefficients.end(),
                           [](cplx a, cplx b) { return std::abs(a) < std::abs(b); }) -
          sol.coefficients.begin();
  }
  const cplx norm = sol.coefficients[ref];
  for (cplx& x : sol.coefficients) x /= norm;
  sol.coefficients[ref] = 1.0;  // complex x / x can round away from 1
  return sol;
}

bool in_annulus(const FloquetSolution& sol, cplx z, double tol) {
  // Measured against the value of the sum rather than the sum of magnitudes:
  // on the positive axis the terms cancel heavily.
  const cplx lz = std::log(z);
  auto term = [&](int n) {
    const cplx c = sol.c(n);
    const double a = std::abs(c);
    return a == 0.0 ? cplx{} : (c / a) * std::exp(std::log(a) + static_cast<double>(n) * lz);
  };
  cplx total{};
  for (int n = -sol.N; n <= sol.N; ++n) total += term(n);
  const double edge = std::abs(term(sol.N)) + std::abs(term(-sol.N));
  return std::isfinite(std::abs(total)) && edge < tol * std::abs(total);
}

FloquetValue eval_floquet(const FloquetSolution& sol, cplx z) {
  if (!(std::abs(z) > 0.0)) throw DomainError("Floquet solution evaluated at z = 0");
  if (!in_annulus(sol, z)) throw DomainError("annulus too narrow; increase N");
  const cplx lz = std::log(z);
  cplx sum{}, dsum{};
  for (int n = -sol.N; n <= sol.N; ++n) {
    const cplx c = sol.c(n);
    const double a = std::abs(c);
    if (a == 0.0) continue;
    const cplx term = (c / a) * std::exp(std::log(a) + static_cast<double>(n) * lz);
    sum += term;
    dsum += (static_cast<double>(n) + sol.nu) * term;
  }
  const cplx zn = std::exp(sol.nu * lz);
  return {zn * sum, zn * dsum / z};
}

ConnectionData connection_data(double E, const ProblemParams& params,
                               const ConnectionOptions& opts, std::optional<cplx> nu_seed) {
  require_solver_params(params);
  require_bound_energy(E);
  const Exponents ex = derive_exponents(params, E);

  ConnectionData out;
  out.E = E;
  out.z_far = opts.z_far > 0.0 ? opts.z_far : far_point(params, E, opts.series_tolerance, kFarStart);
  out.z_near = opts.z_near > 0.0 ? opts.z_near : near_point(params, E, opts.series_tolerance, kNearStart);
  out.indices = find_indices(E, params, 0, nu_seed);

  const cplx points[4] = {out.z_far, out.z_near, std::polar(out.z_far, std::numbers::pi),
                          std::polar(out.z_near, std::numbers::pi)};
  int N = opts.N > 0 ? opts.N : default_window(params, E);
  for (;; N *= 2) {
    if (N > kMaxWindow) {
      throw SolverError("laurent-window", "Laurent window exceeded " +
                                              std::to_string(kMaxWindow) + " terms");
    }
    out.w1 = laurent_coefficients(out.indices.nu1, E, params, N);
    out.w2 = laurent_coefficients(out.indices.nu2, E, params, N);
    bool ok = true;
    for (const cplx& z : points) ok = ok && in_annulus(out.w1, z) && in_annulus(out.w2, z);
    if (ok) break;
  }

  const auto rinf = eval_asymptotic(asym_coeffs_infinity(params, E, 1.0, kDefaultSeriesTerms),
                                    out.z_far, 1e-8);
  const auto r0 = eval_asymptotic(asym_coeffs_zero(params, E, 1.0, kDefaultSeriesTerms),
                                  out.z_near, 1e-8);
  const FloquetSolution* ws[2] = {&out.w1, &out.w2};
  for (int j = 0; j < 2; ++j) {
    const FloquetValue far = eval_floquet(*ws[j], out.z_far);
    const FloquetValue near = eval_floquet(*ws[j], out.z_near);
    out.M(0, j) = (far.w * rinf.derivative - far.dw * rinf.value) / (-2.0 * ex.alpha);
    out.M(1, j) = (near.w * r0.derivative - near.dw * r0.value) / (2.0 * ex.beta);
  }
  const FloquetValue a = eval_floquet(out.w1, 1.0);
  const FloquetValue b = eval_floquet(out.w2, 1.0);
  out.wronskian12 = a.w * b.dw - a.dw * b.w;
  out.characteristic = out.M.determinant() / out.wronskian12;
  return out;
}

Matrix2c connection_matrix(double E, const ProblemParams& params, const ConnectionOptions& opts) {
  return connection_data(E, params, opts).M;
}

namespace {

ConnectionResult finish_connection(const ConnectionData& d, const ProblemParams& params) {
  ConnectionResult res;
  res.E = d.E;
  res.nu1 = d.indices.nu1;
  res.nu2 = d.indices.nu2;
  res.floquet1 = d.w1;
  res.floquet2 = d.w2;
  res.z_far = d.z_far;
  res.z_near = d.z_near;
  res.characteristic = std::abs(d.characteristic);

  // Null vector of M from its larger row.
  const int r = d.M.row(0).norm() >= d.M.row(1).norm() ? 0 : 1;
  cplx x1 = d.M(r, 1), x2 = -d.M(r, 0);
  const bool complex_index = res.nu1.imag() != 0.0;
  if (complex_index) {
    // zeta = c x with zeta2 = -conj(zeta1): c / conj(c) = -conj(x1) / x2.
    const double theta = 0.5 * std::arg(-std::conj(x1) / x2);
    cplx c = std::polar(1.0 / std::abs(x1), theta);
    res.zeta1 = c * x1;
    if (res.zeta1.imag() < 0.0) {
      c = -c;
      res.zeta1 = -res.zeta1;
    }
    res.zeta2 = -std::conj(res.zeta1);
  } else {
    const double nrm = std::sqrt(std::norm(x1) + std::norm(x2));
    cplx c = std::conj(x1) / (std::abs(x1) * nrm);
    res.zeta1 = c * x1;
    res.zeta2 = c * x2;
  }
  const Eigen::Vector2cd zeta(res.zeta1, res.zeta2);
  res.zeta_residual = (d.M * zeta).norm() / (d.M.norm() * zeta.norm());

  const cplx far = std::polar(d.z_far, std::numbers::pi);
  const cplx near = std::polar(d.z_near, std::numbers::pi);
  const auto rinf = eval_asymptotic(asym_coeffs_infinity(params, d.E, 1.0, kDefaultSeriesTerms),
                                    far, 1e-8);
  const auto r0 =
      eval_asymptotic(asym_coeffs_zero(params, d.E, 1.0, kDefaultSeriesTerms), near, 1e-8);
  res.a0 = eval_connection(res, far).w / rinf.value;
  res.b0 = eval_connection(res, near).w / r0.value;
  return res;
}

}  // namespace

FloquetValue eval_connection(const ConnectionResult& res, cplx z) {
  const FloquetValue a = eval_floquet(res.floquet1, z);
  const FloquetValue b = eval_floquet(res.floquet2, z);
  return {res.zeta1 * a.w + res.zeta2 * b.w, res.zeta1 * a.dw + res.zeta2 * b.dw};
}

ConnectionResult eigen_connection(const ProblemParams& params, double e_lo, double e_hi,
                                  const ConnectionOptions& opts) {
  require_solver_params(params);
  require_bound_energy(e_lo);
  require_bound_energy(e_hi);
  if (!(e_lo < e_hi)) throw DomainError("energy bracket must satisfy e_lo < e_hi");

  ConnectionOptions fixed = opts;
  if (fixed.z_far <= 0.0) fixed.z_far = far_point(params, e_hi, opts.series_tolerance, kFarStart);
  if (fixed.z_near <= 0.0) fixed.z_near = near_point(params, e_hi, opts.series_tolerance, kNearStart);

  std::optional<cplx> seed;
  int calls = 0;
  auto g = [&](double E) {
    ++calls;
    const ConnectionData d = connection_data(E, params, fixed, seed);
    seed = d.indices.nu1;
    return d.characteristic.real();
  };

  double lo = e_lo, hi = e_hi;
  double flo = g(lo), fhi = g(hi);
  if ((flo < 0.0) == (fhi < 0.0)) {
    // Look for an interior sign change.
    const int pieces = 24;
    bool found = false;
    double prev = lo, fprev = flo;
    for (int k = 1; k <= pieces && !found; ++k) {
      const double e = e_lo + (e_hi - e_lo) * k / pieces;
      const double fe = k == pieces ? fhi : g(e);
      if ((fprev < 0.0) != (fe < 0.0)) {
        lo = prev, flo = fprev, hi = e, fhi = fe;
        found = true;
      }
      prev = e, fprev = fe;
    }
    if (!found) throw SolverError("eigen-connection", "no eigenvalue in the energy bracket");
  }

  std::uintmax_t iters = static_cast<std::uintmax_t>(opts.max_iterations);
  auto tol = [&](double a, double b) { return std::abs(a - b) < opts.energy_tolerance * 0.1; };
  const auto r = boost::math::tools::toms748_solve(g, lo, hi, flo, fhi, tol, iters);
  const double E = 0.5 * (r.first + r.second);
  ConnectionResult res = finish_connection(connection_data(E, params, fixed, seed), params);
  res.iterations = calls;
  return res;
}

ConnectionResult find_energy_floquet(const ProblemParams& params, int n,
                                     const ConnectionOptions& opts) {
  require_solver_params(params);
  if (n < 0) throw DomainError("node count must be non-negative");
  const double z2 = params.Z * params.Z;
  const double e_lo = 1.2 * coulomb_energy(0, params.l) * z2;
  const double e_hi = -1e-4 * z2;
  auto mu_of = [&](double E) { return params.Z / (2.0 * std::sqrt(-E)); };
  auto e_of = [&](double mu) { return -z2 / (4.0 * mu * mu); };

  std::optional<cplx> seed;
  auto g = [&](double E) {
    const ConnectionData d = connection_data(E, params, opts, seed);
    seed = d.indices.nu1;
    return d.characteristic.real();
  };
  const double mu_end = mu_of(e_hi);
  double mu_prev = mu_of(e_lo), e_prev = e_lo, f_prev = g(e_lo);
  int roots = 0;
  for (double mu = mu_prev + 0.1; mu_prev < mu_end; mu += 0.1) {
    const double mu_here = std::min(mu, mu_end);
    const double e_here = e_of(mu_here);
    const double f_here = g(e_here);
    if ((f_prev < 0.0) != (f_here < 0.0)) {
      if (roots == n) return eigen_connection(params, e_prev, e_here, opts);
      ++roots;
    }
    mu_prev = mu_here, e_prev = e_here, f_prev = f_here;
  }
  throw SolverError("energy-scan", "no eigenvalue with " + std::to_string(n) +
                                       " nodes in the scanned window");
}

}  // namespace heun
