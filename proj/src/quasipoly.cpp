#include "heun/quasipoly.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "detail/laurent_poly.hpp"
#include "heun/error.hpp"
#include "heun/shooting.hpp"

namespace heun {
namespace {

using boost::multiprecision::cpp_rational;
using detail::LaurentPoly;

template <class T>
struct Constants {
  T Z, alpha, E, L;
  int p;
  explicit Constants(const QuasiPolyProblem& q)
      : Z(T(q.Z)), alpha(T(q.Z) / T(2 * q.p)), E(-alpha * alpha), L(T(q.l * (q.l + 1))), p(q.p) {}
};

template <class T>
T inverse_factorial(int s) {
  T f(1);
  for (int k = 2; k <= s; ++k) f *= T(k);
  return T(1) / f;
}

template <class T>
T signed_power(const T& x, int s) {
  T r(1);
  for (int k = 0; k < s; ++k) r *= x;
  return r;
}

template <class T>
LaurentPoly<T> closure_via_xi(const QuasiPolyProblem& q) {
  const Constants<T> k(q);
  std::vector<LaurentPoly<T>> xi{LaurentPoly<T>::constant(T(1))};
  for (int j = 1; j <= q.p; ++j) {
    LaurentPoly<T> next = detail::mul_linear(xi[j - 1], T(j * (j - 1)) - k.L, T(-2) * k.alpha);
    if (j >= 2) next = next + (k.Z - T(2) * k.alpha * T(j - 1)) * xi[j - 2];
    xi.push_back(detail::shift(T(1) / T(-2 * j) * next, -1));
  }
  return xi[q.p];
}

template <class T>
LaurentPoly<T> closure_via_a(const QuasiPolyProblem& q) {
  const Constants<T> k(q);
  const int p = q.p;
  std::vector<LaurentPoly<T>> a{LaurentPoly<T>::constant(T(1))};
  for (int m = 1; m <= p; ++m) {
    LaurentPoly<T> next = T((m - p) * (m - 1 - p)) * a[m - 1] - k.L * a[m - 1];
    if (m >= 3) next = next - detail::shift(a[m - 3], 2);
    a.push_back(T(1) / (T(-2 * m) * k.alpha) * next);
  }
  std::vector<LaurentPoly<T>> xi(p);
  auto term = [&](int s, const LaurentPoly<T>& x) {
    return detail::shift(signed_power(T(-1), s) * inverse_factorial<T>(s) * x, s);
  };
  for (int kk = 0; kk < p; ++kk) {
    LaurentPoly<T> v = a[kk];
    for (int s = 1; s <= kk; ++s) v = v - term(s, xi[p - 1 - kk + s]);
    xi[p - 1 - kk] = v;
  }
  LaurentPoly<T> closure = a[p];
  for (int s = 1; s <= p; ++s) closure = closure - term(s, xi[s - 1]);
  return closure;
}

template <class T>
LaurentPoly<T> closure_via_b(const QuasiPolyProblem& q) {
  const Constants<T> k(q);
  const int p = q.p;
  std::vector<LaurentPoly<T>> b{LaurentPoly<T>::constant(T(1))};
  for (int m = 1; m <= p; ++m) {
    LaurentPoly<T> next = T(m * (m - 1)) * b[m - 1] - k.L * b[m - 1];
    if (m >= 2) next = next + k.Z * b[m - 2];
    if (m >= 3) next = next + k.E * b[m - 3];
    b.push_back(detail::shift(T(1) / T(-2 * m) * next, -1));
  }
  auto weight = [&](int s) { return signed_power<T>(T(-k.alpha), s) * inverse_factorial<T>(s); };
  std::vector<LaurentPoly<T>> xi;
  for (int kk = 0; kk < p; ++kk) {
    LaurentPoly<T> v = b[kk];
    for (int s = 1; s <= kk; ++s) v = v - weight(s) * xi[kk - s];
    xi.push_back(v);
  }
  LaurentPoly<T> closure = b[p];
  for (int s = 1; s <= p; ++s) closure = closure - weight(s) * xi[p - s];
  return closure;
}

hp_float to_hp(const cpp_rational& r) {
  return hp_float(boost::multiprecision::numerator(r)) /
         hp_float(boost::multiprecision::denominator(r));
}
hp_float to_hp(const hp_float& x) { return x; }

std::string to_string_exact(const cpp_rational& r) { return r.str(); }
std::string to_string_exact(const hp_float& x) { return x.str(); }

template <class T>
BetaPolynomial finish(const LaurentPoly<T>& closure, BetaProcedure which, bool exact) {
  BetaPolynomial out;
  out.provenance = which;
  out.exact = exact;
  std::vector<T> c = detail::numerator(closure);
  std::vector<hp_float> h;
  for (const T& x : c) h.push_back(to_hp(x));
  if (!exact) {
    // Rounding residue in place of exact cancellation.
    hp_float big = 0;
    for (const auto& x : h) big = std::max(big, hp_float(abs(x)));
    const hp_float floor = big * hp_float("1e-40");
    while (!h.empty() && abs(h.back()) <= floor) h.pop_back();
    std::size_t lead = 0;
    while (lead < h.size() && abs(h[lead]) <= floor) ++lead;
    h.erase(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(lead));
  } else {
    for (const T& x : c) out.exact_text.push_back(to_string_exact(x));
  }
  if (!h.empty()) {
    const hp_float lead = h.back();
    for (auto& x : h) x /= lead;
  }
  out.coefficients = std::move(h);
  return out;
}

template <class F>
BetaPolynomial dispatch(const QuasiPolyProblem& q, BetaProcedure which, F&& build) {
  require_quasipoly_problem(q);
  if (q.Z == 1.0) return finish(build(cpp_rational{}), which, true);
  return finish(build(hp_float{}), which, false);
}

hp_float horner(const std::vector<hp_float>& c, const hp_float& x, hp_float* derivative) {
  hp_float v = 0, d = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    d = d * x + v;
    v = v * x + *it;
  }
  if (derivative) *derivative = d;
  return v;
}

// Complex roots in double precision; real ones polished in hp_float and
// returned with a zero imaginary part.
std::vector<std::complex<double>> roots_of(const std::vector<hp_float>& monic,
                                           std::vector<hp_float>* real_hp) {
  std::vector<std::complex<double>> out;
  const int n = static_cast<int>(monic.size()) - 1;
  if (n <= 0) return out;
  double s = 0.0;
  for (int k = 0; k < n; ++k) {
    const double a = std::abs(static_cast<double>(monic[k] / monic[n]));
    if (a > 0.0) s = std::max(s, std::pow(a, 1.0 / (n - k)));
  }
  if (s == 0.0) s = 1.0;
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int k = 0; k < n; ++k) {
    comp(k, n - 1) = -static_cast<double>(monic[k] / monic[n]) / std::pow(s, n - k);
  }
  const Eigen::VectorXcd ev = Eigen::EigenSolver<Eigen::MatrixXd>(comp, false).eigenvalues();
  for (int i = 0; i < n; ++i) {
    std::complex<double> r = ev(i) * s;
    if (std::abs(r.imag()) <= 1e-7 * std::max(1.0, std::abs(r))) {
      hp_float x = r.real();
      bool converged = false;
      for (int it = 0; it < 200 && !converged; ++it) {
        hp_float d;
        const hp_float v = horner(monic, x, &d);
        if (d == 0) break;
        const hp_float step = v / d;
        x -= step;
        converged = abs(step) <= hp_float("1e-45") * std::max(hp_float(1), hp_float(abs(x)));
      }
      if (converged) {
        r = {static_cast<double>(x), 0.0};
        if (real_hp) real_hp->push_back(x);
      }
    }
    out.push_back(r);
  }
  return out;
}

std::vector<hp_float> positive_roots(const BetaPolynomial& poly) {
  std::vector<hp_float> real;
  roots_of(poly.coefficients, &real);
  std::vector<hp_float> pos;
  for (const auto& x : real)
    if (x > 0) pos.push_back(x);
  std::sort(pos.begin(), pos.end());
  pos.erase(std::unique(pos.begin(), pos.end(),
                        [](const hp_float& a, const hp_float& b) {
                          return abs(a - b) <= hp_float("1e-30") * abs(a);
                        }),
            pos.end());
  return pos;
}

std::vector<hp_float> xi_chain_hp(const QuasiPolyProblem& q, const hp_float& beta, int last) {
  const Constants<hp_float> k(q);
  std::vector<hp_float> xi{hp_float(1)};
  for (int j = 1; j <= last; ++j) {
    hp_float next = (hp_float(j * (j - 1)) - k.L - 2 * k.alpha * beta) * xi[j - 1];
    if (j >= 2) next += (k.Z - 2 * k.alpha * (j - 1)) * xi[j - 2];
    xi.push_back(next / (-2 * j * beta));
  }
  return xi;
}

}  // namespace

std::string to_string(BetaProcedure p) {
  switch (p) {
    case BetaProcedure::ViaA: return "via_a";
    case BetaProcedure::ViaB: return "via_b";
    case BetaProcedure::ViaXi: return "via_xi";
  }
  return "?";
}

void require_quasipoly_problem(const QuasiPolyProblem& q) {
  if (q.p < 1) throw DomainError("p must be a positive integer");
  if (q.l < 0) throw DomainError("l must be non-negative");
  if (!(q.Z > 0.0) || !std::isfinite(q.Z)) throw DomainError("Z must be positive");
}

hp_float BetaPolynomial::operator()(const hp_float& beta) const {
  return horner(coefficients, beta, nullptr);
}

BetaPolynomial beta_polynomial_via_a(const QuasiPolyProblem& q) {
  return dispatch(q, BetaProcedure::ViaA,
                  [&](auto tag) { return closure_via_a<decltype(tag)>(q); });
}

BetaPolynomial beta_polynomial_via_b(const QuasiPolyProblem& q) {
  return dispatch(q, BetaProcedure::ViaB,
                  [&](auto tag) { return closure_via_b<decltype(tag)>(q); });
}

BetaPolynomial beta_polynomial_via_xi(const QuasiPolyProblem& q) {
  return dispatch(q, BetaProcedure::ViaXi,
                  [&](auto tag) { return closure_via_xi<decltype(tag)>(q); });
}

std::vector<std::complex<double>> polynomial_roots(const BetaPolynomial& poly) {
  return roots_of(poly.coefficients, nullptr);
}

std::vector<double> xi_chain(const QuasiPolyProblem& q, double beta, int last) {
  require_quasipoly_problem(q);
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
  std::vector<double> out;
  for (const auto& x : xi_chain_hp(q, hp_float(beta), last)) out.push_back(static_cast<double>(x));
  return out;
}

QuasiPolyResult solve_quasipoly(const QuasiPolyProblem& q) {
  require_quasipoly_problem(q);
  QuasiPolyResult r;
  r.problem = q;
  r.E = q.energy();
  r.polynomials = {beta_polynomial_via_xi(q), beta_polynomial_via_a(q), beta_polynomial_via_b(q)};

  std::vector<hp_float> real;
  for (const auto& z : roots_of(r.polynomials[0].coefficients, &real)) {
    if (z.imag() != 0.0 || !(z.real() > 0.0)) r.rejected_roots.push_back(z);
  }
  const std::vector<hp_float> roots = positive_roots(r.polynomials[0]);
  for (std::size_t k = 1; k < r.polynomials.size(); ++k) {
    const std::vector<hp_float> other = positive_roots(r.polynomials[k]);
    if (other.size() != roots.size()) {
      throw SolverError("cross-check", to_string(r.polynomials[k].provenance) + " gives " +
                                           std::to_string(other.size()) + " positive roots, via_xi " +
                                           std::to_string(roots.size()));
    }
    for (std::size_t i = 0; i < roots.size(); ++i) {
      const double rel = static_cast<double>(abs(other[i] - roots[i]) / roots[i]);
      r.cross_check = std::max(r.cross_check, rel);
    }
  }
  if (r.cross_check > 1e-10) {
    throw SolverError("cross-check", "procedures disagree on the roots by " +
                                         std::to_string(r.cross_check));
  }

  for (const hp_float& beta : roots) {
    r.beta_roots.push_back(static_cast<double>(beta));
    r.A_values.push_back(static_cast<double>(beta * beta));
    const std::vector<hp_float> xi = xi_chain_hp(q, beta, q.p + 3);
    hp_float big = 0;
    for (int j = 0; j < q.p; ++j) big = std::max(big, hp_float(abs(xi[j])));
    hp_float tail = 0;
    for (int j = q.p; j <= q.p + 3; ++j) tail = std::max(tail, hp_float(abs(xi[j])));
    r.termination.push_back(static_cast<double>(tail / big));
    std::vector<double> v;
    for (int j = 0; j < q.p; ++j) v.push_back(static_cast<double>(xi[j]));
    r.xi.push_back(std::move(v));
  }
  if (q.p == 1) {
    r.note = "p = 1 forces beta = -l(l+1)/(2 alpha) <= 0: no quasi-polynomial solution with A > 0";
  } else if (r.beta_roots.empty()) {
    r.note = "no positive real root";
  }
  return r;
}

ClosedFormValue quasipoly_wave(const QuasiPolyResult& r, std::size_t k, double z) {
  if (k >= r.beta_roots.size()) throw DomainError("root index out of range");
  if (!(z > 0.0)) throw DomainError("z must be positive");
  const double alpha = r.problem.alpha(), beta = r.beta_roots[k];
  const auto& xi = r.xi[k];
  double v = 0.0, dv = 0.0, d2v = 0.0;
  for (auto j = static_cast<int>(xi.size()) - 1; j >= 0; --j) {
    d2v = d2v * z + 2.0 * dv;
    dv = dv * z + v;
    v = v * z + xi[j];
  }
  const double u = z * v, du = v + z * dv, d2u = 2.0 * dv + z * d2v;
  const double ph = -alpha * z - beta / z;
  const double dph = -alpha + beta / (z * z);
  const double d2ph = -2.0 * beta / (z * z * z);
  const double e = std::exp(ph);
  return {e * u, e * (du + dph * u), e * (d2u + 2.0 * dph * du + (d2ph + dph * dph) * u)};
}

std::vector<QuasiPolyCheck> validate_quasipoly(const QuasiPolyResult& r) {
  std::vector<QuasiPolyCheck> out;
  const QuasiPolyProblem& q = r.problem;
  const double L = q.l * (q.l + 1.0);
  for (std::size_t k = 0; k < r.beta_roots.size(); ++k) {
    QuasiPolyCheck c;
    c.beta = r.beta_roots[k];
    c.A = r.A_values[k];
    const ProblemParams params{c.A, q.Z, q.l};
    c.shooting_mismatch = std::abs(mismatch(r.E, params));

    const double z_lo = c.beta / 20.0, z_hi = 20.0 / q.alpha();
    for (int i = 0; i < 20; ++i) {
      const double z = z_lo * std::pow(z_hi / z_lo, i / 19.0);
      const ClosedFormValue w = quasipoly_wave(r, k, z);
      const double terms[5] = {z * z * w.d2w, -c.A / (z * z) * w.w, -L * w.w, q.Z * z * w.w,
                               r.E * z * z * w.w};
      double sum = 0.0, big = 0.0;
      for (double t : terms) sum += t, big = std::max(big, std::abs(t));
      if (big > 0.0) c.ode_residual = std::max(c.ode_residual, std::abs(sum) / big);
    }

    std::vector<hp_float> v;
    for (double x : r.xi[k]) v.push_back(x);
    std::vector<hp_float> real;
    if (v.size() > 1) {
      const hp_float lead = v.back();
      for (auto& x : v) x /= lead;
      roots_of(v, &real);
    }
    c.nodes = static_cast<int>(std::count_if(real.begin(), real.end(),
                                             [](const hp_float& x) { return x > 0; }));
    c.passed = c.shooting_mismatch < 1e-9 && c.ode_residual < 1e-10;
    out.push_back(c);
  }
  return out;
}

}  // namespace heun
