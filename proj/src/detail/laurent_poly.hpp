#pragma once

#include <algorithm>
#include <vector>

namespace heun::detail {

// Finite Laurent polynomial sum_k c[k] x^(low + k) over a field T.
template <class T>
struct LaurentPoly {
  int low = 0;
  std::vector<T> c;

  static LaurentPoly constant(const T& v) { return {0, {v}}; }
  bool empty() const { return c.empty(); }
  int high() const { return low + static_cast<int>(c.size()) - 1; }
  T at(int k) const { return k < low || k > high() ? T(0) : c[k - low]; }
};

template <class T>
LaurentPoly<T> trim(LaurentPoly<T> p) {
  while (!p.c.empty() && p.c.back() == T(0)) p.c.pop_back();
  int lead = 0;
  while (lead < static_cast<int>(p.c.size()) && p.c[lead] == T(0)) ++lead;
  p.c.erase(p.c.begin(), p.c.begin() + lead);
  p.low = p.c.empty() ? 0 : p.low + lead;
  return p;
}

template <class T>
LaurentPoly<T> operator+(const LaurentPoly<T>& a, const LaurentPoly<T>& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  LaurentPoly<T> r;
  r.low = std::min(a.low, b.low);
  const int hi = std::max(a.high(), b.high());
  r.c.resize(hi - r.low + 1);
  for (int k = r.low; k <= hi; ++k) r.c[k - r.low] = a.at(k) + b.at(k);
  return trim(r);
}

template <class T>
LaurentPoly<T> operator*(const T& s, LaurentPoly<T> p) {
  for (auto& x : p.c) x *= s;
  return trim(p);
}

template <class T>
LaurentPoly<T> operator-(const LaurentPoly<T>& a, const LaurentPoly<T>& b) {
  return a + T(-1) * b;
}

// x^k p
template <class T>
LaurentPoly<T> shift(LaurentPoly<T> p, int k) {
  p.low += k;
  return p;
}

// (c0 + c1 x) p
template <class T>
LaurentPoly<T> mul_linear(const LaurentPoly<T>& p, const T& c0, const T& c1) {
  return c0 * p + shift(c1 * p, 1);
}

template <class T>
LaurentPoly<T> operator*(const LaurentPoly<T>& a, const LaurentPoly<T>& b) {
  if (a.empty() || b.empty()) return {};
  LaurentPoly<T> r;
  r.low = a.low + b.low;
  r.c.assign(a.c.size() + b.c.size() - 1, T(0));
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  return trim(r);
}

// Ascending coefficients of the polynomial left after clearing negative
// powers and stripping the factor x^m at x = 0.
template <class T>
std::vector<T> numerator(const LaurentPoly<T>& p) {
  return trim(p).c;
}

}  // namespace heun::detail
