#pragma once

// Truncated Taylor arithmetic.
//
// Jet<N> carries the normalized Taylor coefficients c[k] = f^(k)(s)/k! of a
// scalar function about one point, k = 0..N. Arithmetic follows the usual
// coefficient recurrences, so every derivative up to order N is exact to
// floating precision. Mixing orders truncates to the lower one, and
// derivative() drops one order, so the type records how many derivatives
// are still valid.
//
// Dual<T> is a first-order dual number over any scalar-like T. Dual<Jet<N>>
// yields a partial derivative in one variable that is itself a jet in s.

#include <darboux/errors.hpp>

#include <algorithm>
#include <array>
#include <cmath>

namespace darboux {

namespace detail {
constexpr double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}
}  // namespace detail

template <int N>
struct Jet {
  static_assert(N >= 0, "jet order must be non-negative");
  static constexpr int order = N;

  std::array<double, N + 1> c{};

  constexpr Jet() = default;
  constexpr Jet(double value) { c[0] = value; }  // NOLINT: implicit promotion of constants

  /// The identity function s evaluated at `s`.
  static constexpr Jet variable(double s) {
    Jet j(s);
    if constexpr (N >= 1) j.c[1] = 1.0;
    return j;
  }

  constexpr double value() const { return c[0]; }
  /// k-th derivative (not the Taylor coefficient).
  constexpr double derivative(int k) const { return c[k] * detail::factorial(k); }

  constexpr Jet& operator+=(const Jet& o) {
    for (int k = 0; k <= N; ++k) c[k] += o.c[k];
    return *this;
  }
  constexpr Jet& operator-=(const Jet& o) {
    for (int k = 0; k <= N; ++k) c[k] -= o.c[k];
    return *this;
  }
  constexpr Jet& operator*=(double x) {
    for (auto& v : c) v *= x;
    return *this;
  }
};

using Jet3 = Jet<3>;

template <int M, int N>
constexpr Jet<M> truncate(const Jet<N>& a) {
  static_assert(M <= N, "cannot extend a jet");
  Jet<M> r;
  for (int k = 0; k <= M; ++k) r.c[k] = a.c[k];
  return r;
}

/// d/ds of a jet; one order is lost.
template <int N>
constexpr Jet<N - 1> derivative(const Jet<N>& a) {
  static_assert(N >= 1);
  Jet<N - 1> r;
  for (int k = 0; k < N; ++k) r.c[k] = (k + 1) * a.c[k + 1];
  return r;
}

/// Jet of F with F(s) = value and F' = a.
template <int N>
constexpr Jet<N + 1> antiderivative(const Jet<N>& a, double value) {
  Jet<N + 1> r;
  r.c[0] = value;
  for (int k = 0; k <= N; ++k) r.c[k + 1] = a.c[k] / (k + 1);
  return r;
}

// ---- arithmetic -----------------------------------------------------------

template <int N>
constexpr Jet<N> operator-(const Jet<N>& a) {
  Jet<N> r;
  for (int k = 0; k <= N; ++k) r.c[k] = -a.c[k];
  return r;
}

template <int N, int M>
constexpr Jet<std::min(N, M)> operator+(const Jet<N>& a, const Jet<M>& b) {
  Jet<std::min(N, M)> r;
  for (int k = 0; k <= std::min(N, M); ++k) r.c[k] = a.c[k] + b.c[k];
  return r;
}

template <int N, int M>
constexpr Jet<std::min(N, M)> operator-(const Jet<N>& a, const Jet<M>& b) {
  Jet<std::min(N, M)> r;
  for (int k = 0; k <= std::min(N, M); ++k) r.c[k] = a.c[k] - b.c[k];
  return r;
}

template <int N, int M>
constexpr Jet<std::min(N, M)> operator*(const Jet<N>& a, const Jet<M>& b) {
  constexpr int K = std::min(N, M);
  Jet<K> r;
  for (int k = 0; k <= K; ++k) {
    double acc = 0.0;
    for (int j = 0; j <= k; ++j) acc += a.c[j] * b.c[k - j];
    r.c[k] = acc;
  }
  return r;
}

template <int N, int M>
Jet<std::min(N, M)> operator/(const Jet<N>& a, const Jet<M>& b) {
  constexpr int K = std::min(N, M);
  if (b.c[0] == 0.0) fail(ErrorKind::domain, "division by zero");
  Jet<K> q;
  for (int k = 0; k <= K; ++k) {
    double acc = a.c[k];
    for (int j = 1; j <= k; ++j) acc -= b.c[j] * q.c[k - j];
    q.c[k] = acc / b.c[0];
  }
  return q;
}

template <int N>
constexpr Jet<N> operator+(Jet<N> a, double x) {
  a.c[0] += x;
  return a;
}
template <int N>
constexpr Jet<N> operator+(double x, Jet<N> a) {
  a.c[0] += x;
  return a;
}
template <int N>
constexpr Jet<N> operator-(Jet<N> a, double x) {
  a.c[0] -= x;
  return a;
}
template <int N>
constexpr Jet<N> operator-(double x, const Jet<N>& a) {
  Jet<N> r = -a;
  r.c[0] += x;
  return r;
}
template <int N>
constexpr Jet<N> operator*(Jet<N> a, double x) {
  return a *= x;
}
template <int N>
constexpr Jet<N> operator*(double x, Jet<N> a) {
  return a *= x;
}
template <int N>
Jet<N> operator/(const Jet<N>& a, double x) {
  if (x == 0.0) fail(ErrorKind::domain, "division by zero");
  Jet<N> r = a;
  return r *= 1.0 / x;
}
template <int N>
Jet<N> operator/(double x, const Jet<N>& a) {
  return Jet<N>(x) / a;
}

// ---- elementary functions ---------------------------------------------------

template <int N>
Jet<N> exp(const Jet<N>& a) {
  Jet<N> e;
  e.c[0] = std::exp(a.c[0]);
  for (int k = 1; k <= N; ++k) {
    double acc = 0.0;
    for (int j = 1; j <= k; ++j) acc += j * a.c[j] * e.c[k - j];
    e.c[k] = acc / k;
  }
  return e;
}

template <int N>
Jet<N> log(const Jet<N>& a) {
  if (!(a.c[0] > 0.0)) fail(ErrorKind::domain, "log of non-positive argument");
  Jet<N> l;
  l.c[0] = std::log(a.c[0]);
  for (int k = 1; k <= N; ++k) {
    double acc = a.c[k];
    for (int j = 1; j < k; ++j) acc -= (j * l.c[j] * a.c[k - j]) / k;
    l.c[k] = acc / a.c[0];
  }
  return l;
}

template <int N>
Jet<N> sqrt(const Jet<N>& a) {
  if (a.c[0] < 0.0) fail(ErrorKind::domain, "sqrt of negative argument");
  if (a.c[0] == 0.0 && N > 0) fail(ErrorKind::domain, "sqrt is not differentiable at 0");
  Jet<N> r;
  r.c[0] = std::sqrt(a.c[0]);
  for (int k = 1; k <= N; ++k) {
    double acc = a.c[k];
    for (int j = 1; j < k; ++j) acc -= r.c[j] * r.c[k - j];
    r.c[k] = acc / (2.0 * r.c[0]);
  }
  return r;
}

namespace detail {
// Shared recurrence for (sin, cos) and (sinh, cosh); sign = -1 / +1 on the cos branch.
template <int N>
void sincos_series(const Jet<N>& a, Jet<N>& s, Jet<N>& co, double sign, bool hyperbolic) {
  s.c[0] = hyperbolic ? std::sinh(a.c[0]) : std::sin(a.c[0]);
  co.c[0] = hyperbolic ? std::cosh(a.c[0]) : std::cos(a.c[0]);
  for (int k = 1; k <= N; ++k) {
    double ss = 0.0, cc = 0.0;
    for (int j = 1; j <= k; ++j) {
      ss += j * a.c[j] * co.c[k - j];
      cc += j * a.c[j] * s.c[k - j];
    }
    s.c[k] = ss / k;
    co.c[k] = sign * cc / k;
  }
}
}  // namespace detail

template <int N>
Jet<N> sin(const Jet<N>& a) {
  Jet<N> s, c;
  detail::sincos_series(a, s, c, -1.0, false);
  return s;
}
template <int N>
Jet<N> cos(const Jet<N>& a) {
  Jet<N> s, c;
  detail::sincos_series(a, s, c, -1.0, false);
  return c;
}
template <int N>
Jet<N> tan(const Jet<N>& a) {
  Jet<N> s, c;
  detail::sincos_series(a, s, c, -1.0, false);
  return s / c;
}
template <int N>
Jet<N> sinh(const Jet<N>& a) {
  Jet<N> s, c;
  detail::sincos_series(a, s, c, 1.0, true);
  return s;
}
template <int N>
Jet<N> cosh(const Jet<N>& a) {
  Jet<N> s, c;
  detail::sincos_series(a, s, c, 1.0, true);
  return c;
}

template <int N>
Jet<N> atan(const Jet<N>& a) {
  // t' = a' g with g = 1/(1+a^2); g_k only needs a up to order k.
  const Jet<N> g = 1.0 / (1.0 + a * a);
  Jet<N> t;
  t.c[0] = std::atan(a.c[0]);
  for (int k = 1; k <= N; ++k) {
    double acc = 0.0;
    for (int j = 1; j <= k; ++j) acc += j * a.c[j] * g.c[k - j];
    t.c[k] = acc / k;
  }
  return t;
}

/// Integer power by repeated multiplication; exact at a zero base.
template <class T>
T ipow(const T& x, int n) {
  if (n < 0) return T(1.0) / ipow(x, -n);
  T result(1.0);
  T base = x;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

// ---- dual numbers -----------------------------------------------------------

template <class T>
struct Dual {
  T a{};  // value
  T b{};  // coefficient of epsilon

  Dual() = default;
  Dual(double x) : a(x), b(0.0) {}  // NOLINT: implicit promotion of constants
  Dual(T value, T eps) : a(std::move(value)), b(std::move(eps)) {}
};

template <class T>
Dual<T> operator-(const Dual<T>& x) {
  return {-x.a, -x.b};
}
template <class T>
Dual<T> operator+(const Dual<T>& x, const Dual<T>& y) {
  return {x.a + y.a, x.b + y.b};
}
template <class T>
Dual<T> operator-(const Dual<T>& x, const Dual<T>& y) {
  return {x.a - y.a, x.b - y.b};
}
template <class T>
Dual<T> operator*(const Dual<T>& x, const Dual<T>& y) {
  return {x.a * y.a, x.a * y.b + x.b * y.a};
}
template <class T>
Dual<T> operator/(const Dual<T>& x, const Dual<T>& y) {
  T q = x.a / y.a;
  return {q, (x.b - q * y.b) / y.a};
}

template <class T>
Dual<T> sin(const Dual<T>& x) {
  using std::cos;
  using std::sin;
  return {sin(x.a), cos(x.a) * x.b};
}
template <class T>
Dual<T> cos(const Dual<T>& x) {
  using std::cos;
  using std::sin;
  return {cos(x.a), -(sin(x.a) * x.b)};
}
template <class T>
Dual<T> tan(const Dual<T>& x) {
  using std::cos;
  using std::tan;
  T c = cos(x.a);
  return {tan(x.a), x.b / (c * c)};
}
template <class T>
Dual<T> exp(const Dual<T>& x) {
  using std::exp;
  T e = exp(x.a);
  return {e, e * x.b};
}
template <class T>
Dual<T> log(const Dual<T>& x) {
  using std::log;
  return {log(x.a), x.b / x.a};
}
template <class T>
Dual<T> sqrt(const Dual<T>& x) {
  using std::sqrt;
  T r = sqrt(x.a);
  return {r, x.b / (2.0 * r)};
}
template <class T>
Dual<T> sinh(const Dual<T>& x) {
  using std::cosh;
  using std::sinh;
  return {sinh(x.a), cosh(x.a) * x.b};
}
template <class T>
Dual<T> cosh(const Dual<T>& x) {
  using std::cosh;
  using std::sinh;
  return {cosh(x.a), sinh(x.a) * x.b};
}
template <class T>
Dual<T> atan(const Dual<T>& x) {
  using std::atan;
  return {atan(x.a), x.b / (1.0 + x.a * x.a)};
}

}  // namespace darboux
