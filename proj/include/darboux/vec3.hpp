#pragma once

#include <darboux/jet.hpp>

#include <cmath>
#include <utility>

namespace darboux {

// Three components of any scalar-like type (double, Jet<N>, Dual<...>).
template <class T>
struct Vec3T {
  T x{}, y{}, z{};

  constexpr Vec3T() = default;
  constexpr Vec3T(T x_, T y_, T z_) : x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {}
};

using Vec3 = Vec3T<double>;

template <class A, class B>
auto operator+(const Vec3T<A>& a, const Vec3T<B>& b) -> Vec3T<decltype(a.x + b.x)> {
  return {a.x + b.x, a.y + b.y, a.z + b.z};
}
template <class A, class B>
auto operator-(const Vec3T<A>& a, const Vec3T<B>& b) -> Vec3T<decltype(a.x - b.x)> {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}
template <class A>
Vec3T<A> operator-(const Vec3T<A>& a) {
  return {-a.x, -a.y, -a.z};
}
template <class A, class S>
auto operator*(const S& k, const Vec3T<A>& a) -> Vec3T<decltype(k * a.x)> {
  return {k * a.x, k * a.y, k * a.z};
}
template <class A, class S>
auto operator*(const Vec3T<A>& a, const S& k) -> Vec3T<decltype(a.x * k)> {
  return {a.x * k, a.y * k, a.z * k};
}
template <class A, class S>
auto operator/(const Vec3T<A>& a, const S& k) -> Vec3T<decltype(a.x / k)> {
  return {a.x / k, a.y / k, a.z / k};
}

template <class A, class B>
auto dot(const Vec3T<A>& a, const Vec3T<B>& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}
template <class A, class B>
auto cross(const Vec3T<A>& a, const Vec3T<B>& b) -> Vec3T<decltype(a.y * b.z - a.z * b.y)> {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalized(const Vec3& a) { return a / norm(a); }
inline double det(const Vec3& a, const Vec3& b, const Vec3& c) { return dot(a, cross(b, c)); }

// ---- jet vectors ------------------------------------------------------------

template <int N>
using JetVec = Vec3T<Jet<N>>;

template <int N>
Vec3 value(const JetVec<N>& v) {
  return {v.x.c[0], v.y.c[0], v.z.c[0]};
}

/// k-th derivative vector.
template <int N>
Vec3 derivative(const JetVec<N>& v, int k) {
  return {v.x.derivative(k), v.y.derivative(k), v.z.derivative(k)};
}

template <int N>
JetVec<N - 1> derivative(const JetVec<N>& v) {
  return {derivative(v.x), derivative(v.y), derivative(v.z)};
}

template <int M, int N>
JetVec<M> truncate(const JetVec<N>& v) {
  return {truncate<M>(v.x), truncate<M>(v.y), truncate<M>(v.z)};
}

template <int N>
JetVec<N> constant_jet(const Vec3& v) {
  return {Jet<N>(v.x), Jet<N>(v.y), Jet<N>(v.z)};
}

template <int N>
JetVec<N> normalized(const JetVec<N>& v) {
  const Jet<N> len = sqrt(dot(v, v));
  return {v.x / len, v.y / len, v.z / len};
}

}  // namespace darboux
