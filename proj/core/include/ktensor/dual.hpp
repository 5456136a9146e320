#pragma once

// Forward-mode dual numbers. Nesting Dual<Dual<double>> gives mixed second
// derivatives; the chart backend goes one level deeper for derivatives of Ricci.

#include <cmath>
#include <cstddef>
#include <type_traits>
#include <vector>

namespace ktensor {

template <class T>
struct Dual {
  T v{};
  T d{};

  constexpr Dual() = default;
  constexpr Dual(double x) : v(x), d(0.0) {}  // NOLINT: implicit on purpose
  constexpr Dual(const T& value, const T& deriv) : v(value), d(deriv) {}

  Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
  Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
  Dual& operator*=(const Dual& o) { d = d * o.v + v * o.d; v *= o.v; return *this; }
  Dual& operator/=(const Dual& o) {
    T inv = T(1.0) / o.v;
    v *= inv;
    d = (d - v * o.d) * inv;
    return *this;
  }
  Dual& operator*=(double s) { v *= s; d *= s; return *this; }
  Dual& operator/=(double s) { v /= s; d /= s; return *this; }
  Dual& operator+=(double s) { v += s; return *this; }
  Dual& operator-=(double s) { v -= s; return *this; }
};

using D1 = Dual<double>;
using D2 = Dual<D1>;
using D3 = Dual<D2>;

template <class T> struct is_dual : std::false_type {};
template <class T> struct is_dual<Dual<T>> : std::true_type {};

template <class T> Dual<T> operator-(const Dual<T>& a) { return {-a.v, -a.d}; }
template <class T> Dual<T> operator+(Dual<T> a, const Dual<T>& b) { return a += b; }
template <class T> Dual<T> operator-(Dual<T> a, const Dual<T>& b) { return a -= b; }
template <class T> Dual<T> operator*(Dual<T> a, const Dual<T>& b) { return a *= b; }
template <class T> Dual<T> operator/(Dual<T> a, const Dual<T>& b) { return a /= b; }

template <class T> Dual<T> operator+(Dual<T> a, double b) { return a += b; }
template <class T> Dual<T> operator+(double a, Dual<T> b) { return b += a; }
template <class T> Dual<T> operator-(Dual<T> a, double b) { return a -= b; }
template <class T> Dual<T> operator-(double a, const Dual<T>& b) { return {a - b.v, -b.d}; }
template <class T> Dual<T> operator*(Dual<T> a, double b) { return a *= b; }
template <class T> Dual<T> operator*(double a, Dual<T> b) { return b *= a; }
template <class T> Dual<T> operator/(Dual<T> a, double b) { return a /= b; }
template <class T> Dual<T> operator/(double a, const Dual<T>& b) { return Dual<T>(a) / b; }

template <class T> bool operator<(const Dual<T>& a, const Dual<T>& b) { return a.v < b.v; }
template <class T> bool operator>(const Dual<T>& a, const Dual<T>& b) { return a.v > b.v; }
template <class T> bool operator<(const Dual<T>& a, double b) { return a.v < b; }
template <class T> bool operator>(const Dual<T>& a, double b) { return a.v > b; }

inline double value_of(double x) { return x; }
template <class T> double value_of(const Dual<T>& x) { return value_of(x.v); }

template <class T> Dual<T> sqrt(const Dual<T>& a) {
  using std::sqrt;
  T s = sqrt(a.v);
  return {s, a.d / (2.0 * s)};
}
template <class T> Dual<T> exp(const Dual<T>& a) {
  using std::exp;
  T e = exp(a.v);
  return {e, a.d * e};
}
template <class T> Dual<T> log(const Dual<T>& a) {
  using std::log;
  return {log(a.v), a.d / a.v};
}
template <class T> Dual<T> sin(const Dual<T>& a) {
  using std::sin;
  using std::cos;
  return {sin(a.v), a.d * cos(a.v)};
}
template <class T> Dual<T> cos(const Dual<T>& a) {
  using std::sin;
  using std::cos;
  return {cos(a.v), -(a.d * sin(a.v))};
}
template <class T> Dual<T> abs(const Dual<T>& a) { return value_of(a) < 0.0 ? -a : a; }

// Point with coordinate a seeded for differentiation.
template <class S>
std::vector<Dual<S>> seed_direction(const std::vector<S>& x, std::size_t a) {
  std::vector<Dual<S>> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = Dual<S>(x[i], S(i == a ? 1.0 : 0.0));
  return y;
}

template <class S>
std::vector<Dual<S>> lift_point(const std::vector<S>& x) {
  std::vector<Dual<S>> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = Dual<S>(x[i], S(0.0));
  return y;
}

// Demote a point from any scalar level to plain doubles.
template <class S>
std::vector<double> values_of(const std::vector<S>& x) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = value_of(x[i]);
  return out;
}

}  // namespace ktensor
