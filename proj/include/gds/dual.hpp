#pragma once

#include <cmath>
#include <cstddef>
#include <type_traits>
#include <vector>

#include "gds/jet.hpp"

namespace gds {

/// First-order forward-mode number over a runtime number of directions.
///
/// Dual<double> carries a value and its gradient; Dual<Dual<double>> nests
/// the construction once more and so carries first and second derivatives.
/// An empty gradient stands for an all-zero one (constants).
template <class T>
struct Dual {
  T value{};
  std::vector<T> grad;

  Dual() = default;
  Dual(T v) : value(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  Dual(T v, std::vector<T> g) : value(std::move(v)), grad(std::move(g)) {}

  const T& d(std::size_t k) const {
    static const T zero{};
    return k < grad.size() ? grad[k] : zero;
  }
};

template <class T>
struct is_dual : std::false_type {};
template <class T>
struct is_dual<Dual<T>> : std::true_type {};

/// Innermost real value of a (possibly nested) dual.
inline double primal(double x) { return x; }
template <class T>
double primal(const Dual<T>& x) {
  return primal(x.value);
}

/// Number of nested Dual layers: 0 for double.
template <class T>
struct dual_depth : std::integral_constant<std::size_t, 0> {};
template <class T>
struct dual_depth<Dual<T>> : std::integral_constant<std::size_t, 1 + dual_depth<T>::value> {};

/// Independent coordinate k of a `dim`-dimensional chart, seeded at every
/// nesting level so that derivatives of all orders up to the depth appear.
template <class T>
T seed(double x0, std::size_t k, std::size_t dim) {
  if constexpr (std::is_same_v<T, double>) {
    (void)k;
    (void)dim;
    return x0;
  } else {
    using Inner = decltype(T{}.value);
    T out(seed<Inner>(x0, k, dim));
    out.grad.assign(dim, Inner{});
    out.grad[k] = Inner(1.0);
    return out;
  }
}

template <class T>
T constant_of(double c) {
  return T(c);
}

namespace detail {

template <class T>
std::vector<T> combine(const std::vector<T>& a, const std::vector<T>& b, double sa, double sb) {
  const std::size_t n = a.size() > b.size() ? a.size() : b.size();
  std::vector<T> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    T term{};
    if (k < a.size()) term = term + a[k] * sa;
    if (k < b.size()) term = term + b[k] * sb;
    out[k] = term;
  }
  return out;
}

}  // namespace detail

template <class T>
Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) {
  return {a.value + b.value, detail::combine(a.grad, b.grad, 1.0, 1.0)};
}
template <class T>
Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) {
  return {a.value - b.value, detail::combine(a.grad, b.grad, 1.0, -1.0)};
}
template <class T>
Dual<T> operator-(const Dual<T>& a) {
  return a * -1.0;
}
template <class T>
Dual<T> operator*(const Dual<T>& a, double s) {
  Dual<T> out(a.value * s);
  out.grad.reserve(a.grad.size());
  for (const auto& g : a.grad) out.grad.push_back(g * s);
  return out;
}
template <class T>
Dual<T> operator*(double s, const Dual<T>& a) {
  return a * s;
}
template <class T>
Dual<T> operator+(const Dual<T>& a, double s) {
  return {a.value + s, a.grad};
}
template <class T>
Dual<T> operator+(double s, const Dual<T>& a) {
  return a + s;
}
template <class T>
Dual<T> operator-(const Dual<T>& a, double s) {
  return {a.value - s, a.grad};
}
template <class T>
Dual<T> operator-(double s, const Dual<T>& a) {
  return -a + s;
}

template <class T>
Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) {
  const std::size_t n = a.grad.size() > b.grad.size() ? a.grad.size() : b.grad.size();
  Dual<T> out(a.value * b.value);
  out.grad.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    T term{};
    if (k < a.grad.size()) term = term + a.grad[k] * b.value;
    if (k < b.grad.size()) term = term + a.value * b.grad[k];
    out.grad[k] = term;
  }
  return out;
}

template <class T>
Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
  // (a/b)' = (a' - q b') / b
  Dual<T> out(a.value / b.value);
  const std::size_t n = a.grad.size() > b.grad.size() ? a.grad.size() : b.grad.size();
  out.grad.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    T num{};
    if (k < a.grad.size()) num = num + a.grad[k];
    if (k < b.grad.size()) num = num - out.value * b.grad[k];
    out.grad[k] = num / b.value;
  }
  return out;
}
template <class T>
Dual<T> operator/(double s, const Dual<T>& b) {
  return Dual<T>(T(s)) / b;
}
template <class T>
Dual<T> operator/(const Dual<T>& a, double s) {
  return a * (1.0 / s);
}

/// Evaluates the function described by `f` (a jet expanded at primal(x))
/// on the dual number x. Requires the jet order to cover the nesting depth.
template <std::size_t N>
double lift(const Jet<N>& f, double /*x*/) {
  return f[0];
}

template <std::size_t N, class T>
Dual<T> lift(const Jet<N>& f, const Dual<T>& x) {
  static_assert(N >= dual_depth<Dual<T>>::value, "jet order below dual nesting depth");
  Dual<T> out(lift(f, x.value));
  if (x.grad.empty()) return out;
  const auto fprime = f.derivative();
  const T slope = lift(fprime, x.value);
  out.grad.reserve(x.grad.size());
  for (const auto& g : x.grad) out.grad.push_back(slope * g);
  return out;
}

template <class T>
Dual<T> sin(const Dual<T>& x) {
  return lift(gds::sin(Jet3::variable(primal(x))), x);
}
template <class T>
Dual<T> cos(const Dual<T>& x) {
  return lift(gds::cos(Jet3::variable(primal(x))), x);
}
template <class T>
Dual<T> sinh(const Dual<T>& x) {
  return lift(gds::sinh(Jet3::variable(primal(x))), x);
}
template <class T>
Dual<T> cosh(const Dual<T>& x) {
  return lift(gds::cosh(Jet3::variable(primal(x))), x);
}

}  // namespace gds
