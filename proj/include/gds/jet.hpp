#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace gds {

namespace detail {

constexpr double binomial(std::size_t n, std::size_t k) {
  double result = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    result = result * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return result;
}

}  // namespace detail

/// Univariate Taylor jet: the value of a scalar function of one variable
/// together with its derivatives of order 1..Order at a fixed point.
///
/// Channels hold plain derivatives (not Taylor coefficients), so channel k
/// of a product is given by the Leibniz rule and channel k of a composition
/// by the first-order ODE the elementary function satisfies. All channels
/// are exact up to rounding.
template <std::size_t Order>
class Jet {
 public:
  static constexpr std::size_t order = Order;

  constexpr Jet() = default;
  constexpr explicit Jet(const std::array<double, Order + 1>& channels)
      : d_(channels) {}

  static constexpr Jet constant(double c) {
    Jet j;
    j.d_[0] = c;
    return j;
  }

  /// The identity function expanded at x0.
  static constexpr Jet variable(double x0) {
    Jet j;
    j.d_[0] = x0;
    if constexpr (Order >= 1) j.d_[1] = 1.0;
    return j;
  }

  constexpr double value() const { return d_[0]; }
  constexpr double operator[](std::size_t k) const { return d_[k]; }
  constexpr double& operator[](std::size_t k) { return d_[k]; }
  constexpr const std::array<double, Order + 1>& channels() const { return d_; }

  /// Jet of the first derivative; loses the top channel.
  constexpr Jet<Order - 1> derivative() const
    requires(Order >= 1)
  {
    Jet<Order - 1> out;
    for (std::size_t k = 0; k < Order; ++k) out[k] = d_[k + 1];
    return out;
  }

  template <std::size_t Lower>
  constexpr Jet<Lower> truncate() const
    requires(Lower <= Order)
  {
    Jet<Lower> out;
    for (std::size_t k = 0; k <= Lower; ++k) out[k] = d_[k];
    return out;
  }

  constexpr Jet& operator+=(const Jet& o) {
    for (std::size_t k = 0; k <= Order; ++k) d_[k] += o.d_[k];
    return *this;
  }
  constexpr Jet& operator-=(const Jet& o) {
    for (std::size_t k = 0; k <= Order; ++k) d_[k] -= o.d_[k];
    return *this;
  }
  constexpr Jet& operator*=(double s) {
    for (auto& c : d_) c *= s;
    return *this;
  }

 private:
  std::array<double, Order + 1> d_{};
};

using Jet3 = Jet<3>;

template <std::size_t N>
constexpr Jet<N> operator+(Jet<N> a, const Jet<N>& b) {
  return a += b;
}
template <std::size_t N>
constexpr Jet<N> operator-(Jet<N> a, const Jet<N>& b) {
  return a -= b;
}
template <std::size_t N>
constexpr Jet<N> operator-(Jet<N> a) {
  return a *= -1.0;
}
template <std::size_t N>
constexpr Jet<N> operator*(Jet<N> a, double s) {
  return a *= s;
}
template <std::size_t N>
constexpr Jet<N> operator*(double s, Jet<N> a) {
  return a *= s;
}
template <std::size_t N>
constexpr Jet<N> operator+(Jet<N> a, double s) {
  a[0] += s;
  return a;
}
template <std::size_t N>
constexpr Jet<N> operator+(double s, Jet<N> a) {
  a[0] += s;
  return a;
}
template <std::size_t N>
constexpr Jet<N> operator-(Jet<N> a, double s) {
  a[0] -= s;
  return a;
}
template <std::size_t N>
constexpr Jet<N> operator-(double s, const Jet<N>& a) {
  return s + (-a);
}

template <std::size_t N>
constexpr Jet<N> operator*(const Jet<N>& a, const Jet<N>& b) {
  Jet<N> out;
  for (std::size_t k = 0; k <= N; ++k) {
    double sum = 0.0;
    for (std::size_t j = 0; j <= k; ++j) {
      sum += detail::binomial(k, j) * a[j] * b[k - j];
    }
    out[k] = sum;
  }
  return out;
}

// q = f / g  =>  f = q g, solved channel by channel.
template <std::size_t N>
constexpr Jet<N> operator/(const Jet<N>& f, const Jet<N>& g) {
  Jet<N> q;
  for (std::size_t k = 0; k <= N; ++k) {
    double sum = f[k];
    for (std::size_t j = 0; j < k; ++j) {
      sum -= detail::binomial(k, j) * q[j] * g[k - j];
    }
    q[k] = sum / g[0];
  }
  return q;
}

template <std::size_t N>
constexpr Jet<N> operator/(double s, const Jet<N>& g) {
  return Jet<N>::constant(s) / g;
}
template <std::size_t N>
constexpr Jet<N> operator/(Jet<N> f, double s) {
  return f *= (1.0 / s);
}

namespace detail {

// Channel k of y where y' = x' * w and w is known through channel k-1.
template <std::size_t N>
constexpr double chain_channel(const Jet<N>& x, const Jet<N>& w, std::size_t k) {
  double sum = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    sum += binomial(k - 1, j) * x[j + 1] * w[k - 1 - j];
  }
  return sum;
}

}  // namespace detail

template <std::size_t N>
Jet<N> exp(const Jet<N>& x) {
  Jet<N> y;
  y[0] = std::exp(x[0]);
  for (std::size_t k = 1; k <= N; ++k) y[k] = detail::chain_channel(x, y, k);
  return y;
}

template <std::size_t N>
Jet<N> sinh(const Jet<N>& x) {
  Jet<N> s;
  Jet<N> c;
  s[0] = std::sinh(x[0]);
  c[0] = std::cosh(x[0]);
  for (std::size_t k = 1; k <= N; ++k) {
    s[k] = detail::chain_channel(x, c, k);
    c[k] = detail::chain_channel(x, s, k);
  }
  return s;
}

template <std::size_t N>
Jet<N> cosh(const Jet<N>& x) {
  Jet<N> s;
  Jet<N> c;
  s[0] = std::sinh(x[0]);
  c[0] = std::cosh(x[0]);
  for (std::size_t k = 1; k <= N; ++k) {
    s[k] = detail::chain_channel(x, c, k);
    c[k] = detail::chain_channel(x, s, k);
  }
  return c;
}

template <std::size_t N>
Jet<N> sin(const Jet<N>& x) {
  Jet<N> s;
  Jet<N> c;
  s[0] = std::sin(x[0]);
  c[0] = std::cos(x[0]);
  for (std::size_t k = 1; k <= N; ++k) {
    s[k] = detail::chain_channel(x, c, k);
    c[k] = -detail::chain_channel(x, s, k);
  }
  return s;
}

template <std::size_t N>
Jet<N> cos(const Jet<N>& x) {
  Jet<N> s;
  Jet<N> c;
  s[0] = std::sin(x[0]);
  c[0] = std::cos(x[0]);
  for (std::size_t k = 1; k <= N; ++k) {
    s[k] = detail::chain_channel(x, c, k);
    c[k] = -detail::chain_channel(x, s, k);
  }
  return c;
}

// y' = x' (1 - y^2); the factor 1 - y^2 is seeded as sech^2 to keep its
// relative accuracy when |x| is large.
template <std::size_t N>
Jet<N> tanh(const Jet<N>& x) {
  Jet<N> y;
  Jet<N> w;
  y[0] = std::tanh(x[0]);
  const double c = std::cosh(x[0]);
  w[0] = 1.0 / (c * c);
  for (std::size_t k = 1; k <= N; ++k) {
    y[k] = detail::chain_channel(x, w, k);
    double sq = 0.0;
    for (std::size_t i = 0; i <= k; ++i) sq += detail::binomial(k, i) * y[i] * y[k - i];
    w[k] = -sq;
  }
  return y;
}

/// Logistic sigmoid 1 / (1 + e^{-x}); y' = x' y (1 - y).
template <std::size_t N>
Jet<N> logistic(const Jet<N>& x) {
  auto sigma = [](double v) {
    if (v >= 0.0) return 1.0 / (1.0 + std::exp(-v));
    const double e = std::exp(v);
    return e / (1.0 + e);
  };
  Jet<N> y;
  Jet<N> w;
  y[0] = sigma(x[0]);
  w[0] = y[0] * sigma(-x[0]);
  for (std::size_t k = 1; k <= N; ++k) {
    y[k] = detail::chain_channel(x, w, k);
    double sq = 0.0;
    for (std::size_t i = 0; i <= k; ++i) sq += detail::binomial(k, i) * y[i] * y[k - i];
    w[k] = y[k] - sq;
  }
  return y;
}

template <std::size_t N>
Jet<N> sech(const Jet<N>& x) {
  return 1.0 / cosh(x);
}

}  // namespace gds
