#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>

#include "gds/dual.hpp"
#include "gds/error.hpp"
#include "gds/geometry.hpp"
#include "gds/tensor.hpp"

namespace gds::curvature {

using geometry::ChartPoint;
using geometry::MetricField;

enum class Method { JetExact, FiniteDifference };

struct CurvatureReport {
  Rank3<double> christoffel;  // (rho, mu, nu) -> Gamma^rho_{mu nu}
  SquareMatrix<double> ricci;
  double scalar = 0.0;
  std::optional<double> einstein_residual;
  Method method = Method::JetExact;
};

namespace detail {

inline bool is_zero(double x) { return x == 0.0; }
template <class T>
bool is_zero(const Dual<T>& x) {
  if (!is_zero(x.value)) return false;
  for (const auto& g : x.grad) {
    if (!is_zero(g)) return false;
  }
  return true;
}

}  // namespace detail

/// Inverse metric. Diagonal metrics are inverted entrywise; anything else
/// goes through Gauss-Jordan elimination with partial pivoting on the
/// primal values. Throws DegenerateMetric on a zero pivot.
template <class T>
SquareMatrix<T> invert_metric(const SquareMatrix<T>& g) {
  const std::size_t n = g.dim();
  bool diagonal = true;
  for (std::size_t i = 0; i < n && diagonal; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && !detail::is_zero(g(i, j))) {
        diagonal = false;
        break;
      }
    }
  }
  SquareMatrix<T> inv(n, T(0.0));
  if (diagonal) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!(std::abs(primal(g(i, i))) > 0.0)) {
        throw Error(ErrorCode::DegenerateMetric, "zero diagonal metric component");
      }
      inv(i, i) = T(1.0) / g(i, i);
    }
    return inv;
  }

  SquareMatrix<T> a = g;
  for (std::size_t i = 0; i < n; ++i) inv(i, i) = T(1.0);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(primal(a(r, col))) > std::abs(primal(a(pivot, col)))) pivot = r;
    }
    if (!(std::abs(primal(a(pivot, col))) > 0.0)) {
      throw Error(ErrorCode::DegenerateMetric, "singular metric");
    }
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a(pivot, c), a(col, c));
        std::swap(inv(pivot, c), inv(col, c));
      }
    }
    const T p = a(col, col);
    for (std::size_t c = 0; c < n; ++c) {
      a(col, c) = a(col, c) / p;
      inv(col, c) = inv(col, c) / p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const T f = a(r, col);
      if (detail::is_zero(f)) continue;
      for (std::size_t c = 0; c < n; ++c) {
        a(r, c) = a(r, c) - f * a(col, c);
        inv(r, c) = inv(r, c) - f * inv(col, c);
      }
    }
  }
  return inv;
}

/// Gamma^rho_{mu nu} = 1/2 g^{rho sigma} (d_mu g_{nu sigma} + d_nu g_{mu sigma}
/// - d_sigma g_{mu nu}), from the metric and dg(k, i, j) = d_k g_ij.
template <class T>
Rank3<T> christoffel_from(const SquareMatrix<T>& g, const Rank3<T>& dg) {
  const std::size_t n = g.dim();
  const SquareMatrix<T> inv = invert_metric(g);
  Rank3<T> lowered(n, T(0.0));
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t m = 0; m < n; ++m) {
      for (std::size_t v = 0; v < n; ++v) {
        lowered(s, m, v) = 0.5 * (dg(m, v, s) + dg(v, m, s) - dg(s, m, v));
      }
    }
  }
  Rank3<T> gamma(n, T(0.0));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t s = 0; s < n; ++s) {
      if (detail::is_zero(inv(r, s))) continue;
      for (std::size_t m = 0; m < n; ++m) {
        for (std::size_t v = 0; v < n; ++v) {
          gamma(r, m, v) = gamma(r, m, v) + inv(r, s) * lowered(s, m, v);
        }
      }
    }
  }
  return gamma;
}

/// R_{mu nu} = d_rho Gamma^rho_{nu mu} - d_nu Gamma^rho_{rho mu}
///           + Gamma^rho_{rho lambda} Gamma^lambda_{nu mu}
///           - Gamma^rho_{nu lambda} Gamma^lambda_{rho mu},
/// with dgamma(k, rho, mu, nu) = d_k Gamma^rho_{mu nu}.
SquareMatrix<double> ricci_from(const Rank3<double>& gamma, const Rank4<double>& dgamma);

/// Trace g^{mu nu} R_{mu nu}.
double scalar_from(const SquareMatrix<double>& g, const SquareMatrix<double>& ricci);

/// Max-abs entry of Ric - S g / 2 + Lambda g.
double einstein_residual_from(const SquareMatrix<double>& g, const SquareMatrix<double>& ricci,
                              double scalar, double lambda_const);

Rank3<double> christoffel(const MetricField& field, const ChartPoint& point);

/// d_k Gamma^rho_{mu nu}, by running the Christoffel computation on duals
/// seeded with the exact second metric derivatives.
Rank4<double> christoffel_derivatives(const MetricField& field, const ChartPoint& point);

SquareMatrix<double> ricci(const MetricField& field, const ChartPoint& point);
double scalar_curvature(const MetricField& field, const ChartPoint& point);
double einstein_residual(const MetricField& field, const ChartPoint& point, double lambda_const);

/// Ricci with d Gamma from central differences of the Christoffel symbols;
/// an oracle for the dual route. step must lie in [1e-4, 1e-2].
SquareMatrix<double> ricci_fd_crosscheck(const MetricField& field, const ChartPoint& point,
                                         double step);

CurvatureReport evaluate(const MetricField& field, const ChartPoint& point,
                         std::optional<double> lambda_const = std::nullopt);

}  // namespace gds::curvature
