#include "gds/curvature.hpp"

#include <algorithm>
#include <sstream>

namespace gds::curvature {

namespace {

void require_curvature_point(const MetricField& field, const ChartPoint& point) {
  if (point.angles.size() != static_cast<std::size_t>(field.n())) {
    throw Error(ErrorCode::InvalidArgument, "chart point dimension does not match the field");
  }
  geometry::require_interior(point.angles);
  if (field.is_degenerate(point.t)) {
    std::ostringstream msg;
    msg << "g_tt vanishes at t=" << point.t << " (null hypersurface)";
    throw Error(ErrorCode::DegenerateMetric, msg.str());
  }
}

Rank3<double> christoffel_unchecked(const MetricField& field, const ChartPoint& point) {
  const auto jet = field.evaluate(point);
  return christoffel_from(jet.g, jet.dg);
}

}  // namespace

SquareMatrix<double> ricci_from(const Rank3<double>& gamma, const Rank4<double>& dgamma) {
  const std::size_t n = gamma.dim();
  SquareMatrix<double> ric(n);
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t v = 0; v < n; ++v) {
      double sum = 0.0;
      for (std::size_t r = 0; r < n; ++r) {
        sum += dgamma(r, r, v, m) - dgamma(v, r, r, m);
        for (std::size_t l = 0; l < n; ++l) {
          sum += gamma(r, r, l) * gamma(l, v, m) - gamma(r, v, l) * gamma(l, r, m);
        }
      }
      ric(m, v) = sum;
    }
  }
  return ric;
}

double scalar_from(const SquareMatrix<double>& g, const SquareMatrix<double>& ricci) {
  const auto inv = invert_metric(g);
  double s = 0.0;
  for (std::size_t m = 0; m < g.dim(); ++m) {
    for (std::size_t v = 0; v < g.dim(); ++v) s += inv(m, v) * ricci(m, v);
  }
  return s;
}

double einstein_residual_from(const SquareMatrix<double>& g, const SquareMatrix<double>& ricci,
                              double scalar, double lambda_const) {
  double worst = 0.0;
  for (std::size_t m = 0; m < g.dim(); ++m) {
    for (std::size_t v = 0; v < g.dim(); ++v) {
      const double e = ricci(m, v) - 0.5 * scalar * g(m, v) + lambda_const * g(m, v);
      worst = std::max(worst, std::abs(e));
    }
  }
  return worst;
}

Rank3<double> christoffel(const MetricField& field, const ChartPoint& point) {
  require_curvature_point(field, point);
  return christoffel_unchecked(field, point);
}

Rank4<double> christoffel_derivatives(const MetricField& field, const ChartPoint& point) {
  require_curvature_point(field, point);
  const std::size_t n = field.dim();
  const auto comps = field.components(point);

  // Outer layer of each component: value = (g, grad g), grad[k] = (d_k g, grad d_k g).
  SquareMatrix<Dual<double>> g(n);
  Rank3<Dual<double>> dg(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      g(i, j) = comps(i, j).value;
      for (std::size_t k = 0; k < n; ++k) dg(k, i, j) = comps(i, j).d(k);
    }
  }
  const auto gamma = christoffel_from(g, dg);
  Rank4<double> out(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t m = 0; m < n; ++m) {
      for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t k = 0; k < n; ++k) out(k, r, m, v) = gamma(r, m, v).d(k);
      }
    }
  }
  return out;
}

SquareMatrix<double> ricci(const MetricField& field, const ChartPoint& point) {
  const auto gamma = christoffel(field, point);
  return ricci_from(gamma, christoffel_derivatives(field, point));
}

double scalar_curvature(const MetricField& field, const ChartPoint& point) {
  const auto ric = ricci(field, point);
  return scalar_from(field.metric(point), ric);
}

double einstein_residual(const MetricField& field, const ChartPoint& point, double lambda_const) {
  const auto ric = ricci(field, point);
  const auto g = field.metric(point);
  return einstein_residual_from(g, ric, scalar_from(g, ric), lambda_const);
}

SquareMatrix<double> ricci_fd_crosscheck(const MetricField& field, const ChartPoint& point,
                                         double step) {
  if (!(step >= 1e-4 && step <= 1e-2)) {
    throw Error(ErrorCode::InvalidArgument, "finite-difference step must lie in [1e-4, 1e-2]");
  }
  const auto gamma = christoffel(field, point);
  const std::size_t n = field.dim();
  Rank4<double> dgamma(n);
  for (std::size_t k = 0; k < n; ++k) {
    ChartPoint plus = point;
    ChartPoint minus = point;
    if (k == 0) {
      plus.t += step;
      minus.t -= step;
    } else {
      plus.angles[k - 1] += step;
      minus.angles[k - 1] -= step;
    }
    const auto gp = christoffel(field, plus);
    const auto gm = christoffel(field, minus);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t m = 0; m < n; ++m) {
        for (std::size_t v = 0; v < n; ++v) {
          dgamma(k, r, m, v) = (gp(r, m, v) - gm(r, m, v)) / (2.0 * step);
        }
      }
    }
  }
  return ricci_from(gamma, dgamma);
}

CurvatureReport evaluate(const MetricField& field, const ChartPoint& point,
                         std::optional<double> lambda_const) {
  CurvatureReport report;
  report.christoffel = christoffel(field, point);
  report.ricci = ricci_from(report.christoffel, christoffel_derivatives(field, point));
  const auto g = field.metric(point);
  report.scalar = scalar_from(g, report.ricci);
  if (lambda_const) {
    report.einstein_residual = einstein_residual_from(g, report.ricci, report.scalar, *lambda_const);
  }
  report.method = Method::JetExact;
  return report;
}

}  // namespace gds::curvature
