#include "gds/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gds/error.hpp"

namespace gds::oracles {

namespace {

constexpr double kLogSpaceThreshold = 300.0;

// Value carried as sign * exp(log_abs).
struct LogValue {
  double sign;
  double log_abs;
};

double log_cosh(double t) {
  const double a = std::abs(t);
  return a - std::numbers::ln2 + std::log1p(std::exp(-2.0 * a));
}

// c_plus e^t + c_minus e^{-t}, halved, for large |t|.
LogValue half_exp_combination(double c_plus, double c_minus, double t) {
  const double a = std::abs(t);
  const double lead = t > 0.0 ? c_plus : c_minus;
  const double tail = t > 0.0 ? c_minus : c_plus;
  const double m = lead + tail * std::exp(-2.0 * a);
  return {m < 0.0 ? -1.0 : (m > 0.0 ? 1.0 : 0.0), a - std::numbers::ln2 + std::log(std::abs(m))};
}

// (lambda cosh t + sinh t)(3 sinh t + 2 lambda cosh t) as a log value.
LogValue f_product(double lambda, double t) {
  const auto a = half_exp_combination(lambda + 1.0, lambda - 1.0, t);
  const auto b = half_exp_combination(3.0 + 2.0 * lambda, 2.0 * lambda - 3.0, t);
  return {a.sign * b.sign, a.log_abs + b.log_abs};
}

void require_four_dim(const ChartPoint& point) {
  if (point.angles.size() != 3) {
    std::ostringstream msg;
    msg << "closed forms are for n = 3, got " << point.angles.size() << " angles";
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
}

}  // namespace

ClosedForm4D::ClosedForm4D(double lambda, double r) : lambda_(lambda), r_(r) {
  if (!(std::abs(lambda) < 1.0)) throw Error(ErrorCode::InvalidArgument, "closed forms need |lambda| < 1");
  if (!(r > 0.0 && std::isfinite(r))) throw Error(ErrorCode::InvalidArgument, "r must be positive");
}

DeSitterReference::DeSitterReference(int n, double r) : n_(n), r_(r) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  if (!(r > 0.0 && std::isfinite(r))) throw Error(ErrorCode::InvalidArgument, "r must be positive");
}

double q_lambda(const ClosedForm4D& cf, double t) {
  const double lambda = cf.lambda();
  if (std::abs(t) <= kLogSpaceThreshold) {
    return (lambda + std::tanh(t)) * std::cosh(t) * std::cosh(t) / (1.0 - lambda * lambda);
  }
  const double lead = lambda + std::tanh(t);
  if (lead == 0.0) return 0.0;
  const double sign = lead < 0.0 ? -1.0 : 1.0;
  return sign * std::exp(std::log(std::abs(lead)) + 2.0 * log_cosh(t) - std::log1p(-lambda * lambda));
}

double f_lambda(const ClosedForm4D& cf, double t) {
  const double lambda = cf.lambda();
  if (std::abs(t) <= kLogSpaceThreshold) {
    return ((lambda * std::cosh(t) + std::sinh(t)) * (3.0 * std::sinh(t) + 2.0 * lambda * std::cosh(t)) +
            3.0 - 2.0 * lambda * lambda) /
           (1.0 - lambda * lambda);
  }
  const auto p = f_product(lambda, t);
  const double product = p.sign * std::exp(p.log_abs - std::log1p(-lambda * lambda));
  return product + (3.0 - 2.0 * lambda * lambda) / (1.0 - lambda * lambda);
}

SquareMatrix<double> ricci_closed(const ClosedForm4D& cf, const ChartPoint& point) {
  require_four_dim(point);
  const double lambda = cf.lambda();
  const double t = point.t;
  const double f = f_lambda(cf, t);
  const double s_psi = std::sin(point.angles[0]);
  const double s_theta = std::sin(point.angles[1]);
  SquareMatrix<double> ric(4);
  ric(0, 0) = -3.0 * (1.0 + lambda * std::tanh(t));
  ric(1, 1) = f;
  ric(2, 2) = f * s_psi * s_psi;
  ric(3, 3) = f * s_psi * s_psi * s_theta * s_theta;
  return ric;
}

double scalar_closed(const ClosedForm4D& cf, double t) {
  const double lambda = cf.lambda();
  const double r = cf.r();
  if (std::abs(t) <= kLogSpaceThreshold) {
    const double alpha = r * std::exp(lambda * t);
    return 3.0 / (alpha * alpha) *
           ((1.0 + lambda * std::tanh(t)) / (1.0 - lambda * lambda) + f_lambda(cf, t) / (std::cosh(t) * std::cosh(t)));
  }
  // f/cosh^2 with the exponents combined first.
  const double one_minus = 1.0 - lambda * lambda;
  const double lc2 = 2.0 * log_cosh(t);
  const auto p = f_product(lambda, t);
  const double f_over_cosh2 =
      (p.sign * std::exp(p.log_abs - lc2) + (3.0 - 2.0 * lambda * lambda) * std::exp(-lc2)) / one_minus;
  const double bracket = (1.0 + lambda * std::tanh(t)) / one_minus + f_over_cosh2;
  if (bracket == 0.0) return 0.0;
  const double sign = bracket < 0.0 ? -1.0 : 1.0;
  return sign * 3.0 * std::exp(std::log(std::abs(bracket)) - 2.0 * std::log(r) - 2.0 * lambda * t);
}

Rank3<double> christoffel_closed(const ClosedForm4D& cf, const ChartPoint& point) {
  require_four_dim(point);
  geometry::require_interior(point.angles);
  enum : std::size_t { T = 0, PSI = 1, THETA = 2, PHI = 3 };
  const double lambda = cf.lambda();
  const double t = point.t;
  const double psi = point.angles[0];
  const double theta = point.angles[1];
  const double q = q_lambda(cf, t);
  const double rate = lambda + std::tanh(t);

  Rank3<double> gamma(4);
  auto set = [&gamma](std::size_t rho, std::size_t mu, std::size_t nu, double value) {
    gamma(rho, mu, nu) = value;
    gamma(rho, nu, mu) = value;
  };
  set(T, T, T, lambda);
  set(T, PSI, PSI, q);
  set(T, THETA, THETA, q * std::sin(psi) * std::sin(psi));
  set(T, PHI, PHI, q * std::sin(psi) * std::sin(psi) * std::sin(theta) * std::sin(theta));
  set(PSI, T, PSI, rate);
  set(PSI, THETA, THETA, -std::sin(psi) * std::cos(psi));
  set(PSI, PHI, PHI, -std::sin(theta) * std::sin(theta) * std::sin(psi) * std::cos(psi));
  set(THETA, T, THETA, rate);
  set(THETA, PHI, PHI, -std::sin(theta) * std::cos(theta));
  set(THETA, PSI, THETA, std::cos(psi) / std::sin(psi));
  set(PHI, T, PHI, rate);
  set(PHI, PSI, PHI, std::cos(psi) / std::sin(psi));
  set(PHI, THETA, PHI, std::cos(theta) / std::sin(theta));
  return gamma;
}

SquareMatrix<double> desitter_ricci(const DeSitterReference& ref, const SquareMatrix<double>& g) {
  const double k = ref.n() / (ref.r() * ref.r());
  SquareMatrix<double> ric(g.dim());
  for (std::size_t i = 0; i < g.dim(); ++i) {
    for (std::size_t j = 0; j < g.dim(); ++j) ric(i, j) = k * g(i, j);
  }
  return ric;
}

double desitter_scalar(const DeSitterReference& ref) {
  const double n = ref.n();
  return n * (n + 1.0) / (ref.r() * ref.r());
}

double desitter_lambda(const DeSitterReference& ref) {
  const double n = ref.n();
  const double direct = n * (n - 1.0) / (2.0 * ref.r() * ref.r());
  const double from_scalar = (n - 1.0) / (2.0 * (n + 1.0)) * desitter_scalar(ref);
  if (std::abs(direct - from_scalar) > 1e-12 * std::max(1.0, std::abs(direct))) {
    throw Error(ErrorCode::InvalidArgument, "cosmological constant identity does not hold");
  }
  return direct;
}

}  // namespace gds::oracles
