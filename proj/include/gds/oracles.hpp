#pragma once

#include "gds/geometry.hpp"
#include "gds/tensor.hpp"

namespace gds::oracles {

using geometry::ChartPoint;

/// Exponential profile alpha = r e^{lambda t} on R x S^3, |lambda| < 1.
/// Chart order (t, psi, theta, phi).
class ClosedForm4D {
 public:
  ClosedForm4D(double lambda, double r);

  double lambda() const { return lambda_; }
  double r() const { return r_; }

 private:
  double lambda_;
  double r_;
};

/// Round de Sitter space dS_{n+1}(r).
class DeSitterReference {
 public:
  DeSitterReference(int n, double r);

  int n() const { return n_; }
  double r() const { return r_; }

 private:
  int n_;
  double r_;
};

/// (lambda + tanh t) cosh^2 t / (1 - lambda^2).
double q_lambda(const ClosedForm4D& cf, double t);

/// ((lambda cosh t + sinh t)(3 sinh t + 2 lambda cosh t) + 3 - 2 lambda^2) / (1 - lambda^2).
double f_lambda(const ClosedForm4D& cf, double t);

/// diag(-3(1 + lambda tanh t), f, f sin^2 psi, f sin^2 psi sin^2 theta).
SquareMatrix<double> ricci_closed(const ClosedForm4D& cf, const ChartPoint& point);

/// 3/alpha^2 ((1 + lambda tanh t)/(1 - lambda^2) + f_lambda(t)/cosh^2 t).
double scalar_closed(const ClosedForm4D& cf, double t);

/// Full Gamma^rho_{mu nu}, (rho, mu, nu) indexed, symmetric in the lower pair.
Rank3<double> christoffel_closed(const ClosedForm4D& cf, const ChartPoint& point);

/// (n / r^2) g.
SquareMatrix<double> desitter_ricci(const DeSitterReference& ref, const SquareMatrix<double>& g);

/// n(n+1)/r^2.
double desitter_scalar(const DeSitterReference& ref);

/// n(n-1)/(2 r^2), cross-checked against (n-1)/(2(n+1)) S.
double desitter_lambda(const DeSitterReference& ref);

}  // namespace gds::oracles
