#include <cmath>

#include <gtest/gtest.h>

#include "gds/dual.hpp"
#include "gds/jet.hpp"

using gds::Dual;
using gds::Jet;
using gds::Jet3;

namespace {

// Central differences of a scalar function, orders 1..3.
template <class F>
double fd1(F f, double x, double h = 1e-4) { return (f(x + h) - f(x - h)) / (2 * h); }
template <class F>
double fd2(F f, double x, double h = 1e-3) { return (f(x + h) - 2 * f(x) + f(x - h)) / (h * h); }
template <class F>
double fd3(F f, double x, double h = 1e-2) {
  return (f(x + 2 * h) - 2 * f(x + h) + 2 * f(x - h) - f(x - 2 * h)) / (2 * h * h * h);
}

}  // namespace

TEST(Jet, VariableAndConstant) {
  const Jet3 x = Jet3::variable(2.0);
  EXPECT_EQ(x[0], 2.0);
  EXPECT_EQ(x[1], 1.0);
  EXPECT_EQ(x[2], 0.0);
  const Jet3 c = Jet3::constant(5.0);
  EXPECT_EQ(c[0], 5.0);
  EXPECT_EQ(c[1], 0.0);
}

TEST(Jet, PolynomialProduct) {
  // x^3 at 2: (8, 12, 12, 6).
  const Jet3 x = Jet3::variable(2.0);
  const Jet3 y = x * x * x;
  EXPECT_DOUBLE_EQ(y[0], 8.0);
  EXPECT_DOUBLE_EQ(y[1], 12.0);
  EXPECT_DOUBLE_EQ(y[2], 12.0);
  EXPECT_DOUBLE_EQ(y[3], 6.0);
}

TEST(Jet, Quotient) {
  // 1/x at 2: (1/2, -1/4, 2/8, -6/16).
  const Jet3 y = 1.0 / Jet3::variable(2.0);
  EXPECT_DOUBLE_EQ(y[0], 0.5);
  EXPECT_DOUBLE_EQ(y[1], -0.25);
  EXPECT_DOUBLE_EQ(y[2], 0.25);
  EXPECT_DOUBLE_EQ(y[3], -0.375);
}

TEST(Jet, ExponentialDerivativesArePowers) {
  const Jet3 y = exp(0.5 * Jet3::variable(0.0));
  EXPECT_DOUBLE_EQ(y[0], 1.0);
  EXPECT_DOUBLE_EQ(y[1], 0.5);
  EXPECT_DOUBLE_EQ(y[2], 0.25);
  EXPECT_DOUBLE_EQ(y[3], 0.125);
}

TEST(Jet, HyperbolicAndTrigIdentities) {
  for (double t : {-3.0, -0.4, 0.0, 0.9, 2.5}) {
    const Jet3 x = Jet3::variable(t);
    const Jet3 one = cosh(x) * cosh(x) - sinh(x) * sinh(x);
    const Jet3 unit = sin(x) * sin(x) + cos(x) * cos(x);
    for (std::size_t k = 0; k <= 3; ++k) {
      EXPECT_NEAR(one[k], k == 0 ? 1.0 : 0.0, 1e-11 * std::cosh(t) * std::cosh(t));
      EXPECT_NEAR(unit[k], k == 0 ? 1.0 : 0.0, 1e-14);
    }
    const Jet3 th = tanh(x);
    const Jet3 ratio = sinh(x) / cosh(x);
    for (std::size_t k = 0; k <= 3; ++k) EXPECT_NEAR(th[k], ratio[k], 1e-13);
  }
}

TEST(Jet, LogisticAndSechMatchFiniteDifferences) {
  auto logistic_d = [](double x) { return 1.0 / (1.0 + std::exp(-x)); };
  auto sech_d = [](double x) { return 1.0 / std::cosh(x); };
  for (double t : {-4.0, -1.0, 0.3, 2.0}) {
    const Jet3 l = logistic(Jet3::variable(t));
    const Jet3 s = sech(Jet3::variable(t));
    EXPECT_NEAR(l[0], logistic_d(t), 1e-15);
    EXPECT_NEAR(l[1], fd1(logistic_d, t), 1e-8);
    EXPECT_NEAR(l[2], fd2(logistic_d, t), 1e-5);
    EXPECT_NEAR(l[3], fd3(logistic_d, t), 1e-3);
    EXPECT_NEAR(s[1], fd1(sech_d, t), 1e-8);
    EXPECT_NEAR(s[2], fd2(sech_d, t), 1e-5);
    EXPECT_NEAR(s[3], fd3(sech_d, t), 1e-3);
  }
}

TEST(Jet, LogisticTailsStayAccurate) {
  const Jet3 far_left = logistic(Jet3::variable(-40.0));
  EXPECT_NEAR(far_left[0] / std::exp(-40.0), 1.0, 1e-14);
  EXPECT_NEAR(far_left[1] / std::exp(-40.0), 1.0, 1e-14);
}

TEST(Jet, CompositionMatchesFiniteDifferences) {
  auto f = [](double x) { return std::exp(std::sinh(x)) / (1.0 + x * x); };
  for (double t : {-1.2, 0.0, 0.7}) {
    const Jet3 x = Jet3::variable(t);
    const Jet3 y = exp(sinh(x)) / (1.0 + x * x);
    EXPECT_NEAR(y[0], f(t), 1e-14);
    EXPECT_NEAR(y[1], fd1(f, t), 1e-7);
    EXPECT_NEAR(y[2], fd2(f, t), 1e-4);
    EXPECT_NEAR(y[3], fd3(f, t), 1e-2);
  }
}

TEST(Jet, DerivativeAndTruncate) {
  const Jet<4> x = Jet<4>::variable(1.0);
  const Jet<4> y = x * x * x * x;  // (1, 4, 12, 24, 24)
  const Jet3 dy = y.derivative();
  EXPECT_DOUBLE_EQ(dy[0], 4.0);
  EXPECT_DOUBLE_EQ(dy[3], 24.0);
  const Jet3 ty = y.truncate<3>();
  EXPECT_DOUBLE_EQ(ty[0], 1.0);
  EXPECT_DOUBLE_EQ(ty[3], 24.0);
}

TEST(Dual, FirstOrderGradient) {
  // f(x, y) = x^2 y + sin y at (3, 0.5).
  const auto x = gds::seed<Dual<double>>(3.0, 0, 2);
  const auto y = gds::seed<Dual<double>>(0.5, 1, 2);
  const auto f = x * x * y + sin(y);
  EXPECT_DOUBLE_EQ(f.value, 4.5 + std::sin(0.5));
  EXPECT_DOUBLE_EQ(f.d(0), 3.0);
  EXPECT_DOUBLE_EQ(f.d(1), 9.0 + std::cos(0.5));
}

TEST(Dual, NestedGivesExactHessian) {
  using D2 = Dual<Dual<double>>;
  const auto x = gds::seed<D2>(3.0, 0, 2);
  const auto y = gds::seed<D2>(0.5, 1, 2);
  const auto f = x * x * y + sin(y);
  EXPECT_DOUBLE_EQ(gds::primal(f), 4.5 + std::sin(0.5));
  EXPECT_DOUBLE_EQ(f.d(0).d(0), 2.0 * 0.5);
  EXPECT_DOUBLE_EQ(f.d(0).d(1), 6.0);
  EXPECT_DOUBLE_EQ(f.d(1).d(0), 6.0);
  EXPECT_DOUBLE_EQ(f.d(1).d(1), -std::sin(0.5));
}

TEST(Dual, LiftCarriesJetChannels) {
  using D2 = Dual<Dual<double>>;
  // g(t) = e^{2t}: lift the jet and read second derivative through nesting.
  const double t0 = 0.3;
  const Jet3 g = exp(2.0 * Jet3::variable(t0));
  const auto t = gds::seed<D2>(t0, 0, 1);
  const auto lifted = gds::lift(g, t);
  EXPECT_DOUBLE_EQ(gds::primal(lifted), std::exp(0.6));
  EXPECT_NEAR(lifted.d(0).d(0), 4.0 * std::exp(0.6), 1e-13);
  EXPECT_NEAR(lifted.value.d(0), 2.0 * std::exp(0.6), 1e-14);
}
