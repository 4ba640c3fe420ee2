#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gds/dual.hpp"
#include "gds/grid.hpp"
#include "gds/profiles.hpp"
#include "gds/tensor.hpp"

namespace gds::geometry {

/// Nested hyperspherical chart on S^n: phi_1..phi_{n-1} in (0, pi),
/// phi_n in [0, 2 pi). For n = 3 the angles are (psi, theta, phi).
inline constexpr double kChartMargin = 0.05;

/// Chart coordinates (t, phi_1, ..., phi_n) on R x S^n.
struct ChartPoint {
  double t = 0.0;
  std::vector<double> angles;

  std::size_t n() const { return angles.size(); }
};

/// Minkowski coordinates (x^0, ..., x^{n+1}).
struct AmbientPoint {
  std::vector<double> x;
};

/// Metric components in chart order (t, phi_1, ..., phi_n).
using MetricValue = SquareMatrix<double>;

/// Metric with exact first and second coordinate derivatives:
/// dg(k, i, j) = d_k g_ij, ddg(k, l, i, j) = d_k d_l g_ij.
struct MetricJet {
  MetricValue g;
  Rank3<double> dg;
  Rank4<double> ddg;
};

/// Throws OutOfChart if one of phi_1..phi_{n-1} lies within `margin` of
/// 0 or pi, or if phi_n lies outside [0, 2 pi).
void require_interior(std::span<const double> angles, double margin = kChartMargin);

/// Diagonal n x n round metric; entry i is the product of sin^2 phi_j over
/// j < i. Accepts either the n-1 angles that enter or all n.
MetricValue round_metric(int n, std::span<const double> angles, double margin = kChartMargin);

/// Point on the unit sphere S^n in R^{n+1}.
template <class T>
std::vector<T> hyperspherical_to_cartesian(const std::vector<T>& angles) {
  using std::cos;
  using std::sin;
  const std::size_t n = angles.size();
  std::vector<T> z(n + 1);
  T sines(1.0);
  for (std::size_t k = 0; k < n; ++k) {
    z[k] = sines * cos(angles[k]);
    sines = sines * sin(angles[k]);
  }
  z[n] = sines;
  return z;
}

std::vector<double> cartesian_to_hyperspherical(std::span<const double> z);

/// omega(x) = -(x^0)^2 + sum (x^i)^2.
double minkowski_form(std::span<const double> x);
double minkowski_product(std::span<const double> a, std::span<const double> b);

/// Induced metric beta dt^2 + (alpha cosh t)^2 Omega_n on R x S^n.
class MetricField {
 public:
  MetricField(profiles::Profile profile, int n);

  const profiles::Profile& profile() const { return profile_; }
  int n() const { return n_; }
  std::size_t dim() const { return static_cast<std::size_t>(n_) + 1; }

  MetricValue metric(const ChartPoint& point) const;
  MetricJet evaluate(const ChartPoint& point) const;

  /// Components as nested duals seeded in every chart direction.
  SquareMatrix<Dual<Dual<double>>> components(const ChartPoint& point) const;

  /// |g_tt| < 1e-12 (1 + alpha^2): the null boundary of the family.
  bool is_degenerate(double t) const;

 private:
  void require_dimension(const ChartPoint& point) const;

  profiles::Profile profile_;
  int n_;
};

/// Builds the metric field after confirming alpha in Psi on `working`.
/// Throws NotInPsi.
MetricField warped_metric(const profiles::Profile& profile, int n,
                          const SampleGrid& working = kDefaultGrid);

/// Embedding (t, z) -> (alpha sinh t, z alpha cosh t) of R x S^n into
/// Minkowski space, for any scalar type (double or nested duals).
template <class T>
std::vector<T> embed_generic(const profiles::Profile& profile, const T& t, const std::vector<T>& angles) {
  using std::cosh;
  using std::sinh;
  const T alpha = lift(profile.alpha(primal(t)), t);
  const T spatial = alpha * cosh(t);
  const std::vector<T> z = hyperspherical_to_cartesian(angles);
  std::vector<T> x;
  x.reserve(z.size() + 1);
  x.push_back(alpha * sinh(t));
  for (const T& zi : z) x.push_back(zi * spatial);
  return x;
}

AmbientPoint embed(const profiles::Profile& profile, const ChartPoint& point);

/// Solves h(t) = x0 for a profile in Psi (h strictly increasing): bracket by
/// doubling, then Newton with bisection fallback. Throws OutOfRange when x0
/// is outside the image of h.
double invert_h(const profiles::Profile& profile, double x0);

/// Inverse of `embed`. Throws OutOfRange, or NotOnSurface if the defining
/// residual of x exceeds 1e-8 (1 + |x|^2).
ChartPoint embed_inverse(const profiles::Profile& profile, const AmbientPoint& x);

/// omega(x) - alpha(h^{-1}(x^0))^2.
double defining_residual(const profiles::Profile& profile, const AmbientPoint& x);

/// Columns d phi / d(t, phi_1, ..., phi_n), by forward-mode propagation.
std::vector<std::vector<double>> embedding_differential(const profiles::Profile& profile,
                                                        const ChartPoint& point);

struct PullbackPair {
  double g_uv;
  double eta_uv;
};

/// g(u, v) from the warped metric against eta(D phi u, D phi v).
PullbackPair pullback_check(const profiles::Profile& profile, const ChartPoint& point,
                            std::span<const double> u, std::span<const double> v);

}  // namespace gds::geometry
