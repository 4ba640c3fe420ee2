#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "gds/grid.hpp"
#include "gds/jet.hpp"

namespace gds::profiles {

enum class Family { Constant, Exponential, Cosh, Sech, Spacelike311, NoContraction };

std::string_view to_string(Family family) noexcept;

/// Cached antiderivative of the spacelike rate function zeta = 1 + rho,
/// rho(t) = 2 e^t / (e^{-t} + e^t). Node values are accumulated from
/// adaptive Gauss-Kronrod integrals over cells of width kSpacing at construction;
/// queries integrate from the nearest node.
class RateIntegral {
 public:
  RateIntegral();

  /// Integral of zeta over [0, t].
  double operator()(double t) const;

  static constexpr double kSpacing = 0.5;
  static constexpr int kHalfNodes = 128;
  static constexpr double kAbsTolerance = 1e-12;

 private:
  std::vector<double> node_values_;
};

/// rho = 2 e^t / (e^{-t} + e^t) = 2 logistic(2t) as a jet in t, accurate in
/// both tails.
template <std::size_t N>
Jet<N> spacelike_excess(double t) {
  return 2.0 * logistic(2.0 * Jet<N>::variable(t));
}

/// zeta = 1 + rho.
template <std::size_t N>
Jet<N> spacelike_rate(double t) {
  return 1.0 + spacelike_excess<N>(t);
}

/// Bump function mu(t) = exp(-1/t^2) for t > 0, 0 otherwise. All channels
/// are flushed to zero for t <= kBumpFlush, where the true values are below
/// e^{-10000}.
Jet<4> bump_jet(double t);
inline constexpr double kBumpFlush = 1e-2;

namespace family {
struct Constant {
  double r;
};
struct Exponential {
  double r;
  double lambda;
};
struct Cosh {
  double r;
};
struct Sech {
  double r;
};
struct Spacelike311 {
  std::shared_ptr<const RateIntegral> integral;
};
struct NoContraction {
  double r;
};
}  // namespace family

/// alpha' + alpha and alpha' - alpha. beta = plus * minus, and the causal
/// character is decided by the sign of `minus` where alpha' > 0. Each family
/// supplies both in a form free of cancellation.
struct LightCone {
  Jet3 plus;
  Jet3 minus;
};

/// A profile function alpha(t) > 0 drawn from one of six families.
/// Immutable after construction; copies share the spacelike quadrature table.
class Profile {
 public:
  using Variant = std::variant<family::Constant, family::Exponential, family::Cosh, family::Sech,
                               family::Spacelike311, family::NoContraction>;

  static Profile constant(double r);
  static Profile exponential(double r, double lambda);
  static Profile cosh(double r);
  static Profile sech(double r);
  static Profile spacelike311();
  /// Throws InvalidArgument unless beta < 0 holds on the default grid.
  static Profile no_contraction(double r);

  Family family() const;
  const Variant& variant() const { return v_; }

  /// Parameters in canonical order: r first, then lambda.
  std::vector<std::pair<std::string, double>> params() const;
  std::optional<double> param(std::string_view name) const;

  /// alpha and its first three derivatives; throws NonPositiveProfile when
  /// alpha(t) is not a positive finite number.
  Jet3 alpha(double t) const;
  LightCone light_cone(double t) const;

 private:
  explicit Profile(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

Jet3 eval_jet(const Profile& profile, double t);

/// h(t) = alpha(t) sinh t. Channels past the value are assembled from
/// h' = (plus e^t - minus e^{-t}) / 2.
Jet3 h_jet(const Profile& profile, double t);

/// h'(t) together with the magnitude of the two terms it is the difference
/// of; |h'| much smaller than `scale` means h' vanishes to rounding.
struct HPrime {
  double value;
  double scale;
};
HPrime h_prime(const Profile& profile, double t);

double beta(const Profile& profile, double t);
Jet3 beta_jet(const Profile& profile, double t);

/// Warping function alpha(t) cosh t.
double radius(const Profile& profile, double t);
Jet3 radius_jet(const Profile& profile, double t);

struct PsiReport {
  bool in_psi = false;
  bool in_psi_hat = false;
  std::optional<double> witness_t0;
  SampleGrid grid;
};

inline constexpr double kPsiHatMargin = 1e-9;
inline constexpr double kHPrimeZero = 1e-12;

/// Semi-decides alpha in Psi on a grid: h' must keep one sign and never
/// vanish to rounding. A sign change is refined by bisection into
/// `witness_t0`. Psi-hat additionally needs ||alpha'| - alpha| > margin*alpha.
PsiReport check_psi(const Profile& profile, const SampleGrid& grid);

enum class CausalKind { Timelike, Null, Spacelike, Mixed, Indeterminate };
std::string_view to_string(CausalKind kind) noexcept;

struct CausalCharacter {
  CausalKind kind = CausalKind::Indeterminate;
  double beta_min = 0.0;
  double beta_max = 0.0;
};

inline constexpr double kNullTolerance = 1e-9;

/// Classifies by the sign pattern of beta / alpha^2 = (alpha'/alpha)^2 - 1
/// against `tol`. beta_min / beta_max report raw beta. Throws NotInPsi.
CausalCharacter classify(const Profile& profile, const SampleGrid& grid,
                         double tol = kNullTolerance);

struct NullForm {
  double r;
  int epsilon;
};

std::optional<NullForm> detect_null_form(const Profile& profile);

/// alpha'/alpha tanh t > -1 and alpha'/alpha > 1 at every grid point.
bool check_spacelike_conditions(const Profile& profile, const SampleGrid& grid);

/// alpha / alpha'. Throws DivisionByZero when alpha'(t) == 0.
double check_limit_ratio(const Profile& profile, double t);

// Witnesses for the no-contraction construction.
inline constexpr double kNoContractionSplice = 2.4;  // t_0
inline constexpr double kNoContractionEpsilon = 0.8;
inline constexpr double kNoContractionDefaultRadius = 2.4;

/// mu'(t) - mu(t) tanh t - 2 r tanh t / cosh t, for t > 0.
double nocontraction_inequality(double r, double t);

/// Smallest r_0 (and at least 1) meeting both radius inequalities with
/// mu'(sqrt(2/3)) evaluated directly.
double minimal_nocontraction_radius(double epsilon = kNoContractionEpsilon,
                                    double splice = kNoContractionSplice);

}  // namespace gds::profiles
