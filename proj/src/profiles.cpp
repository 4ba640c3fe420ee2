#include "gds/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "gds/error.hpp"

namespace gds::profiles {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_radius(double r) {
  if (!std::isfinite(r) || r <= 0.0) {
    std::ostringstream msg;
    msg << "profile radius must be positive and finite, got " << r;
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
}

double integrate_rate(double a, double b) {
  // Integrate over u in [0, 1] so the rule's error estimate, which this
  // Boost version leaves unscaled by the interval half-width, is comparable
  // to its relative tolerance for any cell width.
  const double width = b - a;
  auto zeta = [a, width](double u) { return width * spacelike_rate<0>(a + width * u).value(); };
  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      zeta, 0.0, 1.0, 15, 1e-10, &error);
  if (!std::isfinite(value) || !(error <= RateIntegral::kAbsTolerance)) {
    std::ostringstream msg;
    msg << "rate integral over [" << a << ", " << b << "] has error estimate " << error;
    throw Error(ErrorCode::QuadratureFailure, msg.str());
  }
  return value;
}

Jet3 sech_squared(double t) {
  const Jet3 s = sech(Jet3::variable(t));
  return s * s;
}

}  // namespace

std::string_view to_string(Family family) noexcept {
  switch (family) {
    case Family::Constant: return "constant";
    case Family::Exponential: return "exp";
    case Family::Cosh: return "cosh";
    case Family::Sech: return "sech";
    case Family::Spacelike311: return "spacelike311";
    case Family::NoContraction: return "nocontract";
  }
  return "unknown";
}

std::string_view to_string(CausalKind kind) noexcept {
  switch (kind) {
    case CausalKind::Timelike: return "Timelike";
    case CausalKind::Null: return "Null";
    case CausalKind::Spacelike: return "Spacelike";
    case CausalKind::Mixed: return "Mixed";
    case CausalKind::Indeterminate: return "Indeterminate";
  }
  return "Indeterminate";
}

// ---------------------------------------------------------------------------
// RateIntegral

RateIntegral::RateIntegral() : node_values_(2 * kHalfNodes + 1, 0.0) {
  // Accumulate outward from t = 0 so every node value is a sum of cell
  // integrals starting at the origin.
  for (int k = 1; k <= kHalfNodes; ++k) {
    const double lo = (k - 1) * kSpacing;
    const double hi = k * kSpacing;
    node_values_[kHalfNodes + k] = node_values_[kHalfNodes + k - 1] + integrate_rate(lo, hi);
    node_values_[kHalfNodes - k] = node_values_[kHalfNodes - k + 1] - integrate_rate(-hi, -lo);
  }
}

double RateIntegral::operator()(double t) const {
  if (!std::isfinite(t)) {
    throw Error(ErrorCode::QuadratureFailure, "rate integral requested at non-finite t");
  }
  const double max_t = kHalfNodes * kSpacing;
  const int k = static_cast<int>(std::lround(std::clamp(t, -max_t, max_t) / kSpacing));
  const double node = k * kSpacing;
  const double base = node_values_[static_cast<std::size_t>(k + kHalfNodes)];
  if (t == node) return base;
  return base + integrate_rate(node, t);
}

// ---------------------------------------------------------------------------
// Bump function

Jet<4> bump_jet(double t) {
  if (t <= kBumpFlush) return Jet<4>{};
  const auto x = Jet<4>::variable(t);
  return exp(-1.0 / (x * x));
}

// ---------------------------------------------------------------------------
// Profile

Profile Profile::constant(double r) {
  require_radius(r);
  return Profile(family::Constant{r});
}

Profile Profile::exponential(double r, double lambda) {
  require_radius(r);
  if (!std::isfinite(lambda)) {
    throw Error(ErrorCode::InvalidArgument, "lambda must be finite");
  }
  return Profile(family::Exponential{r, lambda});
}

Profile Profile::cosh(double r) {
  require_radius(r);
  return Profile(family::Cosh{r});
}

Profile Profile::sech(double r) {
  require_radius(r);
  return Profile(family::Sech{r});
}

Profile Profile::spacelike311() {
  return Profile(family::Spacelike311{std::make_shared<const RateIntegral>()});
}

Profile Profile::no_contraction(double r) {
  require_radius(r);
  Profile profile(family::NoContraction{r});
  const SampleGrid& grid = kDefaultGrid;
  for (int i = 0; i < grid.count; ++i) {
    const double t = grid.at(i);
    if (!(beta(profile, t) < 0.0)) {
      std::ostringstream msg;
      msg << "no-contraction profile with r=" << r << " has beta >= 0 at t=" << t;
      throw Error(ErrorCode::InvalidArgument, msg.str());
    }
  }
  return profile;
}

Family Profile::family() const { return static_cast<Family>(v_.index()); }

std::vector<std::pair<std::string, double>> Profile::params() const {
  return std::visit(
      overloaded{
          [](const family::Constant& p) -> std::vector<std::pair<std::string, double>> {
            return {{"r", p.r}};
          },
          [](const family::Exponential& p) -> std::vector<std::pair<std::string, double>> {
            return {{"r", p.r}, {"lambda", p.lambda}};
          },
          [](const family::Cosh& p) -> std::vector<std::pair<std::string, double>> {
            return {{"r", p.r}};
          },
          [](const family::Sech& p) -> std::vector<std::pair<std::string, double>> {
            return {{"r", p.r}};
          },
          [](const family::Spacelike311&) -> std::vector<std::pair<std::string, double>> {
            return {};
          },
          [](const family::NoContraction& p) -> std::vector<std::pair<std::string, double>> {
            return {{"r", p.r}};
          },
      },
      v_);
}

std::optional<double> Profile::param(std::string_view name) const {
  for (const auto& [key, value] : params()) {
    if (key == name) return value;
  }
  return std::nullopt;
}

Jet3 Profile::alpha(double t) const {
  const Jet3 a = std::visit(
      overloaded{
          [](const family::Constant& p) { return Jet3::constant(p.r); },
          [t](const family::Exponential& p) {
            return p.r * exp(p.lambda * Jet3::variable(t));
          },
          [t](const family::Cosh& p) { return p.r * gds::cosh(Jet3::variable(t)); },
          [t](const family::Sech& p) { return p.r * gds::sech(Jet3::variable(t)); },
          [t](const family::Spacelike311& p) {
            // log alpha = integral of zeta, whose derivatives are zeta's.
            const Jet<2> zeta = spacelike_rate<2>(t);
            Jet3 log_alpha;
            log_alpha[0] = (*p.integral)(t);
            for (std::size_t k = 0; k < 3; ++k) log_alpha[k + 1] = zeta[k];
            return exp(log_alpha);
          },
          [t](const family::NoContraction& p) {
            return bump_jet(t).truncate<3>() + p.r * gds::sech(Jet3::variable(t));
          },
      },
      v_);
  if (!std::isfinite(a.value()) || !(a.value() > 0.0)) {
    std::ostringstream msg;
    msg << to_string(family()) << " profile gives alpha(" << t << ") = " << a.value();
    throw Error(ErrorCode::NonPositiveProfile, msg.str());
  }
  return a;
}

LightCone Profile::light_cone(double t) const {
  // Positivity is enforced here as well so every evaluation path reports it.
  const Jet3 a = alpha(t);
  const Jet3 x = Jet3::variable(t);
  return std::visit(
      overloaded{
          [](const family::Constant& p) {
            return LightCone{Jet3::constant(p.r), Jet3::constant(-p.r)};
          },
          [&a](const family::Exponential& p) {
            return LightCone{(p.lambda + 1.0) * a, (p.lambda - 1.0) * a};
          },
          [&x](const family::Cosh& p) {
            return LightCone{p.r * exp(x), -p.r * exp(-x)};
          },
          [&x, t](const family::Sech& p) {
            const Jet3 s2 = sech_squared(t);
            return LightCone{p.r * exp(-x) * s2, -p.r * exp(x) * s2};
          },
          [&a, t](const family::Spacelike311&) {
            const Jet3 rho = spacelike_excess<3>(t);
            return LightCone{a * (2.0 + rho), a * rho};
          },
          [&x, t](const family::NoContraction& p) {
            const Jet<4> mu4 = bump_jet(t);
            const Jet3 mu = mu4.truncate<3>();
            const Jet3 dmu = mu4.derivative();
            const Jet3 s2 = sech_squared(t);
            return LightCone{dmu + mu + p.r * exp(-x) * s2, dmu - mu - p.r * exp(x) * s2};
          },
      },
      v_);
}

// ---------------------------------------------------------------------------
// Derived quantities

Jet3 eval_jet(const Profile& profile, double t) { return profile.alpha(t); }

Jet3 h_jet(const Profile& profile, double t) {
  const Jet3 a = profile.alpha(t);
  const LightCone lc = profile.light_cone(t);
  const Jet<2> x = Jet<2>::variable(t);
  const Jet<2> slope = 0.5 * (lc.plus.truncate<2>() * exp(x) - lc.minus.truncate<2>() * exp(-x));
  Jet3 h;
  h[0] = a.value() * std::sinh(t);
  for (std::size_t k = 0; k < 3; ++k) h[k + 1] = slope[k];
  return h;
}

HPrime h_prime(const Profile& profile, double t) {
  const LightCone lc = profile.light_cone(t);
  const double up = lc.plus.value() * std::exp(t);
  const double down = lc.minus.value() * std::exp(-t);
  return {0.5 * (up - down), 0.5 * (std::abs(up) + std::abs(down))};
}

Jet3 beta_jet(const Profile& profile, double t) {
  const LightCone lc = profile.light_cone(t);
  return lc.plus * lc.minus;
}

double beta(const Profile& profile, double t) { return beta_jet(profile, t).value(); }

Jet3 radius_jet(const Profile& profile, double t) {
  return profile.alpha(t) * cosh(Jet3::variable(t));
}

double radius(const Profile& profile, double t) { return radius_jet(profile, t).value(); }

// ---------------------------------------------------------------------------
// Admissibility and causal character

PsiReport check_psi(const Profile& profile, const SampleGrid& grid) {
  grid.validate();
  PsiReport report;
  report.grid = grid;

  auto vanishes = [](const HPrime& hp) { return std::abs(hp.value) <= kHPrimeZero * hp.scale; };

  bool in_psi = true;
  bool hat = true;
  HPrime prev{};
  for (int i = 0; i < grid.count; ++i) {
    const double t = grid.at(i);
    const HPrime cur = h_prime(profile, t);
    if (vanishes(cur)) {
      in_psi = false;
      report.witness_t0 = t;
      break;
    }
    if (i > 0 && std::signbit(cur.value) != std::signbit(prev.value)) {
      // Bisect on [t_{i-1}, t_i] down to rounding of t.
      double lo = grid.at(i - 1);
      double hi = t;
      const bool lo_negative = std::signbit(prev.value);
      for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const HPrime m = h_prime(profile, mid);
        if (m.value == 0.0) {
          lo = hi = mid;
          break;
        }
        if (std::signbit(m.value) == lo_negative) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      in_psi = false;
      report.witness_t0 = 0.5 * (lo + hi);
      break;
    }
    // Psi-hat: ||alpha'| - alpha| is |minus| when alpha' >= 0, |plus| otherwise.
    const LightCone lc = profile.light_cone(t);
    const double alpha_prime = 0.5 * (lc.plus.value() + lc.minus.value());
    const double gap = alpha_prime >= 0.0 ? std::abs(lc.minus.value()) : std::abs(lc.plus.value());
    const double alpha = 0.5 * (lc.plus.value() - lc.minus.value());
    if (!(gap > kPsiHatMargin * alpha)) hat = false;
    prev = cur;
  }
  report.in_psi = in_psi;
  report.in_psi_hat = in_psi && hat;
  return report;
}

CausalCharacter classify(const Profile& profile, const SampleGrid& grid, double tol) {
  const PsiReport psi = check_psi(profile, grid);
  if (!psi.in_psi) {
    std::ostringstream msg;
    msg << "h' vanishes near t=" << psi.witness_t0.value_or(std::nan(""));
    throw Error(ErrorCode::NotInPsi, msg.str());
  }
  CausalCharacter out;
  out.beta_min = std::numeric_limits<double>::infinity();
  out.beta_max = -std::numeric_limits<double>::infinity();
  bool any_negative = false;
  bool any_positive = false;
  bool all_negative = true;
  bool all_positive = true;
  bool all_small = true;
  for (int i = 0; i < grid.count; ++i) {
    const double t = grid.at(i);
    const double a = profile.alpha(t).value();
    const double b = beta(profile, t);
    out.beta_min = std::min(out.beta_min, b);
    out.beta_max = std::max(out.beta_max, b);
    const double scaled = b / (a * a);
    any_negative = any_negative || scaled < -tol;
    any_positive = any_positive || scaled > tol;
    all_negative = all_negative && scaled < -tol;
    all_positive = all_positive && scaled > tol;
    all_small = all_small && std::abs(scaled) <= tol;
  }
  if (all_negative) {
    out.kind = CausalKind::Timelike;
  } else if (all_positive) {
    out.kind = CausalKind::Spacelike;
  } else if (all_small) {
    out.kind = CausalKind::Null;
  } else if (any_negative && any_positive) {
    out.kind = CausalKind::Mixed;
  } else {
    out.kind = CausalKind::Indeterminate;
  }
  return out;
}

std::optional<NullForm> detect_null_form(const Profile& profile) {
  if (const auto* e = std::get_if<family::Exponential>(&profile.variant())) {
    if (std::abs(e->lambda) == 1.0) return NullForm{e->r, e->lambda > 0.0 ? 1 : -1};
    return std::nullopt;
  }
  // Least-squares line through log alpha on [-5, 5].
  const SampleGrid grid{-5.0, 5.0, 201};
  std::vector<double> ts(static_cast<std::size_t>(grid.count));
  std::vector<double> ys(ts.size());
  double mean_t = 0.0;
  double mean_y = 0.0;
  for (int i = 0; i < grid.count; ++i) {
    ts[i] = grid.at(i);
    ys[i] = std::log(profile.alpha(ts[i]).value());
    mean_t += ts[i];
    mean_y += ys[i];
  }
  mean_t /= grid.count;
  mean_y /= grid.count;
  double stt = 0.0;
  double sty = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    stt += (ts[i] - mean_t) * (ts[i] - mean_t);
    sty += (ts[i] - mean_t) * (ys[i] - mean_y);
  }
  const double slope = sty / stt;
  const double intercept = mean_y - slope * mean_t;
  double max_residual = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    max_residual = std::max(max_residual, std::abs(ys[i] - (intercept + slope * ts[i])));
  }
  constexpr double kFit = 1e-10;
  if (max_residual > kFit || std::abs(std::abs(slope) - 1.0) > kFit) return std::nullopt;
  return NullForm{std::exp(intercept), slope > 0.0 ? 1 : -1};
}

bool check_spacelike_conditions(const Profile& profile, const SampleGrid& grid) {
  grid.validate();
  for (int i = 0; i < grid.count; ++i) {
    const double t = grid.at(i);
    // With alpha > 0 and cosh t > 0: alpha'/alpha tanh t > -1 iff h' > 0,
    // and alpha'/alpha > 1 iff alpha' - alpha > 0.
    if (!(h_prime(profile, t).value > 0.0)) return false;
    if (!(profile.light_cone(t).minus.value() > 0.0)) return false;
  }
  return true;
}

double check_limit_ratio(const Profile& profile, double t) {
  const Jet3 a = profile.alpha(t);
  if (a[1] == 0.0) {
    std::ostringstream msg;
    msg << "alpha'(" << t << ") = 0";
    throw Error(ErrorCode::DivisionByZero, msg.str());
  }
  return a[0] / a[1];
}

double nocontraction_inequality(double r, double t) {
  if (!(t > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "no-contraction inequality needs t > 0");
  }
  const Jet<4> mu = bump_jet(t);
  return mu[1] - mu[0] * std::tanh(t) - 2.0 * r * std::tanh(t) / std::cosh(t);
}

double minimal_nocontraction_radius(double epsilon, double splice) {
  if (!(epsilon > 0.0) || !(epsilon < std::asinh(1.0))) {
    throw Error(ErrorCode::InvalidArgument, "epsilon must lie in (0, asinh 1)");
  }
  const double peak = bump_jet(std::sqrt(2.0 / 3.0))[1];
  auto needed = [peak](double t) { return peak * std::cosh(t) / (2.0 * std::tanh(t)); };
  return std::max({1.0, needed(0.5 * epsilon), needed(splice)});
}

}  // namespace gds::profiles
