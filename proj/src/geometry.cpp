#include "gds/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gds/error.hpp"

namespace gds::geometry {

using profiles::Profile;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_size(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    std::ostringstream msg;
    msg << what << " has " << got << " entries, expected " << want;
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
}

}  // namespace

void require_interior(std::span<const double> angles, double margin) {
  const std::size_t n = angles.size();
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double phi = angles[j];
    if (!(phi > margin && phi < std::numbers::pi - margin)) {
      std::ostringstream msg;
      msg << "angle " << j + 1 << " = " << phi << " is within " << margin << " of the poles";
      throw Error(ErrorCode::OutOfChart, msg.str());
    }
  }
  if (n > 0 && !(angles[n - 1] >= 0.0 && angles[n - 1] < kTwoPi)) {
    std::ostringstream msg;
    msg << "last angle " << angles[n - 1] << " outside [0, 2 pi)";
    throw Error(ErrorCode::OutOfChart, msg.str());
  }
}

MetricValue round_metric(int n, std::span<const double> angles, double margin) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "sphere dimension must be >= 1");
  const auto un = static_cast<std::size_t>(n);
  if (angles.size() != un && angles.size() + 1 != un) {
    std::ostringstream msg;
    msg << "round metric on S^" << n << " needs " << n - 1 << " or " << n << " angles, got "
        << angles.size();
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
  const auto polar = angles.first(un - 1);
  for (std::size_t j = 0; j < polar.size(); ++j) {
    if (!(polar[j] > margin && polar[j] < std::numbers::pi - margin)) {
      std::ostringstream msg;
      msg << "angle " << j + 1 << " = " << polar[j] << " is within " << margin << " of the poles";
      throw Error(ErrorCode::OutOfChart, msg.str());
    }
  }
  MetricValue omega(un);
  double product = 1.0;
  for (std::size_t i = 0; i < un; ++i) {
    omega(i, i) = product;
    if (i < polar.size()) product *= std::sin(polar[i]) * std::sin(polar[i]);
  }
  return omega;
}

std::vector<double> cartesian_to_hyperspherical(std::span<const double> z) {
  if (z.size() < 2) throw Error(ErrorCode::InvalidArgument, "need a point in R^{n+1}, n >= 1");
  const std::size_t n = z.size() - 1;
  std::vector<double> angles(n);
  // Tail norms sqrt(z_k^2 + ... + z_n^2), accumulated from the end.
  std::vector<double> tail(z.size() + 1, 0.0);
  for (std::size_t k = z.size(); k-- > 0;) tail[k] = std::hypot(tail[k + 1], z[k]);
  for (std::size_t k = 0; k + 1 < n; ++k) angles[k] = std::atan2(tail[k + 1], z[k]);
  double last = std::atan2(z[n], z[n - 1]);
  if (last < 0.0) last += kTwoPi;
  if (last >= kTwoPi) last = 0.0;
  angles[n - 1] = last;
  return angles;
}

double minkowski_form(std::span<const double> x) { return minkowski_product(x, x); }

double minkowski_product(std::span<const double> a, std::span<const double> b) {
  require_size(b.size(), a.size(), "Minkowski vector");
  double sum = -a[0] * b[0];
  for (std::size_t i = 1; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

// ---------------------------------------------------------------------------
// MetricField

MetricField::MetricField(Profile profile, int n) : profile_(std::move(profile)), n_(n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "sphere dimension must be >= 1");
}

void MetricField::require_dimension(const ChartPoint& point) const {
  require_size(point.angles.size(), static_cast<std::size_t>(n_), "chart point angles");
}

MetricValue MetricField::metric(const ChartPoint& point) const {
  require_dimension(point);
  MetricValue g(dim());
  g(0, 0) = profiles::beta(profile_, point.t);
  const double warp = profiles::radius(profile_, point.t);
  double product = warp * warp;
  for (std::size_t i = 1; i < dim(); ++i) {
    g(i, i) = product;
    const double s = std::sin(point.angles[i - 1]);
    product *= s * s;
  }
  return g;
}

SquareMatrix<Dual<Dual<double>>> MetricField::components(const ChartPoint& point) const {
  require_dimension(point);
  using D2 = Dual<Dual<double>>;
  const std::size_t d = dim();
  const D2 t = seed<D2>(point.t, 0, d);
  SquareMatrix<D2> g(d, D2(Dual<double>(0.0)));

  g(0, 0) = lift(profiles::beta_jet(profile_, point.t), t);
  const Jet3 warp = profiles::radius_jet(profile_, point.t);
  D2 product = lift(warp * warp, t);
  for (std::size_t i = 1; i < d; ++i) {
    g(i, i) = product;
    const double phi = point.angles[i - 1];
    const Jet3 s = sin(Jet3::variable(phi));
    product = product * lift(s * s, seed<D2>(phi, i, d));
  }
  return g;
}

MetricJet MetricField::evaluate(const ChartPoint& point) const {
  const auto comps = components(point);
  const std::size_t d = dim();
  MetricJet out{MetricValue(d), Rank3<double>(d), Rank4<double>(d)};
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const auto& c = comps(i, j);
      out.g(i, j) = primal(c);
      for (std::size_t k = 0; k < d; ++k) {
        out.dg(k, i, j) = c.value.d(k);
        for (std::size_t l = 0; l < d; ++l) out.ddg(k, l, i, j) = c.d(k).d(l);
      }
    }
  }
  return out;
}

bool MetricField::is_degenerate(double t) const {
  const double a = profile_.alpha(t).value();
  return std::abs(profiles::beta(profile_, t)) < 1e-12 * (1.0 + a * a);
}

MetricField warped_metric(const Profile& profile, int n, const SampleGrid& working) {
  const auto report = profiles::check_psi(profile, working);
  if (!report.in_psi) {
    std::ostringstream msg;
    msg << "profile fails the h' test near t=" << report.witness_t0.value_or(std::nan(""));
    throw Error(ErrorCode::NotInPsi, msg.str());
  }
  return MetricField(profile, n);
}

// ---------------------------------------------------------------------------
// Embedding

AmbientPoint embed(const Profile& profile, const ChartPoint& point) {
  return {embed_generic(profile, point.t, point.angles)};
}

double invert_h(const Profile& profile, double x0) {
  if (!std::isfinite(x0)) throw Error(ErrorCode::OutOfRange, "x0 is not finite");
  auto h = [&profile](double t) { return profile.alpha(t).value() * std::sinh(t); };
  auto out_of_range = [x0] {
    std::ostringstream msg;
    msg << "x0 = " << x0 << " is outside the image of h";
    return Error(ErrorCode::OutOfRange, msg.str());
  };
  constexpr double kMaxT = 700.0;

  double guess = std::asinh(x0 / profile.alpha(0.0).value());
  guess = std::clamp(guess, -kMaxT, kMaxT);

  // h is increasing (h'(0) = alpha(0) > 0), so expand a bracket by doubling.
  double lo = guess;
  double hi = guess;
  try {
    for (double step = 1.0; h(lo) > x0; step *= 2.0) {
      lo -= step;
      if (lo < -kMaxT) throw out_of_range();
    }
    for (double step = 1.0; h(hi) < x0; step *= 2.0) {
      hi += step;
      if (hi > kMaxT) throw out_of_range();
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NonPositiveProfile) throw out_of_range();
    throw;
  }

  double t = std::clamp(guess, lo, hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double f = h(t) - x0;
    if (f == 0.0) return t;
    if (f < 0.0) {
      lo = t;
    } else {
      hi = t;
    }
    const double slope = profiles::h_prime(profile, t).value;
    double next = t - f / slope;
    if (!(slope > 0.0) || !(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) <= 1e-15 * (1.0 + std::abs(t)) || next == lo || next == hi) {
      t = next;
      break;
    }
    t = next;
  }
  if (!(std::abs(h(t) - x0) <= 1e-12 * (1.0 + std::abs(x0)))) {
    std::ostringstream msg;
    msg << "h(t) = x0 did not converge for x0 = " << x0;
    throw Error(ErrorCode::OutOfRange, msg.str());
  }
  return t;
}

double defining_residual(const Profile& profile, const AmbientPoint& x) {
  if (x.x.size() < 3) throw Error(ErrorCode::InvalidArgument, "ambient point needs n + 2 >= 3 entries");
  const double t = invert_h(profile, x.x[0]);
  const double a = profile.alpha(t).value();
  return minkowski_form(x.x) - a * a;
}

ChartPoint embed_inverse(const Profile& profile, const AmbientPoint& x) {
  if (x.x.size() < 3) throw Error(ErrorCode::InvalidArgument, "ambient point needs n + 2 >= 3 entries");
  const double t = invert_h(profile, x.x[0]);
  const double a = profile.alpha(t).value();
  double norm2 = 0.0;
  for (double c : x.x) norm2 += c * c;
  const double residual = minkowski_form(x.x) - a * a;
  if (!(std::abs(residual) <= 1e-8 * (1.0 + norm2))) {
    std::ostringstream msg;
    msg << "point is off the hypersurface, residual " << residual;
    throw Error(ErrorCode::NotOnSurface, msg.str());
  }
  const double spatial = a * std::cosh(t);
  std::vector<double> z(x.x.begin() + 1, x.x.end());
  for (double& c : z) c /= spatial;
  return {t, cartesian_to_hyperspherical(z)};
}

std::vector<std::vector<double>> embedding_differential(const Profile& profile,
                                                        const ChartPoint& point) {
  const std::size_t dim = point.angles.size() + 1;
  const auto t = seed<Dual<double>>(point.t, 0, dim);
  std::vector<Dual<double>> angles;
  angles.reserve(point.angles.size());
  for (std::size_t j = 0; j < point.angles.size(); ++j) {
    angles.push_back(seed<Dual<double>>(point.angles[j], j + 1, dim));
  }
  const auto x = embed_generic(profile, t, angles);
  std::vector<std::vector<double>> columns(dim, std::vector<double>(x.size()));
  for (std::size_t a = 0; a < x.size(); ++a) {
    for (std::size_t k = 0; k < dim; ++k) columns[k][a] = x[a].d(k);
  }
  return columns;
}

PullbackPair pullback_check(const Profile& profile, const ChartPoint& point,
                            std::span<const double> u, std::span<const double> v) {
  require_interior(point.angles);
  const std::size_t dim = point.angles.size() + 1;
  require_size(u.size(), dim, "tangent vector u");
  require_size(v.size(), dim, "tangent vector v");

  const MetricField field(profile, static_cast<int>(point.angles.size()));
  const MetricValue g = field.metric(point);
  double g_uv = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) g_uv += u[i] * g(i, j) * v[j];
  }

  const auto columns = embedding_differential(profile, point);
  std::vector<double> pu(columns[0].size(), 0.0);
  std::vector<double> pv(columns[0].size(), 0.0);
  for (std::size_t k = 0; k < dim; ++k) {
    for (std::size_t a = 0; a < pu.size(); ++a) {
      pu[a] += columns[k][a] * u[k];
      pv[a] += columns[k][a] * v[k];
    }
  }
  return {g_uv, minkowski_product(pu, pv)};
}

}  // namespace gds::geometry
