// Acceptance runner. Prints one PASS/FAIL line per criterion.
// Usage: acceptance [--criterion N]

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "gds/curvature.hpp"
#include "gds/error.hpp"
#include "gds/geometry.hpp"
#include "gds/oracles.hpp"
#include "gds/profiles.hpp"
#include "gds/rng.hpp"

#ifndef GDS_CLI_PATH
#error "GDS_CLI_PATH must name the gds executable"
#endif

using namespace gds;
using geometry::ChartPoint;
using geometry::MetricField;
using profiles::Profile;

namespace {

constexpr double kPi = std::numbers::pi;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      if (!pass) detail << "; ";
      detail << what;
      pass = false;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

ChartPoint random_interior(Xoshiro256& rng, double t_lo, double t_hi, int n, double m = 0.05) {
  ChartPoint p{rng.uniform(t_lo, t_hi), {}};
  for (int k = 0; k + 1 < n; ++k) p.angles.push_back(rng.uniform(m, kPi - m));
  p.angles.push_back(rng.uniform(m, 2 * kPi - m));
  return p;
}

ChartPoint fixed_interior(double t, int n) {
  ChartPoint p{t, {}};
  for (int k = 0; k < n; ++k) p.angles.push_back(0.6 + 0.35 * k);
  return p;
}

std::string num(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

// 1. Engine against the closed forms.
Verdict criterion1() {
  Verdict v;
  const auto start = Clock::now();
  Xoshiro256 rng(1);
  double worst = 0.0;
  int cases = 0;
  auto compare = [&](double engine, double oracle) {
    const double excess = std::abs(engine - oracle) / std::max(1e-9, 1e-9 * std::abs(oracle));
    worst = std::max(worst, excess);
  };
  for (double lambda : {-0.9, -0.7, -0.3, 0.0, 0.3, 0.7, 0.9}) {
    for (double r : {1.0, 2.5}) {
      const MetricField field(Profile::exponential(r, lambda), 3);
      const oracles::ClosedForm4D cf(lambda, r);
      for (int i = 0; i < 25; ++i) {
        const ChartPoint p = random_interior(rng, -3.0, 3.0, 3);
        const auto report = curvature::evaluate(field, p);
        const auto gamma = oracles::christoffel_closed(cf, p);
        const auto ric = oracles::ricci_closed(cf, p);
        for (std::size_t a = 0; a < 4; ++a) {
          for (std::size_t b = 0; b < 4; ++b) {
            compare(report.ricci(a, b), ric(a, b));
            for (std::size_t c = 0; c < 4; ++c) compare(report.christoffel(a, b, c), gamma(a, b, c));
          }
        }
        compare(report.scalar, oracles::scalar_closed(cf, p.t));
        ++cases;
      }
    }
  }
  const double elapsed = seconds_since(start);
  v.check(worst <= 1.0, "worst deviation " + num(worst) + "x tolerance");
  v.check(elapsed < 5.0, "runtime " + num(elapsed) + " s");
  v.detail << (v.pass ? "" : " | ") << cases << " points, worst/tol " << num(worst) << ", " << num(elapsed)
           << " s";
  return v;
}

// 2. de Sitter reduction and general n.
Verdict criterion2() {
  Verdict v;
  Xoshiro256 rng(2);
  double ricci_dev = 0.0, scalar_dev = 0.0, einstein = 0.0, general_dev = 0.0;
  for (double r : {1.0, 2.0}) {
    const MetricField field(Profile::exponential(r, 0.0), 3);
    for (int i = 0; i < 10; ++i) {
      const ChartPoint p = random_interior(rng, -3.0, 3.0, 3);
      const auto ric = curvature::ricci(field, p);
      const auto g = field.metric(p);
      for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = 0; b < 4; ++b) ricci_dev = std::max(ricci_dev, std::abs(ric(a, b) - 3.0 / (r * r) * g(a, b)));
      }
      scalar_dev = std::max(scalar_dev, std::abs(curvature::scalar_curvature(field, p) * r * r - 12.0));
      einstein = std::max(einstein, curvature::einstein_residual(field, p, 3.0 / (r * r)));
    }
  }
  for (int n : {1, 2, 3, 4}) {
    for (double r : {1.0, 2.0}) {
      const MetricField field(Profile::constant(r), n);
      const double expected = n * (n + 1) / (r * r);
      for (int i = 0; i < 5; ++i) {
        const ChartPoint p = random_interior(rng, -3.0, 3.0, n);
        general_dev = std::max(general_dev, std::abs(curvature::scalar_curvature(field, p) - expected));
      }
    }
  }
  v.check(ricci_dev <= 1e-9, "Ricci deviation " + num(ricci_dev));
  v.check(scalar_dev <= 1e-9, "S r^2 deviation " + num(scalar_dev));
  v.check(einstein <= 1e-9, "Einstein residual " + num(einstein));
  v.check(general_dev <= 1e-9, "general-n deviation " + num(general_dev));
  v.detail << (v.pass ? "" : " | ") << "Ricci " << num(ricci_dev) << ", S r^2 " << num(scalar_dev) << ", Einstein "
           << num(einstein) << ", general n " << num(general_dev);
  return v;
}

// 3. S = 16 at t = 0 for exp lambda = 0.5, confirmed by finite differences.
Verdict criterion3() {
  Verdict v;
  const MetricField field(Profile::exponential(1.0, 0.5), 3);
  const ChartPoint p = fixed_interior(0.0, 3);
  const double s = curvature::scalar_curvature(field, p);
  const double s_fd = curvature::scalar_from(field.metric(p), curvature::ricci_fd_crosscheck(field, p, 1e-3));
  v.check(std::abs(s - 16.0) <= 1e-9, "S = " + num(s));
  v.check(std::abs(s_fd - 16.0) <= 1e-4, "finite-difference S = " + num(s_fd));
  v.detail << (v.pass ? "" : " | ") << "S - 16 = " << num(s - 16.0) << ", FD S - 16 = " << num(s_fd - 16.0);
  return v;
}

// 4. Embedding checks on 100 seeded points per profile.
Verdict criterion4() {
  Verdict v;
  const auto start = Clock::now();
  for (const char* spec : {"constant:r=1", "exp:r=1,lambda=0.5", "exp:r=1,lambda=-0.5", "cosh:r=1", "sech:r=1"}) {
    cli::RunConfig config;
    config.command = cli::Command::EmbedCheck;
    config.profile_spec = spec;
    config.t_min = -3.0;
    config.t_max = 3.0;
    config.count = 100;
    config.seed = 42;
    std::ostringstream out;
    (void)cli::cmd_embed_check(config, out);
    const auto doc = cli::Json::parse(out.str());
    const double residual = doc["max_defining_residual"].get<double>();
    const double pullback = doc["max_pullback_deviation"].get<double>();
    const double round_trip = doc["max_round_trip_error"].get<double>();
    v.check(residual <= 1e-10, std::string(spec) + " residual " + num(residual));
    v.check(pullback <= 1e-9, std::string(spec) + " pullback " + num(pullback));
    v.check(round_trip <= 1e-10, std::string(spec) + " round trip " + num(round_trip));
  }
  const double elapsed = seconds_since(start);
  v.check(elapsed < 2.0, "runtime " + num(elapsed) + " s");
  v.detail << (v.pass ? "" : " | ") << "5 profiles x 100 points in " << num(elapsed) << " s";
  return v;
}

// 5. Classification table.
Verdict criterion5() {
  Verdict v;
  const SampleGrid grid = kDefaultGrid;
  auto expect = [&](const Profile& p, profiles::CausalKind kind, const std::string& name) {
    const auto c = profiles::classify(p, grid);
    v.check(c.kind == kind, name + " -> " + std::string(profiles::to_string(c.kind)));
  };
  expect(Profile::constant(1.0), profiles::CausalKind::Timelike, "constant");
  for (double lambda : {0.3, 0.7, 0.9, -0.3, -0.7, -0.9}) {
    expect(Profile::exponential(1.0, lambda), profiles::CausalKind::Timelike, "exp " + num(lambda));
  }
  for (double lambda : {1.0, -1.0}) {
    const Profile p = Profile::exponential(1.0, lambda);
    expect(p, profiles::CausalKind::Null, "exp " + num(lambda));
    double worst = 0.0;
    for (int i = 0; i < grid.count; ++i) worst = std::max(worst, std::abs(profiles::beta(p, grid.at(i))));
    v.check(worst <= 1e-12, "exp " + num(lambda) + " max |beta| " + num(worst));
  }
  for (double r : {1.0, 2.0}) {
    const Profile p = Profile::cosh(r);
    expect(p, profiles::CausalKind::Timelike, "cosh");
    double worst = 0.0;
    for (int i = 0; i < grid.count; ++i) worst = std::max(worst, std::abs(profiles::beta(p, grid.at(i)) + r * r));
    v.check(worst <= 1e-10, "cosh r=" + num(r) + " beta + r^2 up to " + num(worst));
  }
  expect(Profile::sech(1.0), profiles::CausalKind::Timelike, "sech");
  expect(Profile::spacelike311(), profiles::CausalKind::Spacelike, "spacelike311");
  expect(Profile::no_contraction(2.4), profiles::CausalKind::Timelike, "nocontract");
  for (double lambda : {1.5, -1.5}) {
    const auto psi = profiles::check_psi(Profile::exponential(1.0, lambda), grid);
    v.check(!psi.in_psi, "exp " + num(lambda) + " accepted into Psi");
    const double t0 = psi.witness_t0.value_or(NAN);
    v.check(std::abs(std::abs(t0) - 0.80472) <= 1e-5, "exp " + num(lambda) + " witness " + num(t0));
  }
  if (v.pass) v.detail << "all rows match";
  return v;
}

// 6. No-contraction profile properties.
Verdict criterion6() {
  Verdict v;
  const double r = 2.4;
  const Profile p = Profile::no_contraction(r);
  const SampleGrid grid = kDefaultGrid;
  double flat_dev = 0.0;
  int non_increasing = 0;
  double first_bad = NAN;
  double previous = NAN;
  for (int i = 0; i < grid.count; ++i) {
    const double t = grid.at(i);
    const double rad = profiles::radius(p, t);
    if (t <= 0.0) {
      flat_dev = std::max(flat_dev, std::abs(rad - r));
    } else if (!(rad > previous)) {
      if (non_increasing++ == 0) first_bad = t;
    }
    previous = rad;
  }
  const double r10 = profiles::radius(p, 10.0);
  const double beta12 = profiles::beta(p, 12.0);
  v.check(flat_dev <= 1e-12, "radius - r up to " + num(flat_dev) + " on t <= 0");
  v.check(non_increasing == 0,
          std::to_string(non_increasing) + " grid steps on (0,10] not increasing, first at t=" + num(first_bad));
  v.check(r10 > 10.0 * r, "radius(10) = " + num(r10));
  v.check(std::abs(beta12 + 1.0) <= 1e-3, "|beta(12)+1| = " + num(std::abs(beta12 + 1.0)));
  v.detail << (v.pass ? "" : " | ") << "flat dev " << num(flat_dev) << ", radius(10) " << num(r10) << ", |beta(12)+1| "
           << num(std::abs(beta12 + 1.0));
  return v;
}

// 7. Scalar curvature limits.
Verdict criterion7() {
  Verdict v;
  const MetricField up(Profile::exponential(1.0, 0.5), 3);
  const MetricField down(Profile::exponential(1.0, -0.5), 3);
  const double a = curvature::scalar_curvature(up, fixed_interior(15.0, 3));
  const double b = curvature::scalar_curvature(up, fixed_interior(-15.0, 3));
  const double c = curvature::scalar_curvature(down, fixed_interior(-15.0, 3));
  const double d = curvature::scalar_curvature(down, fixed_interior(15.0, 3));
  v.check(a <= 1e-5, "lambda=0.5 S(15) = " + num(a));
  v.check(b >= 1e5, "lambda=0.5 S(-15) = " + num(b));
  v.check(c <= 1e-5, "lambda=-0.5 S(-15) = " + num(c));
  v.check(d >= 1e5, "lambda=-0.5 S(15) = " + num(d));
  v.detail << (v.pass ? "" : " | ") << "S(15) " << num(a) << ", S(-15) " << num(b) << ", mirrored " << num(c) << ", "
           << num(d);
  return v;
}

// 8. Finite-difference Ricci against the jet route. The step-1e-3 truncation
// error is O(h^2) times third derivatives of cot and of the warp, so points
// stay in t in [-2, 2] with angles a quarter turn from the poles.
Verdict criterion8() {
  Verdict v;
  Xoshiro256 rng(8);
  double worst = 0.0;
  for (double lambda : {0.0, 0.5}) {
    const MetricField field(Profile::exponential(1.0, lambda), 3);
    for (int i = 0; i < 10; ++i) {
      const ChartPoint p = random_interior(rng, -2.0, 2.0, 3, kPi / 4);
      const auto jet = curvature::ricci(field, p);
      const auto fd = curvature::ricci_fd_crosscheck(field, p, 1e-3);
      for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = 0; b < 4; ++b) worst = std::max(worst, std::abs(jet(a, b) - fd(a, b)));
      }
    }
  }
  v.check(worst <= 1e-4, "max-abs difference " + num(worst));
  v.detail << (v.pass ? "" : " | ") << "max-abs difference " << num(worst);
  return v;
}

// 9. Profile jet channels against finite differences of the channel below.
// Central differences at step 1e-3; the error is measured relative to
// max(|channel|, |alpha|).
Verdict criterion9() {
  Verdict v;
  struct Named {
    std::string name;
    Profile profile;
  };
  const std::vector<Named> all{{"constant", Profile::constant(1.0)},
                               {"exp 0.5", Profile::exponential(1.0, 0.5)},
                               {"exp -0.5", Profile::exponential(1.0, -0.5)},
                               {"exp 1", Profile::exponential(1.0, 1.0)},
                               {"exp 1.5", Profile::exponential(1.0, 1.5)},
                               {"cosh", Profile::cosh(1.0)},
                               {"sech", Profile::sech(1.0)},
                               {"spacelike311", Profile::spacelike311()},
                               {"nocontract", Profile::no_contraction(2.4)}};
  const SampleGrid grid{-10.0, 10.0, 401};
  const double h = 1e-3;
  int cases = 0;
  int failures = 0;
  double worst = 0.0;
  std::string worst_where;
  for (const auto& [name, p] : all) {
    for (int i = 0; i < grid.count; ++i) {
      const double t = grid.at(i);
      const auto jet = profiles::eval_jet(p, t);
      for (std::size_t k = 1; k <= 3; ++k) {
        auto channel = [&](double s) { return profiles::eval_jet(p, s)[k - 1]; };
        const double fd = (channel(t + h) - channel(t - h)) / (2 * h);
        const double rel = std::abs(fd - jet[k]) / std::max(std::abs(jet[k]), std::abs(jet[0]));
        ++cases;
        if (rel > 1e-5) ++failures;
        if (rel > worst) {
          worst = rel;
          worst_where = name + " channel " + std::to_string(k) + " at t=" + num(t);
        }
      }
    }
  }
  v.check(cases >= 500, "only " + std::to_string(cases) + " cases");
  v.check(failures == 0, std::to_string(failures) + " cases above 1e-5, worst " + num(worst) + " (" + worst_where + ")");
  v.detail << (v.pass ? "" : " | ") << cases << " cases, worst relative " << num(worst);
  return v;
}

struct Process {
  int code;
  std::string out;
};

Process spawn(const std::string& args, const std::string& env = "") {
  const std::string command = env + (env.empty() ? "" : " ") + "'" + GDS_CLI_PATH + "' " + args + " 2>/dev/null";
  FILE* pipe = ::popen(command.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buffer{};
  std::size_t n = 0;
  while ((n = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0) out.append(buffer.data(), n);
  const int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

// 10. CLI classify examples and byte determinism.
Verdict criterion10() {
  Verdict v;
  struct Example {
    std::string profile;
    int code;
    std::string character;
  };
  for (const Example& e : {Example{"exp:r=1,lambda=1", 0, "Null"}, Example{"spacelike311", 0, "Spacelike"},
                           Example{"exp:r=1,lambda=1.5", 2, ""}}) {
    const auto first = spawn("classify --profile " + e.profile);
    const auto second = spawn("classify --profile " + e.profile);
    v.check(first.code == e.code, e.profile + " exit " + std::to_string(first.code));
    v.check(first.out == second.out, e.profile + " output differs between runs");
    try {
      const auto doc = cli::Json::parse(first.out);
      if (e.character.empty()) {
        v.check(doc["character"].is_null(), e.profile + " has a character");
        const double t0 = doc["witness_t0"].is_number() ? doc["witness_t0"].get<double>() : NAN;
        v.check(std::abs(t0 + 0.80472) <= 1e-5, e.profile + " witness " + num(t0));
      } else {
        v.check(doc["character"] == e.character, e.profile + " character " + doc["character"].dump());
      }
    } catch (const std::exception&) {
      v.check(false, e.profile + " output is not JSON");
    }
  }
  for (const std::string args : {"embed-check --profile cosh:r=1 --seed 7 --count 200",
                                 "sweep --profile exp:r=1,lambda=0.3 --samples 501"}) {
    const auto serial = spawn(args, "GDS_THREADS=1");
    const auto parallel = spawn(args, "GDS_THREADS=8");
    v.check(!serial.out.empty() && serial.out == parallel.out, "'" + args + "' not byte-identical across thread counts");
  }
  if (v.pass) v.detail << "examples and determinism hold";
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  const std::array<std::function<Verdict()>, 10> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                           criterion6, criterion7, criterion8, criterion9, criterion10};
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--criterion N]\n";
      return 2;
    }
  }
  if (only < 0 || only > 10) {
    std::cerr << "criterion must be 1..10\n";
    return 2;
  }
  bool all = true;
  for (int c = 1; c <= 10; ++c) {
    if (only != 0 && c != only) continue;
    Verdict verdict;
    try {
      verdict = criteria[static_cast<std::size_t>(c - 1)]();
    } catch (const std::exception& e) {
      verdict.pass = false;
      verdict.detail << "exception: " << e.what();
    }
    std::cout << "criterion " << c << ": " << (verdict.pass ? "PASS" : "FAIL") << " - " << verdict.detail.str()
              << std::endl;
    all = all && verdict.pass;
  }
  return all ? 0 : 1;
}
