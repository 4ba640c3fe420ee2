#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "gds/curvature.hpp"
#include "gds/error.hpp"
#include "gds/geometry.hpp"
#include "gds/oracles.hpp"
#include "gds/parallel.hpp"
#include "gds/profile_spec.hpp"
#include "gds/profiles.hpp"
#include "gds/rng.hpp"

namespace gds::cli {

namespace {

using geometry::ChartPoint;
using profiles::Profile;

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "command", "profile", "n",     "t-min",        "t-max",    "samples", "tol",
      "seed",    "out",     "format", "point",       "lambda-const", "quantity", "count"};
  return keys;
}

std::optional<Command> parse_command(std::string_view s) {
  if (s == "classify") return Command::Classify;
  if (s == "curvature") return Command::Curvature;
  if (s == "sweep") return Command::Sweep;
  if (s == "embed-check") return Command::EmbedCheck;
  return std::nullopt;
}

Format parse_format(std::string_view s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  throw Error(ErrorCode::ParseError, "format must be json or csv, got '" + std::string(s) + "'");
}

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw Error(ErrorCode::ParseError, "bad point coordinate '" + item + "'");
    }
    values.push_back(v);
  }
  return values;
}

SampleGrid grid_of(const RunConfig& config) {
  SampleGrid grid{config.t_min, config.t_max, config.samples};
  grid.validate();
  return grid;
}

std::vector<std::string> coordinate_names(int n) {
  std::vector<std::string> names{"t"};
  if (n == 3) {
    names.insert(names.end(), {"psi", "theta", "phi"});
  } else {
    for (int i = 1; i <= n; ++i) names.push_back("phi" + std::to_string(i));
  }
  return names;
}

Json matrix_json(const SquareMatrix<double>& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json christoffel_json(const Rank3<double>& gamma, const std::vector<std::string>& names) {
  Json entries = Json::array();
  const std::size_t d = gamma.dim();
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t m = 0; m < d; ++m) {
      for (std::size_t v = 0; v < d; ++v) {
        Json e = Json::object();
        e["label"] = "Gamma^" + names[r] + "_{" + names[m] + " " + names[v] + "}";
        e["index"] = Json::array({r, m, v});
        e["value"] = gamma(r, m, v);
        entries.push_back(std::move(e));
      }
    }
  }
  return entries;
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

// Interior angles used when only t matters: polar angles at pi/2, last at 1.
std::vector<double> reference_angles(int n) {
  std::vector<double> angles(static_cast<std::size_t>(n), std::numbers::pi / 2.0);
  angles.back() = 1.0;
  return angles;
}

}  // namespace

std::string to_string(Command command) {
  switch (command) {
    case Command::Classify: return "classify";
    case Command::Curvature: return "curvature";
    case Command::Sweep: return "sweep";
    case Command::EmbedCheck: return "embed-check";
  }
  return "classify";
}

std::string to_string(Format format) { return format == Format::Csv ? "csv" : "json"; }

void to_json(Json& j, const RunConfig& c) {
  j = Json::object();
  j["command"] = to_string(c.command);
  j["profile"] = c.profile_spec;
  j["n"] = c.n;
  j["t-min"] = c.t_min;
  j["t-max"] = c.t_max;
  j["samples"] = c.samples;
  j["tol"] = c.tol;
  j["seed"] = c.seed;
  if (c.out_path) j["out"] = *c.out_path;
  if (c.format) j["format"] = to_string(*c.format);
  if (!c.point.empty()) j["point"] = c.point;
  if (c.lambda_const) j["lambda-const"] = *c.lambda_const;
  j["quantity"] = c.quantity;
  j["count"] = c.count;
}

void from_json(const Json& j, RunConfig& c) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!known_keys().count(key)) throw Error(ErrorCode::ParseError, "unknown config key '" + key + "'");
  }
  try {
    if (j.contains("command")) {
      const auto cmd = parse_command(j.at("command").get<std::string>());
      if (!cmd) throw Error(ErrorCode::ParseError, "unknown command in config");
      c.command = *cmd;
    }
    if (j.contains("profile")) c.profile_spec = j.at("profile").get<std::string>();
    if (j.contains("n")) c.n = j.at("n").get<int>();
    if (j.contains("t-min")) c.t_min = j.at("t-min").get<double>();
    if (j.contains("t-max")) c.t_max = j.at("t-max").get<double>();
    if (j.contains("samples")) c.samples = j.at("samples").get<int>();
    if (j.contains("tol")) c.tol = j.at("tol").get<double>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("out")) c.out_path = j.at("out").get<std::string>();
    if (j.contains("format")) c.format = parse_format(j.at("format").get<std::string>());
    if (j.contains("point")) {
      const auto& p = j.at("point");
      c.point = p.is_string() ? parse_point(p.get<std::string>()) : p.get<std::vector<double>>();
    }
    if (j.contains("lambda-const")) c.lambda_const = j.at("lambda-const").get<double>();
    if (j.contains("quantity")) c.quantity = j.at("quantity").get<std::string>();
    if (j.contains("count")) c.count = j.at("count").get<int>();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("config: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Commands

int cmd_classify(const RunConfig& config, std::ostream& out) {
  const Profile profile = profiles::parse_profile(config.profile_spec);
  const SampleGrid grid = grid_of(config);
  const auto psi = profiles::check_psi(profile, grid);

  Json doc = Json::object();
  doc["profile"] = profiles::to_spec(profile);
  doc["in_psi"] = psi.in_psi;
  doc["in_psi_hat"] = psi.in_psi_hat;
  if (psi.in_psi) {
    const auto c = profiles::classify(profile, grid, config.tol);
    doc["character"] = std::string(profiles::to_string(c.kind));
    doc["beta_min"] = c.beta_min;
    doc["beta_max"] = c.beta_max;
  } else {
    double lo = INFINITY;
    double hi = -INFINITY;
    for (int i = 0; i < grid.count; ++i) {
      const double b = profiles::beta(profile, grid.at(i));
      lo = std::min(lo, b);
      hi = std::max(hi, b);
    }
    doc["character"] = nullptr;
    doc["beta_min"] = lo;
    doc["beta_max"] = hi;
  }
  doc["witness_t0"] = optional_number(psi.witness_t0);
  write_json(out, doc);
  return psi.in_psi ? kExitOk : kExitNotInPsi;
}

int cmd_curvature(const RunConfig& config, std::ostream& out) {
  const Profile profile = profiles::parse_profile(config.profile_spec);
  if (config.point.size() != static_cast<std::size_t>(config.n) + 1) {
    std::ostringstream msg;
    msg << "--point needs " << config.n + 1 << " coordinates, got " << config.point.size();
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
  const auto field = geometry::warped_metric(profile, config.n, grid_of(config));
  const ChartPoint point{config.point[0], std::vector<double>(config.point.begin() + 1, config.point.end())};
  const auto report = curvature::evaluate(field, point, config.lambda_const);
  const auto names = coordinate_names(config.n);

  Json doc = Json::object();
  doc["profile"] = profiles::to_spec(profile);
  doc["n"] = config.n;
  doc["point"] = config.point;
  doc["method"] = "jet";
  doc["christoffel"] = christoffel_json(report.christoffel, names);
  doc["ricci"] = matrix_json(report.ricci);
  doc["scalar"] = report.scalar;

  const auto lambda = profile.param("lambda");
  if (profile.family() == profiles::Family::Exponential && lambda && std::abs(*lambda) < 1.0 &&
      config.n == 3) {
    const oracles::ClosedForm4D cf(*lambda, *profile.param("r"));
    const auto gamma = oracles::christoffel_closed(cf, point);
    const auto ric = oracles::ricci_closed(cf, point);
    const double scalar = oracles::scalar_closed(cf, point.t);
    double deviation = std::abs(scalar - report.scalar);
    for (std::size_t r = 0; r < 4; ++r) {
      for (std::size_t m = 0; m < 4; ++m) {
        deviation = std::max(deviation, std::abs(ric(r, m) - report.ricci(r, m)));
        for (std::size_t v = 0; v < 4; ++v) {
          deviation = std::max(deviation, std::abs(gamma(r, m, v) - report.christoffel(r, m, v)));
        }
      }
    }
    Json oracle = Json::object();
    oracle["christoffel"] = christoffel_json(gamma, names);
    oracle["ricci"] = matrix_json(ric);
    oracle["scalar"] = scalar;
    doc["oracle"] = std::move(oracle);
    doc["max_deviation"] = deviation;
  } else {
    doc["oracle"] = nullptr;
    doc["max_deviation"] = nullptr;
  }
  doc["lambda_const"] = optional_number(config.lambda_const);
  doc["einstein_residual"] = optional_number(report.einstein_residual);
  write_json(out, doc);
  return kExitOk;
}

int cmd_sweep(const RunConfig& config, std::ostream& out) {
  const Profile profile = profiles::parse_profile(config.profile_spec);
  const SampleGrid grid = grid_of(config);
  const std::string& q = config.quantity;
  if (q != "scalar" && q != "beta" && q != "radius") {
    throw Error(ErrorCode::InvalidArgument, "quantity must be scalar, beta or radius, got '" + q + "'");
  }
  std::vector<double> ts(static_cast<std::size_t>(grid.count));
  for (int i = 0; i < grid.count; ++i) ts[static_cast<std::size_t>(i)] = grid.at(i);
  std::vector<double> values(ts.size());

  if (q == "scalar") {
    const auto field = geometry::warped_metric(profile, config.n, grid);
    const auto angles = reference_angles(config.n);
    parallel_for(ts.size(), [&](std::size_t i) {
      values[i] = curvature::scalar_curvature(field, ChartPoint{ts[i], angles});
    });
  } else if (q == "beta") {
    parallel_for(ts.size(), [&](std::size_t i) { values[i] = profiles::beta(profile, ts[i]); });
  } else {
    parallel_for(ts.size(), [&](std::size_t i) { values[i] = profiles::radius(profile, ts[i]); });
  }

  if (config.format.value_or(Format::Csv) == Format::Csv) {
    out << "t,value\n";
    for (std::size_t i = 0; i < ts.size(); ++i) {
      out << format_number(ts[i]) << ',' << format_number(values[i]) << '\n';
    }
  } else {
    Json doc = Json::object();
    doc["profile"] = profiles::to_spec(profile);
    doc["quantity"] = q;
    Json rows = Json::array();
    for (std::size_t i = 0; i < ts.size(); ++i) {
      Json row = Json::object();
      row["t"] = ts[i];
      row["value"] = values[i];
      rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);
    write_json(out, doc);
  }
  return kExitOk;
}

int cmd_embed_check(const RunConfig& config, std::ostream& out) {
  const Profile profile = profiles::parse_profile(config.profile_spec);
  const SampleGrid grid = grid_of(config);
  if (config.count < 1) throw Error(ErrorCode::InvalidArgument, "--count must be at least 1");
  if (config.n < 1) throw Error(ErrorCode::InvalidArgument, "--n must be at least 1");
  const auto psi = profiles::check_psi(profile, grid);
  if (!psi.in_psi) {
    std::ostringstream msg;
    msg << "profile is not in Psi; h' changes sign near t=" << psi.witness_t0.value_or(NAN);
    throw Error(ErrorCode::NotInPsi, msg.str());
  }

  const auto n = static_cast<std::size_t>(config.n);
  const double margin = geometry::kChartMargin;
  struct Sample {
    ChartPoint point;
    std::vector<double> u, v;
  };
  // Draw everything up front from one generator so the sequence does not
  // depend on scheduling. Sample 0 is the north pole at t = 0.
  std::vector<Sample> samples(static_cast<std::size_t>(config.count));
  samples[0].point = ChartPoint{0.0, std::vector<double>(n, 0.0)};
  Xoshiro256 rng(config.seed);
  for (std::size_t i = 1; i < samples.size(); ++i) {
    Sample& s = samples[i];
    s.point.t = rng.uniform(config.t_min, config.t_max);
    s.point.angles.resize(n);
    for (std::size_t k = 0; k + 1 < n; ++k) s.point.angles[k] = rng.uniform(margin, std::numbers::pi - margin);
    s.point.angles[n - 1] = rng.uniform(margin, 2.0 * std::numbers::pi - margin);
    s.u.resize(n + 1);
    s.v.resize(n + 1);
    for (double& x : s.u) x = rng.uniform(-1.0, 1.0);
    for (double& x : s.v) x = rng.uniform(-1.0, 1.0);
  }

  struct Result {
    double residual = 0.0;
    double pullback = 0.0;
    double round_trip = 0.0;
  };
  std::vector<Result> results(samples.size());
  const double inf = std::numeric_limits<double>::infinity();
  parallel_for(samples.size(), [&](std::size_t i) {
    const Sample& s = samples[i];
    Result& r = results[i];
    const auto x = geometry::embed(profile, s.point);
    double norm2 = 0.0;
    for (double c : x.x) norm2 += c * c;
    try {
      r.residual = std::abs(geometry::defining_residual(profile, x)) / (1.0 + norm2);
    } catch (const Error&) {
      r.residual = inf;
    }
    try {
      const ChartPoint back = geometry::embed_inverse(profile, x);
      double err = std::abs(back.t - s.point.t);
      for (std::size_t k = 0; k < n; ++k) err = std::max(err, std::abs(back.angles[k] - s.point.angles[k]));
      r.round_trip = err;
    } catch (const Error&) {
      r.round_trip = inf;
    }
    if (i > 0) {
      const auto pair = geometry::pullback_check(profile, s.point, s.u, s.v);
      const auto g = geometry::MetricField(profile, config.n).metric(s.point);
      double scale = 1.0;
      for (std::size_t k = 0; k <= n; ++k) scale += std::abs(s.u[k] * g(k, k) * s.v[k]);
      r.pullback = std::abs(pair.g_uv - pair.eta_uv) / scale;
    }
  });

  Result worst;
  for (const auto& r : results) {
    worst.residual = std::max(worst.residual, r.residual);
    worst.pullback = std::max(worst.pullback, r.pullback);
    worst.round_trip = std::max(worst.round_trip, r.round_trip);
  }
  const bool pass = worst.residual <= config.tol && worst.pullback <= config.tol && worst.round_trip <= config.tol;

  Json doc = Json::object();
  doc["profile"] = profiles::to_spec(profile);
  doc["n"] = config.n;
  doc["count"] = config.count;
  doc["seed"] = config.seed;
  doc["t_min"] = config.t_min;
  doc["t_max"] = config.t_max;
  doc["tol"] = config.tol;
  doc["max_defining_residual"] = worst.residual;
  doc["max_pullback_deviation"] = worst.pullback;
  doc["max_round_trip_error"] = worst.round_trip;
  doc["pass"] = pass;
  write_json(out, doc);
  return pass ? kExitOk : kExitVerificationFailed;
}

// ---------------------------------------------------------------------------
// Dispatch

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::ostringstream buffer;
  int code = kExitOk;
  try {
    if (config.format == Format::Csv && config.command != Command::Sweep) {
      throw Error(ErrorCode::InvalidArgument, "csv output is only available for sweep");
    }
    switch (config.command) {
      case Command::Classify: code = cmd_classify(config, buffer); break;
      case Command::Curvature: code = cmd_curvature(config, buffer); break;
      case Command::Sweep: code = cmd_sweep(config, buffer); break;
      case Command::EmbedCheck: code = cmd_embed_check(config, buffer); break;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::NotInPsi: return kExitNotInPsi;
      case ErrorCode::DegenerateMetric: return kExitDegenerate;
      default: return kExitUsage;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (config.out_path) {
    std::ofstream file(*config.out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << *config.out_path << " for writing\n";
      return kExitUsage;
    }
    file << buffer.str();
  } else {
    out << buffer.str();
  }
  return code;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized de Sitter hypersurfaces: admissibility, causal character, curvature"};
  app.require_subcommand(1);

  RunConfig flags;
  std::string format;
  std::string point;
  std::string config_path;
  struct Bound {
    CLI::Option* option;
    std::function<void(RunConfig&)> apply;
  };
  std::vector<std::pair<CLI::App*, std::vector<Bound>>> commands;

  auto add_command = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    std::vector<Bound> bound;
    auto bind = [&bound](CLI::Option* opt, std::function<void(RunConfig&)> apply) {
      bound.push_back({opt, std::move(apply)});
    };
    bind(sub->add_option("--profile", flags.profile_spec, "profile, e.g. exp:r=1,lambda=0.5"),
         [&](RunConfig& c) { c.profile_spec = flags.profile_spec; });
    bind(sub->add_option("--n", flags.n, "sphere dimension (default 3)"), [&](RunConfig& c) { c.n = flags.n; });
    bind(sub->add_option("--t-min", flags.t_min, "grid start (default -10)"),
         [&](RunConfig& c) { c.t_min = flags.t_min; });
    bind(sub->add_option("--t-max", flags.t_max, "grid end (default 10)"),
         [&](RunConfig& c) { c.t_max = flags.t_max; });
    bind(sub->add_option("--samples", flags.samples, "grid points (default 2001)"),
         [&](RunConfig& c) { c.samples = flags.samples; });
    bind(sub->add_option("--tol", flags.tol, "tolerance (default 1e-9)"), [&](RunConfig& c) { c.tol = flags.tol; });
    bind(sub->add_option("--seed", flags.seed, "random seed (default 42)"),
         [&](RunConfig& c) { c.seed = flags.seed; });
    bind(sub->add_option("--out", [&](const CLI::results_t& r) { flags.out_path = r.at(0); return true; },
                         "write output to this file"),
         [&](RunConfig& c) { c.out_path = flags.out_path; });
    bind(sub->add_option("--format", format, "json or csv"),
         [&](RunConfig& c) { c.format = parse_format(format); });
    sub->add_option("--config", config_path, "JSON file whose keys mirror the flag names");
    commands.push_back({sub, std::move(bound)});
    return sub;
  };

  CLI::App* classify = add_command("classify", "Psi membership and causal character");
  CLI::App* curvature = add_command("curvature", "Christoffel, Ricci and scalar curvature at a point");
  CLI::App* sweep = add_command("sweep", "tabulate scalar, beta or radius over the grid");
  CLI::App* embed = add_command("embed-check", "verify the Minkowski embedding at random points");

  commands[1].second.push_back(
      {curvature->add_option("--point", point, "t,phi_1,...,phi_n"), [&](RunConfig& c) { c.point = parse_point(point); }});
  double lambda_const = 0.0;
  commands[1].second.push_back({curvature->add_option("--lambda-const", lambda_const, "cosmological constant"),
                                [&](RunConfig& c) { c.lambda_const = lambda_const; }});
  commands[2].second.push_back({sweep->add_option("--quantity", flags.quantity, "scalar, beta or radius"),
                                [&](RunConfig& c) { c.quantity = flags.quantity; }});
  commands[3].second.push_back({embed->add_option("--count", flags.count, "number of sample points (default 100)"),
                                [&](RunConfig& c) { c.count = flags.count; }});
  (void)classify;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  RunConfig config;
  try {
    for (std::size_t k = 0; k < commands.size(); ++k) {
      CLI::App* sub = commands[k].first;
      if (!sub->parsed()) continue;
      if (!config_path.empty()) {
        std::ifstream file(config_path);
        if (!file) throw Error(ErrorCode::ParseError, "cannot read config file " + config_path);
        Json j;
        try {
          j = Json::parse(file);
        } catch (const Json::exception& e) {
          throw Error(ErrorCode::ParseError, std::string("config file: ") + e.what());
        }
        from_json(j, config);
      }
      config.command = *parse_command(sub->get_name());
      for (const auto& b : commands[k].second) {
        if (b.option->count() > 0) b.apply(config);
      }
    }
    if (config.profile_spec.empty()) throw Error(ErrorCode::ParseError, "--profile is required");
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return execute(config, out, err);
}

}  // namespace gds::cli
