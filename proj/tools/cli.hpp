#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json_writer.hpp"

namespace gds::cli {

enum class Command { Classify, Curvature, Sweep, EmbedCheck };
enum class Format { Json, Csv };

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitNotInPsi = 2,
  kExitDegenerate = 3,
  kExitVerificationFailed = 4,
};

struct RunConfig {
  Command command = Command::Classify;
  std::string profile_spec;
  int n = 3;
  double t_min = -10.0;
  double t_max = 10.0;
  int samples = 2001;
  double tol = 1e-9;
  std::uint64_t seed = 42;
  std::optional<std::string> out_path;
  std::optional<Format> format;  // sweep defaults to csv, the rest to json

  // Per-command inputs.
  std::vector<double> point;          // curvature: t, phi_1, ..., phi_n
  std::optional<double> lambda_const; // curvature
  std::string quantity = "scalar";    // sweep: scalar | beta | radius
  int count = 100;                    // embed-check
};

std::string to_string(Command command);
std::string to_string(Format format);

/// Keys mirror the long flag names (profile, t-min, lambda-const, ...).
void to_json(Json& j, const RunConfig& config);
/// Reads only the keys present; throws Error(ParseError) on a bad value.
void from_json(const Json& j, RunConfig& config);

/// Each command writes its document to `out` and returns an exit code.
int cmd_classify(const RunConfig& config, std::ostream& out);
int cmd_curvature(const RunConfig& config, std::ostream& out);
int cmd_sweep(const RunConfig& config, std::ostream& out);
int cmd_embed_check(const RunConfig& config, std::ostream& out);

/// Dispatches on config.command, honours out_path, and maps library errors
/// to exit codes with a message on `err`.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command line entry point.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gds::cli
