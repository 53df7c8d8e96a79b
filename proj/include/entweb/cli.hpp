#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace entweb::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kInputError = 2, kNumericError = 3 };

struct RunConfig {
  std::string command;
  std::string input;                  // state file (concurrence, region)
  std::string out;                    // empty: stdout
  std::string n_spec;                 // "5" or "3..8"
  int half_n = 2;
  std::array<int, 2> pair{1, 2};
  int grid_depth = 24;
  int refine_iters = 2000;
  int resolution = 12;
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  char separator = ',';
  double tol = 1e-6;
  bool formula_only = false;
  bool symmetric_pure = false;
  std::string web_kind;               // "w" or "ring"
  std::optional<std::array<double, 4>> weights; // A_x, A_y, A_z, A_0
};

/// Inclusive N range from "5" or "3..8".
std::array<int, 2> parse_n_range(const std::string &spec);

int cmd_concurrence(const RunConfig &cfg, std::ostream &out);
int cmd_verify_bound(const RunConfig &cfg, std::ostream &out);
int cmd_region(const RunConfig &cfg, std::ostream &out);
int cmd_web(const RunConfig &cfg, std::ostream &out);
int cmd_random_check(const RunConfig &cfg, std::ostream &out);

/// Parses arguments, runs the command and maps failures to exit codes.
int run(int argc, char **argv, std::ostream &out, std::ostream &err);

} // namespace entweb::cli
