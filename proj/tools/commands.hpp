#pragma once

// Command dispatch for the dihedral tool, separate from argument parsing so
// tests can drive it directly.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace dihedral::cli {

enum ExitCode
{
  kOk = 0,
  kConfig = 2,
  kNotStabilized = 3,
  kVerification = 4
};

struct RunConfig
{
  std::string command;
  std::string system_path;
  std::string out_path;
  std::optional<int> max_level;
  std::optional<std::string> eps;
  std::optional<std::string> K;
  std::string method = "comp";
  std::uint64_t seed = 1;
  // folner
  std::optional<std::int64_t> m;
  bool check_transversal = false;
  std::optional<std::string> ratio;
  // castle
  std::optional<std::string> base;
};

/// Runs one command; writes JSON to out_path or `out`, diagnostics to `err`.
int run(RunConfig const &config, std::ostream &out, std::ostream &err);

} // namespace dihedral::cli
