#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "spheroconal/asymmetry.hpp"

namespace spheroconal::cli {

enum ExitCode : int { kOk = 0, kInvariantFailure = 1, kBadParameters = 2, kOracleMismatch = 3 };

enum class Format { json, csv };

struct RunConfig {
  std::optional<double> e1;
  std::optional<std::vector<double>> moments;
  int lmax = 0;
  std::optional<int> ell;
  std::vector<std::string> operators;
  Format format = Format::json;
  std::string out_path;
  bool verify = false;
  std::string inject_fault;
};

/// Parses argv, dispatches to spectrum / ladder / verify and writes the result to
/// `out` (or --out). Diagnostics go to `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_spectrum(const RunConfig& run, std::ostream& out, std::ostream& err);
int cmd_ladder(const RunConfig& run, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& run, std::ostream& out, std::ostream& err);

/// Builds the asymmetry configuration from exactly one of --e1 / --moments.
AsymmetryConfig resolve_config(const RunConfig& run);

}  // namespace spheroconal::cli
