#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qhg/core.hpp"

namespace qhg {

inline constexpr const char* kVersion = "0.1.0";

enum class Command { eval, verify, sweep };
enum class OutputFormat { json, csv };

struct SweepAxis {
  std::string name;  // a parameter flag without dashes, e.g. "z-re"
  double start = 0.0, stop = 0.0;
  int count = 0;

  /// Parses NAME:START:STOP:N.
  static SweepAxis parse(const std::string& text);
  double at(int i) const;
};

struct RunSpec {
  Command command = Command::eval;
  std::string target;  // evaluation target, or suite name for verify
  std::map<std::string, double> params;
  std::vector<SweepAxis> sweeps;
  OutputFormat format = OutputFormat::json;
  std::string out_path;
  std::uint64_t seed = 42;
  std::optional<double> tol;
  bool reproducible = false;
};

/// Parameter flags accepted by eval and sweep.
const std::vector<std::string>& parameter_names();
const std::vector<std::string>& target_names();

/// Process exit codes.
enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 1, kExitInput = 2, kExitAccuracy = 3 };
int exit_code_for(ErrorKind kind);

/// Tolerance used by eval and sweep when --tol is absent: QHG_DEFAULT_TOL or 1e-11.
double default_tolerance();

/// Parses argv. Throws Error(domain) on malformed input; returns nullopt when
/// --help or --version printed something and the process should exit 0.
std::optional<RunSpec> parse_run_spec(int argc, const char* const* argv, std::ostream& info);

/// Executes a parsed RunSpec and writes the report to `out`. Returns the process exit code.
int run(const RunSpec& spec, std::ostream& out);

/// parse_run_spec + run, with --out handling and error reporting on `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qhg
