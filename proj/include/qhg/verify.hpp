#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace qhg {

struct VerifyOptions {
  std::uint64_t seed = 42;
  double tolerance_scale = 1.0;  // multiplies every check's default tolerance
};

/// What a check measured. max_deviation is compared against the tolerance
/// with a strict "<".
struct CheckOutcome {
  double max_deviation = 0.0;
  std::string detail;
};

struct CheckDef {
  std::string id;
  std::string suite;
  std::string anchor;  // the identity or property being checked, in words
  double tolerance = 0.0;
  std::function<CheckOutcome(const VerifyOptions&)> run;
};

struct CheckRecord {
  std::string check_id;
  std::string suite;
  std::string paper_anchor;
  double max_deviation = 0.0;  // NaN when the check threw
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

const std::vector<CheckDef>& all_checks();

/// Suite names accepted by verify: every distinct CheckDef::suite plus "all".
std::vector<std::string> suite_names();
bool is_suite(const std::string& name);

/// Runs one check, turning exceptions into a failing record.
CheckRecord run_check(const CheckDef& def, const VerifyOptions& opts);

/// Runs the checks of a suite in parallel; records come back in registry order.
std::vector<CheckRecord> run_suite(const std::string& suite, const VerifyOptions& opts);

}  // namespace qhg
