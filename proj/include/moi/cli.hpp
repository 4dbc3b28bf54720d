#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "moi/campaign.hpp"

namespace moi::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kInputError = 2, kCapExceeded = 3 };

struct EvalOptions {
  std::string instance;
  std::string out;  // empty: stdout
  bool oracle = false;
  std::size_t tuple_cap = kDefaultTupleCap;
};

/// Writes {"result", "schatten": {"1", "2", "inf"}, "rep_norm_bound"} and, when
/// the file names exponents, the matching "bound" report.
int cmd_eval(const EvalOptions& opt, std::ostream& out, std::ostream& err);

struct VerifyOptions {
  CampaignConfig config;
  std::string repro_path = "moi-repro.json";
};

/// Runs every suite and prints "suite trials worst pass" rows. On failure the
/// first failing trial is written to repro_path.
int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err);

struct SweepOptions {
  std::size_t arity = 3;
  std::string regime = "mixed";
  std::string p1 = "4";
  std::string pm1 = "2";
  /// Exponents, "inf", or multiples of the sharp exponent: "r", "0.8r", "r/2".
  std::vector<std::string> s = {"r"};
  std::vector<std::size_t> dims;
  std::string out;  // empty: stdout
};

int cmd_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err);

/// Parses an s token against the sharp exponent r.
SchattenExponent parse_sweep_exponent(const std::string& token, SchattenExponent r);

/// MOI_MAX_TUPLES if set (throws InvalidInput on a malformed value).
std::optional<std::size_t> tuple_cap_from_env();

/// Full command line: `eval`, `verify` or `sweep` subcommands.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace moi::cli
