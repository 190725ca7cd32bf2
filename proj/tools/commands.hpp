#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "lotalloc/parallel.hpp"
#include "lotalloc/welfare.hpp"

namespace lotalloc::cli {

enum ExitCode {
  kOk = 0,
  kUsage = 2,
  kParse = 3,
  kResource = 4,
  kPolicy = 5,
};

/// Bad flag value or unknown literal.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// `borda`, `lex` or `custom:<file>`.
ScoringSpec parse_scoring_literal(const std::string& text);

/// Turn sequence in plain digits ("12332"), comma form ("1,2,10") or table
/// notation where [k] stands for 12...k ("[3]321" -> 123321).
SequentialPolicy parse_turns(const std::string& text);

/// `all`, `loser` or `seq:<turns>`.
ParallelPolicy parse_policy_literal(const std::string& text);

/// `xyz` over {u,e}, or `em-u` / `em-e`.
WelfareCriterion parse_criterion_literal(const std::string& text);

/// Per-cell seconds, honoring ALLOC_BUDGET_SECS when set.
double cell_budget_seconds(double fallback);

/// Runs the command line and returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lotalloc::cli
