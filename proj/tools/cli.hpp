#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "boolelab/sentence.hpp"
#include "boolelab/derivation.hpp"

namespace boolelab::cli {

enum ExitCode : int {
  kAffirmative = 0,
  kNegative = 1,
  kUsage = 2,
  kCapExceeded = 3,
};

/// One ground argument: `premiss:` lines, one `conclude:` line, and the
/// optional `vars:`, `mode:` and `max_n:` lines. Throws FormatError.
struct Problem {
  std::optional<std::vector<std::string>> vars;
  std::vector<Equation> premisses;
  Equation conclusion;
  TraceMode mode = TraceMode::Hailperin;
  std::optional<unsigned> max_n;
};

Problem parse_problem(std::string_view text);

/// Runs the command line `args` (without the program name). Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace boolelab::cli
