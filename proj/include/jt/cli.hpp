#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jt
{
  /// Exit codes of the command-line tool.
  enum exit_code : int
  {
    exit_ok = 0,
    exit_violations = 1,
    exit_invalid = 2,
    exit_capacity = 3,
  };

  /// Runs one command line (without the program name) and returns its
  /// exit code. Subcommands: validate, complement, check-comp, solve,
  /// models, explain, fuzz.
  int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
}
