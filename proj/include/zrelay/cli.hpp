#pragma once

// Command-line front door. Commands return the process exit code:
//   0  success
//   1  hazards / validation failure (including runtime hazards)
//   2  parse error
//   3  vector expectation or verification mismatch
//   4  usage error (bad flags, unknown port, width out of range, ...)

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace zrelay::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_hazards = 1,
  exit_parse_error = 2,
  exit_mismatch = 3,
  exit_usage = 4,
};

struct RunOptions {
  std::vector<std::string> inputs;  // NAME=BITS
  std::uint64_t cycles = 1;
  std::optional<std::string> trace_path;
  double hz = 5.0;
};

int cmd_check(const std::string& file, std::ostream& out, std::ostream& err);
int cmd_run(const std::string& file, const RunOptions& options, std::ostream& out,
            std::ostream& err);
int cmd_truthtable(const std::string& file, const std::string& probe, std::ostream& out,
                   std::ostream& err);
int cmd_verify_adder(std::size_t width, std::ostream& out, std::ostream& err);

/// Full argv-style dispatch (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zrelay::cli
