#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jrp::cli {

enum ExitCode : int {
  kOk = 0,
  kPropertyViolation = 1,
  kInputError = 2,
  kCapExceeded = 3,
  kConfigRejected = 4,
};

/// Runs `jrp-forge` with args[0] as the program name. Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jrp::cli
