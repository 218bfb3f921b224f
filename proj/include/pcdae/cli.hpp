#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pcdae {

enum ExitCode : int {
    kExitOk = 0,
    kExitDiverged = 1,
    kExitConfig = 2,
    kExitIo = 3,
};

/// Subcommands run, compare, converge and bench. `args` excludes the
/// program name. Errors are reported on `err` and mapped to ExitCode.
[[nodiscard]] int run_cli(const std::vector<std::string>& args, std::ostream& out,
                          std::ostream& err);

}  // namespace pcdae
