#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace septree {

// Command-line driver.  `args` excludes the program name.  Returns the
// process exit code: 0 on success, 1 on domain errors (diagnostics on
// `err`), 2 on parse or usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace septree
