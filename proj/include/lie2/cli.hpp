#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lie2/lie2_core.hpp"

namespace lie2 {

/// Exit codes of `run`.
enum ExitCode : int { kPass = 0, kViolation = 1, kInputError = 2 };

/// Runs one command line (without the program name), writing the report to
/// `out` and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// abelian, string-sl2, endo-1-1, skeletal-demo.
const std::vector<std::string>& example_names();
Lie2Algebra<Rat> example_algebra(const std::string& name);

/// A readable file wins over an example of the same name.
Lie2Algebra<Rat> load_algebra(const std::string& path_or_name);

}  // namespace lie2
