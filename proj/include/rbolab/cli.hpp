#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rbolab/lie_algebra.hpp"

namespace rbolab::cli {

/// Exit codes of run().
inline constexpr int kOk = 0;
inline constexpr int kVerificationFailed = 1;
inline constexpr int kInputError = 2;

/// Names accepted by --algebra besides @file.json.
const std::vector<std::string>& builtin_names();

/// Throws InputError listing the registry for unknown names.
LieAlgebra builtin_algebra(const std::string& name);

/// Runs one command.  `args` excludes the program name.  JSON goes to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rbolab::cli
