#pragma once

#include <iosfwd>
#include <string>

#include "topospec/verify.hpp"

namespace topospec::cli {

// Executes the task described by a JSON run-config file. Prints a one-line
// summary to `out`; diagnostics go to `err`. Returns the process exit code:
// 0 success, 2 NoConvergence/NoRoots flags, 1 parse/generic errors, and the
// per-type codes of ErrorCode for module errors.
int run_config(const std::string& path, std::ostream& out, std::ostream& err);

// Factorial parameter sweep driven by the same config format (task "sweep").
int run_sweep(const std::string& path, std::ostream& out, std::ostream& err);

int run_verify(std::ostream& out, const VerifyOptions& opts = {});

// Catalog names and parameter schemas.
int run_list(std::ostream& out);

// Principal-bundle dimension of a catalog configuration.
int run_dim(const std::string& config_name, std::ostream& out, std::ostream& err);

// Shortest round-trip decimal rendering (<= 17 significant digits).
std::string render_double(double v);

} // namespace topospec::cli
