#pragma once

#include <ostream>

#include "config.hpp"
#include "report.hpp"

namespace wrtwist::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;

// Runs one subcommand. Reports go to `out`, diagnostics to `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// The JSON report a subcommand would print, plus its exit status.
struct CommandResult {
  Json report;
  int exit_code = kExitOk;
};
CommandResult run_command(const RunConfig& cfg);

// Rows separated by ';', rationals by ','; three rows of three entries.
Basis3 parse_coords(const FieldPtr& field, const std::string& text);

}  // namespace wrtwist::cli
