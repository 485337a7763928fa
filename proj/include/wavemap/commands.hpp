#pragma once

#include <iosfwd>
#include <string>
#include <utility>

#include "wavemap/config.hpp"

namespace wavemap {

/// Subcommand bodies behind the `wavemap` executable. Each prints to `out`
/// and `err` and returns the process exit status.

/// Evolves, writes <out>/series.csv and snapshots, prints a summary line.
/// Nonzero on projection failure, non-finite values or I/O errors.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Runs RK4 and Rattle on the same config; writes <out>/compare.csv with a
/// leading method column.
int compare_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

int critical_search_command(const RunConfig& cfg, double a_lo, double a_hi, double tol_a, std::ostream& out,
                            std::ostream& err);

int fit_scaling_command(const std::string& series_path, std::pair<double, double> window, std::ostream& out,
                        std::ostream& err);

/// Evolves the static solution and reports the interior drift of w.
int static_check_command(const RunConfig& cfg, double region, std::ostream& out, std::ostream& err);

} // namespace wavemap
