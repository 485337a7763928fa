#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "wavemap/config.hpp"
#include "wavemap/diagnostics.hpp"
#include "wavemap/integrate.hpp"

namespace wavemap {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr const char* kSeriesHeader = "t,phi_max,psi_max,origin_dev,energy,energy_rel,delta_e,s,min_w";

/// CSV with kSeriesHeader; 17 significant digits; an absent s is an empty cell.
std::string format_series(const std::vector<DiagnosticsRecord>& records);
std::vector<DiagnosticsRecord> parse_series(const std::string& text);

void write_series(const std::filesystem::path& path, const std::vector<DiagnosticsRecord>& records);
std::vector<DiagnosticsRecord> read_series(const std::filesystem::path& path);

/// Interior nodes of one field as CSV: one row per y index, x along columns.
std::string format_field_csv(const ScalarField& field);

/// Writes <stem>_<field>.csv for all six fields plus <stem>.json holding the
/// config echo, time and grid. Returns the paths written.
std::vector<std::filesystem::path> write_snapshot(const std::filesystem::path& dir, const std::string& stem,
                                                  const FieldState& state, const RunConfig& cfg, const Grid2D& grid);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

} // namespace wavemap
