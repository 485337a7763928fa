#pragma once

#include <map>
#include <string>
#include <vector>

#include "wavemap/grid.hpp"
#include "wavemap/model.hpp"

namespace wavemap {

enum class Method { RK4, Rattle };
enum class InitialData { Ring, StaticSouth, StaticNorth };

std::string to_string(Method m);
Method method_from_string(const std::string& s);
std::string to_string(InitialData d);
InitialData initial_data_from_string(const std::string& s);

/// Every physical and numerical parameter of one evolution.
struct RunConfig {
    InitialDataParams data;  // amplitude, r1, r2, n
    int grid_n = 0;
    Domain domain = Domain::Full;
    Method method = Method::Rattle;
    InitialData initial = InitialData::Ring;
    double cfl = 0.2;
    double t_end = 1.6;
    double tol = 1e-12;
    int max_iter = 100;
    int sample_stride = 1;
    std::vector<double> snapshot_times;
    std::string out = ".";
    bool energy_correction = true;
    // keep the -lambda*phi term in the energy density
    bool energy_lambda_phi = true;
    bool stop_on_flip = false;

    /// Throws ConfigError naming the offending key.
    void validate() const;
};

/// Parses a flat `key = value` document. Blank lines and `#` comments are
/// ignored; unknown keys are rejected. `amplitude` and `grid_n` are required.
RunConfig parse_config(const std::string& text);

/// As above, with `overrides` applied after the document's own keys.
RunConfig parse_config(const std::string& text, const std::map<std::string, std::string>& overrides);

/// Inverse of parse_config; every key is written, doubles with 17 digits.
std::string format_config(const RunConfig& cfg);

/// Applies a single key/value pair (shared by the file parser and CLI flags).
void apply_config_key(RunConfig& cfg, const std::string& key, const std::string& value);

std::string format_double(double v);

} // namespace wavemap
