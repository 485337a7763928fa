#include "wavemap/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace wavemap {

std::string to_string(Method m) { return m == Method::RK4 ? "rk4" : "rattle"; }

Method method_from_string(const std::string& s) {
    if (s == "rk4") return Method::RK4;
    if (s == "rattle") return Method::Rattle;
    throw ConfigError("method: expected 'rk4' or 'rattle', got '" + s + "'");
}

std::string to_string(InitialData d) {
    switch (d) {
    case InitialData::Ring: return "ring";
    case InitialData::StaticSouth: return "static_south";
    case InitialData::StaticNorth: return "static_north";
    }
    return "ring";
}

InitialData initial_data_from_string(const std::string& s) {
    if (s == "ring") return InitialData::Ring;
    if (s == "static_south") return InitialData::StaticSouth;
    if (s == "static_north") return InitialData::StaticNorth;
    throw ConfigError("initial_data: expected ring, static_south or static_north, got '" + s + "'");
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double out = 0.0;
    try {
        out = std::stod(value, &used);
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected a number, got '" + value + "'");
    }
    if (used != value.size()) throw ConfigError(key + ": expected a number, got '" + value + "'");
    return out;
}

int parse_int(const std::string& key, const std::string& value) {
    int out = 0;
    const auto* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end) throw ConfigError(key + ": expected an integer, got '" + value + "'");
    return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError(key + ": expected true or false, got '" + value + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(key, item));
    }
    return out;
}

} // namespace

void apply_config_key(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "amplitude") cfg.data.amplitude = parse_double(key, value);
    else if (key == "r1") cfg.data.r1 = parse_double(key, value);
    else if (key == "r2") cfg.data.r2 = parse_double(key, value);
    else if (key == "n") cfg.data.n = parse_int(key, value);
    else if (key == "grid_n") cfg.grid_n = parse_int(key, value);
    else if (key == "domain") cfg.domain = domain_from_string(value);
    else if (key == "method") cfg.method = method_from_string(value);
    else if (key == "initial_data") cfg.initial = initial_data_from_string(value);
    else if (key == "cfl") cfg.cfl = parse_double(key, value);
    else if (key == "t_end") cfg.t_end = parse_double(key, value);
    else if (key == "tol") cfg.tol = parse_double(key, value);
    else if (key == "max_iter") cfg.max_iter = parse_int(key, value);
    else if (key == "sample_stride") cfg.sample_stride = parse_int(key, value);
    else if (key == "snapshot_times") cfg.snapshot_times = parse_list(key, value);
    else if (key == "out") cfg.out = value;
    else if (key == "energy_correction") cfg.energy_correction = parse_bool(key, value);
    else if (key == "energy_lambda_phi") cfg.energy_lambda_phi = parse_bool(key, value);
    else if (key == "stop_on_flip") cfg.stop_on_flip = parse_bool(key, value);
    else throw ConfigError("unknown key '" + key + "'");
}

void RunConfig::validate() const {
    data.validate();
    if (grid_n < min_evolution_nodes)
        throw ConfigError("grid_n: need at least " + std::to_string(min_evolution_nodes) + " nodes, got " +
                          std::to_string(grid_n));
    if (grid_n % 2 == 0) throw ConfigError("grid_n: must be odd, got " + std::to_string(grid_n));
    if (!(cfl > 0.0 && std::isfinite(cfl))) throw ConfigError("cfl: must be positive");
    if (!(t_end > 0.0 && std::isfinite(t_end))) throw ConfigError("t_end: must be positive");
    if (!(tol > 0.0)) throw ConfigError("tol: must be positive");
    if (max_iter < 1) throw ConfigError("max_iter: must be at least 1");
    if (sample_stride < 1) throw ConfigError("sample_stride: must be at least 1");
    for (double t : snapshot_times)
        if (!(t >= 0.0 && t <= t_end)) throw ConfigError("snapshot_times: " + format_double(t) + " outside [0, t_end]");
}

RunConfig parse_config(const std::string& text) { return parse_config(text, {}); }

RunConfig parse_config(const std::string& text, const std::map<std::string, std::string>& overrides) {
    RunConfig cfg;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!seen.insert(key).second) throw ConfigError(key + ": given more than once");
        apply_config_key(cfg, key, value);
    }
    for (const auto& [key, value] : overrides) {
        apply_config_key(cfg, key, value);
        seen.insert(key);
    }
    for (const char* required : {"amplitude", "grid_n"})
        if (!seen.count(required)) throw ConfigError(std::string(required) + ": required key missing");
    cfg.validate();
    return cfg;
}

std::string format_config(const RunConfig& cfg) {
    std::ostringstream out;
    out << "amplitude = " << format_double(cfg.data.amplitude) << '\n'
        << "r1 = " << format_double(cfg.data.r1) << '\n'
        << "r2 = " << format_double(cfg.data.r2) << '\n'
        << "n = " << cfg.data.n << '\n'
        << "grid_n = " << cfg.grid_n << '\n'
        << "domain = " << to_string(cfg.domain) << '\n'
        << "method = " << to_string(cfg.method) << '\n'
        << "initial_data = " << to_string(cfg.initial) << '\n'
        << "cfl = " << format_double(cfg.cfl) << '\n'
        << "t_end = " << format_double(cfg.t_end) << '\n'
        << "tol = " << format_double(cfg.tol) << '\n'
        << "max_iter = " << cfg.max_iter << '\n'
        << "sample_stride = " << cfg.sample_stride << '\n'
        << "snapshot_times = ";
    for (std::size_t i = 0; i < cfg.snapshot_times.size(); ++i)
        out << (i ? "," : "") << format_double(cfg.snapshot_times[i]);
    out << '\n'
        << "out = " << cfg.out << '\n'
        << "energy_correction = " << (cfg.energy_correction ? "true" : "false") << '\n'
        << "energy_lambda_phi = " << (cfg.energy_lambda_phi ? "true" : "false") << '\n'
        << "stop_on_flip = " << (cfg.stop_on_flip ? "true" : "false") << '\n';
    return out.str();
}

} // namespace wavemap
