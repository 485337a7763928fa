#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wavemap/commands.hpp"
#include "wavemap/io.hpp"

namespace {

struct ConfigFlags {
    std::string config_path;
    std::map<std::string, std::string> values;
    std::vector<std::string> extra;  // key=value pairs from --set

    void attach(CLI::App& app) {
        app.add_option("-c,--config", config_path, "flat key = value config file");
        flag(app, "--amplitude", "amplitude", "ring amplitude A");
        flag(app, "--grid-n", "grid_n", "nodes per axis (odd)");
        flag(app, "--method", "method", "rk4 or rattle");
        flag(app, "--domain", "domain", "full or quarter");
        flag(app, "--cfl", "cfl", "dt / h");
        flag(app, "--t-end", "t_end", "final time");
        flag(app, "--tol", "tol", "Rattle constraint tolerance");
        flag(app, "--out", "out", "output directory");
        app.add_option("--set", extra, "any other config key as key=value");
    }

    void flag(CLI::App& app, const std::string& name, const std::string& key, const std::string& help) {
        app.add_option_function<std::string>(
            name, [this, key](const std::string& v) { values[key] = v; }, help);
    }

    // `fallback` fills keys the file and flags leave unset (e.g. an amplitude
    // that the subcommand replaces anyway)
    wavemap::RunConfig build(const std::map<std::string, std::string>& fallback = {}) const {
        std::map<std::string, std::string> overrides = values;
        for (const std::string& kv : extra) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw wavemap::ConfigError("--set expects key=value, got '" + kv + "'");
            overrides[kv.substr(0, eq)] = kv.substr(eq + 1);
        }
        const std::string text = config_path.empty() ? std::string() : wavemap::read_text(config_path);
        for (const auto& [key, value] : fallback)
            if (!overrides.count(key) && !defines(text, key)) overrides[key] = value;
        return wavemap::parse_config(text, overrides);
    }

    static bool defines(const std::string& text, const std::string& key) {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            const auto b = line.find_first_not_of(" \t");
            if (b == std::string::npos || line.compare(b, key.size(), key) != 0) continue;
            const auto after = line.find_first_not_of(" \t", b + key.size());
            if (after != std::string::npos && line[after] == '=') return true;
        }
        return false;
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Equivariant wave maps into S^2: RK4 versus Rattle"};
    app.require_subcommand(1);

    ConfigFlags run_flags, compare_flags, search_flags, static_flags;

    auto* run = app.add_subcommand("run", "evolve one configuration");
    run_flags.attach(*run);

    auto* compare = app.add_subcommand("compare", "evolve with RK4 and Rattle, merged series");
    compare_flags.attach(*compare);

    auto* search = app.add_subcommand("critical-search", "bisect the amplitude separating dispersal from flip");
    search_flags.attach(*search);
    double a_lo = 0.7, a_hi = 0.9, tol_a = 1e-4;
    search->add_option("--lo", a_lo, "subcritical amplitude")->capture_default_str();
    search->add_option("--hi", a_hi, "supercritical amplitude")->capture_default_str();
    search->add_option("--tol-a", tol_a, "bracket width to stop at")->capture_default_str();

    auto* fit = app.add_subcommand("fit-scaling", "fit the blow-up law to s(t) from a series file");
    std::string series_path;
    std::vector<double> window{0.836, 0.85};
    fit->add_option("--series", series_path, "series CSV")->required();
    fit->add_option("--window", window, "t_a t_b")->expected(2)->capture_default_str();

    auto* stat = app.add_subcommand("static-check", "evolve the static solution and report the drift of w");
    static_flags.attach(*stat);
    double region = 0.4;
    stat->add_option("--region", region, "half-width of the measured square")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return wavemap::run_command(run_flags.build(), std::cout, std::cerr);
        if (*compare) return wavemap::compare_command(compare_flags.build(), std::cout, std::cerr);
        if (*search)
            return wavemap::critical_search_command(search_flags.build({{"amplitude", "0"}}), a_lo, a_hi, tol_a, std::cout, std::cerr);
        if (*fit) return wavemap::fit_scaling_command(series_path, {window[0], window[1]}, std::cout, std::cerr);
        if (*stat) return wavemap::static_check_command(static_flags.build({{"amplitude", "0"}}), region, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
