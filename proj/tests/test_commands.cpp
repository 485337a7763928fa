#include <filesystem>
#include <sstream>

#include <doctest.h>

#include "wavemap/commands.hpp"
#include "wavemap/io.hpp"

using namespace wavemap;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("wavemap_cmd_" + name);
    fs::remove_all(p);
    return p;
}

RunConfig quick_config(double amplitude, const fs::path& out) {
    RunConfig cfg;
    cfg.data.amplitude = amplitude;
    cfg.grid_n = 41;
    cfg.t_end = 0.5;
    cfg.out = out.string();
    return cfg;
}

} // namespace

TEST_CASE("run with zero amplitude gives all-zero diagnostics") {
    const fs::path dir = scratch_dir("zero");
    std::ostringstream out, err;
    CHECK(run_command(quick_config(0.0, dir), out, err) == 0);
    CHECK(err.str().empty());
    CHECK(out.str().find("status=completed") != std::string::npos);
    const auto series = read_series(dir / "series.csv");
    REQUIRE_FALSE(series.empty());
    for (const DiagnosticsRecord& r : series) {
        CHECK(r.phi_max == 0.0);
        CHECK(r.psi_max == 0.0);
        CHECK(r.origin_dev == 0.0);
        CHECK(r.energy == 0.0);
        CHECK(r.energy_rel == 0.0);
        CHECK(r.delta_e == 0.0);
    }
    fs::remove_all(dir);
}

TEST_CASE("Rattle run writes a monotone series and requested snapshots") {
    const fs::path dir = scratch_dir("rattle");
    RunConfig cfg = quick_config(0.4, dir);
    cfg.snapshot_times = {0.0, 0.25};
    std::ostringstream out, err;
    CHECK(run_command(cfg, out, err) == 0);
    const auto series = read_series(dir / "series.csv");
    REQUIRE(series.size() > 2);
    for (std::size_t i = 1; i < series.size(); ++i) CHECK(series[i].t > series[i - 1].t);
    CHECK(series.back().t == 0.5);
    CHECK(fs::exists(dir / "snapshot_t0.json"));
    CHECK(fs::exists(dir / "snapshot_t0.25_w.csv"));
    fs::remove_all(dir);
}

TEST_CASE("identical runs write byte-identical series") {
    const fs::path a = scratch_dir("same_a"), b = scratch_dir("same_b");
    std::ostringstream out, err;
    REQUIRE(run_command(quick_config(0.5, a), out, err) == 0);
    REQUIRE(run_command(quick_config(0.5, b), out, err) == 0);
    CHECK(read_text(a / "series.csv") == read_text(b / "series.csv"));
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("unwritable output path fails with a message") {
    const fs::path blocker = scratch_dir("blocker");
    write_text(blocker, "not a directory");
    std::ostringstream out, err;
    CHECK(run_command(quick_config(0.4, blocker / "sub"), out, err) != 0);
    CHECK(err.str().find("sub") != std::string::npos);
    fs::remove(blocker);
}

TEST_CASE("invalid configuration is reported, not thrown") {
    RunConfig cfg = quick_config(0.4, scratch_dir("invalid"));
    cfg.grid_n = 40;
    std::ostringstream out, err;
    CHECK(run_command(cfg, out, err) == 1);
    CHECK(err.str().find("grid_n") != std::string::npos);
}

TEST_CASE("compare writes both methods") {
    const fs::path dir = scratch_dir("compare");
    RunConfig cfg = quick_config(0.4, dir);
    cfg.grid_n = 21;
    cfg.t_end = 0.2;
    std::ostringstream out, err;
    CHECK(compare_command(cfg, out, err) == 0);
    const std::string csv = read_text(dir / "compare.csv");
    CHECK(csv.rfind(std::string("method,") + kSeriesHeader, 0) == 0);
    CHECK(csv.find("\nrk4,0,") != std::string::npos);
    CHECK(csv.find("\nrattle,0,") != std::string::npos);
    CHECK(out.str().find("rk4: status=completed") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("fit-scaling and static-check commands") {
    const fs::path dir = scratch_dir("fit");
    fs::create_directories(dir);
    std::ostringstream out, err;
    CHECK(fit_scaling_command((dir / "missing.csv").string(), {0.836, 0.85}, out, err) == 1);
    CHECK(err.str().find("missing.csv") != std::string::npos);

    RunConfig cfg = quick_config(0.0, dir);
    cfg.t_end = 0.1;
    std::ostringstream sout;
    CHECK(static_check_command(cfg, 0.4, sout, err) == 0);
    CHECK(sout.str().find("max_w_drift=") != std::string::npos);
    fs::remove_all(dir);
}
