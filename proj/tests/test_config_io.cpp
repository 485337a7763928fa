#include <cmath>
#include <filesystem>
#include <limits>
#include <random>

#include <doctest.h>
#include <json.hpp>

#include "wavemap/config.hpp"
#include "wavemap/io.hpp"

using namespace wavemap;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("wavemap_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::size_t count_lines(const std::string& text) {
    std::size_t n = 0;
    for (char c : text) n += c == '\n';
    return n;
}

} // namespace

TEST_CASE("parse_config defaults and required keys") {
    CHECK_THROWS_AS(parse_config(""), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("grid_n = 161\n"), doctest::Contains("amplitude"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("amplitude = 0.4\n"), doctest::Contains("grid_n"), ConfigError);

    const RunConfig cfg = parse_config("# regular run\namplitude = 0.4\ngrid_n = 161\n\nmethod = rattle\n");
    CHECK(cfg.data.amplitude == 0.4);
    CHECK(cfg.grid_n == 161);
    CHECK(cfg.method == Method::Rattle);
    CHECK(cfg.data.r1 == 0.5);
    CHECK(cfg.data.r2 == 1.0);
    CHECK(cfg.data.n == 4);
    CHECK(cfg.cfl == 0.2);
    CHECK(cfg.t_end == 1.6);
    CHECK(cfg.tol == 1e-12);
    CHECK(cfg.max_iter == 100);
    CHECK(cfg.domain == Domain::Full);
    CHECK(cfg.sample_stride == 1);
    CHECK(cfg.energy_correction);
}

TEST_CASE("parse_config validation errors name the key") {
    CHECK_THROWS_WITH_AS(parse_config("amplitude = 0.4\ngrid_n = 160\n"), doctest::Contains("grid_n"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("amplitude = 0.4\ngrid_n = 161\nspeed = 3\n"), doctest::Contains("speed"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("amplitude = 0.4\ngrid_n = 161\nmethod = euler\n"), doctest::Contains("method"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("amplitude = 0.4\ngrid_n = 161\ncfl = -1\n"), doctest::Contains("cfl"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("amplitude = abc\ngrid_n = 161\n"), doctest::Contains("amplitude"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("amplitude = 0.4\namplitude = 0.5\ngrid_n = 161\n"),
                         doctest::Contains("amplitude"), ConfigError);
    CHECK_THROWS_AS(parse_config("amplitude 0.4\ngrid_n = 161\n"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("amplitude = 0.4\ngrid_n = 161\nr1 = 1.5\n"), doctest::Contains("r1"),
                         ConfigError);
}

TEST_CASE("parse_config overrides") {
    const RunConfig cfg =
        parse_config("amplitude = 0.4\ngrid_n = 161\n", {{"method", "rk4"}, {"domain", "quarter"}, {"grid_n", "81"}});
    CHECK(cfg.method == Method::RK4);
    CHECK(cfg.domain == Domain::Quarter);
    CHECK(cfg.grid_n == 81);
}

TEST_CASE("format_config round-trips") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        RunConfig cfg;
        cfg.data.amplitude = 2.0 * unit(rng);
        cfg.data.r1 = 0.1 + 0.3 * unit(rng);
        cfg.data.r2 = 0.5 + unit(rng);
        cfg.data.n = 2 + static_cast<int>(6 * unit(rng));
        cfg.grid_n = 9 + 2 * static_cast<int>(300 * unit(rng));
        cfg.domain = unit(rng) < 0.5 ? Domain::Full : Domain::Quarter;
        cfg.method = unit(rng) < 0.5 ? Method::RK4 : Method::Rattle;
        cfg.cfl = 0.05 + 0.3 * unit(rng);
        cfg.t_end = 0.1 + 2.0 * unit(rng);
        cfg.tol = 1e-14 + 1e-10 * unit(rng);
        cfg.sample_stride = 1 + static_cast<int>(20 * unit(rng));
        cfg.snapshot_times = {0.0, cfg.t_end * unit(rng)};
        cfg.out = "runs/case_" + std::to_string(i);
        cfg.energy_correction = unit(rng) < 0.5;
        cfg.stop_on_flip = unit(rng) < 0.5;
        const RunConfig back = parse_config(format_config(cfg));
        CHECK(format_config(back) == format_config(cfg));
        CHECK(back.data.amplitude == cfg.data.amplitude);
        CHECK(back.cfl == cfg.cfl);
        CHECK(back.snapshot_times == cfg.snapshot_times);
    }
}

TEST_CASE("series serialisation") {
    CHECK(format_series({}) == std::string(kSeriesHeader) + "\n");
    CHECK(parse_series(format_series({})).empty());

    DiagnosticsRecord r0;
    r0.energy = 12.5;
    r0.min_w = 1.0;
    const std::string one = format_series({r0});
    CHECK(count_lines(one) == 2);
    CHECK(one.rfind(std::string(kSeriesHeader) + "\n", 0) == 0);
    CHECK(one.find(",,") != std::string::npos);  // absent s is an empty cell

    SUBCASE("round trip preserves every bit") {
        std::mt19937 rng(9);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        std::vector<DiagnosticsRecord> recs;
        for (int i = 0; i < 200; ++i) {
            DiagnosticsRecord r;
            r.t = i * 0.1 / 3.0;
            r.phi_max = std::abs(dist(rng)) * 1e-13;
            r.psi_max = std::abs(dist(rng)) * 1e-3;
            r.origin_dev = std::abs(dist(rng));
            r.energy = 10.0 + dist(rng);
            r.energy_rel = std::abs(dist(rng)) * 1e-7;
            r.delta_e = dist(rng) * 1e-5;
            if (i % 3) r.s = std::abs(dist(rng)) + std::numeric_limits<double>::denorm_min();
            r.min_w = dist(rng);
            recs.push_back(r);
        }
        CHECK(parse_series(format_series(recs)) == recs);
    }
    SUBCASE("malformed input is rejected") {
        CHECK_THROWS_AS(parse_series("t,phi\n"), IoError);
        CHECK_THROWS_AS(parse_series(std::string(kSeriesHeader) + "\n1,2,3\n"), IoError);
        CHECK_THROWS_AS(parse_series(std::string(kSeriesHeader) + "\n0,x,0,0,0,0,0,,1\n"), IoError);
    }
}

TEST_CASE("series files") {
    const fs::path dir = scratch_dir("series");
    DiagnosticsRecord r;
    r.t = 0.0;
    r.s = 1.0;
    write_series(dir / "series.csv", {r});
    CHECK(read_series(dir / "series.csv") == std::vector<DiagnosticsRecord>{r});
    write_series(dir / "empty.csv", {});
    CHECK(read_text(dir / "empty.csv") == std::string(kSeriesHeader) + "\n");
    CHECK_THROWS_AS(read_series(dir / "missing.csv"), IoError);
    CHECK_THROWS_AS(write_series(dir / "no" / "such" / "dir.csv", {r}), IoError);
    fs::remove_all(dir);
}

TEST_CASE("field csv layout") {
    const Grid2D g = build_grid(Domain::Quarter, 9);
    ScalarField f(g, Parity::Even, Parity::Even);
    for (int k = 0; k < g.n; ++k)
        for (int j = 0; j < g.n; ++j) f(j, k) = j + 10.0 * k;
    const std::string csv = format_field_csv(f);
    CHECK(count_lines(csv) == 9);
    CHECK(csv.rfind("0,1,2,3,4,5,6,7,8\n", 0) == 0);
    CHECK(csv.find("\n10,11,12") != std::string::npos);
}

TEST_CASE("snapshots write six fields and a metadata sidecar") {
    const fs::path dir = scratch_dir("snapshot");
    RunConfig cfg;
    cfg.data.amplitude = 0.4;
    cfg.grid_n = 21;
    const Grid2D g = build_grid(cfg.domain, cfg.grid_n);
    FieldState s = initial_state(cfg.data, g);
    s.time = 0.25;
    const auto paths = write_snapshot(dir, "snap", s, cfg, g);
    CHECK(paths.size() == 7);
    for (const char* f : {"u", "v", "w", "ut", "vt", "wt"}) CHECK(fs::exists(dir / ("snap_" + std::string(f) + ".csv")));

    const auto meta = nlohmann::json::parse(read_text(dir / "snap.json"));
    CHECK(meta["time"].get<double>() == 0.25);
    CHECK(meta["grid"]["n"].get<int>() == 21);
    CHECK(meta["grid"]["domain"].get<std::string>() == "full");
    const RunConfig echoed = parse_config(meta["config"].get<std::string>());
    CHECK(format_config(echoed) == format_config(cfg));
    fs::remove_all(dir);
}
