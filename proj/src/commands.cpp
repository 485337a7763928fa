#include "wavemap/commands.hpp"

#include <ostream>

#include "wavemap/analysis.hpp"
#include "wavemap/io.hpp"

namespace wavemap {

namespace {

std::filesystem::path prepare_out_dir(const std::string& out) {
    std::filesystem::path dir(out);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
    return dir;
}

std::string snapshot_stem(double requested) { return "snapshot_t" + format_double(requested); }

void print_summary(std::ostream& out, const std::string& label, const RunRecord& rec) {
    const DiagnosticsRecord& last = rec.samples.back();
    out << label << "status=" << to_string(rec.status) << " t=" << format_double(last.t)
        << " steps=" << rec.steps << " phi_max=" << format_double(last.phi_max)
        << " psi_max=" << format_double(last.psi_max) << " origin_dev=" << format_double(last.origin_dev)
        << " energy=" << format_double(last.energy) << " energy_rel=" << format_double(last.energy_rel)
        << " delta_e=" << format_double(last.delta_e) << '\n';
}

} // namespace

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        cfg.validate();
        const Grid2D grid = build_grid(cfg.domain, cfg.grid_n);
        const auto dir = prepare_out_dir(cfg.out);
        const RunRecord rec = evolve(cfg, grid);
        write_series(dir / "series.csv", rec.samples);
        for (const Snapshot& snap : rec.snapshots)
            write_snapshot(dir, snapshot_stem(snap.requested_time), snap.state, cfg, grid);
        print_summary(out, "", rec);
        if (rec.status != RunStatus::Completed) {
            err << "run failed at t=" << format_double(rec.failure_time) << ": " << to_string(rec.status) << '\n';
            return 2;
        }
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

int compare_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        cfg.validate();
        const Grid2D grid = build_grid(cfg.domain, cfg.grid_n);
        const auto dir = prepare_out_dir(cfg.out);
        std::string merged = std::string("method,") + kSeriesHeader + '\n';
        int status = 0;
        for (Method m : {Method::RK4, Method::Rattle}) {
            RunConfig c = cfg;
            c.method = m;
            const RunRecord rec = evolve(c, grid);
            const std::string body = format_series(rec.samples);
            std::size_t pos = body.find('\n') + 1;
            while (pos < body.size()) {
                const std::size_t end = body.find('\n', pos);
                merged += to_string(m) + ',' + body.substr(pos, end - pos) + '\n';
                pos = end + 1;
            }
            print_summary(out, to_string(m) + ": ", rec);
            if (rec.status != RunStatus::Completed) status = 2;
        }
        write_text(dir / "compare.csv", merged);
        return status;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

int critical_search_command(const RunConfig& cfg, double a_lo, double a_hi, double tol_a, std::ostream& out,
                            std::ostream& err) {
    try {
        const CriticalSearchResult res = critical_search(cfg, a_lo, a_hi, tol_a);
        for (const auto& [a, c] : res.classifications) out << "A=" << format_double(a) << ' ' << to_string(c) << '\n';
        out << "a_star=" << format_double(res.a_star) << " bracket=[" << format_double(res.a_lo) << ", "
            << format_double(res.a_hi) << "] runs=" << res.runs << (res.failed_seen ? " (failed runs seen)" : "")
            << '\n';
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

int fit_scaling_command(const std::string& series_path, std::pair<double, double> window, std::ostream& out,
                        std::ostream& err) {
    try {
        const auto records = read_series(series_path);
        std::vector<std::pair<double, double>> pts;
        for (const auto& r : records)
            if (r.s) pts.emplace_back(r.t, *r.s);
        const FitResult fit = fit_scaling(pts, window);
        out << "T=" << format_double(fit.T) << " b=" << format_double(fit.b)
            << " residual=" << format_double(fit.residual) << " iterations=" << fit.iterations
            << " converged=" << (fit.converged ? "true" : "false") << '\n';
        return fit.converged ? 0 : 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

int static_check_command(const RunConfig& cfg, double region, std::ostream& out, std::ostream& err) {
    try {
        const double drift = static_drift(cfg, region);
        out << "max_w_drift=" << format_double(drift) << " region=" << format_double(region)
            << " t_end=" << format_double(cfg.t_end) << " grid_n=" << cfg.grid_n << '\n';
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace wavemap
