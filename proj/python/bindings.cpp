#include <array>
#include <string>
#include <vector>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wavemap/analysis.hpp"
#include "wavemap/commands.hpp"
#include "wavemap/diagnostics.hpp"
#include "wavemap/integrate.hpp"
#include "wavemap/io.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace wavemap;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

// interior nodes as an (n, n) array indexed [y, x]
Array to_array(const ScalarField& f) {
    const int n = f.n();
    Array out({n, n});
    auto a = out.mutable_unchecked<2>();
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) a(k, j) = f(j, k);
    return out;
}

void from_array(ScalarField& f, const Array& values) {
    const int n = f.n();
    if (values.ndim() != 2 || values.shape(0) != n || values.shape(1) != n)
        throw py::value_error("expected an array of shape (" + std::to_string(n) + ", " + std::to_string(n) + ")");
    auto a = values.unchecked<2>();
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) f(j, k) = a(k, j);
}

Array coordinates(const Grid2D& g) {
    Array out(g.n);
    auto a = out.mutable_unchecked<1>();
    for (int j = 0; j < g.n; ++j) a(j) = g.coord(j);
    return out;
}

FieldState state_from_arrays(const Grid2D& grid, const Array& u, const Array& v, const Array& w, const Array& ut,
                             const Array& vt, const Array& wt, double time) {
    FieldState s = make_state(grid);
    const std::array<const Array*, 6> src{&u, &v, &w, &ut, &vt, &wt};
    const auto fields = s.all();
    for (std::size_t i = 0; i < fields.size(); ++i) from_array(*fields[i], *src[i]);
    s.time = time;
    fill_ghosts(s, grid);
    return s;
}

// column-oriented view of a list of samples
py::dict series_columns(const std::vector<DiagnosticsRecord>& samples) {
    const auto n = static_cast<py::ssize_t>(samples.size());
    Array t(n), phi(n), psi(n), dev(n), e(n), erel(n), de(n), s(n), mw(n);
    auto at = t.mutable_unchecked<1>(), aphi = phi.mutable_unchecked<1>(), apsi = psi.mutable_unchecked<1>(),
         adev = dev.mutable_unchecked<1>(), ae = e.mutable_unchecked<1>(), aerel = erel.mutable_unchecked<1>(),
         ade = de.mutable_unchecked<1>(), as = s.mutable_unchecked<1>(), amw = mw.mutable_unchecked<1>();
    for (py::ssize_t i = 0; i < n; ++i) {
        const DiagnosticsRecord& r = samples[i];
        at(i) = r.t;
        aphi(i) = r.phi_max;
        apsi(i) = r.psi_max;
        adev(i) = r.origin_dev;
        ae(i) = r.energy;
        aerel(i) = r.energy_rel;
        ade(i) = r.delta_e;
        as(i) = r.s.value_or(std::numeric_limits<double>::quiet_NaN());
        amw(i) = r.min_w;
    }
    return py::dict("t"_a = t, "phi_max"_a = phi, "psi_max"_a = psi, "origin_dev"_a = dev, "energy"_a = e,
                    "energy_rel"_a = erel, "delta_e"_a = de, "s"_a = s, "min_w"_a = mw);
}

py::dict monitor_columns(const std::vector<MonitorPoint>& monitor) {
    const auto n = static_cast<py::ssize_t>(monitor.size());
    Array t(n), ow(n), mw(n), s(n);
    auto at = t.mutable_unchecked<1>(), aow = ow.mutable_unchecked<1>(), amw = mw.mutable_unchecked<1>(),
         as = s.mutable_unchecked<1>();
    for (py::ssize_t i = 0; i < n; ++i) {
        at(i) = monitor[i].t;
        aow(i) = monitor[i].origin_w;
        amw(i) = monitor[i].min_w;
        as(i) = monitor[i].s.value_or(std::numeric_limits<double>::quiet_NaN());
    }
    return py::dict("t"_a = t, "origin_w"_a = ow, "min_w"_a = mw, "s"_a = s);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Finite-difference evolution of the equivariant wave map into the 2-sphere.";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    py::enum_<Domain>(m, "Domain").value("Full", Domain::Full).value("Quarter", Domain::Quarter);
    py::enum_<Method>(m, "Method").value("RK4", Method::RK4).value("Rattle", Method::Rattle);
    py::enum_<InitialData>(m, "InitialData")
        .value("Ring", InitialData::Ring)
        .value("StaticSouth", InitialData::StaticSouth)
        .value("StaticNorth", InitialData::StaticNorth);
    py::enum_<RunStatus>(m, "RunStatus")
        .value("Completed", RunStatus::Completed)
        .value("ProjectionFailed", RunStatus::ProjectionFailed)
        .value("NonFinite", RunStatus::NonFinite);
    py::enum_<RunClass>(m, "RunClass")
        .value("Subcritical", RunClass::Subcritical)
        .value("Flip", RunClass::Flip)
        .value("Failed", RunClass::Failed);

    py::class_<Grid2D>(m, "Grid2D")
        .def_readonly("domain", &Grid2D::domain)
        .def_readonly("n", &Grid2D::n)
        .def_readonly("h", &Grid2D::h)
        .def_property_readonly("coords", &coordinates, "node coordinates along either axis")
        .def("origin_index", &Grid2D::origin_index)
        .def("__repr__", [](const Grid2D& g) {
            return "Grid2D(" + to_string(g.domain) + ", n=" + std::to_string(g.n) + ", h=" + format_double(g.h) + ")";
        });
    m.def("build_grid", &build_grid, "domain"_a, "n"_a);

    py::class_<FieldState>(m, "FieldState")
        .def_readwrite("time", &FieldState::time)
        .def_property_readonly("u", [](const FieldState& s) { return to_array(s.u); })
        .def_property_readonly("v", [](const FieldState& s) { return to_array(s.v); })
        .def_property_readonly("w", [](const FieldState& s) { return to_array(s.w); })
        .def_property_readonly("ut", [](const FieldState& s) { return to_array(s.ut); })
        .def_property_readonly("vt", [](const FieldState& s) { return to_array(s.vt); })
        .def_property_readonly("wt", [](const FieldState& s) { return to_array(s.wt); });
    m.def("state_from_arrays", &state_from_arrays, "grid"_a, "u"_a, "v"_a, "w"_a, "ut"_a, "vt"_a, "wt"_a,
          "time"_a = 0.0, "Builds a state from (n, n) arrays indexed [y, x] and fills the ghost layers.");

    py::class_<RunConfig>(m, "RunConfig")
        .def(py::init<>())
        .def_property(
            "amplitude", [](const RunConfig& c) { return c.data.amplitude; },
            [](RunConfig& c, double a) { c.data.amplitude = a; })
        .def_property(
            "r1", [](const RunConfig& c) { return c.data.r1; }, [](RunConfig& c, double v) { c.data.r1 = v; })
        .def_property(
            "r2", [](const RunConfig& c) { return c.data.r2; }, [](RunConfig& c, double v) { c.data.r2 = v; })
        .def_property(
            "n", [](const RunConfig& c) { return c.data.n; }, [](RunConfig& c, int v) { c.data.n = v; })
        .def_readwrite("grid_n", &RunConfig::grid_n)
        .def_readwrite("domain", &RunConfig::domain)
        .def_readwrite("method", &RunConfig::method)
        .def_readwrite("initial", &RunConfig::initial)
        .def_readwrite("cfl", &RunConfig::cfl)
        .def_readwrite("t_end", &RunConfig::t_end)
        .def_readwrite("tol", &RunConfig::tol)
        .def_readwrite("max_iter", &RunConfig::max_iter)
        .def_readwrite("sample_stride", &RunConfig::sample_stride)
        .def_readwrite("snapshot_times", &RunConfig::snapshot_times)
        .def_readwrite("out", &RunConfig::out)
        .def_readwrite("energy_correction", &RunConfig::energy_correction)
        .def_readwrite("energy_lambda_phi", &RunConfig::energy_lambda_phi)
        .def_readwrite("stop_on_flip", &RunConfig::stop_on_flip)
        .def("validate", &RunConfig::validate)
        .def("__repr__", [](const RunConfig& c) { return format_config(c); });
    m.def("parse_config", py::overload_cast<const std::string&, const std::map<std::string, std::string>&>(&parse_config),
          "text"_a, "overrides"_a = std::map<std::string, std::string>{});
    m.def("format_config", &format_config, "config"_a);

    m.def(
        "initial_state",
        [](const RunConfig& cfg, const Grid2D& grid) { return initial_state(cfg, grid); }, "config"_a, "grid"_a);
    m.def(
        "static_solution", [](const Grid2D& grid, bool north) {
            return static_solution(grid, north ? Pole::North : Pole::South);
        },
        "grid"_a, "north"_a = false);

    py::class_<RunRecord>(m, "RunRecord")
        .def_readonly("status", &RunRecord::status)
        .def_readonly("steps", &RunRecord::steps)
        .def_readonly("failure_time", &RunRecord::failure_time)
        .def_readonly("stopped_on_flip", &RunRecord::stopped_on_flip)
        .def_readonly("max_position_iterations", &RunRecord::max_position_iterations)
        .def_readonly("max_velocity_iterations", &RunRecord::max_velocity_iterations)
        .def_readonly("final_state", &RunRecord::final_state)
        .def_property_readonly("series", [](const RunRecord& r) { return series_columns(r.samples); },
                               "sampled diagnostics as a dict of arrays (absent s is NaN)")
        .def_property_readonly("monitor", [](const RunRecord& r) { return monitor_columns(r.monitor); },
                               "per-step origin w, minimum w and s")
        .def_property_readonly("snapshots", [](const RunRecord& r) {
            py::list out;
            for (const Snapshot& s : r.snapshots) out.append(py::make_tuple(s.requested_time, s.state));
            return out;
        });

    m.def(
        "evolve",
        [](const RunConfig& cfg) {
            cfg.validate();
            const Grid2D grid = build_grid(cfg.domain, cfg.grid_n);
            py::gil_scoped_release release;
            return evolve(cfg, grid);
        },
        "config"_a, "Evolves the configured initial data to t_end.");

    m.def(
        "max_norms",
        [](const FieldState& s) {
            const ConstraintNorms c = max_norms(s);
            return py::make_tuple(c.phi_max, c.psi_max);
        },
        "state"_a, "Returns (phi_max, psi_max).");
    m.def("origin_deviation", &origin_deviation, "state"_a, "grid"_a);
    m.def("total_energy", &total_energy, "state"_a, "grid"_a, "include_lambda_phi"_a = true);
    m.def("energy_correction_rate", &energy_correction_rate, "state"_a, "grid"_a);
    m.def("scaling_function", &scaling_function, "state"_a, "grid"_a, "None when w_rr(0) vanishes.");
    m.def(
        "lightcone_energies",
        [](const FieldState& s, const Grid2D& g, double radius) {
            const LightconeEnergies e = lightcone_energies(s, g, radius);
            return py::make_tuple(e.kinetic, e.potential);
        },
        "state"_a, "grid"_a, "radius"_a, "Returns (kinetic, potential).");
    m.def(
        "rescaled_profile",
        [](const FieldState& st, const Grid2D& g, double s, const std::vector<double>& radii) {
            std::vector<std::array<double, 3>> out;
            for (const ProfilePoint& p : rescaled_profile(st, g, s, radii)) out.push_back({p.r, p.w, p.w_static});
            return out;
        },
        "state"_a, "grid"_a, "s"_a, "radii"_a, "Returns (r, w(t, s r), w_static(r)) triples.");

    m.def("classify_run", &classify_run, "record"_a);
    m.def(
        "critical_search",
        [](const RunConfig& cfg, double a_lo, double a_hi, double tol_a) {
            CriticalSearchResult r;
            {
                py::gil_scoped_release release;
                r = critical_search(cfg, a_lo, a_hi, tol_a);
            }
            return py::dict("a_star"_a = r.a_star, "a_lo"_a = r.a_lo, "a_hi"_a = r.a_hi, "runs"_a = r.runs,
                            "failed_seen"_a = r.failed_seen, "classifications"_a = r.classifications);
        },
        "config"_a, "a_lo"_a, "a_hi"_a, "tol_a"_a);
    m.def("scaling_model", &scaling_model, "t"_a, "T"_a, "b"_a);
    m.def(
        "fit_scaling",
        [](const Array& t, const Array& s, std::pair<double, double> window, std::optional<double> initial_T) {
            if (t.ndim() != 1 || s.ndim() != 1 || t.shape(0) != s.shape(0))
                throw py::value_error("t and s must be 1-d arrays of equal length");
            auto at = t.unchecked<1>();
            auto as = s.unchecked<1>();
            std::vector<std::pair<double, double>> pts;
            for (py::ssize_t i = 0; i < t.shape(0); ++i) pts.emplace_back(at(i), as(i));
            const FitResult f = fit_scaling(pts, window, initial_T);
            return py::dict("T"_a = f.T, "b"_a = f.b, "residual"_a = f.residual, "iterations"_a = f.iterations,
                            "converged"_a = f.converged);
        },
        "t"_a, "s"_a, "window"_a = std::make_pair(0.836, 0.85), "initial_T"_a = py::none());
    m.def("convergence_order", &convergence_order, "errors"_a, "Least-squares slope of log e against log h.");
    m.def("static_drift", &static_drift, "config"_a, "region"_a = 0.4);

    m.def("write_series", [](const std::string& path, const RunRecord& r) { write_series(path, r.samples); },
          "path"_a, "record"_a);
    m.attr("SERIES_HEADER") = kSeriesHeader;
}
