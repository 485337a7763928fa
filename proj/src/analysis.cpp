#include "wavemap/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wavemap {

std::string to_string(RunClass c) {
    switch (c) {
    case RunClass::Subcritical: return "subcritical";
    case RunClass::Flip: return "flip";
    case RunClass::Failed: return "failed";
    }
    return "unknown";
}

RunClass classify_run(const RunRecord& record) {
    for (const MonitorPoint& m : record.monitor)
        if (m.origin_w < 0.0) return RunClass::Flip;
    if (record.monitor.empty())
        for (const DiagnosticsRecord& d : record.samples)
            if (d.origin_dev > 1.0) return RunClass::Flip;
    if (record.status != RunStatus::Completed) return RunClass::Failed;
    return RunClass::Subcritical;
}

CriticalSearchResult critical_search(const AmplitudeClassifier& classify, double a_lo, double a_hi, double tol_a) {
    if (!(tol_a > 0.0)) throw std::invalid_argument("critical_search: tol_a must be positive");
    if (!(a_lo < a_hi)) throw std::invalid_argument("critical_search: need a_lo < a_hi");
    CriticalSearchResult res;
    const RunClass lo = classify(a_lo);
    res.classifications.emplace_back(a_lo, lo);
    if (lo != RunClass::Subcritical)
        throw std::invalid_argument("critical_search: lower amplitude is " + to_string(lo) + ", not subcritical");
    const RunClass hi = classify(a_hi);
    res.classifications.emplace_back(a_hi, hi);
    if (hi == RunClass::Subcritical)
        throw std::invalid_argument("critical_search: upper amplitude is subcritical; bracket holds no threshold");
    res.failed_seen = hi == RunClass::Failed;

    while (a_hi - a_lo > tol_a) {
        const double mid = 0.5 * (a_lo + a_hi);
        const RunClass c = classify(mid);
        res.classifications.emplace_back(mid, c);
        ++res.runs;
        if (c == RunClass::Subcritical) {
            a_lo = mid;
        } else {
            a_hi = mid;
            res.failed_seen = res.failed_seen || c == RunClass::Failed;
        }
    }
    res.a_lo = a_lo;
    res.a_hi = a_hi;
    res.a_star = a_hi;
    return res;
}

CriticalSearchResult critical_search(const RunConfig& base, double a_lo, double a_hi, double tol_a) {
    const Grid2D grid = build_grid(base.domain, base.grid_n);
    RunConfig cfg = base;
    cfg.initial = InitialData::Ring;
    cfg.stop_on_flip = true;
    return critical_search(
        [&](double a) {
            cfg.data.amplitude = a;
            return classify_run(evolve(cfg, grid));
        },
        a_lo, a_hi, tol_a);
}

namespace {

const double kPrefactor = 1.04 / std::exp(1.0);

// residuals and Jacobian columns for model - data
bool evaluate(const std::vector<std::pair<double, double>>& pts, double T, double b, std::vector<double>& r,
              std::vector<double>& jT, std::vector<double>& jb, double& sse) {
    sse = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double tau = T - pts[i].first;
        if (!(tau > 0.0)) return false;
        const double arg = -std::log(tau) + b;
        if (!(arg > 0.0)) return false;
        const double q = std::sqrt(arg);
        const double e = std::exp(-q);
        const double m = kPrefactor * tau * e;
        r[i] = m - pts[i].second;
        jT[i] = kPrefactor * e * (1.0 + 0.5 / q);
        jb[i] = -kPrefactor * tau * e * 0.5 / q;
        sse += r[i] * r[i];
    }
    return std::isfinite(sse);
}

} // namespace

double scaling_model(double t, double T, double b) {
    const double tau = T - t;
    return kPrefactor * tau * std::exp(-std::sqrt(-std::log(tau) + b));
}

FitResult fit_scaling(const std::vector<std::pair<double, double>>& series, std::pair<double, double> window,
                      std::optional<double> initial_T) {
    const auto [t_a, t_b] = window;
    if (!(t_a < t_b)) throw std::invalid_argument("fit_scaling: empty window");
    std::vector<std::pair<double, double>> pts;
    double t_last = -std::numeric_limits<double>::infinity();
    for (const auto& p : series) {
        if (p.first >= t_a && p.first <= t_b && std::isfinite(p.second)) {
            pts.push_back(p);
            t_last = std::max(t_last, p.first);
        }
    }
    if (pts.size() < 5) throw std::invalid_argument("fit_scaling: need at least 5 points in the window");
    double T = initial_T.value_or(t_b + 0.1);
    if (!(T > t_last)) throw std::invalid_argument("fit_scaling: model undefined, T must exceed every window time");
    double b = 0.0;

    const std::size_t m = pts.size();
    std::vector<double> r(m), jT(m), jb(m), r2(m), jT2(m), jb2(m);
    double sse = 0.0;
    if (!evaluate(pts, T, b, r, jT, jb, sse))
        throw std::invalid_argument("fit_scaling: initial guess outside the model domain");

    FitResult out;
    double damping = 1e-3;
    constexpr int kMaxIterations = 500;
    for (int it = 1; it <= kMaxIterations; ++it) {
        out.iterations = it;
        double a11 = 0.0, a12 = 0.0, a22 = 0.0, g1 = 0.0, g2 = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            a11 += jT[i] * jT[i];
            a12 += jT[i] * jb[i];
            a22 += jb[i] * jb[i];
            g1 += jT[i] * r[i];
            g2 += jb[i] * r[i];
        }
        if (sse == 0.0) {
            out.converged = true;
            break;
        }
        bool accepted = false;
        double dT = 0.0, db = 0.0, sse_new = 0.0;
        while (damping < 1e16) {
            const double b11 = a11 * (1.0 + damping), b22 = a22 * (1.0 + damping);
            const double det = b11 * b22 - a12 * a12;
            dT = -(b22 * g1 - a12 * g2) / det;
            db = -(b11 * g2 - a12 * g1) / det;
            if (std::isfinite(dT) && std::isfinite(db) && evaluate(pts, T + dT, b + db, r2, jT2, jb2, sse_new) &&
                sse_new <= sse) {
                accepted = true;
                break;
            }
            damping *= 10.0;
        }
        if (!accepted) {
            // no descent direction left at machine precision
            out.converged = true;
            break;
        }
        T += dT;
        b += db;
        const double rel_change = (sse - sse_new) / std::max(sse, std::numeric_limits<double>::min());
        sse = sse_new;
        r.swap(r2);
        jT.swap(jT2);
        jb.swap(jb2);
        damping = std::max(damping * 0.1, 1e-12);
        if (std::hypot(dT, db) < 1e-12 || rel_change < 1e-14) {
            out.converged = true;
            break;
        }
    }
    out.T = T;
    out.b = b;
    out.residual = sse;
    return out;
}

double convergence_order(const std::vector<std::pair<double, double>>& errors) {
    if (errors.size() < 2) throw std::invalid_argument("convergence_order: need at least two resolutions");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [h, e] : errors) {
        if (!(h > 0.0) || !(e > 0.0)) throw std::invalid_argument("convergence_order: h and errors must be positive");
        const double x = std::log(h), y = std::log(e);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(errors.size());
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("convergence_order: resolutions must differ");
    return (n * sxy - sx * sy) / denom;
}


double static_drift(const RunConfig& base, double region) {
    RunConfig cfg = base;
    cfg.initial = InitialData::StaticSouth;
    cfg.validate();
    const Grid2D grid = build_grid(cfg.domain, cfg.grid_n);
    FieldState state = static_solution(grid, Pole::South);
    const ScalarField w0 = state.w;
    const StepperConfig stepper = stepper_config(cfg);
    StepWorkspace ws;
    const double dt = cfg.cfl * grid.h;
    const long steps = std::max(1L, static_cast<long>(std::ceil(cfg.t_end / dt - 1e-9)));
    double drift = 0.0;
    for (long step = 1; step <= steps; ++step) {
        const double t_next = step == steps ? cfg.t_end : static_cast<double>(step) * dt;
        const double h_t = t_next - state.time;
        if (cfg.method == Method::RK4) {
            if (rk4_step(state, h_t, grid, ws) != RunStatus::Completed)
                throw std::runtime_error("static_drift: RK4 produced non-finite values");
        } else if (rattle_step(state, h_t, grid, stepper, ws).status != RunStatus::Completed) {
            throw std::runtime_error("static_drift: Rattle projection failed");
        }
        state.time = t_next;
        for (int k = 0; k < grid.n; ++k) {
            if (std::abs(grid.y(k)) > region + 1e-12) continue;
            for (int j = 0; j < grid.n; ++j) {
                if (std::abs(grid.x(j)) > region + 1e-12) continue;
                drift = std::max(drift, std::abs(state.w(j, k) - w0(j, k)));
            }
        }
    }
    return drift;
}

} // namespace wavemap
