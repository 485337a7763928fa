#include "wavemap/integrate.hpp"

#include <algorithm>
#include <cmath>

namespace wavemap {

std::string to_string(RunStatus s) {
    switch (s) {
    case RunStatus::Completed: return "completed";
    case RunStatus::ProjectionFailed: return "projection_failed";
    case RunStatus::NonFinite: return "non_finite";
    }
    return "unknown";
}

namespace {

// out = base + a * rate, over the full storage (ghosts are refilled afterwards)
void axpy_state(const FieldState& base, double a, const FieldState& rate, FieldState& out) {
    const auto src = base.all();
    const auto r = rate.all();
    const auto dst = out.all();
    for (std::size_t f = 0; f < src.size(); ++f) {
        const auto& b = src[f]->raw();
        const auto& d = r[f]->raw();
        auto& o = dst[f]->raw();
        for (std::size_t i = 0; i < o.size(); ++i) o[i] = b[i] + a * d[i];
    }
}

bool interior_finite(const FieldState& s) {
    const int n = s.u.n();
    for (const ScalarField* f : s.all())
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j)
                if (!std::isfinite((*f)(j, k))) return false;
    return true;
}

void ensure_workspace(StepWorkspace& ws, const FieldState& like) {
    if (ws.stage.u.raw().size() != like.u.raw().size()) {
        ws.stage = like;
        ws.k1 = ws.k2 = ws.k3 = ws.k4 = like;
    }
}

} // namespace

RunStatus rk4_step(FieldState& s, double dt, const Grid2D& grid, StepWorkspace& ws) {
    ensure_workspace(ws, s);
    rhs_free(s, grid, ws.k1);
    axpy_state(s, 0.5 * dt, ws.k1, ws.stage);
    fill_ghosts(ws.stage, grid);
    rhs_free(ws.stage, grid, ws.k2);
    axpy_state(s, 0.5 * dt, ws.k2, ws.stage);
    fill_ghosts(ws.stage, grid);
    rhs_free(ws.stage, grid, ws.k3);
    axpy_state(s, dt, ws.k3, ws.stage);
    fill_ghosts(ws.stage, grid);
    rhs_free(ws.stage, grid, ws.k4);

    const double c = dt / 6.0;
    const auto dst = s.all();
    const auto a = ws.k1.all(), b = ws.k2.all(), cc = ws.k3.all(), d = ws.k4.all();
    for (std::size_t f = 0; f < dst.size(); ++f) {
        auto& o = dst[f]->raw();
        const auto &r1 = a[f]->raw(), &r2 = b[f]->raw(), &r3 = cc[f]->raw(), &r4 = d[f]->raw();
        for (std::size_t i = 0; i < o.size(); ++i) o[i] += c * (r1[i] + 2.0 * r2[i] + 2.0 * r3[i] + r4[i]);
    }
    s.time += dt;
    fill_ghosts(s, grid);
    return interior_finite(s) ? RunStatus::Completed : RunStatus::NonFinite;
}

RunStatus rk4_step(FieldState& state, double dt, const Grid2D& grid) {
    StepWorkspace ws;
    return rk4_step(state, dt, grid, ws);
}

RattleStepResult rattle_step(FieldState& s, double dt, const Grid2D& grid, const StepperConfig& cfg,
                             StepWorkspace& ws) {
    RattleStepResult result;
    laplacian(s.u, grid, ws.lap_u);
    laplacian(s.v, grid, ws.lap_v);
    laplacian(s.w, grid, ws.lap_w);

    const double half = 0.5 * dt;
    const int n = grid.n;

    // Half kick with the unconstrained force, drift, then solve
    // |Q + mu U_n|^2 = 1 per node; mu = dt^2 * Lambda.
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) {
            const std::size_t i = s.u.index(j, k);
            const double u0 = s.u.raw()[i], v0 = s.v.raw()[i], w0 = s.w.raw()[i];
            const double pu = s.ut.raw()[i] + half * ws.lap_u.raw()[i];
            const double pv = s.vt.raw()[i] + half * ws.lap_v.raw()[i];
            const double pw = s.wt.raw()[i] + half * ws.lap_w.raw()[i];
            const double qu = u0 + dt * pu, qv = v0 + dt * pv, qw = w0 + dt * pw;

            double mu = 0.0;
            double nu_ = qu, nv = qv, nw = qw;
            double g = nu_ * nu_ + nv * nv + nw * nw - 1.0;
            int it = 0;
            while (std::abs(g) > cfg.tol) {
                if (it == cfg.max_iter) {
                    result.status = RunStatus::ProjectionFailed;
                    result.position_iterations = it;
                    return result;
                }
                const double slope = 2.0 * (u0 * nu_ + v0 * nv + w0 * nw);
                mu -= g / slope;
                nu_ = qu + mu * u0;
                nv = qv + mu * v0;
                nw = qw + mu * w0;
                g = nu_ * nu_ + nv * nv + nw * nw - 1.0;
                ++it;
                if (!std::isfinite(g)) {
                    result.status = RunStatus::ProjectionFailed;
                    result.position_iterations = it;
                    return result;
                }
            }
            result.position_iterations = std::max(result.position_iterations, it);
            const double kick = mu / dt;
            s.u.raw()[i] = nu_;
            s.v.raw()[i] = nv;
            s.w.raw()[i] = nw;
            s.ut.raw()[i] = pu + kick * u0;
            s.vt.raw()[i] = pv + kick * v0;
            s.wt.raw()[i] = pw + kick * w0;
        }
    }
    for (ScalarField* f : s.positions()) fill_ghosts(*f, grid);

    laplacian(s.u, grid, ws.lap_u);
    laplacian(s.v, grid, ws.lap_v);
    laplacian(s.w, grid, ws.lap_w);

    // Second half kick; nu = dt * M enforces U_{n+1} . U_t = 0.
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) {
            const std::size_t i = s.u.index(j, k);
            const double u1 = s.u.raw()[i], v1 = s.v.raw()[i], w1 = s.w.raw()[i];
            const double ru = s.ut.raw()[i] + half * ws.lap_u.raw()[i];
            const double rv = s.vt.raw()[i] + half * ws.lap_v.raw()[i];
            const double rw = s.wt.raw()[i] + half * ws.lap_w.raw()[i];
            const double norm2 = u1 * u1 + v1 * v1 + w1 * w1;

            double nu = 0.0;
            double vu = ru, vv = rv, vw = rw;
            double psi = 2.0 * (u1 * vu + v1 * vv + w1 * vw);
            int it = 0;
            while (std::abs(psi) > cfg.tol) {
                if (it == cfg.max_iter) {
                    result.status = RunStatus::ProjectionFailed;
                    result.velocity_iterations = it;
                    return result;
                }
                nu -= psi / (2.0 * norm2);
                vu = ru + nu * u1;
                vv = rv + nu * v1;
                vw = rw + nu * w1;
                psi = 2.0 * (u1 * vu + v1 * vv + w1 * vw);
                ++it;
                if (!std::isfinite(psi)) {
                    result.status = RunStatus::ProjectionFailed;
                    result.velocity_iterations = it;
                    return result;
                }
            }
            result.velocity_iterations = std::max(result.velocity_iterations, it);
            s.ut.raw()[i] = vu;
            s.vt.raw()[i] = vv;
            s.wt.raw()[i] = vw;
        }
    }
    for (ScalarField* f : s.velocities()) fill_ghosts(*f, grid);
    s.time += dt;
    if (!interior_finite(s)) result.status = RunStatus::NonFinite;
    return result;
}

RattleStepResult rattle_step(FieldState& state, double dt, const Grid2D& grid, const StepperConfig& cfg) {
    StepWorkspace ws;
    return rattle_step(state, dt, grid, cfg, ws);
}

StepperConfig stepper_config(const RunConfig& cfg) {
    return StepperConfig{cfg.method, cfg.cfl, cfg.tol, cfg.max_iter};
}

FieldState initial_state(const RunConfig& cfg, const Grid2D& grid) {
    switch (cfg.initial) {
    case InitialData::Ring: return initial_state(cfg.data, grid);
    case InitialData::StaticSouth: return static_solution(grid, Pole::South);
    case InitialData::StaticNorth: return static_solution(grid, Pole::North);
    }
    return initial_state(cfg.data, grid);
}

RunRecord evolve(const RunConfig& cfg, const Grid2D& grid) { return evolve(cfg, grid, initial_state(cfg, grid)); }

RunRecord evolve(const RunConfig& cfg, const Grid2D& grid, FieldState state) {
    cfg.validate();
    const StepperConfig stepper = stepper_config(cfg);
    const double dt = cfg.cfl * grid.h;
    // number of steps; the last one may be shorter so that t lands on t_end
    const long steps = std::max(1L, static_cast<long>(std::ceil(cfg.t_end / dt - 1e-9)));

    RunRecord rec;
    StepWorkspace ws;
    state.time = 0.0;
    fill_ghosts(state, grid);

    auto monitor = [&](const FieldState& st) {
        rec.monitor.push_back({st.time, origin_value(st, grid), min_w(st), scaling_function(st, grid)});
    };

    DiagnosticsRecord first = measure(state, grid, cfg.energy_lambda_phi);
    const double e0 = first.energy;
    double rate_prev = cfg.energy_correction ? energy_correction_rate(state, grid) : 0.0;
    double delta_e = 0.0;
    auto finish_sample = [&](DiagnosticsRecord r) {
        r.delta_e = delta_e;
        r.energy_rel = e0 == 0.0 ? 0.0 : std::abs(1.0 - r.energy / e0);
        rec.samples.push_back(r);
    };
    finish_sample(first);
    monitor(state);

    std::vector<double> pending = cfg.snapshot_times;
    std::sort(pending.begin(), pending.end());
    auto take_snapshots = [&](const FieldState& st) {
        while (!pending.empty() && st.time >= pending.front() - 1e-12) {
            rec.snapshots.push_back({pending.front(), st});
            pending.erase(pending.begin());
        }
    };
    take_snapshots(state);

    for (long step = 1; step <= steps; ++step) {
        const double t_prev = state.time;
        const double t_next = step == steps ? cfg.t_end : static_cast<double>(step) * dt;
        const double h_t = t_next - t_prev;

        if (cfg.method == Method::RK4) {
            const RunStatus st = rk4_step(state, h_t, grid, ws);
            if (st != RunStatus::Completed) {
                rec.status = st;
                rec.failure_time = t_next;
                break;
            }
        } else {
            const RattleStepResult r = rattle_step(state, h_t, grid, stepper, ws);
            rec.max_position_iterations = std::max(rec.max_position_iterations, r.position_iterations);
            rec.max_velocity_iterations = std::max(rec.max_velocity_iterations, r.velocity_iterations);
            if (r.status != RunStatus::Completed) {
                rec.status = r.status;
                rec.failure_time = t_next;
                break;
            }
        }
        state.time = t_next;
        rec.steps = static_cast<int>(step);

        if (cfg.energy_correction) {
            const double rate = energy_correction_rate(state, grid);
            delta_e = accumulate_correction(delta_e, rate_prev, rate, h_t);
            rate_prev = rate;
        }
        monitor(state);
        if (step % cfg.sample_stride == 0 || step == steps) finish_sample(measure(state, grid, cfg.energy_lambda_phi));
        take_snapshots(state);

        if (cfg.stop_on_flip && rec.monitor.back().origin_w < 0.0) {
            rec.stopped_on_flip = true;
            if (step % cfg.sample_stride != 0 && step != steps)
                finish_sample(measure(state, grid, cfg.energy_lambda_phi));
            break;
        }
    }
    rec.final_state = std::move(state);
    return rec;
}

} // namespace wavemap
