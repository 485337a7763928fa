#pragma once

#include <optional>
#include <vector>

#include "wavemap/config.hpp"
#include "wavemap/diagnostics.hpp"
#include "wavemap/grid.hpp"
#include "wavemap/model.hpp"

namespace wavemap {

struct StepperConfig {
    Method method = Method::Rattle;
    double cfl = 0.2;
    double tol = 1e-12;
    int max_iter = 100;
};

enum class RunStatus { Completed, ProjectionFailed, NonFinite };
std::string to_string(RunStatus s);

/// Scratch storage reused across steps to avoid reallocating fields.
struct StepWorkspace {
    FieldState stage, k1, k2, k3, k4;
    ScalarField lap_u, lap_v, lap_w;
};

/// Classical RK4 on the multiplier-eliminated system. Returns NonFinite if
/// any interior value stops being finite; otherwise Completed.
RunStatus rk4_step(FieldState& state, double dt, const Grid2D& grid, StepWorkspace& ws);
RunStatus rk4_step(FieldState& state, double dt, const Grid2D& grid);

struct RattleStepResult {
    RunStatus status = RunStatus::Completed;
    int position_iterations = 0;  // max over nodes
    int velocity_iterations = 0;  // max over nodes
};

/// Kick-drift-kick Stormer-Verlet step with nodewise Newton projections onto
/// |U| = 1 (positions) and U.U_t = 0 (velocities). On ProjectionFailed the
/// state is left partially updated and must be discarded.
RattleStepResult rattle_step(FieldState& state, double dt, const Grid2D& grid, const StepperConfig& cfg,
                             StepWorkspace& ws);
RattleStepResult rattle_step(FieldState& state, double dt, const Grid2D& grid, const StepperConfig& cfg);

/// Cheap per-step monitor of the origin and the global minimum of w.
struct MonitorPoint {
    double t = 0.0;
    double origin_w = 1.0;
    double min_w = 1.0;
    std::optional<double> s;
};

struct Snapshot {
    double requested_time = 0.0;
    FieldState state;
};

struct RunRecord {
    std::vector<DiagnosticsRecord> samples;
    std::vector<MonitorPoint> monitor;
    FieldState final_state;
    RunStatus status = RunStatus::Completed;
    double failure_time = 0.0;  // time of the step that failed
    bool stopped_on_flip = false;
    int steps = 0;
    int max_position_iterations = 0;
    int max_velocity_iterations = 0;
    std::vector<Snapshot> snapshots;
};

StepperConfig stepper_config(const RunConfig& cfg);
FieldState initial_state(const RunConfig& cfg, const Grid2D& grid);

/// Evolves from the configured initial data to t_end. Diagnostics are
/// sampled every sample_stride steps plus the final step; delta_e is
/// accumulated every step when energy_correction is set. The last step is
/// shortened to land on t_end.
RunRecord evolve(const RunConfig& cfg, const Grid2D& grid);
RunRecord evolve(const RunConfig& cfg, const Grid2D& grid, FieldState initial);

} // namespace wavemap
