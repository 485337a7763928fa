#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "wavemap/config.hpp"
#include "wavemap/integrate.hpp"

namespace wavemap {

enum class RunClass { Subcritical, Flip, Failed };
std::string to_string(RunClass c);

/// Flip iff w at the origin ever drops below zero; Failed iff the run did
/// not complete (a flip seen before the failure still counts as Flip).
RunClass classify_run(const RunRecord& record);

struct CriticalSearchResult {
    double a_star = 0.0;  // smallest amplitude known to be supercritical
    double a_lo = 0.0;
    double a_hi = 0.0;
    int runs = 0;  // bisection midpoints evaluated
    std::vector<std::pair<double, RunClass>> classifications;
    bool failed_seen = false;
};

using AmplitudeClassifier = std::function<RunClass(double amplitude)>;

/// Bisection on the amplitude. Failed counts as supercritical. Throws
/// std::invalid_argument unless classify(a_lo) is Subcritical and
/// classify(a_hi) is not.
CriticalSearchResult critical_search(const AmplitudeClassifier& classify, double a_lo, double a_hi, double tol_a);

/// Runs one evolution per candidate amplitude with base's remaining settings.
CriticalSearchResult critical_search(const RunConfig& base, double a_lo, double a_hi, double tol_a);

struct FitResult {
    double T = 0.0;
    double b = 0.0;
    double residual = 0.0;  // sum of squared errors
    int iterations = 0;
    bool converged = false;
};

/// s(t) = (1.04/e) (T - t) exp(-sqrt(-ln(T - t) + b)).
double scaling_model(double t, double T, double b);

/// Levenberg-Marquardt fit of (T, b) over the points with t in [t_a, t_b].
/// Initial guess T = t_b + 0.1, b = 0 unless T0 is given. Throws
/// std::invalid_argument for fewer than 5 points in the window or a T0 at
/// or before the last window time.
FitResult fit_scaling(const std::vector<std::pair<double, double>>& series, std::pair<double, double> window,
                      std::optional<double> initial_T = std::nullopt);

/// Least-squares slope of ln e against ln h.
double convergence_order(const std::vector<std::pair<double, double>>& errors);


/// Evolves the static South solution with cfg's stepper to cfg.t_end and
/// returns the maximum over steps of max |w(t) - w(0)| on nodes with
/// |x|, |y| <= region. The region keeps the measurement clear of the outer
/// boundary, where the Neumann reflection does not match the static profile.
double static_drift(const RunConfig& cfg, double region);

} // namespace wavemap
