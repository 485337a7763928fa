#pragma once

#include <optional>
#include <vector>

#include "wavemap/grid.hpp"
#include "wavemap/model.hpp"

namespace wavemap {

/// Scalars measured at one sample time.
struct DiagnosticsRecord {
    double t = 0.0;
    double phi_max = 0.0;
    double psi_max = 0.0;
    double origin_dev = 0.0;  // |w(t,0,0) - 1|
    double energy = 0.0;
    double energy_rel = 0.0;  // |1 - E(t)/E(0)|
    double delta_e = 0.0;     // accumulated integral of lambda*psi
    std::optional<double> s;  // scaling function, absent when undefined
    double min_w = 0.0;

    bool operator==(const DiagnosticsRecord&) const = default;
};

struct ConstraintNorms {
    double phi_max = 0.0;
    double psi_max = 0.0;
};

/// Max over the interior nodes of |phi| and |psi|.
ConstraintNorms max_norms(const FieldState& state);

double origin_value(const FieldState& state, const Grid2D& grid);
double origin_deviation(const FieldState& state, const Grid2D& grid);
double min_w(const FieldState& state);

/// E = 1/2 * integral of |U_t|^2 + |U_x|^2 + |U_y|^2 - lambda*phi, with the
/// symmetry factor 4 on the Quarter domain. Ghosts must be filled.
double total_energy(const FieldState& state, const Grid2D& grid, bool include_lambda_phi = true);

/// Integral of lambda*psi (same symmetry factor as total_energy).
double energy_correction_rate(const FieldState& state, const Grid2D& grid);

/// Trapezoid in time: delta_e + dt (rate_prev + rate_curr) / 2.
double accumulate_correction(double delta_e_prev, double rate_prev, double rate_curr, double dt);

/// Relative energy with the constraint-violation correction removed.
double corrected_energy_rel(const DiagnosticsRecord& rec, double e0);

/// s = 2 / sqrt(|w_rr(t,0)|), w_rr from the x-axis five-point stencil.
/// Absent when |w_rr| < 1e-12.
std::optional<double> scaling_function(const FieldState& state, const Grid2D& grid);

struct ProfilePoint {
    double r = 0.0;
    double w = 0.0;         // w(t, s*r) on the positive x-axis
    double w_static = 0.0;  // (1 - r^2) / (1 + r^2)
};

/// Samples w at radius s*r along the positive x-axis with cubic Lagrange
/// interpolation. Throws std::out_of_range if s*r leaves [0, 1].
std::vector<ProfilePoint> rescaled_profile(const FieldState& state, const Grid2D& grid, double s,
                                           const std::vector<double>& radii);

struct LightconeEnergies {
    double kinetic = 0.0;
    double potential = 0.0;
};

/// Kinetic and gradient energy inside the disk r <= radius (sharp node indicator).
LightconeEnergies lightcone_energies(const FieldState& state, const Grid2D& grid, double radius);

/// All scalar diagnostics except delta_e and energy_rel, which depend on history.
DiagnosticsRecord measure(const FieldState& state, const Grid2D& grid, bool include_lambda_phi = true);

} // namespace wavemap
