#pragma once

#include <array>

#include "wavemap/grid.hpp"

namespace wavemap {

/// Extrinsic wave-map state: sphere components and their velocities.
///
/// On the Quarter domain u is odd in x, v is odd in y and w is even in both;
/// each velocity carries the parity of its field.
struct FieldState {
    ScalarField u, v, w;
    ScalarField ut, vt, wt;
    double time = 0.0;

    std::array<ScalarField*, 3> positions() { return {&u, &v, &w}; }
    std::array<const ScalarField*, 3> positions() const { return {&u, &v, &w}; }
    std::array<ScalarField*, 3> velocities() { return {&ut, &vt, &wt}; }
    std::array<const ScalarField*, 3> velocities() const { return {&ut, &vt, &wt}; }
    std::array<ScalarField*, 6> all() { return {&u, &v, &w, &ut, &vt, &wt}; }
    std::array<const ScalarField*, 6> all() const { return {&u, &v, &w, &ut, &vt, &wt}; }
};

/// Zero state with the parities appropriate for the grid's domain.
FieldState make_state(const Grid2D& grid);

void fill_ghosts(FieldState& state, const Grid2D& grid);

/// Polynomial ring bump theta0(r) = A (4 (r - r1)(r2 - r) / (r2 - r1)^2)^n on [r1, r2].
struct InitialDataParams {
    double amplitude = 0.0;
    double r1 = 0.5;
    double r2 = 1.0;
    int n = 4;

    void validate() const;
};

double theta0(double r, const InitialDataParams& p);
double theta0_prime(double r, const InitialDataParams& p);

/// (sin t cos p, sin t sin p, cos t).
std::array<double, 3> intrinsic_to_extrinsic(double theta, double phi_angle);

/// Ring data with the ingoing velocity profile; ghosts filled.
FieldState initial_state(const InitialDataParams& p, const Grid2D& grid);

enum class Pole { South, North };

/// Stereographic harmonic map; South gives w = +(1 - r^2)/(1 + r^2). Ghosts filled.
FieldState static_solution(const Grid2D& grid, Pole pole = Pole::South);

/// lambda = -1/2 [ |U_t|^2 - |U_x|^2 - |U_y|^2 ] with five-point first derivatives.
ScalarField lambda_field(const FieldState& state, const Grid2D& grid);

/// Rates of the multiplier-eliminated system:
/// d/dt U = U_t, d/dt U_t = Lap_h U + 2 lambda U. Ghosts must be filled.
/// `rates` is resized as needed; its time member is left untouched.
void rhs_free(const FieldState& state, const Grid2D& grid, FieldState& rates);

/// u^2 + v^2 + w^2 - 1 at every node.
ScalarField constraint_phi(const FieldState& state);
/// 2 (u u_t + v v_t + w w_t) at every node.
ScalarField constraint_psi(const FieldState& state);

} // namespace wavemap
