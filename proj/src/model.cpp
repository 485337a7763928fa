#include "wavemap/model.hpp"

#include <cmath>
#include <string>

namespace wavemap {

FieldState make_state(const Grid2D& grid) {
    FieldState s;
    s.u = ScalarField(grid, Parity::Odd, Parity::Even);
    s.v = ScalarField(grid, Parity::Even, Parity::Odd);
    s.w = ScalarField(grid, Parity::Even, Parity::Even);
    s.ut = ScalarField(grid, Parity::Odd, Parity::Even);
    s.vt = ScalarField(grid, Parity::Even, Parity::Odd);
    s.wt = ScalarField(grid, Parity::Even, Parity::Even);
    return s;
}

void fill_ghosts(FieldState& state, const Grid2D& grid) {
    for (ScalarField* f : state.all()) fill_ghosts(*f, grid);
}

void InitialDataParams::validate() const {
    if (!std::isfinite(amplitude)) throw ConfigError("amplitude: must be finite");
    if (!(r1 >= 0.0 && r1 < r2)) throw ConfigError("r1/r2: need 0 <= r1 < r2");
    if (n < 1) throw ConfigError("n: exponent must be a positive integer, got " + std::to_string(n));
}

double theta0(double r, const InitialDataParams& p) {
    if (r < p.r1 || r > p.r2) return 0.0;
    const double width = p.r2 - p.r1;
    const double bump = 4.0 * (r - p.r1) * (p.r2 - r) / (width * width);
    return p.amplitude * std::pow(bump, p.n);
}

double theta0_prime(double r, const InitialDataParams& p) {
    if (r < p.r1 || r > p.r2) return 0.0;
    const double width2 = (p.r2 - p.r1) * (p.r2 - p.r1);
    const double bump = 4.0 * (r - p.r1) * (p.r2 - r) / width2;
    const double dbump = 4.0 * (p.r1 + p.r2 - 2.0 * r) / width2;
    return p.amplitude * p.n * std::pow(bump, p.n - 1) * dbump;
}

std::array<double, 3> intrinsic_to_extrinsic(double theta, double phi_angle) {
    const double st = std::sin(theta);
    return {st * std::cos(phi_angle), st * std::sin(phi_angle), std::cos(theta)};
}

FieldState initial_state(const InitialDataParams& p, const Grid2D& grid) {
    p.validate();
    FieldState s = make_state(grid);
    for (int k = 0; k < grid.n; ++k) {
        const double y = grid.y(k);
        for (int j = 0; j < grid.n; ++j) {
            const double x = grid.x(j);
            const double r = std::hypot(x, y);
            const double th = theta0(r, p);
            const double dth = theta0_prime(r, p);
            const double st = std::sin(th);
            const double ct = std::cos(th);
            // cos/sin of the equivariant angle; the origin takes the r -> 0 limit
            const double cx = r > 0.0 ? x / r : 0.0;
            const double sy = r > 0.0 ? y / r : 0.0;
            s.u(j, k) = st * cx;
            s.v(j, k) = st * sy;
            s.w(j, k) = ct;
            s.ut(j, k) = ct * dth * cx;
            s.vt(j, k) = ct * dth * sy;
            s.wt(j, k) = r > 0.0 ? -st * dth : 0.0;
        }
    }
    fill_ghosts(s, grid);
    return s;
}

FieldState static_solution(const Grid2D& grid, Pole pole) {
    FieldState s = make_state(grid);
    const double sign = pole == Pole::South ? 1.0 : -1.0;
    for (int k = 0; k < grid.n; ++k) {
        const double y = grid.y(k);
        for (int j = 0; j < grid.n; ++j) {
            const double x = grid.x(j);
            const double r2 = x * x + y * y;
            const double d = 1.0 + r2;
            s.u(j, k) = 2.0 * x / d;
            s.v(j, k) = 2.0 * y / d;
            s.w(j, k) = sign * (1.0 - r2) / d;
        }
    }
    fill_ghosts(s, grid);
    return s;
}

namespace {

inline double d1(const double* p, std::ptrdiff_t step, double c) {
    return (p[-2 * step] - 8.0 * p[-step] + 8.0 * p[step] - p[2 * step]) * c;
}

inline double lap(const double* p, std::ptrdiff_t sy, double c) {
    return (-p[-2] + 16.0 * p[-1] - 30.0 * p[0] + 16.0 * p[1] - p[2] - p[-2 * sy] + 16.0 * p[-sy] - 30.0 * p[0] +
            16.0 * p[sy] - p[2 * sy]) *
           c;
}

inline double lambda_at(const FieldState& s, std::size_t i, std::ptrdiff_t sy, double c1) {
    const double* u = s.u.raw().data() + i;
    const double* v = s.v.raw().data() + i;
    const double* w = s.w.raw().data() + i;
    const double ux = d1(u, 1, c1), vx = d1(v, 1, c1), wx = d1(w, 1, c1);
    const double uy = d1(u, sy, c1), vy = d1(v, sy, c1), wy = d1(w, sy, c1);
    const double ut = s.ut.raw()[i], vt = s.vt.raw()[i], wt = s.wt.raw()[i];
    return -0.5 * (ut * ut + vt * vt + wt * wt - ux * ux - vx * vx - wx * wx - uy * uy - vy * vy - wy * wy);
}

void ensure_shape(FieldState& rates, const Grid2D& grid) {
    if (rates.u.raw().size() != grid.storage_size()) {
        const double t = rates.time;
        rates = make_state(grid);
        rates.time = t;
    }
}

} // namespace

ScalarField lambda_field(const FieldState& s, const Grid2D& grid) {
    ScalarField out(grid, Parity::Even, Parity::Even);
    const double c1 = 1.0 / (12.0 * grid.h);
    const std::ptrdiff_t sy = grid.stride();
    for (int k = 0; k < grid.n; ++k)
        for (int j = 0; j < grid.n; ++j) {
            const std::size_t i = s.u.index(j, k);
            out.raw()[i] = lambda_at(s, i, sy, c1);
        }
    return out;
}

void rhs_free(const FieldState& s, const Grid2D& grid, FieldState& rates) {
    ensure_shape(rates, grid);
    const double c1 = 1.0 / (12.0 * grid.h);
    const double c2 = 1.0 / (12.0 * grid.h * grid.h);
    const std::ptrdiff_t sy = grid.stride();
    for (int k = 0; k < grid.n; ++k) {
        for (int j = 0; j < grid.n; ++j) {
            const std::size_t i = s.u.index(j, k);
            const double lam2 = 2.0 * lambda_at(s, i, sy, c1);
            rates.u.raw()[i] = s.ut.raw()[i];
            rates.v.raw()[i] = s.vt.raw()[i];
            rates.w.raw()[i] = s.wt.raw()[i];
            rates.ut.raw()[i] = lap(s.u.raw().data() + i, sy, c2) + lam2 * s.u.raw()[i];
            rates.vt.raw()[i] = lap(s.v.raw().data() + i, sy, c2) + lam2 * s.v.raw()[i];
            rates.wt.raw()[i] = lap(s.w.raw().data() + i, sy, c2) + lam2 * s.w.raw()[i];
        }
    }
}

ScalarField constraint_phi(const FieldState& s) {
    ScalarField out = s.w;
    out.set_parity(Parity::Even, Parity::Even);
    const auto& u = s.u.raw();
    const auto& v = s.v.raw();
    const auto& w = s.w.raw();
    auto& o = out.raw();
    for (std::size_t i = 0; i < o.size(); ++i) o[i] = u[i] * u[i] + v[i] * v[i] + w[i] * w[i] - 1.0;
    return out;
}

ScalarField constraint_psi(const FieldState& s) {
    ScalarField out = s.w;
    out.set_parity(Parity::Even, Parity::Even);
    const auto& u = s.u.raw();
    const auto& v = s.v.raw();
    const auto& w = s.w.raw();
    auto& o = out.raw();
    for (std::size_t i = 0; i < o.size(); ++i)
        o[i] = 2.0 * (u[i] * s.ut.raw()[i] + v[i] * s.vt.raw()[i] + w[i] * s.wt.raw()[i]);
    return out;
}

} // namespace wavemap
