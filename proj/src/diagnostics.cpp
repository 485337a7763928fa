#include "wavemap/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wavemap {

namespace {

double symmetry_factor(const Grid2D& grid) { return grid.domain == Domain::Quarter ? 4.0 : 1.0; }

inline double d1(const double* p, std::ptrdiff_t step, double c) {
    return (p[-2 * step] - 8.0 * p[-step] + 8.0 * p[step] - p[2 * step]) * c;
}

struct NodeGradient {
    double kinetic2;   // |U_t|^2
    double gradient2;  // |U_x|^2 + |U_y|^2
};

inline NodeGradient node_gradient(const FieldState& s, std::size_t i, std::ptrdiff_t sy, double c1) {
    double grad = 0.0;
    for (const ScalarField* f : s.positions()) {
        const double* p = f->raw().data() + i;
        const double fx = d1(p, 1, c1);
        const double fy = d1(p, sy, c1);
        grad += fx * fx + fy * fy;
    }
    const double ut = s.ut.raw()[i], vt = s.vt.raw()[i], wt = s.wt.raw()[i];
    return {ut * ut + vt * vt + wt * wt, grad};
}

} // namespace

ConstraintNorms max_norms(const FieldState& s) {
    ConstraintNorms out;
    const int n = s.u.n();
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) {
            const double u = s.u(j, k), v = s.v(j, k), w = s.w(j, k);
            const double phi = u * u + v * v + w * w - 1.0;
            const double psi = 2.0 * (u * s.ut(j, k) + v * s.vt(j, k) + w * s.wt(j, k));
            out.phi_max = std::max(out.phi_max, std::abs(phi));
            out.psi_max = std::max(out.psi_max, std::abs(psi));
        }
    }
    return out;
}

double origin_value(const FieldState& s, const Grid2D& grid) {
    const int o = grid.origin_index();
    return s.w(o, o);
}

double origin_deviation(const FieldState& s, const Grid2D& grid) { return std::abs(origin_value(s, grid) - 1.0); }

double min_w(const FieldState& s) {
    const int n = s.w.n();
    double m = s.w(0, 0);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) m = std::min(m, s.w(j, k));
    return m;
}

double total_energy(const FieldState& s, const Grid2D& grid, bool include_lambda_phi) {
    const double c1 = 1.0 / (12.0 * grid.h);
    const std::ptrdiff_t sy = grid.stride();
    double sum = 0.0;
    for (int k = 0; k < grid.n; ++k) {
        for (int j = 0; j < grid.n; ++j) {
            const std::size_t i = s.u.index(j, k);
            const NodeGradient g = node_gradient(s, i, sy, c1);
            double density = g.kinetic2 + g.gradient2;
            if (include_lambda_phi) {
                const double lambda = -0.5 * (g.kinetic2 - g.gradient2);
                const double u = s.u.raw()[i], v = s.v.raw()[i], w = s.w.raw()[i];
                density -= lambda * (u * u + v * v + w * w - 1.0);
            }
            sum += trapezoid_weight(grid, j, k) * density;
        }
    }
    return 0.5 * symmetry_factor(grid) * sum;
}

double energy_correction_rate(const FieldState& s, const Grid2D& grid) {
    const double c1 = 1.0 / (12.0 * grid.h);
    const std::ptrdiff_t sy = grid.stride();
    double sum = 0.0;
    for (int k = 0; k < grid.n; ++k) {
        for (int j = 0; j < grid.n; ++j) {
            const std::size_t i = s.u.index(j, k);
            const NodeGradient g = node_gradient(s, i, sy, c1);
            const double lambda = -0.5 * (g.kinetic2 - g.gradient2);
            const double psi =
                2.0 * (s.u.raw()[i] * s.ut.raw()[i] + s.v.raw()[i] * s.vt.raw()[i] + s.w.raw()[i] * s.wt.raw()[i]);
            sum += trapezoid_weight(grid, j, k) * lambda * psi;
        }
    }
    return symmetry_factor(grid) * sum;
}

double accumulate_correction(double delta_e_prev, double rate_prev, double rate_curr, double dt) {
    return delta_e_prev + dt * 0.5 * (rate_prev + rate_curr);
}

double corrected_energy_rel(const DiagnosticsRecord& rec, double e0) {
    if (e0 == 0.0) return 0.0;
    return std::abs(1.0 - (rec.energy - rec.delta_e) / e0);
}

std::optional<double> scaling_function(const FieldState& s, const Grid2D& grid) {
    const int o = grid.origin_index();
    const double wrr =
        (-s.w(o - 2, o) + 16.0 * s.w(o - 1, o) - 30.0 * s.w(o, o) + 16.0 * s.w(o + 1, o) - s.w(o + 2, o)) /
        (12.0 * grid.h * grid.h);
    if (!(std::abs(wrr) >= 1e-12)) return std::nullopt;
    return 2.0 / std::sqrt(std::abs(wrr));
}

std::vector<ProfilePoint> rescaled_profile(const FieldState& s, const Grid2D& grid, double scale,
                                           const std::vector<double>& radii) {
    const int o = grid.origin_index();
    const double extent = 1.0;
    std::vector<ProfilePoint> out;
    out.reserve(radii.size());
    for (double r : radii) {
        const double x = scale * r;
        if (!(r >= 0.0) || !(x <= extent + 1e-14))
            throw std::out_of_range("rescaled_profile: radius " + std::to_string(r) + " maps outside the grid");
        // fractional node index along the axis row, measured from the origin node
        const double p = x / grid.h;
        int j0 = static_cast<int>(std::floor(p));
        j0 = std::clamp(j0, 0, grid.n - 1 - o);
        const double xi = p - j0;
        double value = 0.0;
        for (int a = -1; a <= 2; ++a) {
            double basis = 1.0;
            for (int b = -1; b <= 2; ++b)
                if (b != a) basis *= (xi - b) / static_cast<double>(a - b);
            value += basis * s.w(o + j0 + a, o);
        }
        const double r2 = r * r;
        out.push_back({r, value, (1.0 - r2) / (1.0 + r2)});
    }
    return out;
}

LightconeEnergies lightcone_energies(const FieldState& s, const Grid2D& grid, double radius) {
    const double c1 = 1.0 / (12.0 * grid.h);
    const std::ptrdiff_t sy = grid.stride();
    const double limit = radius * radius * (1.0 + 1e-12);
    LightconeEnergies e;
    for (int k = 0; k < grid.n; ++k) {
        const double y = grid.y(k);
        for (int j = 0; j < grid.n; ++j) {
            const double x = grid.x(j);
            if (x * x + y * y > limit) continue;
            const NodeGradient g = node_gradient(s, s.u.index(j, k), sy, c1);
            const double wgt = trapezoid_weight(grid, j, k);
            e.kinetic += wgt * g.kinetic2;
            e.potential += wgt * g.gradient2;
        }
    }
    const double f = 0.5 * symmetry_factor(grid);
    e.kinetic *= f;
    e.potential *= f;
    return e;
}

DiagnosticsRecord measure(const FieldState& s, const Grid2D& grid, bool include_lambda_phi) {
    DiagnosticsRecord r;
    r.t = s.time;
    const ConstraintNorms norms = max_norms(s);
    r.phi_max = norms.phi_max;
    r.psi_max = norms.psi_max;
    r.origin_dev = origin_deviation(s, grid);
    r.energy = total_energy(s, grid, include_lambda_phi);
    r.s = scaling_function(s, grid);
    r.min_w = min_w(s);
    return r;
}

} // namespace wavemap
