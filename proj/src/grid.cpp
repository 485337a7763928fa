#include "wavemap/grid.hpp"

namespace wavemap {

std::string to_string(Domain d) { return d == Domain::Full ? "full" : "quarter"; }

Domain domain_from_string(const std::string& s) {
    if (s == "full") return Domain::Full;
    if (s == "quarter") return Domain::Quarter;
    throw ConfigError("domain: expected 'full' or 'quarter', got '" + s + "'");
}

Grid2D build_grid(Domain domain, int n) {
    if (n < 3) throw ConfigError("grid_n: need at least 3 nodes per axis, got " + std::to_string(n));
    if (n % 2 == 0) throw ConfigError("grid_n: must be odd so the origin is a node, got " + std::to_string(n));
    Grid2D g;
    g.domain = domain;
    g.n = n;
    if (domain == Domain::Full) {
        g.h = 2.0 / (n - 1);
        g.x_min = g.y_min = -1.0;
    } else {
        g.h = 1.0 / (n - 1);
        g.x_min = g.y_min = 0.0;
    }
    return g;
}

std::vector<double> ScalarField::interior() const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n_) * n_);
    for (int k = 0; k < n_; ++k)
        for (int j = 0; j < n_; ++j) out.push_back((*this)(j, k));
    return out;
}

namespace {

double sign_of(Parity p) { return p == Parity::Odd ? -1.0 : 1.0; }

} // namespace

void fill_ghosts(ScalarField& f, const Grid2D& grid) {
    const int n = grid.n;
    const bool quarter = grid.domain == Domain::Quarter;
    const Parity low_x = quarter ? f.parity_x() : Parity::Even;
    const Parity low_y = quarter ? f.parity_y() : Parity::Even;
    const double sx = sign_of(low_x);
    const double sy = sign_of(low_y);

    // x direction on interior rows
    for (int k = 0; k < n; ++k) {
        if (low_x == Parity::Odd) f(0, k) = 0.0;
        f(-1, k) = sx * f(1, k);
        f(-2, k) = sx * f(2, k);
        f(n, k) = f(n - 2, k);
        f(n + 1, k) = f(n - 3, k);
    }
    // y direction on all columns, ghost columns included, so corners are consistent
    for (int j = -2; j < n + 2; ++j) {
        if (low_y == Parity::Odd) f(j, 0) = 0.0;
        f(j, -1) = sy * f(j, 1);
        f(j, -2) = sy * f(j, 2);
        f(j, n) = f(j, n - 2);
        f(j, n + 1) = f(j, n - 3);
    }
}

ScalarField derivative(const ScalarField& f, Axis axis, DerivativeOrder order, const Grid2D& grid) {
    ScalarField out(grid, Parity::None, Parity::None);
    const int n = grid.n;
    const std::ptrdiff_t step = axis == Axis::X ? 1 : f.stride();
    const auto& src = f.raw();
    auto& dst = out.raw();
    if (order == DerivativeOrder::First) {
        const double c = 1.0 / (12.0 * grid.h);
        for (int k = 0; k < n; ++k) {
            for (int j = 0; j < n; ++j) {
                const auto i = static_cast<std::ptrdiff_t>(f.index(j, k));
                dst[i] = (src[i - 2 * step] - 8.0 * src[i - step] + 8.0 * src[i + step] - src[i + 2 * step]) * c;
            }
        }
    } else {
        const double c = 1.0 / (12.0 * grid.h * grid.h);
        for (int k = 0; k < n; ++k) {
            for (int j = 0; j < n; ++j) {
                const auto i = static_cast<std::ptrdiff_t>(f.index(j, k));
                dst[i] = (-src[i - 2 * step] + 16.0 * src[i - step] - 30.0 * src[i] + 16.0 * src[i + step] -
                          src[i + 2 * step]) *
                         c;
            }
        }
    }
    return out;
}

void laplacian(const ScalarField& f, const Grid2D& grid, ScalarField& out) {
    if (out.raw().size() != f.raw().size()) out = ScalarField(grid, Parity::None, Parity::None);
    const int n = grid.n;
    const std::ptrdiff_t sy = f.stride();
    const double c = 1.0 / (12.0 * grid.h * grid.h);
    const auto& s = f.raw();
    auto& d = out.raw();
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) {
            const auto i = static_cast<std::ptrdiff_t>(f.index(j, k));
            const double xx = -s[i - 2] + 16.0 * s[i - 1] - 30.0 * s[i] + 16.0 * s[i + 1] - s[i + 2];
            const double yy = -s[i - 2 * sy] + 16.0 * s[i - sy] - 30.0 * s[i] + 16.0 * s[i + sy] - s[i + 2 * sy];
            d[i] = (xx + yy) * c;
        }
    }
}

double trapezoid_weight(const Grid2D& grid, int j, int k) {
    const int last = grid.n - 1;
    double w = grid.h * grid.h;
    if (j == 0 || j == last) w *= 0.5;
    if (k == 0 || k == last) w *= 0.5;
    return w;
}

double quadrature(const ScalarField& f, const Grid2D& grid) {
    const int n = grid.n;
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
        const double wy = (k == 0 || k == n - 1) ? 0.5 : 1.0;
        double row = 0.0;
        for (int j = 0; j < n; ++j) {
            const double wx = (j == 0 || j == n - 1) ? 0.5 : 1.0;
            row += wx * f(j, k);
        }
        sum += wy * row;
    }
    return sum * grid.h * grid.h;
}

} // namespace wavemap
