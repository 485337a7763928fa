#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace wavemap {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Domain { Full, Quarter };
enum class Parity { Even, Odd, None };
enum class Axis { X, Y };
enum class DerivativeOrder { First, Second };

std::string to_string(Domain d);
Domain domain_from_string(const std::string& s);

/// Uniform node-centred grid on [-1,1]^2 (Full) or [0,1]^2 (Quarter).
///
/// Nodes are indexed 0..n-1 on each axis; two ghost layers on every side
/// extend the index range to -2..n+1.
struct Grid2D {
    static constexpr int ghost_layers = 2;

    Domain domain = Domain::Full;
    int n = 0;
    double h = 0.0;
    double x_min = 0.0;
    double y_min = 0.0;

    int stride() const { return n + 2 * ghost_layers; }
    std::size_t storage_size() const {
        return static_cast<std::size_t>(stride()) * static_cast<std::size_t>(stride());
    }
    /// Node coordinate; exact at the origin and mirror-symmetric on Full.
    double coord(int j) const {
        const double m = n - 1;
        return domain == Domain::Full ? (2.0 * j - m) / m : j / m;
    }
    double x(int j) const { return coord(j); }
    double y(int k) const { return coord(k); }

    /// Node index of the origin along each axis.
    int origin_index() const { return domain == Domain::Full ? (n - 1) / 2 : 0; }
};

/// Throws ConfigError for even n or n < 3. Evolutions additionally require
/// n >= min_evolution_nodes (checked by the run configuration).
inline constexpr int min_evolution_nodes = 9;

Grid2D build_grid(Domain domain, int n);

/// Grid function with two ghost layers per side.
class ScalarField {
public:
    ScalarField() = default;
    ScalarField(const Grid2D& grid, Parity parity_x = Parity::Even, Parity parity_y = Parity::Even)
        : n_(grid.n), stride_(grid.stride()), parity_x_(parity_x), parity_y_(parity_y),
          values_(grid.storage_size(), 0.0) {}

    int n() const { return n_; }
    int stride() const { return stride_; }
    Parity parity_x() const { return parity_x_; }
    Parity parity_y() const { return parity_y_; }
    void set_parity(Parity px, Parity py) { parity_x_ = px; parity_y_ = py; }

    double& operator()(int j, int k) { return values_[index(j, k)]; }
    double operator()(int j, int k) const { return values_[index(j, k)]; }

    std::vector<double>& raw() { return values_; }
    const std::vector<double>& raw() const { return values_; }

    std::size_t index(int j, int k) const {
        return static_cast<std::size_t>(k + Grid2D::ghost_layers) * static_cast<std::size_t>(stride_) +
               static_cast<std::size_t>(j + Grid2D::ghost_layers);
    }

    /// Interior nodes only, row-major in y then x.
    std::vector<double> interior() const;

private:
    int n_ = 0;
    int stride_ = 0;
    Parity parity_x_ = Parity::Even;
    Parity parity_y_ = Parity::Even;
    std::vector<double> values_;
};

/// Fills ghost layers by reflection. Full domain: every side is even
/// (homogeneous Neumann). Quarter domain: low sides use the field's parity,
/// high sides are even. Odd parity pins the boundary node to zero.
void fill_ghosts(ScalarField& field, const Grid2D& grid);

/// Centred five-point derivative at every node; ghosts must be filled.
/// The result carries no ghost data.
ScalarField derivative(const ScalarField& field, Axis axis, DerivativeOrder order, const Grid2D& grid);

/// Five-point Laplacian (sum of the x and y second-derivative stencils).
void laplacian(const ScalarField& field, const Grid2D& grid, ScalarField& out);

/// 2D trapezoidal rule over the grid's own domain (no symmetry factor).
double quadrature(const ScalarField& field, const Grid2D& grid);

/// Trapezoid weight of node (j, k), including h^2.
double trapezoid_weight(const Grid2D& grid, int j, int k);

} // namespace wavemap
