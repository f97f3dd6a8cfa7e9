#pragma once

#include <cstddef>
#include <numbers>

namespace casurf {

/// Rectangular sample grid over [x0, x1] x [y0, y1] with nx * ny nodes,
/// stored row-major (x fastest). End nodes hit x1 and y1 exactly.
struct GridSpec {
    int nx = 33;
    int ny = 33;
    double x0 = 0.0;
    double x1 = 2.0 * std::numbers::pi;
    double y0 = 0.0;
    double y1 = 2.0 * std::numbers::pi;

    double hx() const { return (x1 - x0) / (nx - 1); }
    double hy() const { return (y1 - y0) / (ny - 1); }
    double x(int i) const { return i == nx - 1 ? x1 : x0 + (x1 - x0) * i / (nx - 1); }
    double y(int j) const { return j == ny - 1 ? y1 : y0 + (y1 - y0) * j / (ny - 1); }
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(j) * nx + static_cast<std::size_t>(i);
    }
    std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
    bool interior(int i, int j) const { return i > 0 && j > 0 && i < nx - 1 && j < ny - 1; }

    /// Throws ParameterError unless nx, ny >= min_nodes and both ranges are
    /// finite and increasing.
    void validate(int min_nodes = 3) const;
};

/// (2 radius + 1)^2 grid centred at (x, y) with spacing (hx, hy).
GridSpec local_patch(double x, double y, double hx, double hy, int radius);

}  // namespace casurf
