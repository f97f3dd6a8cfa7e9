#include "casurf/frame_field.hpp"

#include <cmath>
#include <optional>
#include <sstream>

#include <Eigen/LU>

#include "casurf/errors.hpp"

namespace casurf {

namespace {

// Columns are the (F_x, F_y)-coordinates of T and Q.
Mat2 tangent_coordinates(const Jet2& j, const FrameData& fr) {
    Mat2 B;
    B << j.Fx.dot(fr.T), j.Fx.dot(fr.Q), j.Fy.dot(fr.T), j.Fy.dot(fr.Q);
    return induced_metric(j).inverse() * B;
}

enum class Axis { X, Y };

// Derivative of a node quantity along one grid axis: Richardson-extrapolated
// central difference when two neighbours exist, plain central with one.
template <class Getter>
std::optional<Vec5> grid_derivative(const FrameField& field, int i, int j, Axis axis,
                                    Getter get) {
    const GridSpec& g = field.grid;
    const int n = axis == Axis::X ? g.nx : g.ny;
    const int pos = axis == Axis::X ? i : j;
    const double h = axis == Axis::X ? g.hx() : g.hy();
    auto at = [&](int offset) -> Vec5 {
        return axis == Axis::X ? get(i + offset, j) : get(i, j + offset);
    };
    if (pos - 1 < 0 || pos + 1 >= n) return std::nullopt;
    const Vec5 d1 = (at(1) - at(-1)) / (2 * h);
    if (pos - 2 < 0 || pos + 2 >= n) return d1;
    const Vec5 d2 = (at(2) - at(-2)) / (4 * h);
    return Vec5((4.0 * d1 - d2) / 3.0);
}

}  // namespace

FrameField build_frame_field(const ImmersionFn& f, const GridSpec& grid, JetScheme scheme,
                             FramePathway pathway, double fd_step) {
    grid.validate(1);
    FrameField field;
    field.grid = grid;
    field.jets.reserve(grid.size());
    field.frames.reserve(grid.size());
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            Jet2 jt = jet(f, grid.x(i), grid.y(j), scheme, fd_step);
            field.frames.push_back(pathway == FramePathway::Adapted ? adapted_frame(jt)
                                                                    : zero_angle_frame(jt));
            field.jets.push_back(std::move(jt));
        }
    }

    // Serial sweep: each node aligns with its left neighbour, or the node below
    // at the start of a row.
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            if (i == 0 && j == 0) continue;
            const FrameData& ref = i > 0 ? field.frame(i - 1, j) : field.frame(i, j - 1);
            FrameData& fr = field.frames[grid.index(i, j)];
            if (fr.xi.dot(ref.xi) < 0.0) fr.xi = -fr.xi;
            if (fr.eta.dot(ref.eta) < 0.0) fr.eta = -fr.eta;
        }
    }

    auto check_pair = [&](int i, int j, int i2, int j2) {
        const FrameData& a = field.frame(i, j);
        const FrameData& b = field.frame(i2, j2);
        if (a.T.dot(b.T) <= 0.0 || a.Q.dot(b.Q) <= 0.0 || a.xi.dot(b.xi) <= 0.0 ||
            a.eta.dot(b.eta) <= 0.0) {
            std::ostringstream os;
            os << "frame sign flip between nodes (" << i << ", " << j << ") and (" << i2 << ", "
               << j2 << ")";
            throw FrameAlignmentError(os.str());
        }
    };
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            if (i + 1 < grid.nx) check_pair(i, j, i + 1, j);
            if (j + 1 < grid.ny) check_pair(i, j, i, j + 1);
        }
    }
    return field;
}

std::vector<NormalConnectionSample> normal_connection_coeffs(const FrameField& field) {
    std::vector<NormalConnectionSample> out;
    const GridSpec& g = field.grid;
    auto xi_at = [&](int a, int b) { return field.frame(a, b).xi; };
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const auto xi_x = grid_derivative(field, i, j, Axis::X, xi_at);
            const auto xi_y = grid_derivative(field, i, j, Axis::Y, xi_at);
            if (!xi_x || !xi_y) continue;
            const FrameData& fr = field.frame(i, j);
            const Mat2 P = tangent_coordinates(field.jet_at(i, j), fr);
            const Vec5 dT = P(0, 0) * *xi_x + P(1, 0) * *xi_y;
            const Vec5 dQ = P(0, 1) * *xi_x + P(1, 1) * *xi_y;
            out.push_back({i, j, dT.dot(fr.eta), dQ.dot(fr.eta)});
        }
    }
    return out;
}

std::vector<TangentialConnectionSample> tangential_connection(const FrameField& field) {
    std::vector<TangentialConnectionSample> out;
    const GridSpec& g = field.grid;
    auto T_at = [&](int a, int b) { return field.frame(a, b).T; };
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const auto T_x = grid_derivative(field, i, j, Axis::X, T_at);
            const auto T_y = grid_derivative(field, i, j, Axis::Y, T_at);
            if (!T_x || !T_y) continue;
            const FrameData& fr = field.frame(i, j);
            const Mat2 P = tangent_coordinates(field.jet_at(i, j), fr);
            const Vec5 dT = P(0, 0) * *T_x + P(1, 0) * *T_y;
            const Vec5 dQ = P(0, 1) * *T_x + P(1, 1) * *T_y;
            out.push_back({i, j, dT.dot(fr.Q), dQ.dot(fr.Q)});
        }
    }
    return out;
}

std::vector<WeingartenSample> weingarten_residuals(const FrameField& field) {
    std::vector<WeingartenSample> out;
    const GridSpec& g = field.grid;
    auto xi_at = [&](int a, int b) { return field.frame(a, b).xi; };
    auto eta_at = [&](int a, int b) { return field.frame(a, b).eta; };
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const auto xi_x = grid_derivative(field, i, j, Axis::X, xi_at);
            const auto xi_y = grid_derivative(field, i, j, Axis::Y, xi_at);
            const auto eta_x = grid_derivative(field, i, j, Axis::X, eta_at);
            const auto eta_y = grid_derivative(field, i, j, Axis::Y, eta_at);
            if (!xi_x || !xi_y || !eta_x || !eta_y) continue;
            const Jet2& jt = field.jet_at(i, j);
            const FrameData& fr = field.frame(i, j);
            double worst = 0.0;
            auto compare = [&](const Vec5& nu, const Vec5& nu_x, const Vec5& nu_y) {
                const Vec5* d[2] = {&nu_x, &nu_y};
                const Vec5* t[2] = {&jt.Fx, &jt.Fy};
                const Vec5* second[2][2] = {{&jt.Fxx, &jt.Fxy}, {&jt.Fxy, &jt.Fyy}};
                for (int a = 0; a < 2; ++a) {
                    for (int b = 0; b < 2; ++b) {
                        const double r = second[a][b]->dot(nu) + d[a]->dot(*t[b]);
                        worst = std::max(worst, std::abs(r));
                    }
                }
            };
            compare(fr.xi, *xi_x, *xi_y);
            compare(fr.eta, *eta_x, *eta_y);
            out.push_back({i, j, worst});
        }
    }
    return out;
}

}  // namespace casurf
