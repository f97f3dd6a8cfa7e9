#include "casurf/residuals.hpp"

#include <cmath>
#include <sstream>

#include "casurf/errors.hpp"

namespace casurf {

FieldGrid FieldGrid::from_function(
    const GridSpec& grid, const std::function<SecondFundamentalData(double, double)>& fn) {
    FieldGrid fg;
    fg.grid = grid;
    fg.samples.reserve(grid.size());
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) fg.samples.push_back(fn(grid.x(i), grid.y(j)));
    }
    return fg;
}

void FieldGrid::validate() const {
    grid.validate(3);
    if (samples.size() != grid.size()) {
        throw ParameterError("field grid has " + std::to_string(samples.size()) +
                             " samples for " + std::to_string(grid.size()) + " nodes");
    }
    for (std::size_t k = 0; k < samples.size(); ++k) {
        if (!(samples[k].alpha > 0.0)) {
            std::ostringstream os;
            os << "alpha = " << samples[k].alpha << " <= 0 at sample " << k;
            throw InvalidMetricError(os.str());
        }
    }
}

namespace {

ResidualField::Extremum scan_max(const ResidualField& r, int which) {
    // which: 0 interior, 1 edge, 2 all
    ResidualField::Extremum best;
    bool found = false;
    for (int j = 0; j < r.grid.ny; ++j) {
        for (int i = 0; i < r.grid.nx; ++i) {
            const bool inside = r.grid.interior(i, j);
            if ((which == 0 && !inside) || (which == 1 && inside)) continue;
            const double v = std::abs(r.values[r.grid.index(i, j)]);
            if (!found || v > best.value || (std::isnan(v) && !std::isnan(best.value))) {
                best = {v, i, j};
                found = true;
            }
        }
    }
    return best;
}

using Member = double SecondFundamentalData::*;

// d/dx (axis 0) or d/dy (axis 1) of a gridded scalar field.
double field_derivative(const FieldGrid& fg, Member m, int i, int j, int axis) {
    const GridSpec& g = fg.grid;
    const int n = axis == 0 ? g.nx : g.ny;
    const int pos = axis == 0 ? i : j;
    const double h = axis == 0 ? g.hx() : g.hy();
    auto at = [&](int p) {
        return axis == 0 ? fg.samples[g.index(p, j)].*m : fg.samples[g.index(i, p)].*m;
    };
    if (pos == 0) return (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2 * h);
    if (pos == n - 1) return (3.0 * at(n - 1) - 4.0 * at(n - 2) + at(n - 3)) / (2 * h);
    return (at(pos + 1) - at(pos - 1)) / (2 * h);
}

ResidualField make_field(std::string name, const GridSpec& g) {
    ResidualField r;
    r.name = std::move(name);
    r.grid = g;
    r.values.assign(g.size(), 0.0);
    return r;
}

void check_theta(double theta) {
    if (!(theta > 0.0) || !(theta < std::numbers::pi / 2)) {
        std::ostringstream os;
        os << "structure equations need theta in (0, pi/2), got " << theta;
        throw ParameterError(os.str());
    }
}

}  // namespace

ResidualField::Extremum ResidualField::interior_max() const { return scan_max(*this, 0); }
ResidualField::Extremum ResidualField::edge_max() const { return scan_max(*this, 1); }
ResidualField::Extremum ResidualField::overall_max() const { return scan_max(*this, 2); }

std::array<ResidualField, 3> gauss_codazzi_ricci(const FieldGrid& fg, double theta) {
    fg.validate();
    check_theta(theta);
    const double cot = 1.0 / std::tan(theta);
    const double c = std::cos(theta);
    const double sec2 = 1.0 / (c * c);
    const GridSpec& g = fg.grid;

    std::array<ResidualField, 3> out = {make_field("structure_gauss", g),
                                        make_field("structure_codazzi_1", g),
                                        make_field("structure_codazzi_2", g)};
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const auto k = g.index(i, j);
            const auto& s = fg.samples[k];
            const double lambda_x = field_derivative(fg, &SecondFundamentalData::lambda, i, j, 0);
            const double b1_y = field_derivative(fg, &SecondFundamentalData::beta1, i, j, 1);
            const double b2_x = field_derivative(fg, &SecondFundamentalData::beta2, i, j, 0);
            const double b2_y = field_derivative(fg, &SecondFundamentalData::beta2, i, j, 1);
            const double b3_x = field_derivative(fg, &SecondFundamentalData::beta3, i, j, 0);

            out[0].values[k] = s.lambda * s.lambda * cot * cot + lambda_x * cot + c * c +
                               s.beta1 * s.beta3 - s.beta2 * s.beta2;
            out[1].values[k] = b2_y / s.alpha + s.lambda * cot * sec2 * s.beta1 -
                               s.lambda * cot * s.beta3 - b3_x;
            out[2].values[k] = b1_y / s.alpha - 2.0 * s.lambda * cot * s.beta2 - b2_x;
        }
    }
    return out;
}

std::array<ResidualField, 4> pmc_conditions(const FieldGrid& fg, double theta) {
    fg.validate();
    check_theta(theta);
    const double tan = std::tan(theta);
    const GridSpec& g = fg.grid;

    std::array<ResidualField, 4> out = {make_field("pmc_lambda_x", g), make_field("pmc_trace_x", g),
                                        make_field("pmc_lambda_y", g), make_field("pmc_trace_y", g)};
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const auto k = g.index(i, j);
            const auto& s = fg.samples[k];
            const double lambda_x = field_derivative(fg, &SecondFundamentalData::lambda, i, j, 0);
            const double lambda_y = field_derivative(fg, &SecondFundamentalData::lambda, i, j, 1);
            const double trace_x = field_derivative(fg, &SecondFundamentalData::beta1, i, j, 0) +
                                   field_derivative(fg, &SecondFundamentalData::beta3, i, j, 0);
            const double trace_y = field_derivative(fg, &SecondFundamentalData::beta1, i, j, 1) +
                                   field_derivative(fg, &SecondFundamentalData::beta3, i, j, 1);
            const double trace = s.beta1 + s.beta3;

            out[0].values[k] = lambda_x + trace * s.beta1 * tan;
            out[1].values[k] = trace_x - s.lambda * s.beta1 * tan;
            out[2].values[k] = lambda_y + s.alpha * trace * s.beta2 * tan;
            out[3].values[k] = trace_y - s.alpha * s.lambda * s.beta2 * tan;
        }
    }
    return out;
}

double PdeResiduals::max_abs() const {
    double m = 0.0;
    auto take = [&](const ResidualField& r) { m = std::max(m, r.overall_max().value); };
    for (const auto& r : system) take(r);
    take(fourth_order_x);
    take(fourth_order_y);
    take(xi_relation);
    take(fifth_components);
    return m;
}

PdeResiduals pde_system(const SurfaceParams& p, const GridSpec& grid) {
    grid.validate(1);
    const DerivedConstants k = derive_constants(p);
    const double c = std::cos(k.theta);
    const double cc = c * c;
    const double s = std::sin(k.theta);
    const double tan = std::tan(k.theta);
    const double b1 = k.beta1p;
    const double b2 = k.beta2p;
    const double quartic_bx = b1 * b1 / cc + b2 * b2 + cc;
    const double quartic_cx = b2 * b2 * cc;
    const double quartic_by = b2 * b2 / cc + b1 * b1 + 1.0;
    const double quartic_cy = b2 * b2 / cc;

    PdeResiduals out;
    const char* names[5] = {"pde_Fxx", "pde_Fxy", "pde_Fyy", "pde_eta_x", "pde_eta_y"};
    for (int e = 0; e < 5; ++e) out.system[e] = make_field(names[e], grid);
    out.fourth_order_x = make_field("pde_fourth_order_x", grid);
    out.fourth_order_y = make_field("pde_fourth_order_y", grid);
    out.xi_relation = make_field("pde_xi_relation", grid);
    out.fifth_components = make_field("pde_fifth_components", grid);

    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const double x = grid.x(i), y = grid.y(j);
            const auto idx = grid.index(i, j);
            auto D = [&](int kx, int ky) { return immersion_derivative(k, x, y, kx, ky); };
            const Vec5 F = D(0, 0), Fx = D(1, 0), Fy = D(0, 1);
            const Vec5 Fxx = D(2, 0), Fxy = D(1, 1), Fyy = D(0, 2);
            const Vec5 Fxxxx = D(4, 0), Fyyyy = D(0, 4);
            const Vec5 eta = eta_derivative(k, x, y, 0, 0);
            const Vec5 eta_x = eta_derivative(k, x, y, 1, 0);
            const Vec5 eta_y = eta_derivative(k, x, y, 0, 1);

            double r[5] = {0, 0, 0, 0, 0};
            double r4x = 0.0, r4y = 0.0;
            for (int m = 0; m < 4; ++m) {
                r[0] = std::max(r[0], std::abs(Fxx[m] - b1 * eta[m] + cc * F[m]));
                r[1] = std::max(r[1], std::abs(Fxy[m] - b2 * eta[m]));
                r[2] = std::max(r[2], std::abs(Fyy[m] + b1 * eta[m] + F[m]));
                r[3] = std::max(r[3], std::abs(eta_x[m] + b1 / cc * Fx[m] + b2 * Fy[m]));
                r[4] = std::max(r[4], std::abs(eta_y[m] + b2 / cc * Fx[m] - b1 * Fy[m]));
                r4x = std::max(r4x, std::abs(Fxxxx[m] + quartic_bx * Fxx[m] + quartic_cx * F[m]));
                r4y = std::max(r4y, std::abs(Fyyyy[m] + quartic_by * Fyy[m] + quartic_cy * F[m]));
            }
            for (int e = 0; e < 5; ++e) out.system[e].values[idx] = r[e];
            out.fourth_order_x.values[idx] = r4x;
            out.fourth_order_y.values[idx] = r4y;

            Jet2 jt;
            jt.F = Point5(F);
            jt.Fx = Fx;
            jt.Fy = Fy;
            jt.Fxx = Fxx;
            jt.Fxy = Fxy;
            jt.Fyy = Fyy;
            const FrameData fr = adapted_frame(jt);
            double xr = 0.0;
            for (int m = 0; m < 4; ++m) xr = std::max(xr, std::abs(fr.xi[m] + tan * Fx[m]));
            out.xi_relation.values[idx] = xr;
            out.fifth_components.values[idx] =
                std::max({std::abs(F[4] - x * s), std::abs(fr.xi[4] - c), std::abs(fr.eta[4]),
                          std::abs(eta[4])});
        }
    }
    return out;
}

}  // namespace casurf
