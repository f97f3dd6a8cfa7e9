#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "casurf/diffgeo.hpp"
#include "casurf/family.hpp"
#include "casurf/grid.hpp"

namespace casurf {

/// Shape data sampled on a grid whose coordinates are adapted to the frame:
/// d/dx = T and d/dy = alpha Q.
struct FieldGrid {
    GridSpec grid;
    std::vector<SecondFundamentalData> samples;  // grid.index(i, j)

    static FieldGrid from_function(
        const GridSpec& grid, const std::function<SecondFundamentalData(double, double)>& fn);

    /// Throws ParameterError on a malformed grid, InvalidMetricError if some
    /// alpha <= 0.
    void validate() const;
};

/// One residual value per grid node.
struct ResidualField {
    std::string name;
    GridSpec grid;
    std::vector<double> values;

    struct Extremum {
        double value = 0.0;  // max |residual|, NaN-propagating
        int i = -1, j = -1;
    };
    /// Largest |value| over interior nodes; ties resolve to the lowest index.
    Extremum interior_max() const;
    /// Largest |value| over boundary nodes.
    Extremum edge_max() const;
    /// Largest |value| over all nodes.
    Extremum overall_max() const;
};

/// Residuals of the Gauss and the two Codazzi-Ricci equations:
///   lambda^2 cot^2 + lambda_x cot + cos^2 + beta1 beta3 - beta2^2
///   beta2_y / alpha + lambda cot sec^2 beta1 - lambda cot beta3 - beta3_x
///   beta1_y / alpha - 2 lambda cot beta2 - beta2_x
/// Field derivatives are second-order central inside, second-order one-sided
/// on the boundary.
std::array<ResidualField, 3> gauss_codazzi_ricci(const FieldGrid& fg, double theta);

/// Residuals of the parallel-mean-curvature conditions:
///   lambda_x + (beta1 + beta3) beta1 tan
///   beta1_x + beta3_x - lambda beta1 tan
///   lambda_y + alpha (beta1 + beta3) beta2 tan
///   beta1_y + beta3_y - alpha lambda beta2 tan
std::array<ResidualField, 4> pmc_conditions(const FieldGrid& fg, double theta);

/// Residuals of the linear PDE system satisfied by the classified immersion,
/// for i = 1..4 (max over i per node), evaluated with analytic derivatives:
///   F_xx - b1 eta + cos^2 F,  F_xy - b2 eta,  F_yy + b1 eta + F,
///   eta_x + (b1/cos^2) F_x + b2 F_y,  eta_y + (b2/cos^2) F_x - b1 F_y
/// with (b1, b2) the analytic shape entries, plus the fourth-order reductions
/// and the relations xi_i = -tan F_x,i, F5 = x sin, xi5 = cos, eta5 = 0.
struct PdeResiduals {
    std::array<ResidualField, 5> system;
    ResidualField fourth_order_x;
    ResidualField fourth_order_y;
    ResidualField xi_relation;       // xi from the adapted frame of the analytic jet
    ResidualField fifth_components;  // max of |F5 - x sin|, |xi5 - cos|, |eta5|

    /// Largest |value| over every field above.
    double max_abs() const;
};

PdeResiduals pde_system(const SurfaceParams& p, const GridSpec& grid);

}  // namespace casurf
