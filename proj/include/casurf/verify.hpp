#pragma once

#include <optional>
#include <string>
#include <vector>

#include "casurf/diffgeo.hpp"
#include "casurf/family.hpp"
#include "casurf/grid.hpp"
#include "casurf/residuals.hpp"

namespace casurf {

struct Tolerances {
    double analytic = 1e-9;  // checks on analytic or dual-forward jets
    double fd = 1e-6;        // finite-difference limited checks
    double on_manifold = 1e-10;
};

struct CheckResult {
    std::string name;
    double max_residual = 0.0;
    int i = -1, j = -1;  // node of the maximum, -1 when not localised
    double x = 0.0, y = 0.0;
    double tolerance = 0.0;
    bool pass = true;
    bool skipped = false;
    std::string message;
    std::optional<double> edge_max;  // boundary rows of field-derivative checks
};

struct Provenance {
    std::string surface;
    JetScheme scheme = JetScheme::DualForward;
    GridSpec grid;
    std::optional<SurfaceParams> params;
    std::string pathway;        // constant-angle, zero-angle or tangent-dt
    double theta_reference = 0.0;
    double fd_step = kDefaultFdStep;
    double metric_step = kDefaultMetricStep;
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    bool overall_pass = true;
    Provenance provenance;

    /// nullptr when no check has that name.
    const CheckResult* find(const std::string& name) const;
};

struct VerifyOptions {
    GridSpec grid;
    std::optional<JetScheme> scheme;  // defaults to the immersion's preferred channel
    Tolerances tol;
    double fd_step = kDefaultFdStep;
    double metric_step = kDefaultMetricStep;
    std::optional<SurfaceParams> params;
};

/// Runs every check on the grid and collects the outcome. Failures inside a
/// check (degenerate jets, inconsistent frequencies, ...) become failed
/// checks carrying the message. Checks that do not apply to the detected
/// angle class are present and marked skipped.
/// Throws ParameterError only for an invalid grid or invalid params.
VerificationReport verify_surface(const ImmersionFn& f, const VerifyOptions& opt);

/// Structure-equation and parallel-mean-curvature checks on a field grid,
/// interior maxima against tol.fd.
VerificationReport verify_fields(const FieldGrid& fg, double theta, const Tolerances& tol);

}  // namespace casurf
