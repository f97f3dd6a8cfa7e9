#pragma once

#include "casurf/immersion.hpp"
#include "casurf/vec5.hpp"

namespace casurf {

/// Step of the central finite-difference stencils (one Richardson level).
inline constexpr double kDefaultFdStep = 1e-3;
/// Step used to difference the induced metric in the Brioschi formula.
inline constexpr double kDefaultMetricStep = 5e-3;
/// Below this tangential norm of dt the adapted frame is undefined.
inline constexpr double kAngleDegenerateTol = 1e-10;
/// Minimum Gram determinant of (F_x, F_y).
inline constexpr double kRankTol = 1e-12;

/// 2-jet of f at (x, y). Lattice-sampled immersions always difference with
/// the lattice spacing; fd_step is ignored for them.
/// Throws DegenerateImmersionError when det Gram(F_x, F_y) <= kRankTol, and
/// ParameterError when the requested channel is missing.
Jet2 jet(const ImmersionFn& f, double x, double y, JetScheme scheme,
         double fd_step = kDefaultFdStep);

/// Induced metric [[<Fx,Fx>, <Fx,Fy>], [<Fy,Fx>, <Fy,Fy>]].
Mat2 induced_metric(const Jet2& j);

/// Orthonormal frame adapted to dt: T tangent, Q tangent, xi and eta normal
/// to the surface inside S^3 x R, N the position normal of S^3 x R.
struct FrameData {
    Vec5 T = Vec5::Zero();
    Vec5 Q = Vec5::Zero();
    Vec5 xi = Vec5::Zero();
    Vec5 eta = Vec5::Zero();
    Vec5 N = Vec5::Zero();
    double sin_theta = 0.0;  // |dt tangential|
    double cos_theta = 0.0;  // |dt normal|
};

/// Frame with T along the tangential part of dt, xi along its normal part
/// (so <dt, xi> >= 0), Q positively oriented against (F_x, F_y), and eta
/// completing det(T, Q, xi, eta, N) = +1. When dt is tangent (theta = pi/2)
/// xi is any unit normal.
/// Throws NormalAngleDegenerateError when |dt tangential| <= kAngleDegenerateTol.
FrameData adapted_frame(const Jet2& j);

/// Frame for surfaces with dt everywhere normal: T, Q orthonormalised from
/// (F_x, F_y), xi = dt, eta completing det = +1.
FrameData zero_angle_frame(const Jet2& j);

/// Angle between dt and the normal plane, in [0, pi/2].
double angle_function(const Jet2& j);

struct SecondFundamentalData {
    double lambda = 0.0;
    double beta1 = 0.0, beta2 = 0.0, beta3 = 0.0;
    double theta_pt = 0.0;
    Mat2 metric = Mat2::Identity();
    double alpha = 1.0;  // sqrt(g22)
};

/// Shape operators in the orthonormal basis (T, Q), plus the scalar data.
struct ShapeData {
    Mat2 A_xi = Mat2::Zero();
    Mat2 A_eta = Mat2::Zero();
    SecondFundamentalData data;
};

/// Throws ConsistencyError when the frame is not adapted to the jet's tangent plane.
ShapeData shape_operators(const Jet2& j, const FrameData& fr);

/// (lambda xi + (beta1 + beta3) eta) / 2
Vec5 mean_curvature_vector(const SecondFundamentalData& data, const FrameData& fr);

/// Intrinsic curvature from the Brioschi formula. Metric values come from the
/// given jet scheme and their derivatives from central differences with one
/// Richardson level. Throws DegenerateMetricError if the metric is not
/// positive definite anywhere on the stencil.
double gaussian_curvature(const ImmersionFn& f, double x, double y,
                          double h_step = kDefaultMetricStep);
double gaussian_curvature(const ImmersionFn& f, double x, double y, double h_step,
                          JetScheme scheme, double fd_step = kDefaultFdStep);

}  // namespace casurf
