#pragma once

#include <array>
#include <cmath>
#include <string_view>

#include "casurf/immersion.hpp"
#include "casurf/vec5.hpp"

namespace casurf {

/// Member of the minimal constant-angle family: constant angle theta in
/// (0, pi/2) and the frequency nu1 in [1, sqrt(1 + cos^2 theta)].
struct SurfaceParams {
    double theta = 0.0;
    double nu1 = 1.0;
};

/// Constants fixed by (theta, nu1). All roots are the nonnegative ones.
/// beta1p and beta2p are the entries of the shape operator along eta.
struct DerivedConstants {
    double theta = 0.0;
    double nu1 = 1.0;  // effective value after endpoint snapping
    double nu2 = 0.0;
    double mu1 = 0.0;
    double mu2 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double beta1p = 0.0;
    double beta2p = 0.0;
};

/// Distance below which nu1 snaps to an endpoint closed form.
inline constexpr double kEndpointSnap = 1e-12;

/// sqrt(1 + cos^2 theta), the largest admissible nu1.
double nu1_upper_bound(double theta);

/// Throws ParameterError naming the violated bound.
void validate(const SurfaceParams& p);

DerivedConstants derive_constants(const SurfaceParams& p);

/// Closed-form immersion evaluated on any scalar type with sin/cos and ring
/// arithmetic (double, Taylor2).
template <class T>
std::array<T, 5> immerse_generic(const DerivedConstants& k, const T& x, const T& y) {
    using std::cos;
    using std::sin;
    const T phase1 = k.mu1 * x + k.nu2 * y;
    const T phase2 = k.mu2 * x - k.nu1 * y;
    return {k.c1 * cos(phase1), k.c1 * sin(phase1), k.c2 * cos(phase2), k.c2 * sin(phase2),
            std::sin(k.theta) * x};
}

Point5 immerse(const SurfaceParams& p, double x, double y);

/// Mixed partial d^kx/dx^kx d^ky/dy^ky of the immersion, exact to rounding.
Vec5 immersion_derivative(const DerivedConstants& k, double x, double y, int kx, int ky);

/// Same for the normal field eta of the analytic frame.
Vec5 eta_derivative(const DerivedConstants& k, double x, double y, int kx, int ky);

struct AnalyticFrame {
    Vec5 Fx, Fy, xi, eta, N;
};

AnalyticFrame analytic_frame(const SurfaceParams& p, double x, double y);
AnalyticFrame analytic_frame(const DerivedConstants& k, double x, double y);

struct ShapeOperatorPair {
    Mat2 A_xi;
    Mat2 A_eta;
};

/// A_xi = 0 and A_eta = [[beta1', beta2'], [beta2', -beta1']] in the basis (F_x, F_y).
ShapeOperatorPair analytic_shape_operators(const SurfaceParams& p);

/// Roots of the two characteristic quartics
///   z^4 + bx z^2 + cx = 0,  bx = beta1^2/cos^2 + beta2^2 + cos^2,  cx = beta2^2 cos^2
///   w^4 + by w^2 + cy = 0,  by = beta2^2/cos^2 + beta1^2 + 1,      cy = beta2^2/cos^2
/// read as quadratics in z^2, w^2, with negative roots -mu^2 and -nu^2.
struct FrequencySolution {
    double mu1 = 0.0, mu2 = 0.0, nu1 = 0.0, nu2 = 0.0;
    double bx = 0.0, cx = 0.0, by = 0.0, cy = 0.0;
    double delta_x = 0.0;  // bx^2 - 4 cx as computed
    double delta_y = 0.0;  // by^2 - 4 cy as computed
    double delta = 0.0;    // common discriminant, cancellation-free form
};

inline constexpr double kConstraintTol = 1e-9;

/// Recovers the frequencies from shape-operator entries. Throws
/// InconsistentInputError when |beta1^2 + beta2^2 - cos^2 theta| > constraint_tol.
FrequencySolution invert_frequencies(double beta1, double beta2, double theta,
                                     double constraint_tol = kConstraintTol);

enum class TrivialTag { GreatSphereSlice, CliffordTorusSlice, GreatCircleCylinder };

struct TrivialKind {
    TrivialTag tag = TrivialTag::GreatSphereSlice;
    double level = 0.0;  // t0 for the slices
};

/// "great-sphere", "clifford-torus", "great-circle-cylinder".
TrivialTag parse_trivial_tag(std::string_view name);
std::string_view to_string(TrivialTag tag);

/// Canonical representatives of the theta = 0 and theta = pi/2 classes:
///   great sphere slice    (cos x cos y, cos x sin y, sin x, 0, t0)
///   Clifford torus slice  (cos x, sin x, cos y, sin y)/sqrt 2, t0
///   great circle cylinder (cos x, sin x, 0, 0, y)
Point5 trivial_surface(const TrivialKind& kind, double x, double y);

template <class T>
std::array<T, 5> trivial_generic(const TrivialKind& kind, const T& x, const T& y) {
    using std::cos;
    using std::sin;
    switch (kind.tag) {
    case TrivialTag::GreatSphereSlice:
        return {cos(x) * cos(y), cos(x) * sin(y), sin(x), T(0.0), T(kind.level)};
    case TrivialTag::CliffordTorusSlice: {
        const double r = 1.0 / std::sqrt(2.0);
        return {r * cos(x), r * sin(x), r * cos(y), r * sin(y), T(kind.level)};
    }
    case TrivialTag::GreatCircleCylinder:
        return {cos(x), sin(x), T(0.0), T(0.0), y};
    }
    return {};
}

/// Immersion with eval, analytic and dual-forward channels.
ImmersionFn family_immersion(const SurfaceParams& p);
ImmersionFn trivial_immersion(const TrivialKind& kind);

}  // namespace casurf
