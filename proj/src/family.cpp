#include "casurf/family.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "casurf/errors.hpp"
#include "casurf/taylor2.hpp"

namespace casurf {

namespace {

// (cos phi, sin phi) rotated by quarter_turns * pi/2, exactly.
std::pair<double, double> rotated_phase(double phase, int quarter_turns) {
    const double c = std::cos(phase), s = std::sin(phase);
    switch (((quarter_turns % 4) + 4) % 4) {
    case 0: return {c, s};
    case 1: return {-s, c};
    case 2: return {-c, -s};
    default: return {s, -c};
    }
}

double int_pow(double base, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= base;
    return r;
}

// Derivative of amp * (cos phi, sin phi) with phi = a x + b y. Each
// differentiation multiplies by i*a (or i*b) in the complex picture.
std::pair<double, double> harmonic_derivative(double amp, double a, double b, double phase,
                                              int kx, int ky) {
    const double scale = amp * int_pow(a, kx) * int_pow(b, ky);
    auto [u, v] = rotated_phase(phase, kx + ky);
    return {scale * u, scale * v};
}

Vec5 harmonic_pair(const DerivedConstants& k, double amp1, double amp2, double x, double y,
                   int kx, int ky) {
    const double phase1 = k.mu1 * x + k.nu2 * y;
    const double phase2 = k.mu2 * x - k.nu1 * y;
    const auto [a1, a2] = harmonic_derivative(amp1, k.mu1, k.nu2, phase1, kx, ky);
    const auto [a3, a4] = harmonic_derivative(amp2, k.mu2, -k.nu1, phase2, kx, ky);
    Vec5 out;
    out << a1, a2, a3, a4, 0.0;
    return out;
}

void check_derivative_order(int kx, int ky) {
    if (kx < 0 || ky < 0) throw ParameterError("derivative orders must be nonnegative");
}

}  // namespace

double nu1_upper_bound(double theta) {
    const double c = std::cos(theta);
    return std::sqrt(1.0 + c * c);
}

void validate(const SurfaceParams& p) {
    if (!std::isfinite(p.theta) || !(p.theta > 0.0) || !(p.theta < std::numbers::pi / 2)) {
        std::ostringstream os;
        os << "theta must lie in (0, pi/2), got " << p.theta;
        throw ParameterError(os.str());
    }
    if (!std::isfinite(p.nu1)) throw ParameterError("nu1 must be finite");
    if (p.nu1 < 1.0 - kEndpointSnap) {
        std::ostringstream os;
        os.precision(17);
        os << "nu1 = " << p.nu1 << " violates the lower bound nu1 >= 1";
        throw ParameterError(os.str());
    }
    const double upper = nu1_upper_bound(p.theta);
    if (p.nu1 > upper + kEndpointSnap) {
        std::ostringstream os;
        os.precision(17);
        os << "nu1 = " << p.nu1 << " violates the upper bound nu1 <= sqrt(1 + cos^2 theta) = "
           << upper;
        throw ParameterError(os.str());
    }
}

DerivedConstants derive_constants(const SurfaceParams& p) {
    validate(p);
    const double c = std::cos(p.theta);
    const double s = std::sin(p.theta);
    const double cc = c * c;
    const double rho = nu1_upper_bound(p.theta);

    DerivedConstants k;
    k.theta = p.theta;

    if (std::abs(p.nu1 - 1.0) < kEndpointSnap) {
        // beta1 = 0: the two phases are x cos(theta) +- y.
        k.nu1 = 1.0;
        k.nu2 = 1.0;
        k.mu1 = c;
        k.mu2 = c;
        k.c1 = std::numbers::sqrt2 / 2;
        k.c2 = std::numbers::sqrt2 / 2;
        k.beta1p = 0.0;
        k.beta2p = c;
        return k;
    }
    if (std::abs(p.nu1 - rho) < kEndpointSnap) {
        // beta2 = 0: the immersion separates into a circle in x and a circle in y.
        k.nu1 = rho;
        k.nu2 = 0.0;
        k.mu1 = rho;
        k.mu2 = 0.0;
        k.c1 = c / rho;
        k.c2 = 1.0 / rho;
        k.beta1p = c;
        k.beta2p = 0.0;
        return k;
    }

    const double n1 = p.nu1;
    const double nn = n1 * n1;
    const double gap = (1.0 + cc) - nn;  // mu2^2
    // 1 - nu1^2 sin^2 and 1 + cos^2 - nu1^2 sin^2, written without cancellation.
    const double lower = cc * cc + gap * s * s;
    const double total = lower + cc;

    k.nu1 = n1;
    k.nu2 = std::sqrt(gap / lower);
    k.mu1 = std::sqrt(nn * cc * cc / lower);
    k.mu2 = std::sqrt(gap);
    k.c1 = std::sqrt(lower / total);
    k.c2 = std::sqrt(cc / total);
    k.beta1p = (nn - 1.0) * c / std::sqrt(lower);
    k.beta2p = n1 * c * std::sqrt(gap) / std::sqrt(lower);
    return k;
}

Point5 immerse(const SurfaceParams& p, double x, double y) {
    const auto k = derive_constants(p);
    const auto v = immerse_generic(k, x, y);
    return Point5(v[0], v[1], v[2], v[3], v[4]);
}

Vec5 immersion_derivative(const DerivedConstants& k, double x, double y, int kx, int ky) {
    check_derivative_order(kx, ky);
    Vec5 out = harmonic_pair(k, k.c1, k.c2, x, y, kx, ky);
    const double s = std::sin(k.theta);
    if (kx == 0 && ky == 0) {
        out[4] = x * s;
    } else if (kx == 1 && ky == 0) {
        out[4] = s;
    }
    return out;
}

Vec5 eta_derivative(const DerivedConstants& k, double x, double y, int kx, int ky) {
    check_derivative_order(kx, ky);
    // eta = (-c2 cos phi1, -c2 sin phi1, c1 cos phi2, c1 sin phi2, 0)
    return harmonic_pair(k, -k.c2, k.c1, x, y, kx, ky);
}

AnalyticFrame analytic_frame(const DerivedConstants& k, double x, double y) {
    AnalyticFrame fr;
    fr.Fx = immersion_derivative(k, x, y, 1, 0);
    fr.Fy = immersion_derivative(k, x, y, 0, 1);
    const double tan_theta = std::tan(k.theta);
    fr.xi.head<4>() = -tan_theta * fr.Fx.head<4>();
    fr.xi[4] = std::cos(k.theta);
    fr.eta = eta_derivative(k, x, y, 0, 0);
    fr.N = immersion_derivative(k, x, y, 0, 0);
    fr.N[4] = 0.0;
    return fr;
}

AnalyticFrame analytic_frame(const SurfaceParams& p, double x, double y) {
    return analytic_frame(derive_constants(p), x, y);
}

ShapeOperatorPair analytic_shape_operators(const SurfaceParams& p) {
    const auto k = derive_constants(p);
    ShapeOperatorPair out;
    out.A_xi.setZero();
    out.A_eta << k.beta1p, k.beta2p, k.beta2p, -k.beta1p;
    return out;
}

FrequencySolution invert_frequencies(double beta1, double beta2, double theta,
                                     double constraint_tol) {
    if (!std::isfinite(theta) || !(theta > 0.0) || !(theta < std::numbers::pi / 2)) {
        std::ostringstream os;
        os << "theta must lie in (0, pi/2), got " << theta;
        throw ParameterError(os.str());
    }
    const double c = std::cos(theta);
    const double cc = c * c;
    const double b1 = beta1 * beta1;
    const double b2 = beta2 * beta2;
    const double violation = b1 + b2 - cc;
    if (!std::isfinite(violation) || std::abs(violation) > constraint_tol) {
        std::ostringstream os;
        os << "beta1^2 + beta2^2 - cos^2 theta = " << violation << " exceeds " << constraint_tol;
        throw InconsistentInputError(os.str(), violation);
    }

    FrequencySolution sol;
    sol.bx = b1 / cc + b2 + cc;
    sol.cx = b2 * cc;
    sol.by = b2 / cc + b1 + 1.0;
    sol.cy = b2 / cc;
    sol.delta_x = sol.bx * sol.bx - 4.0 * sol.cx;
    sol.delta_y = sol.by * sol.by - 4.0 * sol.cy;

    // Under the constraint both discriminants reduce to beta1^2 (beta1^2 tan^4 + 4),
    // a sum of nonnegative terms.
    const double t = std::tan(theta);
    const double t2 = t * t;
    sol.delta = b1 * (b1 * t2 * t2 + 4.0);
    const double root = std::sqrt(sol.delta);

    const double mu1_sq = 0.5 * (sol.bx + root);
    const double nu1_sq = 0.5 * (sol.by + root);
    // Smaller roots via the product of roots; avoids cancellation in b - sqrt(delta).
    const double mu2_sq = mu1_sq > 0.0 ? sol.cx / mu1_sq : 0.0;
    const double nu2_sq = nu1_sq > 0.0 ? sol.cy / nu1_sq : 0.0;
    sol.mu1 = std::sqrt(mu1_sq);
    sol.mu2 = std::sqrt(mu2_sq);
    sol.nu1 = std::sqrt(nu1_sq);
    sol.nu2 = std::sqrt(nu2_sq);
    return sol;
}

TrivialTag parse_trivial_tag(std::string_view name) {
    if (name == "great-sphere") return TrivialTag::GreatSphereSlice;
    if (name == "clifford-torus") return TrivialTag::CliffordTorusSlice;
    if (name == "great-circle-cylinder") return TrivialTag::GreatCircleCylinder;
    throw ParameterError("unknown trivial surface '" + std::string(name) +
                         "' (expected great-sphere, clifford-torus or great-circle-cylinder)");
}

std::string_view to_string(TrivialTag tag) {
    switch (tag) {
    case TrivialTag::GreatSphereSlice: return "great-sphere";
    case TrivialTag::CliffordTorusSlice: return "clifford-torus";
    case TrivialTag::GreatCircleCylinder: return "great-circle-cylinder";
    }
    return "unknown";
}

namespace {

void validate_kind(const TrivialKind& kind) {
    switch (kind.tag) {
    case TrivialTag::GreatSphereSlice:
    case TrivialTag::CliffordTorusSlice:
    case TrivialTag::GreatCircleCylinder:
        break;
    default:
        throw ParameterError("unknown trivial surface tag");
    }
    if (!std::isfinite(kind.level)) throw ParameterError("trivial surface level must be finite");
}

template <class Arr>
Point5 to_point(const Arr& v) {
    return Point5(v[0], v[1], v[2], v[3], v[4]);
}

Jet2 dual_jet(const std::array<Taylor2, 5>& v) {
    Jet2 j;
    Vec5 f;
    for (int i = 0; i < 5; ++i) {
        f[i] = v[i].v;
        j.Fx[i] = v[i].dx;
        j.Fy[i] = v[i].dy;
        j.Fxx[i] = v[i].dxx;
        j.Fxy[i] = v[i].dxy;
        j.Fyy[i] = v[i].dyy;
    }
    j.F = Point5(f);
    j.source = JetScheme::DualForward;
    return j;
}

// Hand-written partials of the trivial representatives.
Jet2 trivial_analytic_jet(const TrivialKind& kind, double x, double y) {
    Jet2 j;
    j.source = JetScheme::Analytic;
    const double cx = std::cos(x), sx = std::sin(x), cy = std::cos(y), sy = std::sin(y);
    switch (kind.tag) {
    case TrivialTag::GreatSphereSlice:
        j.F = Point5(cx * cy, cx * sy, sx, 0.0, kind.level);
        j.Fx << -sx * cy, -sx * sy, cx, 0.0, 0.0;
        j.Fy << -cx * sy, cx * cy, 0.0, 0.0, 0.0;
        j.Fxx << -cx * cy, -cx * sy, -sx, 0.0, 0.0;
        j.Fxy << sx * sy, -sx * cy, 0.0, 0.0, 0.0;
        j.Fyy << -cx * cy, -cx * sy, 0.0, 0.0, 0.0;
        break;
    case TrivialTag::CliffordTorusSlice: {
        const double r = 1.0 / std::sqrt(2.0);
        j.F = Point5(r * cx, r * sx, r * cy, r * sy, kind.level);
        j.Fx << -r * sx, r * cx, 0.0, 0.0, 0.0;
        j.Fy << 0.0, 0.0, -r * sy, r * cy, 0.0;
        j.Fxx << -r * cx, -r * sx, 0.0, 0.0, 0.0;
        j.Fxy.setZero();
        j.Fyy << 0.0, 0.0, -r * cy, -r * sy, 0.0;
        break;
    }
    case TrivialTag::GreatCircleCylinder:
        j.F = Point5(cx, sx, 0.0, 0.0, y);
        j.Fx << -sx, cx, 0.0, 0.0, 0.0;
        j.Fy << 0.0, 0.0, 0.0, 0.0, 1.0;
        j.Fxx << -cx, -sx, 0.0, 0.0, 0.0;
        j.Fxy.setZero();
        j.Fyy.setZero();
        break;
    }
    return j;
}

}  // namespace

Point5 trivial_surface(const TrivialKind& kind, double x, double y) {
    validate_kind(kind);
    return to_point(trivial_generic(kind, x, y));
}

ImmersionFn family_immersion(const SurfaceParams& p) {
    const DerivedConstants k = derive_constants(p);
    std::ostringstream label;
    label.precision(17);
    label << "family(theta=" << p.theta << ", nu1=" << p.nu1 << ")";
    ImmersionFn f([k](double x, double y) { return to_point(immerse_generic(k, x, y)); },
                  label.str());
    f.with_analytic([k](double x, double y) {
        Jet2 j;
        j.F = Point5(immersion_derivative(k, x, y, 0, 0));
        j.Fx = immersion_derivative(k, x, y, 1, 0);
        j.Fy = immersion_derivative(k, x, y, 0, 1);
        j.Fxx = immersion_derivative(k, x, y, 2, 0);
        j.Fxy = immersion_derivative(k, x, y, 1, 1);
        j.Fyy = immersion_derivative(k, x, y, 0, 2);
        j.source = JetScheme::Analytic;
        return j;
    });
    f.with_dual([k](double x, double y) {
        return dual_jet(immerse_generic(k, Taylor2::variable_x(x), Taylor2::variable_y(y)));
    });
    return f;
}

ImmersionFn trivial_immersion(const TrivialKind& kind) {
    validate_kind(kind);
    ImmersionFn f([kind](double x, double y) { return to_point(trivial_generic(kind, x, y)); },
                  std::string(to_string(kind.tag)));
    f.with_analytic([kind](double x, double y) { return trivial_analytic_jet(kind, x, y); });
    f.with_dual([kind](double x, double y) {
        return dual_jet(trivial_generic(kind, Taylor2::variable_x(x), Taylor2::variable_y(y)));
    });
    return f;
}

}  // namespace casurf
