#include "casurf/diffgeo.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include <Eigen/LU>

#include "casurf/errors.hpp"

namespace casurf {

std::string_view to_string(JetScheme s) {
    switch (s) {
    case JetScheme::Analytic: return "analytic";
    case JetScheme::DualForward: return "dual";
    case JetScheme::FiniteDifference: return "fd";
    }
    return "unknown";
}

JetScheme parse_jet_scheme(std::string_view s) {
    if (s == "analytic") return JetScheme::Analytic;
    if (s == "dual") return JetScheme::DualForward;
    if (s == "fd") return JetScheme::FiniteDifference;
    throw ParameterError("unknown jet scheme '" + std::string(s) +
                         "' (expected analytic, dual or fd)");
}

namespace {

struct Steps {
    double hx, hy;
};

Steps stencil_steps(const ImmersionFn& f, double h) {
    if (const auto& lat = f.lattice()) return {lat->hx, lat->hy};
    return {h, h};
}

// Richardson combination of two O(h^2) estimates taken at h and 2h.
template <class V>
V richardson(const V& at_h, const V& at_2h) {
    return (4.0 * at_h - at_2h) / 3.0;
}

Jet2 fd_jet(const ImmersionFn& f, double x, double y, Steps st) {
    const double hx = st.hx, hy = st.hy;
    auto F = [&](double dx, double dy) { return f(x + dx, y + dy).coords(); };

    const Vec5 c = F(0, 0);
    const Vec5 xp1 = F(hx, 0), xm1 = F(-hx, 0), xp2 = F(2 * hx, 0), xm2 = F(-2 * hx, 0);
    const Vec5 yp1 = F(0, hy), ym1 = F(0, -hy), yp2 = F(0, 2 * hy), ym2 = F(0, -2 * hy);

    auto mixed = [&](double k) -> Vec5 {
        return (F(k * hx, k * hy) - F(k * hx, -k * hy) - F(-k * hx, k * hy) +
                F(-k * hx, -k * hy)) /
               (4.0 * k * k * hx * hy);
    };

    Jet2 j;
    j.F = Point5(c);
    j.Fx = richardson<Vec5>((xp1 - xm1) / (2 * hx), (xp2 - xm2) / (4 * hx));
    j.Fy = richardson<Vec5>((yp1 - ym1) / (2 * hy), (yp2 - ym2) / (4 * hy));
    j.Fxx = richardson<Vec5>((xp1 - 2 * c + xm1) / (hx * hx),
                             (xp2 - 2 * c + xm2) / (4 * hx * hx));
    j.Fyy = richardson<Vec5>((yp1 - 2 * c + ym1) / (hy * hy),
                             (yp2 - 2 * c + ym2) / (4 * hy * hy));
    j.Fxy = richardson<Vec5>(mixed(1.0), mixed(2.0));
    j.source = JetScheme::FiniteDifference;
    return j;
}

double normalize_in_place(Vec5& v) {
    const double n = v.norm();
    if (n > 0.0) v /= n;
    return n;
}

// Unit vector orthogonal to every vector in `basis` (assumed orthonormal up to
// rounding), built from the standard basis vector with the largest residual.
template <std::size_t K>
Vec5 complete(const std::array<Vec5, K>& basis) {
    Vec5 best = Vec5::Zero();
    double best_norm = -1.0;
    for (int e = 0; e < 5; ++e) {
        Vec5 v = Vec5::Unit(e);
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& b : basis) v -= v.dot(b) * b;
        }
        const double n = v.norm();
        if (n > best_norm) {
            best_norm = n;
            best = v / n;
        }
    }
    return best;
}

double frame_det(const FrameData& fr) {
    Mat5 m;
    m.col(0) = fr.T;
    m.col(1) = fr.Q;
    m.col(2) = fr.xi;
    m.col(3) = fr.eta;
    m.col(4) = fr.N;
    return m.determinant();
}

// Tangential projection of dt onto span(F_x, F_y).
Vec5 dt_tangential(const Jet2& j) {
    const Mat2 G = induced_metric(j);
    const Eigen::Vector2d rhs(j.Fx[4], j.Fy[4]);
    const Eigen::Vector2d coef = G.inverse() * rhs;
    return coef[0] * j.Fx + coef[1] * j.Fy;
}

// Q from the coordinate vector least parallel to T, oriented like (F_x, F_y).
Vec5 orthogonal_tangent(const Jet2& j, const Vec5& T) {
    const double ax = std::abs(T.dot(j.Fx)) / j.Fx.norm();
    const double ay = std::abs(T.dot(j.Fy)) / j.Fy.norm();
    Vec5 q = ax <= ay ? Vec5(j.Fx) : Vec5(j.Fy);
    q -= q.dot(T) * T;
    normalize_in_place(q);
    const double orient = T.dot(j.Fx) * q.dot(j.Fy) - T.dot(j.Fy) * q.dot(j.Fx);
    if (orient < 0.0) q = -q;
    return q;
}

void fix_eta(FrameData& fr) {
    fr.eta = complete(std::array<Vec5, 4>{fr.T, fr.Q, fr.xi, fr.N});
    if (frame_det(fr) < 0.0) fr.eta = -fr.eta;
}

}  // namespace

Jet2 jet(const ImmersionFn& f, double x, double y, JetScheme scheme, double fd_step) {
    Jet2 j;
    switch (scheme) {
    case JetScheme::Analytic:
        if (!f.has_analytic()) {
            throw ParameterError("immersion '" + f.label() + "' has no analytic channel");
        }
        j = f.analytic()(x, y);
        j.source = JetScheme::Analytic;
        break;
    case JetScheme::DualForward:
        if (!f.has_dual()) {
            throw ParameterError("immersion '" + f.label() + "' has no dual-forward channel");
        }
        j = f.dual()(x, y);
        j.source = JetScheme::DualForward;
        break;
    case JetScheme::FiniteDifference:
        j = fd_jet(f, x, y, stencil_steps(f, fd_step));
        break;
    }
    const double det = induced_metric(j).determinant();
    if (!(det > kRankTol)) {
        std::ostringstream os;
        os << "degenerate immersion at (" << x << ", " << y << "): det Gram(Fx, Fy) = " << det;
        throw DegenerateImmersionError(os.str());
    }
    return j;
}

Mat2 induced_metric(const Jet2& j) {
    Mat2 g;
    g(0, 0) = j.Fx.dot(j.Fx);
    g(0, 1) = j.Fx.dot(j.Fy);
    g(1, 0) = g(0, 1);
    g(1, 1) = j.Fy.dot(j.Fy);
    return g;
}

FrameData adapted_frame(const Jet2& j) {
    const Vec5 dt = dt_vector();
    const Vec5 tan_part = dt_tangential(j);
    const Vec5 normal_part = dt - tan_part;

    FrameData fr;
    fr.sin_theta = tan_part.norm();
    fr.cos_theta = normal_part.norm();
    if (!(fr.sin_theta > kAngleDegenerateTol)) {
        std::ostringstream os;
        os << "dt is normal to the surface (|dt tangential| = " << fr.sin_theta
           << "); use the zero-angle frame";
        throw NormalAngleDegenerateError(os.str());
    }
    fr.N = j.F.position_normal();
    normalize_in_place(fr.N);
    fr.T = tan_part / fr.sin_theta;
    fr.Q = orthogonal_tangent(j, fr.T);
    if (fr.cos_theta > kAngleDegenerateTol) {
        fr.xi = normal_part / fr.cos_theta;
    } else {
        fr.xi = complete(std::array<Vec5, 3>{fr.T, fr.Q, fr.N});
    }
    fix_eta(fr);
    return fr;
}

FrameData zero_angle_frame(const Jet2& j) {
    const Vec5 dt = dt_vector();
    const Vec5 tan_part = dt_tangential(j);
    FrameData fr;
    fr.sin_theta = tan_part.norm();
    fr.cos_theta = (dt - tan_part).norm();
    fr.N = j.F.position_normal();
    normalize_in_place(fr.N);
    fr.T = j.Fx;
    normalize_in_place(fr.T);
    fr.Q = orthogonal_tangent(j, fr.T);
    fr.xi = dt;
    fix_eta(fr);
    return fr;
}

double angle_function(const Jet2& j) {
    const Vec5 tan_part = dt_tangential(j);
    return std::atan2(tan_part.norm(), (dt_vector() - tan_part).norm());
}

ShapeData shape_operators(const Jet2& j, const FrameData& fr) {
    constexpr double kConsistencyTol = 1e-6;
    const double scale_x = j.Fx.norm(), scale_y = j.Fy.norm();
    const double normal_leak = std::max({std::abs(fr.xi.dot(j.Fx)) / scale_x,
                                         std::abs(fr.xi.dot(j.Fy)) / scale_y,
                                         std::abs(fr.eta.dot(j.Fx)) / scale_x,
                                         std::abs(fr.eta.dot(j.Fy)) / scale_y,
                                         std::abs(fr.T.dot(j.F.position_normal())),
                                         std::abs(fr.Q.dot(j.F.position_normal()))});
    if (!(normal_leak <= kConsistencyTol)) {
        std::ostringstream os;
        os << "frame does not match the jet's tangent plane (leak " << normal_leak << ")";
        throw ConsistencyError(os.str());
    }

    const Mat2 G = induced_metric(j);
    Mat2 B;
    B << j.Fx.dot(fr.T), j.Fx.dot(fr.Q), j.Fy.dot(fr.T), j.Fy.dot(fr.Q);
    // Columns of P are the coordinates of T and Q in the basis (F_x, F_y).
    const Mat2 P = G.inverse() * B;

    auto second_form = [&](const Vec5& nu) {
        Mat2 II;
        II << j.Fxx.dot(nu), j.Fxy.dot(nu), j.Fxy.dot(nu), j.Fyy.dot(nu);
        return Mat2(P.transpose() * II * P);
    };

    ShapeData out;
    out.A_xi = second_form(fr.xi);
    out.A_eta = second_form(fr.eta);
    auto& d = out.data;
    d.lambda = out.A_xi(1, 1);
    d.beta1 = out.A_eta(0, 0);
    d.beta2 = out.A_eta(0, 1);
    d.beta3 = out.A_eta(1, 1);
    d.theta_pt = std::atan2(fr.sin_theta, fr.cos_theta);
    d.metric = G;
    d.alpha = std::sqrt(G(1, 1));
    return out;
}

Vec5 mean_curvature_vector(const SecondFundamentalData& data, const FrameData& fr) {
    return 0.5 * (data.lambda * fr.xi + (data.beta1 + data.beta3) * fr.eta);
}

double gaussian_curvature(const ImmersionFn& f, double x, double y, double h_step) {
    return gaussian_curvature(f, x, y, h_step, f.preferred_scheme());
}

double gaussian_curvature(const ImmersionFn& f, double x, double y, double h_step,
                          JetScheme scheme, double fd_step) {
    double hx = h_step, hy = h_step;
    if (const auto& lat = f.lattice()) {
        hx = lat->hx * std::max(1.0, std::round(h_step / lat->hx));
        hy = lat->hy * std::max(1.0, std::round(h_step / lat->hy));
    }

    struct Metric {
        double E, F, G;
    };
    auto metric_at = [&](double dx, double dy) -> Metric {
        Mat2 g;
        try {
            g = induced_metric(jet(f, x + dx, y + dy, scheme, fd_step));
        } catch (const DegenerateImmersionError& e) {
            throw DegenerateMetricError(e.what());
        }
        if (!(g(0, 0) > 0.0) || !(g.determinant() > kRankTol)) {
            std::ostringstream os;
            os << "metric is not positive definite near (" << x << ", " << y << ")";
            throw DegenerateMetricError(os.str());
        }
        return {g(0, 0), g(0, 1), g(1, 1)};
    };

    const Metric m0 = metric_at(0, 0);
    const Metric up1 = metric_at(hx, 0), um1 = metric_at(-hx, 0);
    const Metric up2 = metric_at(2 * hx, 0), um2 = metric_at(-2 * hx, 0);
    const Metric vp1 = metric_at(0, hy), vm1 = metric_at(0, -hy);
    const Metric vp2 = metric_at(0, 2 * hy), vm2 = metric_at(0, -2 * hy);

    auto d_u = [&](double Metric::*c) {
        return richardson((up1.*c - um1.*c) / (2 * hx), (up2.*c - um2.*c) / (4 * hx));
    };
    auto d_v = [&](double Metric::*c) {
        return richardson((vp1.*c - vm1.*c) / (2 * hy), (vp2.*c - vm2.*c) / (4 * hy));
    };
    auto d_uu = [&](double Metric::*c) {
        return richardson((up1.*c - 2 * (m0.*c) + um1.*c) / (hx * hx),
                          (up2.*c - 2 * (m0.*c) + um2.*c) / (4 * hx * hx));
    };
    auto d_vv = [&](double Metric::*c) {
        return richardson((vp1.*c - 2 * (m0.*c) + vm1.*c) / (hy * hy),
                          (vp2.*c - 2 * (m0.*c) + vm2.*c) / (4 * hy * hy));
    };
    auto mixed_F = [&](double k) {
        return (metric_at(k * hx, k * hy).F - metric_at(k * hx, -k * hy).F -
                metric_at(-k * hx, k * hy).F + metric_at(-k * hx, -k * hy).F) /
               (4 * k * k * hx * hy);
    };

    const double E = m0.E, F = m0.F, G = m0.G;
    const double Eu = d_u(&Metric::E), Ev = d_v(&Metric::E);
    const double Fu = d_u(&Metric::F), Fv = d_v(&Metric::F);
    const double Gu = d_u(&Metric::G), Gv = d_v(&Metric::G);
    const double Evv = d_vv(&Metric::E);
    const double Guu = d_uu(&Metric::G);
    const double Fuv = richardson(mixed_F(1.0), mixed_F(2.0));

    Eigen::Matrix3d m1, m2;
    m1 << -0.5 * Evv + Fuv - 0.5 * Guu, 0.5 * Eu, Fu - 0.5 * Ev,
          Fv - 0.5 * Gu, E, F,
          0.5 * Gv, F, G;
    m2 << 0.0, 0.5 * Ev, 0.5 * Gu,
          0.5 * Ev, E, F,
          0.5 * Gu, F, G;
    const double w = E * G - F * F;
    return (m1.determinant() - m2.determinant()) / (w * w);
}

}  // namespace casurf
