#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <random>

#include "casurf/errors.hpp"
#include "casurf/family.hpp"
#include "casurf/frame_field.hpp"

using namespace casurf;
using std::numbers::pi;

namespace {

const double kQuarter = pi / 4;

std::vector<SurfaceParams> draws(int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> th(0.1, pi / 2 - 0.1), u(0.0, 1.0);
    std::vector<SurfaceParams> out;
    for (int k = 0; k < n; ++k) {
        const double t = th(rng);
        out.push_back({t, 1.0 + u(rng) * (nu1_upper_bound(t) - 1.0)});
    }
    return out;
}

double max_diff(const Jet2& a, const Jet2& b) {
    double m = (a.F.coords() - b.F.coords()).cwiseAbs().maxCoeff();
    for (auto v : {&Jet2::Fx, &Jet2::Fy, &Jet2::Fxx, &Jet2::Fxy, &Jet2::Fyy}) {
        m = std::max(m, (a.*v - b.*v).cwiseAbs().maxCoeff());
    }
    return m;
}

Mat5 frame_matrix(const FrameData& f) {
    Mat5 m;
    m << f.T, f.Q, f.xi, f.eta, f.N;
    return m;
}

const ImmersionFn kSphere = trivial_immersion({TrivialTag::GreatSphereSlice, 1.0});
const ImmersionFn kTorus = trivial_immersion({TrivialTag::CliffordTorusSlice, 0.0});
const ImmersionFn kCylinder = trivial_immersion({TrivialTag::GreatCircleCylinder, 0.0});

}  // namespace

TEST(Jet, FifthComponentOfFx) {
    const Jet2 j = jet(family_immersion({kQuarter, 1.1}), 0, 0, JetScheme::DualForward);
    EXPECT_NEAR(j.Fx[4], std::sin(kQuarter), 1e-15);
    EXPECT_EQ(j.source, JetScheme::DualForward);
}

TEST(Jet, AnalyticChannelReturnedVerbatim) {
    const ImmersionFn f = family_immersion({0.6, 1.2});
    const Jet2 a = jet(f, 0.3, 0.4, JetScheme::Analytic);
    const Jet2 b = f.analytic()(0.3, 0.4);
    EXPECT_EQ(max_diff(a, b), 0.0);
}

TEST(Jet, FiniteDifferenceMatchesAnalytic) {
    const ImmersionFn f = family_immersion({kQuarter, 1.1});
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) {
            const double x = -2 + 0.45 * i, y = -2 + 0.45 * j;
            const Jet2 a = jet(f, x, y, JetScheme::Analytic);
            const Jet2 d = jet(f, x, y, JetScheme::FiniteDifference);
            worst = std::max(worst, (a.Fxx - d.Fxx).cwiseAbs().maxCoeff());
        }
    }
    EXPECT_LE(worst, 1e-8);
}

TEST(Jet, SchemesAgree) {
    for (const auto& p : draws(5, 101)) {
        const ImmersionFn f = family_immersion(p);
        for (int i = 0; i < 10; ++i) {
            for (int j = 0; j < 10; ++j) {
                const double x = 0.6 * i, y = 0.6 * j;
                const Jet2 a = jet(f, x, y, JetScheme::Analytic);
                EXPECT_LE(max_diff(a, jet(f, x, y, JetScheme::DualForward)), 1e-13);
                EXPECT_LE(max_diff(a, jet(f, x, y, JetScheme::FiniteDifference)), 1e-8);
            }
        }
    }
}

TEST(Jet, JetConsistency) {
    const ImmersionFn f = family_immersion({1.0, 1.1});
    const Jet2 j = jet(f, 0.7, -0.2, JetScheme::FiniteDifference);
    const Vec5 F = j.F.coords();
    // Derivative of |x|^2 = 1 along both directions.
    EXPECT_LT(std::abs(F.head<4>().dot(j.Fx.head<4>())), 1e-9);
    EXPECT_LT(std::abs(F.head<4>().dot(j.Fy.head<4>())), 1e-9);
}

TEST(Jet, DegenerateImmersion) {
    const ImmersionFn flat([](double x, double) { return Point5(std::cos(x), std::sin(x), 0, 0, 0); },
                           "constant in y");
    EXPECT_THROW(jet(flat, 0.1, 0.2, JetScheme::FiniteDifference), DegenerateImmersionError);
}

TEST(Jet, MissingChannel) {
    const ImmersionFn bare([](double x, double y) { return trivial_surface({}, x, y); });
    EXPECT_THROW(jet(bare, 0.1, 0.2, JetScheme::Analytic), ParameterError);
    EXPECT_THROW(jet(bare, 0.1, 0.2, JetScheme::DualForward), ParameterError);
    EXPECT_EQ(bare.preferred_scheme(), JetScheme::FiniteDifference);
}

TEST(InducedMetric, FamilyIsEuclidean) {
    for (const auto& p : draws(10, 7)) {
        const ImmersionFn f = family_immersion(p);
        for (double x : {0.0, 1.3, -4.0}) {
            const Mat2 g = induced_metric(jet(f, x, 2.0 - x, JetScheme::DualForward));
            EXPECT_LT((g - Mat2::Identity()).cwiseAbs().maxCoeff(), 1e-10);
        }
    }
}

TEST(AdaptedFrame, FamilyProperties) {
    for (const auto& p : draws(20, 3)) {
        const ImmersionFn f = family_immersion(p);
        for (double x : {-1.0, 0.5}) {
            for (double y : {0.0, 2.2}) {
                const FrameData fr = adapted_frame(jet(f, x, y, JetScheme::DualForward));
                const Mat5 m = frame_matrix(fr);
                EXPECT_LT((m.transpose() * m - Mat5::Identity()).cwiseAbs().maxCoeff(), 1e-12);
                EXPECT_NEAR(m.determinant(), 1.0, 1e-12);
                EXPECT_NEAR(dt_vector().dot(fr.xi), std::cos(p.theta), 1e-12);
                EXPECT_NEAR(dt_vector().dot(fr.eta), 0.0, 1e-15);
                EXPECT_NEAR(fr.sin_theta, std::sin(p.theta), 1e-12);
                EXPECT_NEAR(fr.sin_theta * fr.sin_theta + fr.cos_theta * fr.cos_theta, 1.0, 1e-12);
            }
        }
    }
}

TEST(AdaptedFrame, MatchesAnalyticFrameUpToSign) {
    const SurfaceParams p{kQuarter, 1.1};
    const FrameData fr = adapted_frame(jet(family_immersion(p), 0.3, -0.7, JetScheme::Analytic));
    const AnalyticFrame an = analytic_frame(p, 0.3, -0.7);
    auto up_to_sign = [](const Vec5& a, const Vec5& b) {
        return std::min((a - b).cwiseAbs().maxCoeff(), (a + b).cwiseAbs().maxCoeff());
    };
    EXPECT_LT((fr.T - an.Fx).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT(up_to_sign(fr.Q, an.Fy), 1e-10);
    EXPECT_LT((fr.xi - an.xi).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT(up_to_sign(fr.eta, an.eta), 1e-10);
    EXPECT_LT((fr.N - an.N).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(AdaptedFrame, CylinderHasTangentDt) {
    const FrameData fr = adapted_frame(jet(kCylinder, 0.4, 1.0, JetScheme::DualForward));
    EXPECT_LT((fr.T - dt_vector()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_EQ(fr.cos_theta, 0.0);
    const Mat5 m = frame_matrix(fr);
    EXPECT_LT((m.transpose() * m - Mat5::Identity()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(AdaptedFrame, ZeroAngleSurfaceIsRejected) {
    const Jet2 j = jet(kSphere, 0.3, 0.3, JetScheme::DualForward);
    EXPECT_THROW(adapted_frame(j), NormalAngleDegenerateError);
    const FrameData fr = zero_angle_frame(j);
    EXPECT_EQ(fr.xi, dt_vector());
    const Mat5 m = frame_matrix(fr);
    EXPECT_LT((m.transpose() * m - Mat5::Identity()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(m.determinant(), 1.0, 1e-12);
}

TEST(AngleFunction, Examples) {
    const ImmersionFn f = family_immersion({kQuarter, 1.1});
    for (double x : {-3.0, 0.0, 2.0}) {
        for (double y : {-1.0, 5.0}) {
            EXPECT_NEAR(angle_function(jet(f, x, y, JetScheme::DualForward)), kQuarter, 1e-10);
        }
    }
    EXPECT_EQ(angle_function(jet(kSphere, 0.2, 0.5, JetScheme::DualForward)), 0.0);
    EXPECT_EQ(angle_function(jet(kTorus, 0.2, 0.5, JetScheme::DualForward)), 0.0);
    EXPECT_NEAR(angle_function(jet(kCylinder, 0.2, 0.5, JetScheme::DualForward)), pi / 2, 1e-15);
}

TEST(ShapeOperators, CaseTwo) {
    const Jet2 j = jet(family_immersion({kQuarter, 1.0}), 0.5, 0.5, JetScheme::DualForward);
    const ShapeData s = shape_operators(j, adapted_frame(j));
    EXPECT_NEAR(s.data.lambda, 0.0, 1e-14);
    EXPECT_NEAR(s.data.beta1, 0.0, 1e-14);
    EXPECT_NEAR(std::abs(s.data.beta2), std::cos(kQuarter), 1e-14);
    EXPECT_NEAR(s.data.alpha, 1.0, 1e-14);
}

TEST(ShapeOperators, ConstraintAndAnalyticValues) {
    const SurfaceParams p{kQuarter, 1.1};
    const DerivedConstants k = derive_constants(p);
    const ImmersionFn f = family_immersion(p);
    for (auto scheme : {JetScheme::Analytic, JetScheme::FiniteDifference}) {
        const Jet2 j = jet(f, 1.2, -0.3, scheme);
        const ShapeData s = shape_operators(j, adapted_frame(j));
        const auto& d = s.data;
        EXPECT_NEAR(d.beta1 * d.beta1 + d.beta2 * d.beta2, 0.5, 1e-9);
        EXPECT_LT(s.A_xi.cwiseAbs().maxCoeff(), 1e-9);
        EXPECT_EQ(s.A_eta(0, 1), s.A_eta(1, 0));
        // The adapted eta is opposite to the analytic one.
        EXPECT_NEAR(d.beta1, -k.beta1p, 1e-9);
        EXPECT_NEAR(d.beta2, -k.beta2p, 1e-9);
        EXPECT_NEAR(d.beta3, k.beta1p, 1e-9);
    }
}

TEST(ShapeOperators, CliffordTorusBruteForce) {
    // Second fundamental form of (cos x, sin x, cos y, sin y)/sqrt 2 against
    // the unit normal (cos x, sin x, -cos y, -sin y)/sqrt 2, by hand.
    const double x = 0.8, y = -0.4, r = 1 / std::sqrt(2.0);
    const Vec5 nu = (Vec5() << r * std::cos(x), r * std::sin(x), -r * std::cos(y), -r * std::sin(y), 0)
                        .finished();
    const Vec5 Fxx = (Vec5() << -r * std::cos(x), -r * std::sin(x), 0, 0, 0).finished();
    const Vec5 Fyy = (Vec5() << 0, 0, -r * std::cos(y), -r * std::sin(y), 0).finished();
    Mat2 II;
    II << Fxx.dot(nu), 0, 0, Fyy.dot(nu);
    const Mat2 A_ref = (0.5 * Mat2::Identity()).inverse() * II;

    const Jet2 j = jet(kTorus, x, y, JetScheme::DualForward);
    const ShapeData s = shape_operators(j, zero_angle_frame(j));
    EXPECT_LT(s.A_xi.cwiseAbs().maxCoeff(), 1e-14);
    Eigen::SelfAdjointEigenSolver<Mat2> es(s.A_eta), ref(A_ref);
    EXPECT_NEAR(es.eigenvalues()[0], -1.0, 1e-13);
    EXPECT_NEAR(es.eigenvalues()[1], 1.0, 1e-13);
    EXPECT_NEAR(ref.eigenvalues()[0], -1.0, 1e-15);
    EXPECT_NEAR(ref.eigenvalues()[1], 1.0, 1e-15);
}

TEST(ShapeOperators, MismatchedFrame) {
    const ImmersionFn f = family_immersion({0.9, 1.1});
    const Jet2 a = jet(f, 0.0, 0.0, JetScheme::DualForward);
    const Jet2 b = jet(f, 1.0, 2.0, JetScheme::DualForward);
    EXPECT_THROW(shape_operators(a, adapted_frame(b)), ConsistencyError);
}

TEST(MeanCurvature, Examples) {
    for (const auto& p : draws(10, 19)) {
        const Jet2 j = jet(family_immersion(p), 0.7, 0.1, JetScheme::DualForward);
        const FrameData fr = adapted_frame(j);
        EXPECT_LE(mean_curvature_vector(shape_operators(j, fr).data, fr).norm(), 1e-9);
    }
    const Jet2 s = jet(kSphere, 0.3, 1.0, JetScheme::DualForward);
    const FrameData fs = zero_angle_frame(s);
    EXPECT_LE(mean_curvature_vector(shape_operators(s, fs).data, fs).norm(), 1e-9);

    SecondFundamentalData d;
    d.lambda = 0.0;
    d.beta1 = 1.0;
    d.beta3 = 1.0;
    FrameData fr;
    fr.eta << 0, 0.6, 0, 0.8, 0;
    EXPECT_EQ(mean_curvature_vector(d, fr), fr.eta);
}

TEST(GaussianCurvature, FamilyAndControls) {
    EXPECT_LE(std::abs(gaussian_curvature(family_immersion({kQuarter, 1.1}), 0, 0)), 1e-6);
    for (const auto& p : draws(5, 31)) {
        EXPECT_LE(std::abs(gaussian_curvature(family_immersion(p), 0.4, -1.0)), 1e-6);
    }
    EXPECT_NEAR(gaussian_curvature(kSphere, 0.3, 0.7), 1.0, 1e-6);
    EXPECT_NEAR(gaussian_curvature(kTorus, 0.3, 0.7), 0.0, 1e-6);
    EXPECT_NEAR(gaussian_curvature(kTorus, 0.3, 0.7, kDefaultMetricStep,
                                   JetScheme::FiniteDifference),
                0.0, 1e-6);
}

TEST(GaussianCurvature, DegenerateMetric) {
    // The sphere chart collapses at x = pi/2.
    EXPECT_THROW(gaussian_curvature(kSphere, pi / 2, 0.0), DegenerateMetricError);
}

namespace {

FrameField patch_field(const SurfaceParams& p, double x, double y) {
    return build_frame_field(family_immersion(p), local_patch(x, y, 1e-3, 1e-3, 2),
                             JetScheme::DualForward);
}

const NormalConnectionSample& centre(const std::vector<NormalConnectionSample>& v) {
    for (const auto& s : v) {
        if (s.i == 2 && s.j == 2) return s;
    }
    throw std::runtime_error("no centre");
}

}  // namespace

TEST(NormalConnection, Examples) {
    const double tan = std::tan(kQuarter);
    const auto two = centre(normal_connection_coeffs(patch_field({kQuarter, 1.0}, 0.2, 0.3)));
    EXPECT_NEAR(two.along_T, 0.0, 1e-6);
    const auto one =
        centre(normal_connection_coeffs(patch_field({kQuarter, std::sqrt(1.5)}, 0.2, 0.3)));
    EXPECT_NEAR(one.along_Q, 0.0, 1e-6);
    // Relative to the analytic eta the coefficient is -tan beta1'; the
    // adapted eta has the opposite sign.
    const auto mid = centre(normal_connection_coeffs(patch_field({kQuarter, 1.1}, 0.2, 0.3)));
    EXPECT_NEAR(mid.along_T, tan * 0.236268459194465020, 1e-6);
    EXPECT_NEAR(mid.along_Q, tan * 0.666466214589962105, 1e-6);
}

TEST(NormalConnection, MatchesShapeDataOnGrid) {
    for (const auto& p : draws(3, 37)) {
        const ImmersionFn f = family_immersion(p);
        GridSpec g{9, 9, 0.5, 0.508, -0.2, -0.192};
        const FrameField field = build_frame_field(f, g, JetScheme::DualForward);
        const double tan = std::tan(p.theta);
        for (const auto& s : normal_connection_coeffs(field)) {
            const auto d = shape_operators(field.jet_at(s.i, s.j), field.frame(s.i, s.j)).data;
            EXPECT_NEAR(s.along_T, -tan * d.beta1, 1e-6);
            EXPECT_NEAR(s.along_Q, -tan * d.beta2, 1e-6);
        }
        for (const auto& s : tangential_connection(field)) {
            EXPECT_NEAR(s.omega_T, 0.0, 1e-6);
            EXPECT_NEAR(s.omega_Q, 0.0, 1e-6);
        }
        for (const auto& s : weingarten_residuals(field)) EXPECT_LE(s.residual, 1e-6);
    }
}

TEST(FrameField, SignsAreAligned) {
    GridSpec g{12, 12, 0.0, 6.0, 0.0, 6.0};
    const FrameField field = build_frame_field(family_immersion({0.7, 1.2}), g, JetScheme::Analytic);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i + 1 < g.nx; ++i) {
            EXPECT_GT(field.frame(i, j).eta.dot(field.frame(i + 1, j).eta), 0.0);
        }
    }
}

TEST(FrameField, TooCoarseGridIsDetected) {
    GridSpec g{4, 4, 0.0, 9.0, 0.0, 9.0};
    EXPECT_THROW(build_frame_field(family_immersion({0.7, 1.2}), g, JetScheme::Analytic),
                 FrameAlignmentError);
}
