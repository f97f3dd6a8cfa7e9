#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <cstring>
#include <random>

#include "casurf/errors.hpp"
#include "casurf/family.hpp"
#include "casurf/residuals.hpp"
#include "casurf/verify.hpp"

using namespace casurf;
using std::numbers::pi;

namespace {

const double kQuarter = pi / 4;

SecondFundamentalData fields(double lambda, double b1, double b2, double b3, double alpha = 1.0) {
    SecondFundamentalData d;
    d.lambda = lambda;
    d.beta1 = b1;
    d.beta2 = b2;
    d.beta3 = b3;
    d.alpha = alpha;
    d.metric << 1, 0, 0, alpha * alpha;
    return d;
}

FieldGrid constant_grid(const SecondFundamentalData& d, int n = 7) {
    GridSpec g{n, n, 0.0, 1.0, 0.0, 1.0};
    return FieldGrid::from_function(g, [d](double, double) { return d; });
}

double field_max(const ResidualField& f) { return f.overall_max().value; }

// Shape data extracted from the family through diffgeo on a grid.
FieldGrid family_fields(const SurfaceParams& p, const GridSpec& g) {
    const ImmersionFn f = family_immersion(p);
    return FieldGrid::from_function(g, [&](double x, double y) {
        const Jet2 j = jet(f, x, y, JetScheme::DualForward);
        return shape_operators(j, adapted_frame(j)).data;
    });
}

}  // namespace

TEST(GaussCodazziRicci, FamilyFields) {
    const FieldGrid fg = family_fields({kQuarter, 1.1}, GridSpec{21, 21, 0, 2 * pi, 0, 2 * pi});
    for (const auto& r : gauss_codazzi_ricci(fg, kQuarter)) {
        EXPECT_LE(r.interior_max().value, 1e-6) << r.name;
        EXPECT_LE(r.overall_max().value, 1e-6) << r.name;
    }
}

TEST(GaussCodazziRicci, GaussViolationIsFlagged) {
    const auto r = gauss_codazzi_ricci(constant_grid(fields(0, 0, 0, 0.37)), kQuarter);
    EXPECT_EQ(r[0].name, "structure_gauss");
    EXPECT_NEAR(field_max(r[0]), 0.5, 1e-15);
    EXPECT_LE(field_max(r[1]), 1e-14);
    EXPECT_LE(field_max(r[2]), 1e-14);
}

TEST(GaussCodazziRicci, CaseTwoIsExact) {
    const double c = std::cos(kQuarter);
    const auto r = gauss_codazzi_ricci(constant_grid(fields(0, 0, c, 0)), kQuarter);
    EXPECT_EQ(field_max(r[0]), 0.0);
}

TEST(GaussCodazziRicci, CodazziTermsWithNonzeroLambda) {
    // lambda = 1 + x, beta2 = y, beta1 = beta3 = 0 on a unit metric:
    // r7 = 1 - 0 = 1, r8 = -2 lambda cot beta2.
    GridSpec g{9, 9, 0.0, 1.0, 0.0, 1.0};
    const FieldGrid fg = FieldGrid::from_function(
        g, [](double x, double y) { return fields(1 + x, 0, y, 0); });
    const auto r = gauss_codazzi_ricci(fg, kQuarter);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double x = g.x(i), y = g.y(j);
            const std::size_t k = g.index(i, j);
            EXPECT_NEAR(r[0].values[k], (1 + x) * (1 + x) + 1 + 0.5 - y * y, 1e-12);
            EXPECT_NEAR(r[1].values[k], 1.0, 1e-12);
            EXPECT_NEAR(r[2].values[k], -2 * (1 + x) * y, 1e-12);
        }
    }
}

TEST(GaussCodazziRicci, InvalidMetric) {
    EXPECT_THROW(gauss_codazzi_ricci(constant_grid(fields(0, 0, 0, 0, 0.0)), kQuarter),
                 InvalidMetricError);
    EXPECT_THROW(pmc_conditions(constant_grid(fields(0, 0, 0, 0, -1.0)), kQuarter),
                 InvalidMetricError);
    EXPECT_THROW(gauss_codazzi_ricci(constant_grid(fields(0, 0, 0, 0)), 0.0), ParameterError);
    EXPECT_THROW(gauss_codazzi_ricci(constant_grid(fields(0, 0, 0, 0), 2), kQuarter),
                 ParameterError);
}

TEST(PmcConditions, FamilyFields) {
    const FieldGrid fg = family_fields({kQuarter, 1.1}, GridSpec{21, 21, 0, 2 * pi, 0, 2 * pi});
    for (const auto& r : pmc_conditions(fg, kQuarter)) EXPECT_LE(field_max(r), 1e-6) << r.name;
}

TEST(PmcConditions, LinearLambdaIsFlagged) {
    GridSpec g{7, 7, 0.0, 1.0, 0.0, 1.0};
    const FieldGrid fg =
        FieldGrid::from_function(g, [](double x, double) { return fields(x, 0, 0.2, 0); });
    const auto r = pmc_conditions(fg, kQuarter);
    EXPECT_EQ(r[0].name, "pmc_lambda_x");
    EXPECT_NEAR(r[0].interior_max().value, 1.0, 1e-12);
    EXPECT_NEAR(r[0].edge_max().value, 1.0, 1e-12);
}

TEST(PmcConditions, TraceViolationIsFlagged) {
    const double c = 0.3, t = 0.9;
    const auto r = pmc_conditions(constant_grid(fields(0, c, 0.1, c)), t);
    EXPECT_NEAR(field_max(r[0]), 2 * c * c * std::tan(t), 1e-15);
}

TEST(Residuals, DetectorsAreFirstOrder) {
    const double c = std::cos(kQuarter), b1 = 0.3, b2 = std::sqrt(c * c - b1 * b1);
    for (double eps : {1e-4, 1e-3}) {
        const auto a = gauss_codazzi_ricci(constant_grid(fields(0, b1, b2, -b1 + eps)), kQuarter);
        const auto b =
            gauss_codazzi_ricci(constant_grid(fields(0, b1, b2, -b1 + 2 * eps)), kQuarter);
        EXPECT_NEAR(field_max(b[0]) / field_max(a[0]), 2.0, 0.02);

        GridSpec g{7, 7, 0.0, 1.0, 0.0, 1.0};
        auto lam = [&](double s) {
            return pmc_conditions(FieldGrid::from_function(g, [&](double x, double) {
                                      return fields(s * x, b1, b2, -b1);
                                  }),
                                  kQuarter);
        };
        EXPECT_NEAR(field_max(lam(2 * eps)[0]) / field_max(lam(eps)[0]), 2.0, 0.02);
    }
}

TEST(ResidualField, TiesResolveToLowestIndex) {
    ResidualField f;
    f.grid = GridSpec{4, 4, 0, 1, 0, 1};
    f.values.assign(16, 0.0);
    f.values[f.grid.index(2, 1)] = -3.0;
    f.values[f.grid.index(1, 2)] = 3.0;
    f.values[f.grid.index(3, 3)] = 5.0;
    const auto m = f.interior_max();
    EXPECT_EQ(m.value, 3.0);
    EXPECT_EQ(m.i, 2);
    EXPECT_EQ(m.j, 1);
    EXPECT_EQ(f.edge_max().value, 5.0);
    f.values[f.grid.index(2, 2)] = std::nan("");
    EXPECT_TRUE(std::isnan(f.interior_max().value));
}

TEST(PdeSystem, GeneralMember) {
    const auto r = pde_system({kQuarter, 1.1}, GridSpec{15, 15, -3, 3, -3, 3});
    EXPECT_LE(r.max_abs(), 1e-10);
    EXPECT_LE(r.fourth_order_x.overall_max().value, 1e-9);
    EXPECT_LE(r.fourth_order_y.overall_max().value, 1e-9);
    EXPECT_LE(r.xi_relation.overall_max().value, 1e-12);
    EXPECT_LE(r.fifth_components.overall_max().value, 1e-15);
}

TEST(PdeSystem, CaseEndpoints) {
    const GridSpec g{15, 15, -3, 3, -3, 3};
    const auto two = pde_system({kQuarter, 1.0}, g);
    EXPECT_LE(two.max_abs(), 1e-12);
    const auto one = pde_system({kQuarter, std::sqrt(1.5)}, g);
    EXPECT_LE(one.system[1].overall_max().value, 1e-12);
    EXPECT_LE(one.max_abs(), 1e-12);
}

TEST(PdeSystem, RandomDraws) {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> th(0.1, pi / 2 - 0.1), u(0.0, 1.0);
    for (int k = 0; k < 20; ++k) {
        const double t = th(rng);
        const SurfaceParams p{t, 1.0 + u(rng) * (nu1_upper_bound(t) - 1.0)};
        EXPECT_LE(pde_system(p, GridSpec{11, 11, -2, 2, -2, 2}).max_abs(), 1e-10);
    }
    EXPECT_THROW(pde_system({kQuarter, 1.5}, GridSpec{}), ParameterError);
}

TEST(VerifySurface, FamilyPasses) {
    VerifyOptions opt;
    opt.grid = GridSpec{17, 17, 0, 2 * pi, 0, 2 * pi};
    opt.params = SurfaceParams{pi / 3, 1.05};
    const VerificationReport r = verify_surface(family_immersion(*opt.params), opt);
    for (const auto& c : r.checks) {
        EXPECT_TRUE(c.pass) << c.name << ": " << c.max_residual << " " << c.message;
        EXPECT_FALSE(c.skipped) << c.name;
    }
    EXPECT_TRUE(r.overall_pass);
    EXPECT_EQ(r.provenance.pathway, "constant-angle");
    ASSERT_NE(r.find("flatness"), nullptr);
    EXPECT_EQ(r.find("nope"), nullptr);
}

TEST(VerifySurface, UnknownParametersAreReconstructed) {
    VerifyOptions opt;
    opt.grid = GridSpec{9, 9, 0, 3, 0, 3};
    const VerificationReport r = verify_surface(family_immersion({0.5, 1.2}), opt);
    EXPECT_TRUE(r.overall_pass);
    EXPECT_TRUE(r.find("pde_system")->skipped);
    EXPECT_TRUE(r.find("shape_matches_analytic")->skipped);
    EXPECT_NEAR(r.provenance.theta_reference, 0.5, 1e-12);
    EXPECT_FALSE(r.find("frequency_reconstruction")->skipped);
}

TEST(VerifySurface, CliffordTorusRoutesToZeroAngle) {
    VerifyOptions opt;
    opt.grid = GridSpec{9, 9, 0, 2 * pi, 0, 2 * pi};
    const auto r = verify_surface(trivial_immersion({TrivialTag::CliffordTorusSlice, 0.0}), opt);
    EXPECT_EQ(r.provenance.pathway, "zero-angle");
    EXPECT_TRUE(r.find("angle_constancy")->pass);
    EXPECT_EQ(r.find("angle_constancy")->max_residual, 0.0);
    EXPECT_TRUE(r.find("structure_gauss")->skipped);
    EXPECT_TRUE(r.find("beta_norm")->skipped);
    EXPECT_TRUE(r.overall_pass);
}

TEST(VerifySurface, OffManifoldNoiseFails) {
    const ImmersionFn base = family_immersion({0.8, 1.1});
    const ImmersionFn noisy([base](double x, double y) {
        Vec5 v = base(x, y).coords();
        v[0] += 1e-3 * std::sin(37 * x + 11 * y);
        return Point5(v);
    });
    VerifyOptions opt;
    opt.grid = GridSpec{9, 9, 0, 1, 0, 1};
    const auto r = verify_surface(noisy, opt);
    EXPECT_FALSE(r.find("on_manifold")->pass);
    EXPECT_FALSE(r.overall_pass);
    EXPECT_EQ(r.provenance.scheme, JetScheme::FiniteDifference);
}

TEST(VerifySurface, DegenerateImmersionBecomesFailedCheck) {
    const ImmersionFn flat([](double x, double) { return Point5(std::cos(x), std::sin(x), 0, 0, x); });
    VerifyOptions opt;
    opt.grid = GridSpec{5, 5, 0, 1, 0, 1};
    VerificationReport r;
    ASSERT_NO_THROW(r = verify_surface(flat, opt));
    EXPECT_FALSE(r.find("regularity")->pass);
    EXPECT_EQ(r.find("regularity")->max_residual, 25.0);
    EXPECT_FALSE(r.overall_pass);
}

TEST(VerifySurface, Deterministic) {
    VerifyOptions opt;
    opt.grid = GridSpec{9, 9, 0, 2, 0, 2};
    opt.params = SurfaceParams{0.7, 1.1};
    const auto f = family_immersion(*opt.params);
    const auto a = verify_surface(f, opt), b = verify_surface(f, opt);
    ASSERT_EQ(a.checks.size(), b.checks.size());
    for (std::size_t k = 0; k < a.checks.size(); ++k) {
        EXPECT_EQ(a.checks[k].name, b.checks[k].name);
        EXPECT_EQ(std::memcmp(&a.checks[k].max_residual, &b.checks[k].max_residual, sizeof(double)), 0);
        EXPECT_EQ(a.checks[k].i, b.checks[k].i);
    }
}

TEST(VerifySurface, InvariantUnderPeriodTranslation) {
    const double t = 0.9;
    VerifyOptions opt;
    opt.params = SurfaceParams{t, 1.0};
    opt.grid = GridSpec{9, 9, 0.0, 2.0, 0.0, 2.0};
    const auto f = family_immersion(*opt.params);
    const auto a = verify_surface(f, opt);
    opt.grid.y0 += 2 * pi;
    opt.grid.y1 += 2 * pi;
    const auto b = verify_surface(f, opt);
    for (std::size_t k = 0; k < a.checks.size(); ++k) {
        // Stencil-based checks sit at the rounding floor of their differences,
        // which moves with the shifted sample coordinates.
        const double tol = a.checks[k].tolerance == opt.tol.fd ? 1e-10 : 1e-12;
        EXPECT_NEAR(a.checks[k].max_residual, b.checks[k].max_residual, tol) << a.checks[k].name;
    }
}

TEST(VerifySurface, InvalidInputs) {
    VerifyOptions opt;
    opt.grid = GridSpec{2, 9, 0, 1, 0, 1};
    EXPECT_THROW(verify_surface(family_immersion({0.7, 1.1}), opt), ParameterError);
    opt.grid = GridSpec{};
    opt.params = SurfaceParams{0.7, 2.0};
    EXPECT_THROW(verify_surface(family_immersion({0.7, 1.1}), opt), ParameterError);
}

TEST(VerifyFields, SyntheticViolationsFail) {
    const Tolerances tol;
    EXPECT_FALSE(verify_fields(constant_grid(fields(0, 0, 0, 0.4)), kQuarter, tol).overall_pass);
    const double c = std::cos(kQuarter);
    EXPECT_TRUE(verify_fields(constant_grid(fields(0, 0, c, 0)), kQuarter, tol).overall_pass);
}
