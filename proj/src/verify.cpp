#include "casurf/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "casurf/ambient.hpp"
#include "casurf/errors.hpp"
#include "casurf/frame_field.hpp"
#include "parallel.hpp"

namespace casurf {

const CheckResult* VerificationReport::find(const std::string& name) const {
    for (const auto& c : checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Mean angles this close to 0 or pi/2 route to the trivial pathways.
constexpr double kTrivialAngle = 1e-6;

// Running max of |value| with node location. NaN wins so it cannot hide.
struct MaxTracker {
    double value = 0.0;
    int i = -1, j = -1;
    void take(double v, int ii, int jj) {
        v = std::abs(v);
        if (std::isnan(value)) return;
        if (std::isnan(v) || v > value || i < 0) {
            value = v;
            i = ii;
            j = jj;
        }
    }
};

struct NodeData {
    bool evaluated = false;
    Point5 point;
    std::string error;

    bool in_jet_domain = false;
    bool has_jet = false;
    Jet2 jet;
    double theta_pt = kNaN;

    bool has_shape = false;
    FrameData frame;
    ShapeData shape;
    double frame_error = kNaN;
    double H_norm = kNaN;

    bool in_stencil_domain = false;
    double curvature = kNaN;
    double normal_connection = kNaN;
    double tangential = kNaN;
    double weingarten = kNaN;
    std::string stencil_error;
};

class ReportBuilder {
public:
    explicit ReportBuilder(const GridSpec& g) : grid_(g) {}

    CheckResult& add(const std::string& name, const MaxTracker& m, double tol,
                     std::string message = {}) {
        CheckResult c;
        c.name = name;
        c.max_residual = m.value;
        c.i = m.i;
        c.j = m.j;
        if (m.i >= 0) {
            c.x = grid_.x(m.i);
            c.y = grid_.y(m.j);
        }
        c.tolerance = tol;
        c.pass = std::isfinite(m.value) && m.value <= tol;
        c.message = std::move(message);
        checks_.push_back(std::move(c));
        return checks_.back();
    }

    void fail(const std::string& name, double tol, std::string message) {
        CheckResult c;
        c.name = name;
        c.max_residual = kNaN;
        c.tolerance = tol;
        c.pass = false;
        c.message = std::move(message);
        checks_.push_back(std::move(c));
    }

    void skip(const std::string& name, double tol, std::string message) {
        CheckResult c;
        c.name = name;
        c.tolerance = tol;
        c.skipped = true;
        c.pass = true;
        c.message = std::move(message);
        checks_.push_back(std::move(c));
    }

    std::vector<CheckResult> take() { return std::move(checks_); }

private:
    GridSpec grid_;
    std::vector<CheckResult> checks_;
};

void add_field_checks(ReportBuilder& rb, const std::vector<ResidualField>& fields, double tol) {
    for (const auto& f : fields) {
        const auto inner = f.interior_max();
        const auto edge = f.edge_max();
        MaxTracker m;
        m.value = inner.value;
        m.i = inner.i;
        m.j = inner.j;
        auto& c = rb.add(f.name, m, tol);
        c.edge_max = edge.value;
    }
}

bool finalize(VerificationReport& r) {
    r.overall_pass = std::all_of(r.checks.begin(), r.checks.end(),
                                 [](const CheckResult& c) { return c.pass; });
    return r.overall_pass;
}

std::string first_error(const std::vector<NodeData>& nodes, const GridSpec& g,
                        std::string NodeData::*field) {
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        if (!(nodes[k].*field).empty()) {
            std::ostringstream os;
            os << "node (" << k % g.nx << ", " << k / g.nx << "): " << nodes[k].*field;
            return os.str();
        }
    }
    return {};
}

}  // namespace

VerificationReport verify_surface(const ImmersionFn& f, const VerifyOptions& opt) {
    const GridSpec& g = opt.grid;
    g.validate(3);
    if (opt.params) validate(*opt.params);

    const JetScheme scheme = opt.scheme.value_or(f.preferred_scheme());
    const double tol_main = scheme == JetScheme::FiniteDifference ? opt.tol.fd : opt.tol.analytic;
    const double tol_fd = opt.tol.fd;

    // Lattice-sampled immersions can only be differenced inside the lattice:
    // jets reach 2 nodes out, frame and metric stencils another 2.
    const bool sampled = f.lattice().has_value();
    const int jet_margin = sampled ? 2 : 0;
    const int stencil_margin = sampled ? 4 : 0;
    const double patch_hx = sampled ? f.lattice()->hx : opt.fd_step;
    const double patch_hy = sampled ? f.lattice()->hy : opt.fd_step;

    VerificationReport report;
    report.provenance.surface = f.label();
    report.provenance.scheme = scheme;
    report.provenance.grid = g;
    report.provenance.params = opt.params;
    report.provenance.fd_step = opt.fd_step;
    report.provenance.metric_step = opt.metric_step;

    std::vector<NodeData> nodes(g.size());
    auto in_margin = [&](int i, int j, int m) {
        return i >= m && j >= m && i < g.nx - m && j < g.ny - m;
    };

    detail::parallel_for(g.size(), [&](std::size_t k) {
        const int i = static_cast<int>(k % g.nx), j = static_cast<int>(k / g.nx);
        NodeData& n = nodes[k];
        try {
            n.point = f(g.x(i), g.y(j));
            n.evaluated = true;
        } catch (const std::exception& e) {
            n.error = e.what();
            return;
        }
        n.in_jet_domain = in_margin(i, j, jet_margin);
        if (!n.in_jet_domain) return;
        try {
            n.jet = jet(f, g.x(i), g.y(j), scheme, opt.fd_step);
            n.has_jet = true;
            n.theta_pt = angle_function(n.jet);
        } catch (const std::exception& e) {
            n.error = e.what();
        }
    });

    ReportBuilder rb(g);

    {
        MaxTracker m;
        std::size_t failures = 0;
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            if (!nodes[k].evaluated) {
                ++failures;
                continue;
            }
            m.take(nodes[k].point.sphere_residual(), static_cast<int>(k % g.nx),
                   static_cast<int>(k / g.nx));
        }
        if (failures > 0) {
            rb.fail("on_manifold", opt.tol.on_manifold, first_error(nodes, g, &NodeData::error));
        } else {
            rb.add("on_manifold", m, opt.tol.on_manifold);
        }
    }

    {
        MaxTracker m;
        std::size_t failures = 0;
        m.i = m.j = -1;
        for (const auto& n : nodes) {
            if (n.in_jet_domain && !n.has_jet) ++failures;
        }
        m.value = static_cast<double>(failures);
        rb.add("regularity", m, 0.0, failures ? first_error(nodes, g, &NodeData::error) : "");
    }

    // Angle class.
    double theta_mean = 0.0;
    std::size_t jet_count = 0;
    for (const auto& n : nodes) {
        if (n.has_jet) {
            theta_mean += n.theta_pt;
            ++jet_count;
        }
    }
    theta_mean = jet_count ? theta_mean / jet_count : kNaN;
    const double theta_ref = opt.params ? opt.params->theta : theta_mean;
    std::string pathway = "constant-angle";
    if (theta_ref <= kTrivialAngle) {
        pathway = "zero-angle";
    } else if (theta_ref >= std::numbers::pi / 2 - kTrivialAngle) {
        pathway = "tangent-dt";
    }
    const bool constant_angle = pathway == "constant-angle";
    report.provenance.pathway = pathway;
    report.provenance.theta_reference = theta_ref;

    {
        MaxTracker m;
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            if (nodes[k].has_jet) {
                m.take(nodes[k].theta_pt - theta_ref, static_cast<int>(k % g.nx),
                       static_cast<int>(k / g.nx));
            }
        }
        if (jet_count == 0) {
            rb.fail("angle_constancy", tol_main, "no regular samples");
        } else {
            std::ostringstream os;
            os.precision(17);
            os << "reference angle " << theta_ref << (opt.params ? " (parameter)" : " (mean)");
            rb.add("angle_constancy", m, tol_main, os.str());
        }
    }

    // Frames and shape operators.
    detail::parallel_for(g.size(), [&](std::size_t k) {
        NodeData& n = nodes[k];
        if (!n.has_jet) return;
        try {
            n.frame = pathway == "zero-angle" ? zero_angle_frame(n.jet) : adapted_frame(n.jet);
            Mat5 m;
            m << n.frame.T.transpose(), n.frame.Q.transpose(), n.frame.xi.transpose(),
                n.frame.eta.transpose(), n.frame.N.transpose();
            n.frame_error = (m * m.transpose() - Mat5::Identity()).cwiseAbs().maxCoeff();
            n.shape = shape_operators(n.jet, n.frame);
            n.H_norm = mean_curvature_vector(n.shape.data, n.frame).norm();
            n.has_shape = true;
        } catch (const std::exception& e) {
            n.error = e.what();
        }
    });

    auto shape_max = [&](auto value_of) {
        MaxTracker m;
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            if (nodes[k].in_jet_domain) {
                const double v = nodes[k].has_shape ? value_of(nodes[k]) : kNaN;
                m.take(v, static_cast<int>(k % g.nx), static_cast<int>(k / g.nx));
            }
        }
        return m;
    };

    rb.add("frame_orthonormality", shape_max([](const NodeData& n) { return n.frame_error; }),
           tol_main);
    rb.add("minimality", shape_max([](const NodeData& n) { return n.H_norm; }), tol_main);

    const char* family_only[] = {"shape_xi_vanishes",   "beta_norm",          "beta_constancy",
                                 "shape_matches_analytic", "induced_metric",  "flatness",
                                 "normal_connection",   "tangential_connection", "weingarten",
                                 "structure_gauss",     "structure_codazzi_1", "structure_codazzi_2",
                                 "pmc_lambda_x",        "pmc_trace_x",        "pmc_lambda_y",
                                 "pmc_trace_y",         "pde_system",         "frequency_reconstruction"};
    if (!constant_angle) {
        for (const char* name : family_only) {
            rb.skip(name, tol_main, pathway + " pathway: constant-angle family checks do not apply");
        }
        report.checks = rb.take();
        finalize(report);
        return report;
    }

    const double cos_ref = std::cos(theta_ref);
    rb.add("shape_xi_vanishes",
           shape_max([](const NodeData& n) { return n.shape.A_xi.cwiseAbs().maxCoeff(); }),
           tol_main);
    rb.add("beta_norm", shape_max([&](const NodeData& n) {
               const auto& d = n.shape.data;
               return d.beta1 * d.beta1 + d.beta2 * d.beta2 - cos_ref * cos_ref;
           }),
           tol_main);

    // Spread of the extracted constants.
    double b1_lo = std::numeric_limits<double>::infinity(), b1_hi = -b1_lo;
    double b2_lo = b1_lo, b2_hi = -b1_lo;
    double b1_mean = 0.0, b2_mean = 0.0;
    std::size_t shape_count = 0;
    for (const auto& n : nodes) {
        if (!n.has_shape) continue;
        const auto& d = n.shape.data;
        b1_lo = std::min(b1_lo, d.beta1);
        b1_hi = std::max(b1_hi, d.beta1);
        b2_lo = std::min(b2_lo, d.beta2);
        b2_hi = std::max(b2_hi, d.beta2);
        b1_mean += d.beta1;
        b2_mean += d.beta2;
        ++shape_count;
    }
    if (shape_count == 0) {
        rb.fail("beta_constancy", tol_main, "no samples with shape data");
    } else {
        b1_mean /= shape_count;
        b2_mean /= shape_count;
        MaxTracker m;
        m.value = std::max(b1_hi - b1_lo, b2_hi - b2_lo);
        std::ostringstream os;
        os.precision(17);
        os << "mean beta1 " << b1_mean << ", mean beta2 " << b2_mean;
        rb.add("beta_constancy", m, tol_main, os.str());
    }

    if (opt.params) {
        const DerivedConstants k = derive_constants(*opt.params);
        rb.add("shape_matches_analytic", shape_max([&](const NodeData& n) {
                   const auto& d = n.shape.data;
                   double best = std::numeric_limits<double>::infinity();
                   for (double sign : {1.0, -1.0}) {
                       best = std::min(best, std::max({std::abs(d.beta1 - sign * k.beta1p),
                                                       std::abs(d.beta2 - sign * k.beta2p),
                                                       std::abs(d.beta3 + sign * k.beta1p)}));
                   }
                   return best;
               }),
               tol_main, "compared up to the sign of eta");
    } else {
        rb.skip("shape_matches_analytic", tol_main, "parameters unknown");
    }

    rb.add("induced_metric", shape_max([](const NodeData& n) {
               return (n.shape.data.metric - Mat2::Identity()).cwiseAbs().maxCoeff();
           }),
           tol_main);

    // Stencil-based checks at every node: intrinsic curvature and derivatives
    // of the frame on a local patch.
    detail::parallel_for(g.size(), [&](std::size_t k) {
        const int i = static_cast<int>(k % g.nx), j = static_cast<int>(k / g.nx);
        NodeData& n = nodes[k];
        n.in_stencil_domain = in_margin(i, j, stencil_margin);
        if (!n.in_stencil_domain || !n.has_shape) return;
        const double x = g.x(i), y = g.y(j);
        try {
            n.curvature = gaussian_curvature(f, x, y, opt.metric_step, scheme, opt.fd_step);
            const FrameField field = build_frame_field(
                f, local_patch(x, y, patch_hx, patch_hy, 2), scheme, FramePathway::Adapted,
                opt.fd_step);
            const auto nc = normal_connection_coeffs(field);
            const auto tc = tangential_connection(field);
            const auto wr = weingarten_residuals(field);
            // The patch centre is (2, 2); pick it out of the per-node lists.
            auto centre = [](const auto& list) {
                for (const auto& s : list) {
                    if (s.i == 2 && s.j == 2) return s;
                }
                throw Error("patch centre missing");
            };
            const auto& d = field.frame(2, 2);
            const ShapeData sd = shape_operators(field.jet_at(2, 2), d);
            const double tan = std::tan(theta_ref);
            const double cot = 1.0 / tan;
            const auto ncs = centre(nc);
            n.normal_connection = std::max(std::abs(ncs.along_T + tan * sd.data.beta1),
                                           std::abs(ncs.along_Q + tan * sd.data.beta2));
            const auto tcs = centre(tc);
            n.tangential = std::max(std::abs(tcs.omega_T),
                                    std::abs(tcs.omega_Q - sd.data.lambda * cot));
            n.weingarten = centre(wr).residual;
        } catch (const std::exception& e) {
            n.stencil_error = e.what();
        }
    });

    auto stencil_check = [&](const std::string& name, double NodeData::*field) {
        MaxTracker m;
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            const auto& n = nodes[k];
            if (!n.in_stencil_domain) continue;
            const double v = n.has_shape && n.stencil_error.empty() ? n.*field : kNaN;
            m.take(v, static_cast<int>(k % g.nx), static_cast<int>(k / g.nx));
        }
        rb.add(name, m, tol_fd, first_error(nodes, g, &NodeData::stencil_error));
    };
    stencil_check("flatness", &NodeData::curvature);
    stencil_check("normal_connection", &NodeData::normal_connection);
    stencil_check("tangential_connection", &NodeData::tangential);
    stencil_check("weingarten", &NodeData::weingarten);

    // Structure equations on the sub-grid that carries shape data.
    const char* structure_names[] = {"structure_gauss", "structure_codazzi_1",
                                     "structure_codazzi_2", "pmc_lambda_x", "pmc_trace_x",
                                     "pmc_lambda_y", "pmc_trace_y"};
    try {
        GridSpec sub;
        sub.nx = g.nx - 2 * jet_margin;
        sub.ny = g.ny - 2 * jet_margin;
        sub.x0 = g.x(jet_margin);
        sub.x1 = g.x(g.nx - 1 - jet_margin);
        sub.y0 = g.y(jet_margin);
        sub.y1 = g.y(g.ny - 1 - jet_margin);
        FieldGrid fg;
        fg.grid = sub;
        for (int j = 0; j < sub.ny; ++j) {
            for (int i = 0; i < sub.nx; ++i) {
                const auto& n = nodes[g.index(i + jet_margin, j + jet_margin)];
                if (!n.has_shape) throw Error("missing shape data: " + n.error);
                fg.samples.push_back(n.shape.data);
            }
        }
        const auto gcr = gauss_codazzi_ricci(fg, theta_ref);
        const auto pmc = pmc_conditions(fg, theta_ref);
        std::vector<ResidualField> all(gcr.begin(), gcr.end());
        all.insert(all.end(), pmc.begin(), pmc.end());
        for (auto& field : all) {
            const auto inner = field.interior_max();
            MaxTracker m;
            m.value = inner.value;
            if (inner.i >= 0) {
                m.i = inner.i + jet_margin;
                m.j = inner.j + jet_margin;
            }
            auto& c = rb.add(field.name, m, tol_fd);
            c.edge_max = field.edge_max().value;
        }
    } catch (const std::exception& e) {
        for (const char* name : structure_names) rb.fail(name, tol_fd, e.what());
    }

    if (opt.params) {
        try {
            const auto pde = pde_system(*opt.params, g);
            MaxTracker m;
            m.value = pde.max_abs();
            rb.add("pde_system", m, opt.tol.analytic, "analytic derivatives");
        } catch (const std::exception& e) {
            rb.fail("pde_system", opt.tol.analytic, e.what());
        }
    } else {
        rb.skip("pde_system", opt.tol.analytic, "parameters unknown");
    }

    // Recover the frequencies from the mean shape data and rebuild the
    // constants. beta signs are normalised: eta -> -eta flips both, y -> -y
    // flips beta2.
    try {
        if (shape_count == 0) throw Error("no samples with shape data");
        const double b1 = std::abs(b1_mean), b2 = std::abs(b2_mean);
        const FrequencySolution sol =
            invert_frequencies(b1, b2, theta_ref, std::max(kConstraintTol, tol_main));
        double nu1 = sol.nu1;
        const double upper = nu1_upper_bound(theta_ref);
        const double slack = 100.0 * tol_main;
        if (nu1 < 1.0 && nu1 > 1.0 - slack) nu1 = 1.0;
        if (nu1 > upper && nu1 < upper + slack) nu1 = upper;
        const DerivedConstants k = derive_constants({theta_ref, nu1});
        MaxTracker m;
        m.value = std::max(std::abs(k.beta1p - b1), std::abs(k.beta2p - b2));
        if (opt.params) m.value = std::max(m.value, std::abs(nu1 - opt.params->nu1));
        std::ostringstream os;
        os.precision(17);
        os << "nu1 " << sol.nu1 << ", nu2 " << sol.nu2 << ", mu1 " << sol.mu1 << ", mu2 "
           << sol.mu2;
        rb.add("frequency_reconstruction", m, tol_main, os.str());
    } catch (const std::exception& e) {
        rb.fail("frequency_reconstruction", tol_main, e.what());
    }

    report.checks = rb.take();
    finalize(report);
    return report;
}

VerificationReport verify_fields(const FieldGrid& fg, double theta, const Tolerances& tol) {
    VerificationReport report;
    report.provenance.surface = "field grid";
    report.provenance.grid = fg.grid;
    report.provenance.pathway = "constant-angle";
    report.provenance.theta_reference = theta;
    ReportBuilder rb(fg.grid);
    try {
        const auto gcr = gauss_codazzi_ricci(fg, theta);
        const auto pmc = pmc_conditions(fg, theta);
        std::vector<ResidualField> all(gcr.begin(), gcr.end());
        all.insert(all.end(), pmc.begin(), pmc.end());
        add_field_checks(rb, all, tol.fd);
    } catch (const std::exception& e) {
        rb.fail("field_grid", tol.fd, e.what());
    }
    report.checks = rb.take();
    finalize(report);
    return report;
}

}  // namespace casurf
