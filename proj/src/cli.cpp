#include "casurf/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

#include "casurf/errors.hpp"
#include "casurf/io.hpp"
#include "parallel.hpp"

namespace casurf {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ordered_json number(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(); }

// Check name -> column of the scan table.
const std::vector<std::pair<std::string, std::vector<std::string>>>& check_families() {
    static const std::vector<std::pair<std::string, std::vector<std::string>>> families = {
        {"manifold", {"on_manifold", "regularity"}},
        {"frame", {"angle_constancy", "frame_orthonormality", "induced_metric"}},
        {"minimality", {"minimality"}},
        {"shape",
         {"shape_xi_vanishes", "beta_norm", "beta_constancy", "shape_matches_analytic"}},
        {"intrinsic", {"flatness", "normal_connection", "tangential_connection", "weingarten"}},
        {"structure", {"structure_gauss", "structure_codazzi_1", "structure_codazzi_2"}},
        {"pmc", {"pmc_lambda_x", "pmc_trace_x", "pmc_lambda_y", "pmc_trace_y"}},
        {"pde", {"pde_system"}},
        {"frequency", {"frequency_reconstruction"}},
    };
    return families;
}

void write_output(const RunConfig& cfg, const std::string& text, std::ostream& out) {
    if (cfg.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw ParameterError("cannot write " + cfg.out);
    f << text;
    if (!f) throw ParameterError("error writing " + cfg.out);
}

struct Surface {
    ImmersionFn fn;
    std::optional<SurfaceParams> params;
    GridSpec grid;
};

Surface build_surface(const RunConfig& cfg) {
    if (!cfg.input.empty()) {
        std::ifstream in(cfg.input);
        if (!in) throw ParameterError("cannot read " + cfg.input);
        Mesh mesh = read_csv5(in);
        const GridSpec grid = mesh.grid;
        std::optional<SurfaceParams> params;
        if (cfg.theta && cfg.nu1) {
            params = SurfaceParams{*cfg.theta, *cfg.nu1};
            validate(*params);
        }
        return {sampled_immersion(std::move(mesh), cfg.input), params, grid};
    }
    if (cfg.trivial) return {trivial_immersion({*cfg.trivial, cfg.level}), std::nullopt, cfg.grid};
    if (!cfg.theta || !cfg.nu1) {
        throw ParameterError("need --theta and --nu1, --trivial KIND or --input PATH");
    }
    const SurfaceParams p{*cfg.theta, *cfg.nu1};
    validate(p);
    return {family_immersion(p), p, cfg.grid};
}

VerifyOptions verify_options(const RunConfig& cfg, const Surface& s) {
    VerifyOptions opt;
    opt.grid = s.grid;
    opt.scheme = cfg.scheme;
    opt.tol = cfg.tol;
    opt.fd_step = cfg.fd_step;
    opt.metric_step = cfg.metric_step;
    opt.params = s.params;
    return opt;
}

int cmd_generate(const RunConfig& cfg, std::ostream& out) {
    const ExportFormat fmt = cfg.format.value_or(ExportFormat::Csv5);
    if (fmt == ExportFormat::JsonReport) throw ParameterError("generate writes csv5 or obj");
    if (!cfg.input.empty()) throw ParameterError("generate does not take --input");
    const Surface s = build_surface(cfg);
    const Mesh mesh = sample_mesh(s.fn, s.grid);
    std::ostringstream os;
    if (fmt == ExportFormat::Csv5) {
        write_csv5(os, mesh);
    } else {
        write_obj_stereo(os, mesh, cfg.pole);
    }
    write_output(cfg, os.str(), out);
    return kExitPass;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    if (cfg.format.value_or(ExportFormat::JsonReport) != ExportFormat::JsonReport) {
        throw ParameterError("verify writes a json report");
    }
    if (!cfg.input.empty() && cfg.scheme && *cfg.scheme != JetScheme::FiniteDifference) {
        throw ParameterError("imported meshes support only --scheme fd");
    }
    const Surface s = build_surface(cfg);
    const VerificationReport r = verify_surface(s.fn, verify_options(cfg, s));
    write_output(cfg, report_json(r, cfg), out);
    return exit_code(r);
}

int cmd_scan(const RunConfig& cfg, std::ostream& out, bool verify) {
    if (cfg.format) throw ParameterError("scan and table write csv; drop --format");
    if (cfg.trivial || !cfg.input.empty()) {
        throw ParameterError("scan and table sample the constant-angle family only");
    }
    const auto rows = run_scan(cfg, verify);
    std::ostringstream os;
    write_scan_csv(os, rows, verify);
    write_output(cfg, os.str(), out);
    for (const auto& r : rows) {
        if (!r.pass) return kExitFail;
    }
    return kExitPass;
}

}  // namespace

std::string report_json(const VerificationReport& r, const RunConfig& cfg) {
    ordered_json j;
    j["tool"] = "casurf";
    j["version"] = CASURF_VERSION;
    j["subcommand"] = cfg.subcommand;
    ordered_json c = ordered_json::object();
    for (const auto& [k, v] : cfg.entries()) c[k] = v;
    j["config"] = c;

    const Provenance& p = r.provenance;
    ordered_json prov;
    prov["surface"] = p.surface;
    prov["scheme"] = std::string(to_string(p.scheme));
    prov["pathway"] = p.pathway;
    prov["theta_reference"] = number(p.theta_reference);
    prov["grid"] = {{"nx", p.grid.nx}, {"ny", p.grid.ny}, {"x0", p.grid.x0},
                    {"x1", p.grid.x1}, {"y0", p.grid.y0}, {"y1", p.grid.y1}};
    if (p.params) {
        prov["params"] = {{"theta", p.params->theta}, {"nu1", p.params->nu1}};
    } else {
        prov["params"] = nullptr;
    }
    prov["fd_step"] = p.fd_step;
    prov["metric_step"] = p.metric_step;
    j["provenance"] = prov;

    ordered_json checks = ordered_json::array();
    for (const auto& chk : r.checks) {
        ordered_json e;
        e["name"] = chk.name;
        e["max_residual"] = chk.skipped ? ordered_json() : number(chk.max_residual);
        if (chk.i >= 0) {
            e["location"] = {{"i", chk.i}, {"j", chk.j}, {"x", chk.x}, {"y", chk.y}};
        } else {
            e["location"] = nullptr;
        }
        e["tolerance"] = chk.tolerance;
        e["pass"] = chk.pass;
        e["skipped"] = chk.skipped;
        if (chk.edge_max) e["edge_max"] = number(*chk.edge_max);
        if (!chk.message.empty()) e["message"] = chk.message;
        checks.push_back(std::move(e));
    }
    j["checks"] = checks;
    j["overall_pass"] = r.overall_pass;
    return j.dump(2) + "\n";
}

std::vector<SurfaceParams> scan_parameters(const RunConfig& cfg) {
    std::vector<double> thetas;
    if (cfg.theta) {
        thetas.push_back(*cfg.theta);
    } else if (cfg.theta_count == 1) {
        thetas.push_back(cfg.theta_lo);
    } else {
        for (int k = 0; k < cfg.theta_count; ++k) {
            thetas.push_back(k == cfg.theta_count - 1
                                 ? cfg.theta_hi
                                 : cfg.theta_lo + (cfg.theta_hi - cfg.theta_lo) * k /
                                                      (cfg.theta_count - 1));
        }
    }
    std::vector<SurfaceParams> out;
    for (double t : thetas) {
        const double hi = nu1_upper_bound(t);
        for (int k = 0; k < cfg.nu1_count; ++k) {
            const double nu1 = k == cfg.nu1_count - 1
                                   ? hi
                                   : 1.0 + (hi - 1.0) * k / (cfg.nu1_count - 1);
            out.push_back({t, nu1});
            validate(out.back());
        }
    }
    return out;
}

std::vector<ScanRow> run_scan(const RunConfig& cfg, bool verify) {
    const auto params = scan_parameters(cfg);
    std::vector<ScanRow> rows(params.size());
    std::vector<std::string> errors(params.size());
    detail::parallel_for(params.size(), [&](std::size_t k) {
        try {
            ScanRow& row = rows[k];
            row.constants = derive_constants(params[k]);
            if (!verify) return;
            VerifyOptions opt;
            opt.grid = cfg.grid;
            opt.scheme = cfg.scheme;
            opt.tol = cfg.tol;
            opt.fd_step = cfg.fd_step;
            opt.metric_step = cfg.metric_step;
            opt.params = params[k];
            const VerificationReport r = verify_surface(family_immersion(params[k]), opt);
            row.pass = r.overall_pass;
            for (const auto& [family, names] : check_families()) {
                double m = 0.0;
                for (const auto& name : names) {
                    const CheckResult* c = r.find(name);
                    if (!c || c->skipped) continue;
                    if (std::isnan(c->max_residual) || std::isnan(m)) {
                        m = std::numeric_limits<double>::quiet_NaN();
                    } else {
                        m = std::max(m, c->max_residual);
                    }
                }
                row.family_max.emplace_back(family, m);
            }
        } catch (const std::exception& e) {
            errors[k] = e.what();
        }
    });
    for (const auto& e : errors) {
        if (!e.empty()) throw ParameterError(e);
    }
    return rows;
}

void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows, bool verify) {
    os << "theta,nu1,nu2,mu1,mu2,c1,c2,beta1p,beta2p";
    if (verify) {
        for (const auto& [family, names] : check_families()) os << ',' << family;
        os << ",pass";
    }
    os << '\n';
    for (const auto& r : rows) {
        const auto& k = r.constants;
        for (double v : {k.theta, k.nu1, k.nu2, k.mu1, k.mu2, k.c1, k.c2, k.beta1p}) {
            os << fmt17(v) << ',';
        }
        os << fmt17(k.beta2p);
        if (verify) {
            for (const auto& [family, m] : r.family_max) os << ',' << fmt17(m);
            os << ',' << (r.pass ? 1 : 0);
        }
        os << '\n';
    }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Constant-angle minimal surfaces in S^3 x R: generate, verify, scan, table",
                 "casurf"};
    app.set_version_flag("--version", CASURF_VERSION);
    std::string command;
    app.add_option("command", command, "generate | verify | scan | table")
        ->check(CLI::IsMember({"generate", "verify", "scan", "table"}));

    const std::map<std::string, std::string> help = {
        {"theta", "angle between dt and the normal plane, in (0, pi/2)"},
        {"nu1", "frequency in [1, sqrt(1 + cos^2 theta)]"},
        {"theta-range", "LO,HI angles for scan and table"},
        {"theta-count", "number of angles in --theta-range"},
        {"nu1-count", "nu1 samples per angle, endpoints included"},
        {"grid", "NX,NY sample counts"},
        {"range", "X0,X1,Y0,Y1 parameter rectangle"},
        {"scheme", "auto | analytic | dual | fd"},
        {"tol-analytic", "tolerance for checks on exact jets"},
        {"tol-fd", "tolerance for difference-limited checks"},
        {"tol-manifold", "tolerance for |x|^2 = 1"},
        {"fd-step", "finite-difference step"},
        {"metric-step", "step for curvature from the metric"},
        {"out", "output path (default: standard output)"},
        {"format", "csv5 | obj | json"},
        {"pole", "stereographic pole index 1..4"},
        {"trivial", "great-sphere | clifford-torus | great-circle-cylinder"},
        {"level", "height t0 of the trivial slices"},
        {"input", "csv5 mesh to verify"},
    };
    std::map<std::string, std::string> raw;
    for (const auto& key : config_keys()) {
        if (key == "degrees") continue;
        app.add_option("--" + key, raw[key], help.at(key));
    }
    bool degrees = false;
    bool print_config = false;
    std::string config_path;
    app.add_flag("--degrees", degrees, "angles are given in degrees");
    app.add_flag("--print-config", print_config, "print the effective settings and exit");
    app.add_option("--config", config_path, "flat key=value file; flags override it");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::CallForVersion&) {
        out << CASURF_VERSION << '\n';
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    RunConfig cfg;
    try {
        bool range_given = app.count("--range") > 0;
        if (!config_path.empty()) {
            for (const auto& [k, v] : read_config_file(config_path)) {
                cfg.set(k, v);
                range_given = range_given || k == "range";
            }
        }
        for (const auto& key : config_keys()) {
            if (key != "degrees" && app.count("--" + key) > 0) cfg.set(key, raw[key]);
        }
        if (degrees) cfg.degrees = true;
        cfg.subcommand = command;
        // The default rectangle runs into the poles of the sphere chart.
        if (!range_given && cfg.trivial == TrivialTag::GreatSphereSlice) {
            cfg.grid.x0 = -1.2;
            cfg.grid.x1 = 1.2;
        }
        cfg.finalize();
        if (print_config) {
            for (const auto& [k, v] : cfg.entries()) out << k << '=' << v << '\n';
            return kExitPass;
        }
        if (command.empty()) {
            err << "error: a command is required\n\n" << app.help();
            return kExitUsage;
        }
        if (command == "generate") return cmd_generate(cfg, out);
        if (command == "verify") return cmd_verify(cfg, out);
        return cmd_scan(cfg, out, command == "scan");
    } catch (const ProjectionError& e) {
        err << "error: stereographic export failed at " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\nRun with --help for usage.\n";
        return kExitUsage;
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"casurf"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace casurf
