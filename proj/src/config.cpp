#include "casurf/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "casurf/errors.hpp"

namespace casurf {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double to_double(std::string_view key, std::string_view s) {
    s = trim(s);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw ParameterError(std::string(key) + ": expected a number, got '" + std::string(s) + "'");
    }
    return v;
}

int to_int(std::string_view key, std::string_view s) {
    s = trim(s);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ParameterError(std::string(key) + ": expected an integer, got '" + std::string(s) +
                             "'");
    }
    return v;
}

std::vector<double> to_doubles(std::string_view key, std::string_view s, std::size_t n) {
    std::vector<double> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = s.find(',', start);
        out.push_back(to_double(key, s.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (out.size() != n) {
        throw ParameterError(std::string(key) + ": expected " + std::to_string(n) +
                             " comma-separated values");
    }
    return out;
}

bool to_bool(std::string_view key, std::string_view s) {
    s = trim(s);
    if (s == "true" || s == "1" || s == "yes" || s.empty()) return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw ParameterError(std::string(key) + ": expected true or false");
}

}  // namespace

std::string_view to_string(ExportFormat f) {
    switch (f) {
    case ExportFormat::Csv5: return "csv5";
    case ExportFormat::ObjStereo: return "obj";
    case ExportFormat::JsonReport: return "json";
    }
    return "?";
}

ExportFormat parse_export_format(std::string_view s) {
    if (s == "csv5") return ExportFormat::Csv5;
    if (s == "obj" || s == "obj-stereo") return ExportFormat::ObjStereo;
    if (s == "json" || s == "json-report") return ExportFormat::JsonReport;
    throw ParameterError("unknown format '" + std::string(s) + "' (csv5, obj, json)");
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {
        "theta",  "nu1",       "theta-range",  "theta-count",  "nu1-count", "grid",
        "range",  "scheme",    "tol-analytic", "tol-fd",       "tol-manifold", "fd-step",
        "metric-step", "out",  "format",       "pole",         "trivial",   "level",
        "input",  "degrees"};
    return keys;
}

void RunConfig::set(std::string_view key, std::string_view raw) {
    const std::string_view value = trim(raw);
    if (key == "theta") {
        theta = value.empty() ? std::nullopt : std::optional(to_double(key, value));
    } else if (key == "nu1") {
        nu1 = value.empty() ? std::nullopt : std::optional(to_double(key, value));
    } else if (key == "theta-range") {
        const auto v = to_doubles(key, value, 2);
        theta_lo = v[0];
        theta_hi = v[1];
    } else if (key == "theta-count") {
        theta_count = to_int(key, value);
    } else if (key == "nu1-count") {
        nu1_count = to_int(key, value);
    } else if (key == "grid") {
        const auto v = to_doubles(key, value, 2);
        if (v[0] != std::floor(v[0]) || v[1] != std::floor(v[1])) {
            throw ParameterError("grid: expected NX,NY integers");
        }
        grid.nx = static_cast<int>(v[0]);
        grid.ny = static_cast<int>(v[1]);
    } else if (key == "range") {
        const auto v = to_doubles(key, value, 4);
        grid.x0 = v[0];
        grid.x1 = v[1];
        grid.y0 = v[2];
        grid.y1 = v[3];
    } else if (key == "scheme") {
        scheme = value == "auto" || value.empty() ? std::nullopt
                                                  : std::optional(parse_jet_scheme(value));
    } else if (key == "tol-analytic") {
        tol.analytic = to_double(key, value);
    } else if (key == "tol-fd") {
        tol.fd = to_double(key, value);
    } else if (key == "tol-manifold") {
        tol.on_manifold = to_double(key, value);
    } else if (key == "fd-step") {
        fd_step = to_double(key, value);
    } else if (key == "metric-step") {
        metric_step = to_double(key, value);
    } else if (key == "out") {
        out = std::string(value);
    } else if (key == "format") {
        format = value.empty() || value == "auto" ? std::nullopt
                                                  : std::optional(parse_export_format(value));
    } else if (key == "pole") {
        pole = to_int(key, value);
    } else if (key == "trivial") {
        trivial = value.empty() || value == "none" ? std::nullopt
                                                   : std::optional(parse_trivial_tag(value));
    } else if (key == "level") {
        level = to_double(key, value);
    } else if (key == "input") {
        input = std::string(value);
    } else if (key == "degrees") {
        degrees = to_bool(key, value);
    } else {
        throw ParameterError("unknown setting '" + std::string(key) + "'");
    }
}

void RunConfig::finalize() {
    if (degrees) {
        constexpr double k = std::numbers::pi / 180.0;
        if (theta) *theta *= k;
        theta_lo *= k;
        theta_hi *= k;
        degrees = false;
    }
    grid.validate(2);
    if (theta_count < 1 || nu1_count < 2) {
        throw ParameterError("theta-count must be >= 1 and nu1-count >= 2");
    }
    if (!(theta_lo <= theta_hi)) throw ParameterError("theta-range must be nonempty");
    for (double t : {tol.analytic, tol.fd, tol.on_manifold, fd_step, metric_step}) {
        if (!(t > 0.0)) throw ParameterError("tolerances and steps must be positive");
    }
    if (pole < 1 || pole > 4) throw ParameterError("pole must be one of 1..4");
    if (trivial && (theta || nu1)) {
        throw ParameterError("--trivial cannot be combined with --theta / --nu1");
    }
}

std::vector<std::pair<std::string, std::string>> RunConfig::entries() const {
    auto opt = [](const std::optional<double>& v) { return v ? fmt17(*v) : std::string(); };
    return {
        {"theta", opt(theta)},
        {"nu1", opt(nu1)},
        {"theta-range", fmt17(theta_lo) + "," + fmt17(theta_hi)},
        {"theta-count", std::to_string(theta_count)},
        {"nu1-count", std::to_string(nu1_count)},
        {"grid", std::to_string(grid.nx) + "," + std::to_string(grid.ny)},
        {"range", fmt17(grid.x0) + "," + fmt17(grid.x1) + "," + fmt17(grid.y0) + "," +
                      fmt17(grid.y1)},
        {"scheme", scheme ? std::string(to_string(*scheme)) : "auto"},
        {"tol-analytic", fmt17(tol.analytic)},
        {"tol-fd", fmt17(tol.fd)},
        {"tol-manifold", fmt17(tol.on_manifold)},
        {"fd-step", fmt17(fd_step)},
        {"metric-step", fmt17(metric_step)},
        {"out", out},
        {"format", format ? std::string(to_string(*format)) : "auto"},
        {"pole", std::to_string(pole)},
        {"trivial", trivial ? std::string(to_string(*trivial)) : "none"},
        {"level", fmt17(level)},
        {"input", input},
        {"degrees", degrees ? "true" : "false"},
    };
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot read config file " + path);
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string_view s = trim(line);
        if (s.empty() || s.front() == '#') continue;
        const auto eq = s.find('=');
        if (eq == std::string_view::npos) {
            throw ParameterError(path + ":" + std::to_string(lineno) + ": expected key=value");
        }
        out.emplace_back(std::string(trim(s.substr(0, eq))), std::string(trim(s.substr(eq + 1))));
    }
    return out;
}

}  // namespace casurf
