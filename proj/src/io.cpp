#include "casurf/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <utility>

#include "casurf/ambient.hpp"
#include "casurf/errors.hpp"

namespace casurf {

namespace {

const char* const kCsvHeader = "x,y,F1,F2,F3,F4,F5";

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(std::string_view s, std::size_t line) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ParameterError("csv5 line " + std::to_string(line) + ": bad number '" +
                             std::string(s) + "'");
    }
    return v;
}

// Sorted distinct coordinates, checked for uniform spacing.
std::vector<double> lattice_axis(std::vector<double> v, const char* axis) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    if (v.size() < 2) {
        throw ParameterError(std::string("csv5: need at least two distinct ") + axis + " values");
    }
    const double h = (v.back() - v.front()) / static_cast<double>(v.size() - 1);
    for (std::size_t k = 1; k < v.size(); ++k) {
        if (std::abs(v[k] - v[k - 1] - h) > 1e-9 * std::max(1.0, h)) {
            throw ParameterError(std::string("csv5: ") + axis + " values are not uniformly spaced");
        }
    }
    return v;
}

}  // namespace

Mesh sample_mesh(const ImmersionFn& f, const GridSpec& grid) {
    grid.validate(2);
    Mesh m{grid, {}};
    m.points.reserve(grid.size());
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) m.points.push_back(f(grid.x(i), grid.y(j)));
    }
    return m;
}

void write_csv5(std::ostream& os, const Mesh& mesh) {
    os << kCsvHeader << '\n';
    for (int j = 0; j < mesh.grid.ny; ++j) {
        for (int i = 0; i < mesh.grid.nx; ++i) {
            os << fmt17(mesh.grid.x(i)) << ',' << fmt17(mesh.grid.y(j));
            const Point5& p = mesh.at(i, j);
            for (int c = 0; c < 5; ++c) os << ',' << fmt17(p[c]);
            os << '\n';
        }
    }
}

Mesh read_csv5(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ParameterError("csv5: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCsvHeader) throw ParameterError("csv5: expected header " + std::string(kCsvHeader));

    struct Row {
        double x, y;
        Vec5 F;
    };
    std::vector<Row> rows;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        std::array<double, 7> v{};
        std::size_t field = 0, start = 0;
        for (;;) {
            const std::size_t comma = line.find(',', start);
            if (field >= v.size()) {
                throw ParameterError("csv5 line " + std::to_string(lineno) + ": too many fields");
            }
            v[field++] = parse_double(std::string_view(line).substr(start, comma - start), lineno);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (field != v.size()) {
            throw ParameterError("csv5 line " + std::to_string(lineno) + ": expected 7 fields");
        }
        Vec5 F;
        F << v[2], v[3], v[4], v[5], v[6];
        rows.push_back({v[0], v[1], F});
    }

    std::vector<double> xs, ys;
    for (const auto& r : rows) {
        xs.push_back(r.x);
        ys.push_back(r.y);
    }
    const auto ux = lattice_axis(std::move(xs), "x");
    const auto uy = lattice_axis(std::move(ys), "y");

    Mesh m;
    m.grid.nx = static_cast<int>(ux.size());
    m.grid.ny = static_cast<int>(uy.size());
    m.grid.x0 = ux.front();
    m.grid.x1 = ux.back();
    m.grid.y0 = uy.front();
    m.grid.y1 = uy.back();
    if (rows.size() != m.grid.size()) {
        throw ParameterError("csv5: " + std::to_string(rows.size()) + " rows do not fill a " +
                             std::to_string(m.grid.nx) + "x" + std::to_string(m.grid.ny) +
                             " lattice");
    }
    std::vector<bool> seen(m.grid.size(), false);
    m.points.resize(m.grid.size());
    for (const auto& r : rows) {
        const int i = static_cast<int>(std::lower_bound(ux.begin(), ux.end(), r.x) - ux.begin());
        const int j = static_cast<int>(std::lower_bound(uy.begin(), uy.end(), r.y) - uy.begin());
        const std::size_t k = m.grid.index(i, j);
        if (seen[k]) {
            throw ParameterError("csv5: duplicate node (" + fmt17(r.x) + ", " + fmt17(r.y) + ")");
        }
        seen[k] = true;
        m.points[k] = Point5(r.F);
    }
    return m;
}

ImmersionFn sampled_immersion(Mesh mesh, std::string label) {
    const Lattice lat{mesh.grid.x0, mesh.grid.y0, mesh.grid.hx(), mesh.grid.hy(), mesh.grid.nx,
                      mesh.grid.ny};
    auto lookup = [mesh = std::move(mesh)](double x, double y) {
        const auto& g = mesh.grid;
        const double fi = (x - g.x0) / g.hx();
        const double fj = (y - g.y0) / g.hy();
        const long i = std::lround(fi), j = std::lround(fj);
        if (i < 0 || j < 0 || i >= g.nx || j >= g.ny || std::abs(fi - i) > 1e-6 ||
            std::abs(fj - j) > 1e-6) {
            throw DomainError("sampled mesh has no node at (" + fmt17(x) + ", " + fmt17(y) + ")");
        }
        return mesh.at(static_cast<int>(i), static_cast<int>(j));
    };
    return ImmersionFn(std::move(lookup), std::move(label)).with_lattice(lat);
}

void write_obj_stereo(std::ostream& os, const Mesh& mesh, int pole_index) {
    const GridSpec& g = mesh.grid;
    std::ostringstream body;
    body << "# stereographic image from pole " << pole_index << ", " << g.nx << "x" << g.ny
         << " nodes\n";
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const std::size_t k = g.index(i, j);
            StereoImage s;
            try {
                s = stereographic(mesh.points[k], pole_index, kPoleTol, k);
            } catch (const ProjectionError& e) {
                throw ProjectionError("node (x=" + fmt17(g.x(i)) + ", y=" + fmt17(g.y(j)) +
                                          "): " + e.what(),
                                      k);
            }
            body << "v " << fmt17(s.xyz.x()) << ' ' << fmt17(s.xyz.y()) << ' ' << fmt17(s.xyz.z())
                 << "\n# t " << fmt17(s.t) << '\n';
        }
    }
    for (int j = 0; j + 1 < g.ny; ++j) {
        for (int i = 0; i + 1 < g.nx; ++i) {
            const std::size_t a = g.index(i, j) + 1, b = g.index(i + 1, j) + 1;
            const std::size_t c = g.index(i + 1, j + 1) + 1, d = g.index(i, j + 1) + 1;
            body << "f " << a << ' ' << b << ' ' << c << "\nf " << a << ' ' << c << ' ' << d
                 << '\n';
        }
    }
    os << body.str();
}

}  // namespace casurf
