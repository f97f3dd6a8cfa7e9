#include "casurf/grid.hpp"

#include <cmath>
#include <sstream>

#include "casurf/errors.hpp"

namespace casurf {

void GridSpec::validate(int min_nodes) const {
    if (nx < min_nodes || ny < min_nodes) {
        std::ostringstream os;
        os << "grid " << nx << "x" << ny << " needs at least " << min_nodes
           << " nodes per axis";
        throw ParameterError(os.str());
    }
    if (!std::isfinite(x0) || !std::isfinite(x1) || !std::isfinite(y0) || !std::isfinite(y1) ||
        !(x1 > x0) || !(y1 > y0)) {
        throw ParameterError("grid ranges must be finite and nonempty");
    }
}

GridSpec local_patch(double x, double y, double hx, double hy, int radius) {
    GridSpec g;
    g.nx = g.ny = 2 * radius + 1;
    g.x0 = x - radius * hx;
    g.x1 = x + radius * hx;
    g.y0 = y - radius * hy;
    g.y1 = y + radius * hy;
    return g;
}

}  // namespace casurf
