#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "casurf/grid.hpp"
#include "casurf/immersion.hpp"
#include "casurf/vec5.hpp"

namespace casurf {

/// Immersion values on a grid, row-major with x fastest.
struct Mesh {
    GridSpec grid;
    std::vector<Point5> points;

    const Point5& at(int i, int j) const { return points[grid.index(i, j)]; }
};

/// Evaluates f at every node of the grid.
Mesh sample_mesh(const ImmersionFn& f, const GridSpec& grid);

/// Header `x,y,F1,F2,F3,F4,F5`, then one row per node with 17 significant digits.
void write_csv5(std::ostream& os, const Mesh& mesh);

/// Reads a csv5 table whose (x, y) columns form a complete uniform lattice,
/// in any row order. Throws ParameterError on malformed input.
Mesh read_csv5(std::istream& is);

/// The mesh as an immersion that can only be evaluated at its nodes
/// (DomainError elsewhere). Jets come from finite differences on the lattice.
ImmersionFn sampled_immersion(Mesh mesh, std::string label = "sampled mesh");

/// Wavefront obj of the stereographic image from the given pole, two
/// triangles per cell, with the t coordinate as a `# t` comment after each
/// vertex. Throws ProjectionError naming the first node that hits the pole;
/// nothing is written in that case.
void write_obj_stereo(std::ostream& os, const Mesh& mesh, int pole_index);

}  // namespace casurf
