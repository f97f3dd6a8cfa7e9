#pragma once

#include <vector>

#include "casurf/diffgeo.hpp"
#include "casurf/grid.hpp"

namespace casurf {

enum class FramePathway { Adapted, ZeroAngle };

/// Jets and frames sampled on a grid, with signs aligned between neighbours.
struct FrameField {
    GridSpec grid;
    std::vector<Jet2> jets;
    std::vector<FrameData> frames;

    const FrameData& frame(int i, int j) const { return frames[grid.index(i, j)]; }
    const Jet2& jet_at(int i, int j) const { return jets[grid.index(i, j)]; }
};

/// Evaluates frames at every node, then sweeps the grid row by row flipping
/// xi / eta so each agrees in sign with its already-visited neighbour.
/// Throws FrameAlignmentError if some neighbouring pair still disagrees
/// after the sweep (grid too coarse for the frame to be tracked).
FrameField build_frame_field(const ImmersionFn& f, const GridSpec& grid, JetScheme scheme,
                             FramePathway pathway = FramePathway::Adapted,
                             double fd_step = kDefaultFdStep);

/// <nabla^perp_T xi, eta> and <nabla^perp_Q xi, eta> at one node.
struct NormalConnectionSample {
    int i = 0, j = 0;
    double along_T = 0.0;
    double along_Q = 0.0;
};

/// Coefficients at every node with a neighbour on each side in both
/// directions. Central differences, with one Richardson level where two
/// neighbours are available.
std::vector<NormalConnectionSample> normal_connection_coeffs(const FrameField& field);

/// <nabla_T T, Q> and <nabla_Q T, Q>; the remaining tangential Christoffel
/// data follow from orthonormality.
struct TangentialConnectionSample {
    int i = 0, j = 0;
    double omega_T = 0.0;
    double omega_Q = 0.0;
};

std::vector<TangentialConnectionSample> tangential_connection(const FrameField& field);

/// max over nu in {xi, eta} and coordinate pairs of
/// |<F_ab, nu> + <d_a nu, F_b>|: second fundamental form from second
/// derivatives against the shape operator from first derivatives of nu.
struct WeingartenSample {
    int i = 0, j = 0;
    double residual = 0.0;
};

std::vector<WeingartenSample> weingarten_residuals(const FrameField& field);

}  // namespace casurf
