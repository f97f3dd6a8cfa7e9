#pragma once

#include <cstddef>

#include <Eigen/Core>

#include "casurf/vec5.hpp"

namespace casurf {

inline constexpr double kOnManifoldTol = 1e-10;
inline constexpr double kPoleTol = 1e-8;
inline constexpr int kDefaultPole = 4;

bool on_manifold(const Point5& p, double tol = kOnManifoldTol);

/// Throws DomainError when p is farther than tol from S^3 x R.
void require_on_manifold(const Point5& p, double tol = kOnManifoldTol);

/// Component of X tangent to the S^3 factor at base: drops the dt part and
/// the radial part along (x1, x2, x3, x4, 0).
Vec5 sphere_projection(const Vec5& X, const Point5& base);

/// <R(X,Y)Z, W> for the product metric of S^3(1) x R.
double ambient_curvature(const Vec5& X, const Vec5& Y, const Vec5& Z, const Vec5& W,
                         const Point5& base);

struct StereoImage {
    Eigen::Vector3d xyz;
    double t = 0.0;
};

/// Stereographic projection of the sphere part from the pole e_{pole_index}
/// (1-based). The remaining three coordinates keep their order. The height
/// is passed through. sample_index is only used to label a pole collision.
StereoImage stereographic(const Point5& p, int pole_index = kDefaultPole,
                          double pole_tol = kPoleTol, std::size_t sample_index = 0);

}  // namespace casurf
