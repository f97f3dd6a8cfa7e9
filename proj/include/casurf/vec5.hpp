#pragma once

#include <Eigen/Core>

namespace casurf {

/// Tangent vector of E^5 in the coordinates (x1, x2, x3, x4, t).
using Vec5 = Eigen::Matrix<double, 5, 1>;
using Mat2 = Eigen::Matrix2d;
using Mat5 = Eigen::Matrix<double, 5, 5>;

/// Unit field along the R factor.
inline Vec5 dt_vector() {
    Vec5 v = Vec5::Zero();
    v[4] = 1.0;
    return v;
}

/// A point of E^5. The first four coordinates belong to the sphere factor,
/// the fifth is the height t along R.
class Point5 {
public:
    Point5() : coords_(Vec5::Zero()) {}
    explicit Point5(const Vec5& coords) : coords_(coords) {}
    Point5(double x1, double x2, double x3, double x4, double t) {
        coords_ << x1, x2, x3, x4, t;
    }

    const Vec5& coords() const { return coords_; }
    double operator[](int i) const { return coords_[i]; }
    double t() const { return coords_[4]; }

    /// Unit normal of S^3 x R inside E^5 at this point.
    Vec5 position_normal() const {
        Vec5 n = coords_;
        n[4] = 0.0;
        return n;
    }

    /// |x1^2 + x2^2 + x3^2 + x4^2 - 1|
    double sphere_residual() const {
        return std::abs(coords_.head<4>().squaredNorm() - 1.0);
    }

private:
    Vec5 coords_;
};

}  // namespace casurf
