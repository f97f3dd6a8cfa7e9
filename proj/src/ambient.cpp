#include "casurf/ambient.hpp"

#include <cmath>
#include <sstream>

#include "casurf/errors.hpp"

namespace casurf {

bool on_manifold(const Point5& p, double tol) {
    return std::isfinite(p.coords().squaredNorm()) && p.sphere_residual() <= tol;
}

void require_on_manifold(const Point5& p, double tol) {
    if (!on_manifold(p, tol)) {
        std::ostringstream os;
        os << "point is off S^3 x R: |x1^2+..+x4^2 - 1| = " << p.sphere_residual()
           << " exceeds " << tol;
        throw DomainError(os.str());
    }
}

Vec5 sphere_projection(const Vec5& X, const Point5& base) {
    require_on_manifold(base);
    const Vec5 n = base.position_normal();
    Vec5 out = X;
    out[4] = 0.0;
    // base is only on the sphere up to tolerance; divide by |n|^2 so the result
    // is exactly orthogonal to n in exact arithmetic.
    out -= (out.dot(n) / n.squaredNorm()) * n;
    out[4] = 0.0;
    return out;
}

double ambient_curvature(const Vec5& X, const Vec5& Y, const Vec5& Z, const Vec5& W,
                         const Point5& base) {
    const Vec5 xs = sphere_projection(X, base);
    const Vec5 ys = sphere_projection(Y, base);
    const Vec5 zs = sphere_projection(Z, base);
    const Vec5 ws = sphere_projection(W, base);
    return xs.dot(ws) * ys.dot(zs) - xs.dot(zs) * ys.dot(ws);
}

StereoImage stereographic(const Point5& p, int pole_index, double pole_tol,
                          std::size_t sample_index) {
    if (pole_index < 1 || pole_index > 4) {
        std::ostringstream os;
        os << "pole index must be in 1..4, got " << pole_index;
        throw ProjectionError(os.str(), sample_index);
    }
    require_on_manifold(p);
    const int k = pole_index - 1;
    Eigen::Vector4d pole = Eigen::Vector4d::Zero();
    pole[k] = 1.0;
    const Eigen::Vector4d s = p.coords().head<4>();
    if ((s - pole).norm() <= pole_tol) {
        std::ostringstream os;
        os << "sample " << sample_index << " lies on the projection pole e" << pole_index;
        throw ProjectionError(os.str(), sample_index);
    }
    const double denom = 1.0 - s[k];
    StereoImage img;
    int out = 0;
    for (int i = 0; i < 4; ++i) {
        if (i != k) img.xyz[out++] = s[i] / denom;
    }
    img.t = p.t();
    return img;
}

}  // namespace casurf
