#pragma once

#include <cmath>

namespace casurf {

/// Truncated second-order Taylor expansion in two variables (x, y).
/// Arithmetic propagates value, gradient and Hessian exactly, so evaluating
/// a closed-form map on seeded inputs yields its full 2-jet.
struct Taylor2 {
    double v = 0.0;
    double dx = 0.0, dy = 0.0;
    double dxx = 0.0, dxy = 0.0, dyy = 0.0;

    Taylor2() = default;
    Taylor2(double value) : v(value) {}  // NOLINT: constants promote implicitly

    static Taylor2 variable_x(double x) {
        Taylor2 t(x);
        t.dx = 1.0;
        return t;
    }
    static Taylor2 variable_y(double y) {
        Taylor2 t(y);
        t.dy = 1.0;
        return t;
    }

    Taylor2& operator+=(const Taylor2& o) {
        v += o.v;
        dx += o.dx;
        dy += o.dy;
        dxx += o.dxx;
        dxy += o.dxy;
        dyy += o.dyy;
        return *this;
    }
    Taylor2& operator-=(const Taylor2& o) {
        v -= o.v;
        dx -= o.dx;
        dy -= o.dy;
        dxx -= o.dxx;
        dxy -= o.dxy;
        dyy -= o.dyy;
        return *this;
    }
    Taylor2& operator*=(const Taylor2& o) {
        Taylor2 r;
        r.v = v * o.v;
        r.dx = dx * o.v + v * o.dx;
        r.dy = dy * o.v + v * o.dy;
        r.dxx = dxx * o.v + 2.0 * dx * o.dx + v * o.dxx;
        r.dxy = dxy * o.v + dx * o.dy + dy * o.dx + v * o.dxy;
        r.dyy = dyy * o.v + 2.0 * dy * o.dy + v * o.dyy;
        return *this = r;
    }

    friend Taylor2 operator+(Taylor2 a, const Taylor2& b) { return a += b; }
    friend Taylor2 operator-(Taylor2 a, const Taylor2& b) { return a -= b; }
    friend Taylor2 operator*(Taylor2 a, const Taylor2& b) { return a *= b; }
    friend Taylor2 operator-(const Taylor2& a) { return Taylor2{} - a; }
};

namespace detail {
// Chain rule for a scalar function with derivatives f0, f1, f2 at a.v.
inline Taylor2 compose(const Taylor2& a, double f0, double f1, double f2) {
    Taylor2 r;
    r.v = f0;
    r.dx = f1 * a.dx;
    r.dy = f1 * a.dy;
    r.dxx = f2 * a.dx * a.dx + f1 * a.dxx;
    r.dxy = f2 * a.dx * a.dy + f1 * a.dxy;
    r.dyy = f2 * a.dy * a.dy + f1 * a.dyy;
    return r;
}
}  // namespace detail

inline Taylor2 sin(const Taylor2& a) {
    const double s = std::sin(a.v), c = std::cos(a.v);
    return detail::compose(a, s, c, -s);
}
inline Taylor2 cos(const Taylor2& a) {
    const double s = std::sin(a.v), c = std::cos(a.v);
    return detail::compose(a, c, -s, -c);
}

}  // namespace casurf
