#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "casurf/vec5.hpp"

namespace casurf {

enum class JetScheme { Analytic, DualForward, FiniteDifference };

std::string_view to_string(JetScheme s);
/// Accepts "analytic", "dual" and "fd". Throws ParameterError otherwise.
JetScheme parse_jet_scheme(std::string_view s);

/// Value, first and second partials of an immersion at a parameter point.
struct Jet2 {
    Point5 F;
    Vec5 Fx = Vec5::Zero();
    Vec5 Fy = Vec5::Zero();
    Vec5 Fxx = Vec5::Zero();
    Vec5 Fxy = Vec5::Zero();
    Vec5 Fyy = Vec5::Zero();
    JetScheme source = JetScheme::Analytic;
};

/// Rectangular lattice an immersion is sampled on. Sampled immersions can only
/// be evaluated at lattice nodes, so every stencil uses the lattice spacing.
struct Lattice {
    double x0 = 0.0, y0 = 0.0;
    double hx = 1.0, hy = 1.0;
    int nx = 0, ny = 0;
};

/// An evaluable map (x, y) -> S^3 x R with optional derivative channels.
class ImmersionFn {
public:
    using EvalFn = std::function<Point5(double, double)>;
    using JetFn = std::function<Jet2(double, double)>;

    explicit ImmersionFn(EvalFn eval, std::string label = "immersion")
        : eval_(std::move(eval)), label_(std::move(label)) {}

    ImmersionFn& with_analytic(JetFn fn) {
        analytic_ = std::move(fn);
        return *this;
    }
    ImmersionFn& with_dual(JetFn fn) {
        dual_ = std::move(fn);
        return *this;
    }
    ImmersionFn& with_lattice(const Lattice& lattice) {
        lattice_ = lattice;
        return *this;
    }

    Point5 operator()(double x, double y) const { return eval_(x, y); }

    bool has_analytic() const { return static_cast<bool>(analytic_); }
    bool has_dual() const { return static_cast<bool>(dual_); }
    const JetFn& analytic() const { return analytic_; }
    const JetFn& dual() const { return dual_; }
    const std::optional<Lattice>& lattice() const { return lattice_; }
    const std::string& label() const { return label_; }

    /// Dual-forward when available, then analytic, then finite differences.
    JetScheme preferred_scheme() const {
        if (dual_) return JetScheme::DualForward;
        if (analytic_) return JetScheme::Analytic;
        return JetScheme::FiniteDifference;
    }

private:
    EvalFn eval_;
    JetFn analytic_;
    JetFn dual_;
    std::optional<Lattice> lattice_;
    std::string label_;
};

}  // namespace casurf
