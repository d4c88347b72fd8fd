#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "dtori/quaternion.hpp"

namespace dtori {

/// Ambient space of a parametrized surface.
enum class Target { S3, R3, R4 };

/// Both first partials of a map at a point.
struct Partials {
    Quaternion fx;
    Quaternion fy;
};

/// A doubly-parametrized map (x, y) -> H.
///
/// `exact_partials` is optional; when present the differential-geometry
/// layer uses it instead of finite differences.  `period_x`/`period_y`
/// describe the fundamental domain.  A cylinder is periodic in x only;
/// its y-period is translational: eval(x, y + period_y) = eval(x, y) + y_shift.
struct ParamSurface {
    std::function<Quaternion(double, double)> eval;
    std::function<Partials(double, double)> exact_partials; // may be empty
    std::optional<double> period_x;
    std::optional<double> period_y;
    Quaternion y_shift{};
    Target target = Target::R4;
};

/// A section of the trivial quaternionic line bundle, with closed-form
/// partials when available (all sections built by this library have them).
struct Section {
    std::function<Quaternion(double, double)> eval;
    std::function<Quaternion(double, double)> dx; // may be empty
    std::function<Quaternion(double, double)> dy; // may be empty

    friend Section operator+(const Section& a, const Section& b) {
        Section s;
        s.eval = [ae = a.eval, be = b.eval](double x, double y) { return ae(x, y) + be(x, y); };
        if (a.dx && b.dx)
            s.dx = [ad = a.dx, bd = b.dx](double x, double y) { return ad(x, y) + bd(x, y); };
        if (a.dy && b.dy)
            s.dy = [ad = a.dy, bd = b.dy](double x, double y) { return ad(x, y) + bd(x, y); };
        return s;
    }

    /// Right multiplication by a constant complex coefficient.
    friend Section operator*(const Section& a, const Complex& m) {
        const Quaternion mq = embed_i(m);
        Section s;
        s.eval = [e = a.eval, mq](double x, double y) { return e(x, y) * mq; };
        if (a.dx) s.dx = [d = a.dx, mq](double x, double y) { return d(x, y) * mq; };
        if (a.dy) s.dy = [d = a.dy, mq](double x, double y) { return d(x, y) * mq; };
        return s;
    }
};

} // namespace dtori
