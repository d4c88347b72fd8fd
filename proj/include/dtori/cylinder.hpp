#pragma once

#include <cmath>

#include "dtori/quaternion.hpp"
#include "dtori/surface.hpp"
#include "dtori/torus.hpp"

namespace dtori {

/// Standard cylinder f(x, y) = (1/u) e^{2 pi j u x} + 2 pi k y in
/// Span{1, j, k}, with harmonic normals N = e^{2 pi j u x} i and
/// R = i e^{2 pi j u x}, and Lagrangian angle beta0 = u.
class StandardCylinder {
  public:
    explicit StandardCylinder(double u) : u_(u) {
        if (!(u > 0.0)) throw Error("standard cylinder needs u > 0");
    }

    double u() const { return u_; }
    double beta(double x) const { return 2.0 * kPi * u_ * x; }

    Quaternion eval(double x, double y) const {
        return (1.0 / u_) * exp_j(2.0 * kPi * u_ * x) + 2.0 * kPi * y * kK;
    }

    Quaternion g(double x) const { return 2.0 * kPi * (kJ * exp_j(kPi * u_ * x)); }

    TorusFrame frame(double x, double y) const {
        (void)y;
        TorusFrame fr;
        fr.beta = beta(x);
        fr.g = g(x);
        fr.N = exp_j(fr.beta) * kI;
        fr.R = kI * exp_j(fr.beta);
        const Quaternion half = exp_j(fr.beta / 2.0);
        fr.fx = half * fr.g;
        fr.fy = half * kI * fr.g;
        return fr;
    }

    Partials partials(double x, double y) const {
        const TorusFrame fr = frame(x, y);
        return {fr.fx, fr.fy};
    }

    ParamSurface surface() const {
        ParamSurface s;
        s.eval = [c = *this](double x, double y) { return c.eval(x, y); };
        s.exact_partials = [c = *this](double x, double y) { return c.partials(x, y); };
        s.period_x = 1.0 / u_;
        s.period_y = 1.0 / u_; // translational: f(x, y + 1/u) = f(x, y) + (2 pi / u) k
        s.y_shift = (2.0 * kPi / u_) * kK;
        s.target = Target::R3;
        return s;
    }

  private:
    double u_;
};

/// Spectral data of the cylinder transform for a frequency parameter a:
/// B = (u + a i - sqrt(u^2 - a^2))/2 and the two monochromatic sections
/// alpha_pm = (1/u) e^{j pi u x} (u +- j a - k sqrt(u^2-a^2)) e^{pi i (sqrt(u^2-a^2) x -+ a y)}.
struct CylinderSections {
    Complex B;
    Section plus;
    Section minus;
};

inline CylinderSections cylinder_sections(const StandardCylinder& C, double a) {
    const double u = C.u();
    if (!(a > 0.0)) throw Error("cylinder sections need a > 0");
    if (a > u) throw BelowThreshold("a must be <= u = " + detail::num(u));
    const double sp = std::sqrt(std::max(0.0, u * u - a * a));

    auto make = [&](double sign) {
        const Quaternion P = (Quaternion{u, 0, 0, 0} + sign * a * kJ - sp * kK) / u;
        const Complex gamma{sp / 2.0, -sign * a / 2.0}; // e^{pi i (sp x - sign a y)}
        Section s;
        s.eval = [=](double x, double y) {
            return exp_j(kPi * u * x) * P * embed_i(e_gamma_c(gamma, {x, y}));
        };
        s.dx = [=](double x, double y) {
            const Quaternion E = embed_i(e_gamma_c(gamma, {x, y}));
            return exp_j(kPi * u * x) *
                   (kPi * u * (kJ * P) + 2.0 * kPi * gamma.real() * (P * kI)) * E;
        };
        s.dy = [=](double x, double y) {
            const Quaternion E = embed_i(e_gamma_c(gamma, {x, y}));
            return exp_j(kPi * u * x) * (2.0 * kPi * gamma.imag() * (P * kI)) * E;
        };
        return s;
    };

    CylinderSections cs;
    cs.B = Complex{(u - sp) / 2.0, a / 2.0};
    cs.plus = make(+1.0);
    cs.minus = make(-1.0);
    return cs;
}

} // namespace dtori
