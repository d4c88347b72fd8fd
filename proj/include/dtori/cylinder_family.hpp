#pragma once

#include <cmath>

#include "dtori/cylinder.hpp"
#include "dtori/diffgeo.hpp"
#include "dtori/quaternion.hpp"
#include "dtori/surface.hpp"

namespace dtori {

struct CylinderTau {
    double tau0;
    double tau1;
    double rhat;
};

/// Closed-form Darboux transform of the standard cylinder (u, a <= u):
///
///   fhat = 2 (-e^{2 pi j u x} tau0 + k tau1)   in Span{1, j, k},
///
/// with profile functions of yt = 2 pi a y
///   R^  = 1 - (1 - a^2/u^2) cos yt + (a/u^2) sqrt(u^2-a^2) sin yt,
///   tau0 = (1/u)(-1/2 + 1/R^),
///   tau1 = pi y + (1/(a R^)) (sin yt (1 - a^2/u^2) + cos yt (a/u^2) sqrt(u^2-a^2)).
///
/// Periodic in x with period 1/u; translational in y:
/// fhat(x, y + 1/a) = fhat(x, y) + (2 pi / a) k.  At u = a it is the round
/// cylinder -(1/u) e^{2 pi j u x} + 2 pi k y.
class CylinderFamily {
  public:
    CylinderFamily(double u, double a) : u_(u), a_(a) {
        if (!(u > 0.0) || !(a > 0.0)) throw Error("cylinder family needs u > 0 and a > 0");
        if (a > u * (1.0 + 1e-12)) throw BelowThreshold("a must be <= u = " + detail::num(u));
        sp_ = std::sqrt(std::max(0.0, u * u - a * a));
    }

    double u() const { return u_; }
    double a() const { return a_; }
    double sqrt_u2_a2() const { return sp_; }
    bool is_round() const { return sp_ == 0.0; }

    double rhat(double y) const {
        const double yt = 2.0 * kPi * a_ * y;
        return 1.0 - c1() * std::cos(yt) + c2() * std::sin(yt);
    }

    double rhat_prime(double y) const {
        const double yt = 2.0 * kPi * a_ * y;
        return 2.0 * kPi * a_ * (c1() * std::sin(yt) + c2() * std::cos(yt));
    }

    double rhat_min() const { return 1.0 - std::hypot(c1(), c2()); }

    double tau0(double y) const { return (1.0 / u_) * (-0.5 + 1.0 / rhat(y)); }

    double tau0_prime(double y) const {
        const double R = rhat(y);
        return -rhat_prime(y) / (u_ * R * R);
    }

    double tau1(double y) const {
        const double yt = 2.0 * kPi * a_ * y;
        return kPi * y + (c1() * std::sin(yt) + c2() * std::cos(yt)) / (a_ * rhat(y));
    }

    double tau1_prime(double y) const {
        const double yt = 2.0 * kPi * a_ * y;
        const double R = rhat(y), Rp = rhat_prime(y);
        const double W = c1() * std::sin(yt) + c2() * std::cos(yt);
        const double Wp = 2.0 * kPi * a_ * (c1() * std::cos(yt) - c2() * std::sin(yt));
        return kPi + (Wp * R - W * Rp) / (a_ * R * R);
    }

    CylinderTau tau(double y) const { return {tau0(y), tau1(y), rhat(y)}; }

    Quaternion eval(double x, double y) const {
        const double t0 = tau0(y);
        const double th = 2.0 * kPi * u_ * x;
        return {-2.0 * t0 * std::cos(th), 0.0, -2.0 * t0 * std::sin(th), 2.0 * tau1(y)};
    }

    Partials partials(double x, double y) const {
        const double th = 2.0 * kPi * u_ * x;
        const double t0 = tau0(y);
        Partials p;
        p.fx = {4.0 * kPi * u_ * t0 * std::sin(th), 0.0, -4.0 * kPi * u_ * t0 * std::cos(th), 0.0};
        p.fy = {-2.0 * tau0_prime(y) * std::cos(th), 0.0, -2.0 * tau0_prime(y) * std::sin(th),
                2.0 * tau1_prime(y)};
        return p;
    }

    ParamSurface surface() const {
        ParamSurface s;
        s.eval = [fam = *this](double x, double y) { return fam.eval(x, y); };
        s.exact_partials = [fam = *this](double x, double y) { return fam.partials(x, y); };
        s.period_x = 1.0 / u_;
        s.period_y = 1.0 / a_;
        s.y_shift = (2.0 * kPi / a_) * kK;
        s.target = Target::R3;
        return s;
    }

    /// Spread of the numerically sampled mean curvature over one profile
    /// period; the transform has constant mean curvature only for u = a.
    double cmc_spread(int samples = 9) const {
        const ParamSurface s = surface();
        double lo = 0.0, hi = 0.0;
        for (int i = 0; i < samples; ++i) {
            const double y = i / (a_ * samples);
            const double H = mean_curvature_num(s, 0.1 / u_, y);
            if (i == 0) lo = hi = H;
            lo = std::min(lo, H);
            hi = std::max(hi, H);
        }
        return hi - lo;
    }

    bool cmc_test() const { return cmc_spread() < 1e-5; }

  private:
    double c1() const { return 1.0 - a_ * a_ / (u_ * u_); }
    double c2() const { return a_ * sp_ / (u_ * u_); }

    double u_, a_, sp_;
};

} // namespace dtori
