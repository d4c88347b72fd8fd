#pragma once

#include <cmath>
#include <sstream>
#include <vector>

#include "dtori/quaternion.hpp"
#include "dtori/surface.hpp"
#include "dtori/torus.hpp"

namespace dtori {

/// Revolution decomposition fhat = e^{2 pi j u x} kappa0 + i e^{2 pi j v y} kappa1.
/// kappa0 is real; kappa1 lives in Span{1, j}, written here as a complex
/// number under 1 <-> 1, j <-> i.
struct RevolutionProfile {
    double kappa0;
    Complex kappa1;
};

struct MeanCurvatureSpecial {
    double H0;    // at y = 0
    double Hhalf; // at the profile half-period y = 1/(2 n v)
    bool cmc;
};

/// Closed-form n-bulge Darboux transform of the rectangular torus (u, v):
///
///   fhat = e^{j beta/2} (tau + sigma) g,   sigma = -(j/u + k/v)/(2 pi),
///   tau = tau0 + i tau1 with tau0, tau1 functions of y only.
///
/// Valid for u >= v sqrt(n^2 - 1); at equality the transform degenerates to
/// a rectangular torus with constant mean curvature.
class BulgeTorusFamily {
  public:
    BulgeTorusFamily(double u, double v, int n) : torus_(u, v), u_(u), v_(v), n_(n) {
        if (n < 2) throw Error("bulge family needs n >= 2");
        const double nn = static_cast<double>(n) * n;
        const double disc = u * u + v * v * (1.0 - nn);
        const double boundary = v * std::sqrt(nn - 1.0);
        if (disc < 0.0 && std::abs(u - boundary) > 1e-9 * v)
            throw BelowThreshold("u must be >= v*sqrt(n^2-1) = " + detail::num(boundary));
        s_ = std::sqrt(std::max(0.0, disc));
        r_ = std::hypot(u, v);
        rho_ = u * v / r_;
        cmc_ = std::abs(u - boundary) < 1e-9 * v;
        q_tilde_ = 2.0 * r_ * r_ - nn * v * v;
        r0_tilde_ = 2.0 * u * u + v * v * (1.0 - nn) * (2.0 - nn);
        r1_tilde_ = 2.0 * u * u + v * v * (1.0 - nn);
        certify_denominator();
    }

    /// Same family with parameters rescaled to (u/v, 1); the surfaces agree
    /// up to the reparametrization z -> v z.
    static BulgeTorusFamily normalized(double u, double v, int n) {
        return BulgeTorusFamily(u / v, 1.0, n);
    }

    double u() const { return u_; }
    double v() const { return v_; }
    int n() const { return n_; }
    double s() const { return s_; }
    double r() const { return r_; }
    double rho() const { return rho_; }
    double q_tilde() const { return q_tilde_; }
    double r0_tilde() const { return r0_tilde_; }
    double r1_tilde() const { return r1_tilde_; }
    bool is_cmc() const { return cmc_; }
    const RectangularTorus& base_torus() const { return torus_; }

    /// Period of the profile functions in y (the lattice period is 1/v = n of these).
    double profile_period() const { return 1.0 / (n_ * v_); }

    /// Denominator R^(y) = u^2(1+n^2) + v^2(1-n^2) + (1-n^2)(s^2 cos yt - s v n sin yt),
    /// yt = 2 pi n v y.  Positive for all y on the valid parameter range.
    double rhat(double y) const {
        const double yt = 2.0 * kPi * n_ * v_ * y;
        return rhat_const() + amp_cos() * std::cos(yt) + amp_sin() * std::sin(yt);
    }

    double rhat_prime(double y) const {
        const double yt = 2.0 * kPi * n_ * v_ * y;
        return (2.0 * kPi * n_ * v_) * (-amp_cos() * std::sin(yt) + amp_sin() * std::cos(yt));
    }

    double rhat_min() const {
        return rhat_const() - std::hypot(amp_cos(), amp_sin());
    }

    /// tau0(y) = j u n^2 / (pi R^), in Span{1, j} as a complex number.
    Complex tau0(double y) const { return {0.0, u_ * n_ * n_ / (kPi * rhat(y))}; }

    Complex tau0_prime(double y) const {
        const double R = rhat(y);
        return {0.0, -u_ * n_ * n_ * rhat_prime(y) / (kPi * R * R)};
    }

    /// tau1(y) = [n (s n v cos yt + s^2 sin yt) + j (s^2 + s^2 cos yt - s v n sin yt)] / (pi v R^).
    Complex tau1(double y) const {
        const double yt = 2.0 * kPi * n_ * v_ * y;
        const double re = n_ * (s_ * n_ * v_ * std::cos(yt) + s_ * s_ * std::sin(yt));
        const double im = s_ * s_ + s_ * s_ * std::cos(yt) - s_ * v_ * n_ * std::sin(yt);
        return Complex{re, im} / (kPi * v_ * rhat(y));
    }

    Complex tau1_prime(double y) const {
        const double yt = 2.0 * kPi * n_ * v_ * y;
        const double w = 2.0 * kPi * n_ * v_;
        const double R = rhat(y), Rp = rhat_prime(y);
        const Complex num{n_ * (s_ * n_ * v_ * std::cos(yt) + s_ * s_ * std::sin(yt)),
                          s_ * s_ + s_ * s_ * std::cos(yt) - s_ * v_ * n_ * std::sin(yt)};
        const Complex nump{n_ * w * (-s_ * n_ * v_ * std::sin(yt) + s_ * s_ * std::cos(yt)),
                           w * (-s_ * s_ * std::sin(yt) - s_ * v_ * n_ * std::cos(yt))};
        return (nump * R - num * Rp) / (kPi * v_ * R * R);
    }

    /// kappa0(y) = rho (1/u - 2 u n^2 / R^), the real profile of the x-circle.
    double kappa0(double y) const {
        return rho_ * (1.0 / u_ - 2.0 * kPi * tau0(y).imag());
    }

    double kappa0_prime(double y) const { return -2.0 * kPi * rho_ * tau0_prime(y).imag(); }

    Complex kappa1(double y) const {
        const Complex t1 = tau1(y);
        return {rho_ * (1.0 / v_ - 2.0 * kPi * t1.imag()), 2.0 * kPi * rho_ * t1.real()};
    }

    Complex kappa1_prime(double y) const {
        const Complex t1p = tau1_prime(y);
        return {-2.0 * kPi * rho_ * t1p.imag(), 2.0 * kPi * rho_ * t1p.real()};
    }

    RevolutionProfile profile(double y) const { return {kappa0(y), kappa1(y)}; }

    /// fhat(x, y) via the frame form e^{j beta/2} (tau + sigma) g.  The
    /// revolution decomposition through kappa0/kappa1 is an independent
    /// algebraic route, compared against this one in the tests.
    Quaternion eval(double x, double y) const {
        const Quaternion tau_hat = tau_hat_at(y);
        const double beta2 = kPi * (u_ * x - v_ * y);
        return exp_j(beta2) * tau_hat * torus_.g(x, y);
    }

    Partials partials(double x, double y) const {
        const Quaternion tau_hat = tau_hat_at(y);
        const Quaternion tau_hat_p = embed_j(tau0_prime(y)) + kI * embed_j(tau1_prime(y));
        const double beta2 = kPi * (u_ * x - v_ * y);
        const Quaternion F1 = exp_j(beta2);
        const Quaternion g = torus_.g(x, y);
        const Quaternion core = F1 * tau_hat * g;
        Partials p;
        p.fx = kPi * u_ * (kJ * core) + kPi * u_ * (F1 * tau_hat * (kJ * g));
        p.fy = -kPi * v_ * (kJ * core) + F1 * tau_hat_p * g +
               kPi * v_ * (F1 * tau_hat * (kJ * g));
        return p;
    }

    ParamSurface surface() const {
        ParamSurface s;
        s.eval = [fam = *this](double x, double y) { return fam.eval(x, y); };
        s.exact_partials = [fam = *this](double x, double y) { return fam.partials(x, y); };
        s.period_x = 1.0 / u_;
        s.period_y = 1.0 / v_;
        s.target = Target::S3;
        return s;
    }

    /// Critical points of kappa0 in one lattice period:
    /// y_k = (arctan(-v n / s)/pi + k) / (2 n v), k = 0 .. 2n-1.
    /// Throws DegenerateCMC at the boundary u = v sqrt(n^2-1), where kappa0
    /// is constant.
    std::vector<double> extrema() const {
        if (cmc_) throw DegenerateCMC{};
        std::vector<double> ys;
        ys.reserve(2 * n_);
        const double base = std::atan(-v_ * n_ / s_) / kPi;
        for (int k = 0; k < 2 * n_; ++k)
            ys.push_back((base + k) / (2.0 * n_ * v_));
        return ys;
    }

    /// Closed-form mean curvature in S^3:
    ///   H^ = Im(tau0/v - tau1/u) / (pi |tau|^2) + (v/u + u/v) / (2 q),
    ///   q = 1 - 2 u^2 n^2 / R^.
    double mean_curvature_closed(double y) const {
        const Complex t0 = tau0(y), t1 = tau1(y);
        const double tau2 = std::norm(t0) + std::norm(t1);
        const double q = q_factor(y);
        if (std::abs(q) < 1e-14) throw VanishingQ{};
        return (t0 / v_ - t1 / u_).imag() / (kPi * tau2) +
               (v_ / u_ + u_ / v_) / (2.0 * q);
    }

    MeanCurvatureSpecial mean_curvature_special() const {
        return {mean_curvature_closed(0.0),
                mean_curvature_closed(0.5 * profile_period()), cmc_};
    }

    double q_factor(double y) const { return 1.0 - 2.0 * u_ * u_ * n_ * n_ / rhat(y); }

    /// Independent closed-form curvature route through the transformed frame:
    ///   H^ = -T^-1 N^ + fhat_x^-1 (T r_x + N^ fhat_x) T^-1,  H_S3 = Re(fhat H^),
    /// with N^ = e^{j beta/2} tau i tau^-1 e^{-j beta/2}, fhat_x = e^{j beta/2} q g
    /// and r_x = pi g^-1 j (u i - v) g.
    double hatH_via_frame(double x, double y) const {
        const Complex t0 = tau0(y), t1 = tau1(y);
        const Quaternion tau = embed_j(t0) + kI * embed_j(t1);
        const double q = q_factor(y);
        if (tau.norm2() < 1e-28 || std::abs(q) < 1e-14) throw DegeneratePoint{};
        const double beta2 = kPi * (u_ * x - v_ * y);
        const Quaternion F1 = exp_j(beta2);
        const Quaternion g = torus_.g(x, y);
        const Quaternion T = F1 * tau * g;
        const Quaternion Nh = F1 * tau * kI * tau.inverse() * F1.conj();
        const Quaternion fhx = F1 * (q * g);
        const Quaternion rx = kPi * (g.inverse() * (kJ * embed_i(Complex{-v_, u_})) * g);
        const Quaternion H =
            -(T.inverse() * Nh) + fhx.inverse() * (T * rx + Nh * fhx) * T.inverse();
        return (eval(x, y) * H).re();
    }

  private:
    double rhat_const() const {
        return u_ * u_ * (1.0 + n_ * n_) + v_ * v_ * (1.0 - n_ * n_);
    }
    double amp_cos() const { return (1.0 - n_ * n_) * s_ * s_; }
    double amp_sin() const { return -(1.0 - n_ * n_) * s_ * v_ * n_; }

    Quaternion tau_hat_at(double y) const {
        const Complex sigma0{0.0, -1.0 / (2.0 * kPi * u_)};
        const Complex sigma1{0.0, -1.0 / (2.0 * kPi * v_)};
        return embed_j(tau0(y) + sigma0) + kI * embed_j(tau1(y) + sigma1);
    }

    // R^ is a degree-one trigonometric polynomial, so a dense grid plus
    // refinement around near-minimal samples bounds its minimum.
    void certify_denominator() const {
        constexpr int kGrid = 4096;
        const double period = 1.0 / (n_ * v_);
        double gmax = 0.0;
        std::vector<double> vals(kGrid);
        for (int i = 0; i < kGrid; ++i) {
            vals[i] = rhat(i * period / kGrid);
            gmax = std::max(gmax, vals[i]);
        }
        for (int i = 0; i < kGrid; ++i) {
            if (vals[i] >= 0.01 * gmax) continue;
            const double lo = (i - 1) * period / kGrid, hi = (i + 1) * period / kGrid;
            for (int k = 0; k <= 256; ++k) {
                const double y = lo + (hi - lo) * k / 256.0;
                if (rhat(y) <= 0.0) {
                    std::ostringstream os;
                    os << "denominator R^ is not positive at y = " << y;
                    throw VanishingDenominator(os.str());
                }
            }
        }
        if (gmax <= 0.0) throw VanishingDenominator("denominator R^ is not positive");
    }

    RectangularTorus torus_;
    double u_, v_;
    int n_;
    double s_, r_, rho_;
    double q_tilde_, r0_tilde_, r1_tilde_;
    bool cmc_;
};

} // namespace dtori
