#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "dtori/quaternion.hpp"
#include "dtori/surface.hpp"

namespace dtori {

/// Frame data of a Hamiltonian stationary torus at a point:
/// df = e^{j beta/2} dz g, with left normal N and right normal R
/// satisfying *df = N df = -df R.
struct TorusFrame {
    double beta;
    Quaternion g;
    Quaternion N;
    Quaternion R;
    Quaternion fx;
    Quaternion fy;
};

/// Product-of-circles torus in S^3 with lattice (1/u)Z + (i/v)Z.
///
/// f(x, y) = rho * ( (1/u) e^{2 pi j u x} + i (1/v) e^{2 pi j v y} ),
/// rho = u v / sqrt(u^2 + v^2), so that |f| = 1.
class RectangularTorus {
  public:
    RectangularTorus(double u, double v) : u_(u), v_(v) {
        if (!(u > 0.0) || !(v > 0.0))
            throw Error("rectangular torus needs u > 0 and v > 0");
        r_ = std::hypot(u, v);
        rho_ = u * v / r_;
    }

    double u() const { return u_; }
    double v() const { return v_; }
    double r() const { return r_; }
    double rho() const { return rho_; }

    /// Lagrangian-angle frequency beta0 = u - i v (a dual-lattice point).
    Complex beta0() const { return {u_, -v_}; }

    /// Lagrangian angle beta(z) = 2 pi <beta0, z> = 2 pi (u x - v y).
    double beta(double x, double y) const { return 2.0 * kPi * (u_ * x - v_ * y); }

    Quaternion eval(double x, double y) const {
        return rho_ * ((1.0 / u_) * exp_j(2.0 * kPi * u_ * x) +
                       kI * ((1.0 / v_) * exp_j(2.0 * kPi * v_ * y)));
    }

    /// g = 2 pi rho j e^{pi j (u x + v y)}, |g| = 2 pi rho.
    Quaternion g(double x, double y) const {
        return 2.0 * kPi * rho_ * (kJ * exp_j(kPi * (u_ * x + v_ * y)));
    }

    TorusFrame frame(double x, double y) const {
        TorusFrame fr;
        fr.beta = beta(x, y);
        fr.g = g(x, y);
        fr.N = exp_j(fr.beta) * kI;
        fr.R = kI * exp_j(2.0 * kPi * (u_ * x + v_ * y));
        const Quaternion half = exp_j(fr.beta / 2.0);
        fr.fx = half * fr.g;
        fr.fy = half * kI * fr.g;
        return fr;
    }

    Partials partials(double x, double y) const {
        const TorusFrame fr = frame(x, y);
        return {fr.fx, fr.fy};
    }

    /// Constant mean curvature in S^3: (u/v - v/u)/2.
    double mean_curvature() const { return 0.5 * (u_ / v_ - v_ / u_); }

    ParamSurface surface() const {
        ParamSurface s;
        s.eval = [t = *this](double x, double y) { return t.eval(x, y); };
        s.exact_partials = [t = *this](double x, double y) { return t.partials(x, y); };
        s.period_x = 1.0 / u_;
        s.period_y = 1.0 / v_;
        s.target = Target::S3;
        return s;
    }

  private:
    double u_, v_, r_, rho_;
};

/// Multiplier data h^{A,B} = e^{2 pi (<A,.> - i <B,.>)}.  The families built
/// here use A = 0 throughout.
struct MultiplierData {
    Complex A{0.0, 0.0};
    Complex B{0.0, 0.0};

    /// Multiplier value over a deck translation gamma (A = 0 form included).
    Complex h(const Complex& gamma) const {
        return std::exp(Complex{2.0 * kPi * real_pairing(A, gamma),
                                -2.0 * kPi * real_pairing(B, gamma)});
    }
};

/// An admissible frequency delta = B - (beta0/2) e^{it} on the spectral
/// circle, together with its angle t in [0, 2 pi) and lambda_delta.
struct SpectralPoint {
    Complex delta;
    double t;
    Complex lambda; // (2/beta0)(delta - B) = -e^{it}
};

namespace detail {

inline std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

inline double wrap_angle(double t) {
    t = std::fmod(t, 2.0 * kPi);
    if (t < 0.0) t += 2.0 * kPi;
    return t;
}

inline SpectralPoint make_spectral_point(const Complex& delta, const Complex& B,
                                         const Complex& beta0) {
    const Complex eit = 2.0 * (B - delta) / beta0;
    return {delta, wrap_angle(std::atan2(eit.imag(), eit.real())), -eit};
}

} // namespace detail

/// All shifted dual-lattice points delta in Gamma* + beta0/2 with
/// |delta - B| = |beta0|/2, found by an exact bounded box search over
/// [Bx - r, Bx + r] x [By - r, By + r].  Requires A = 0.
/// Throws EmptySpectrum when the circle misses the shifted lattice.
inline std::vector<SpectralPoint> spectral_frequencies(const RectangularTorus& T,
                                                       const MultiplierData& M,
                                                       double tol = 1e-9) {
    if (std::abs(M.A) != 0.0)
        throw Error("spectral enumeration implemented for A = 0 only");
    const Complex beta0 = T.beta0();
    const double u = T.u(), v = T.v(), r = T.r();
    const double target = r * r / 4.0;
    const double eps = tol * r * r;

    // delta = u (p + 1/2) + i v (q - 1/2), p, q integers.
    const auto lo_p = static_cast<long>(std::floor((M.B.real() - r) / u - 0.5));
    const auto hi_p = static_cast<long>(std::ceil((M.B.real() + r) / u - 0.5));
    const auto lo_q = static_cast<long>(std::floor((M.B.imag() - r) / v + 0.5));
    const auto hi_q = static_cast<long>(std::ceil((M.B.imag() + r) / v + 0.5));

    std::vector<SpectralPoint> found;
    for (long p = lo_p; p <= hi_p; ++p) {
        for (long q = lo_q; q <= hi_q; ++q) {
            const Complex delta{u * (static_cast<double>(p) + 0.5),
                                v * (static_cast<double>(q) - 0.5)};
            if (std::abs(std::norm(delta - M.B) - target) <= eps)
                found.push_back(detail::make_spectral_point(delta, M.B, beta0));
        }
    }
    if (found.empty()) throw EmptySpectrum{};
    std::sort(found.begin(), found.end(),
              [](const SpectralPoint& a, const SpectralPoint& b) { return a.t < b.t; });
    return found;
}

/// cos/sin of the two canonical spectral angles of the n-bulge data:
/// c_pm = (-+ n v^2 - u s)/r^2,  s_pm = (+- u v n - s v)/r^2,
/// s = sqrt(r^2 - v^2 n^2).
struct BulgeAngles {
    double c_plus, s_plus, c_minus, s_minus;
};

inline BulgeAngles bulge_cs(double u, double v, int n) {
    const double r2 = u * u + v * v;
    const double s = std::sqrt(std::max(0.0, r2 - v * v * n * n));
    return {(-n * v * v - u * s) / r2, (u * v * n - s * v) / r2,
            (n * v * v - u * s) / r2, (-u * v * n - s * v) / r2};
}

/// Multiplier of the n-bulge family:
/// B = beta0/2 + n v i/2 - sqrt(u^2 + v^2 (1 - n^2))/2.
/// Throws BelowThreshold when u < v sqrt(n^2 - 1).
inline MultiplierData bulge_multiplier(const RectangularTorus& T, int n) {
    if (n < 2) throw Error("bulge multiplier needs n >= 2");
    const double u = T.u(), v = T.v();
    const double disc = u * u + v * v * (1.0 - static_cast<double>(n) * n);
    if (disc < 0.0 && std::abs(u - v * std::sqrt(static_cast<double>(n) * n - 1.0)) > 1e-9 * v)
        throw BelowThreshold("u must be >= v*sqrt(n^2-1) = " +
                             detail::num(v * std::sqrt(static_cast<double>(n) * n - 1.0)));
    const double s = std::sqrt(std::max(0.0, disc));
    MultiplierData M;
    M.B = T.beta0() / 2.0 + Complex{0.0, n * v / 2.0} - Complex{s / 2.0, 0.0};
    return M;
}

/// The two canonical frequencies delta_+ = beta0/2, delta_- = beta0/2 + n v i
/// of the n-bulge multiplier.
inline std::pair<SpectralPoint, SpectralPoint> bulge_deltas(const RectangularTorus& T,
                                                            const MultiplierData& M, int n) {
    const Complex beta0 = T.beta0();
    return {detail::make_spectral_point(beta0 / 2.0, M.B, beta0),
            detail::make_spectral_point(beta0 / 2.0 + Complex{0.0, n * T.v()}, M.B, beta0)};
}

/// Fourier-monomial holomorphic section with multiplier h^{0,B}:
/// alpha_delta = e^{j beta/2} (1 - k lambda_delta) e_{delta - B},
/// returned with its exact partials.
inline Section monochromatic_section(const RectangularTorus& T, const MultiplierData& M,
                                     const SpectralPoint& p) {
    if (std::abs(M.A) != 0.0)
        throw Error("monochromatic sections implemented for A = 0 only");
    const Quaternion P = kOne - kK * embed_i(p.lambda);
    const Complex gamma = p.delta - M.B;
    const double u = T.u(), v = T.v();

    Section s;
    s.eval = [=](double x, double y) {
        return exp_j(kPi * (u * x - v * y)) * P * embed_i(e_gamma_c(gamma, {x, y}));
    };
    s.dx = [=](double x, double y) {
        const Quaternion E = embed_i(e_gamma_c(gamma, {x, y}));
        return exp_j(kPi * (u * x - v * y)) *
               (kPi * u * (kJ * P) + 2.0 * kPi * gamma.real() * (P * kI)) * E;
    };
    s.dy = [=](double x, double y) {
        const Quaternion E = embed_i(e_gamma_c(gamma, {x, y}));
        return exp_j(kPi * (u * x - v * y)) *
               (-kPi * v * (kJ * P) + 2.0 * kPi * gamma.imag() * (P * kI)) * E;
    };
    return s;
}

} // namespace dtori
