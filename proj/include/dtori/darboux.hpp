#pragma once

#include <cmath>
#include <sstream>
#include <vector>

#include "dtori/diffgeo.hpp"
#include "dtori/quaternion.hpp"
#include "dtori/surface.hpp"
#include "dtori/torus.hpp"

namespace dtori {

/// Darboux transform by prolongation: nu is defined by d alpha = -df nu,
/// i.e. nu = -fx^-1 alpha_x, and the transform is fhat = f + alpha nu^-1.
///
/// The section must be holomorphic for the left normal of `f` (checked on a
/// coarse sample at construction, residual < 1e-4).  Evaluation throws
/// BranchPoint where |alpha| or |nu| collapses below 1e-10 of its typical
/// scale; such samples are reported, never interpolated over.
inline ParamSurface prolong_transform(const ParamSurface& f, const Section& alpha,
                                      double h = kDefaultStep) {
    if (!f.eval || !alpha.eval) throw Error("prolongation needs evaluable inputs");

    auto alpha_x = [alpha, h](double x, double y) {
        if (alpha.dx) return alpha.dx(x, y);
        return (alpha.eval(x + h, y) - alpha.eval(x - h, y)) / (2.0 * h);
    };
    auto nu_at = [f, alpha_x, h](double x, double y) {
        const JetSample js = jet(f, x, y, h);
        if (js.fx.norm2() <= 0.0) throw DegenerateJet{};
        return -(js.fx.inverse() * alpha_x(x, y));
    };

    // Scales for branch-point detection, plus the holomorphicity precondition.
    const double sx = f.period_x.value_or(1.0);
    const double sy = f.period_y.value_or(1.0);
    double alpha_scale = 0.0, nu_scale = 0.0, holo = 0.0;
    auto N_of = [&](double x, double y) { return normals_num(jet(f, x, y, h)).N; };
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            const double x = (i + 0.37) / 5.0 * sx, y = (j + 0.61) / 5.0 * sy;
            alpha_scale = std::max(alpha_scale, alpha.eval(x, y).norm());
            nu_scale = std::max(nu_scale, nu_at(x, y).norm());
            holo = std::max(holo, holomorphic_residual(alpha.eval, N_of, x, y, h));
        }
    }
    if (holo > 1e-4)
        throw Error("section is not holomorphic for the surface (residual " +
                    std::to_string(holo) + ")");

    ParamSurface out;
    out.eval = [f, alpha, nu_at, alpha_scale, nu_scale](double x, double y) {
        const Quaternion a = alpha.eval(x, y);
        const Quaternion nu = nu_at(x, y);
        if (a.norm() <= 1e-10 * alpha_scale || nu.norm() <= 1e-10 * nu_scale)
            throw BranchPoint(x, y);
        return f.eval(x, y) + a * nu.inverse();
    };
    // The multiplier of alpha cancels in alpha nu^-1, so the transform
    // inherits the periods of f.
    out.period_x = f.period_x;
    out.period_y = f.period_y;
    out.target = Target::R4;
    return out;
}

/// Frequencies and coefficients of a polychromatic section
/// alpha = sum_t alpha_{delta_t} m_t with shared multiplier h^{0,B}.
struct PolychromaticData {
    std::vector<SpectralPoint> points;
    std::vector<Complex> m;
};

/// General polychromatic Darboux transform of a rectangular torus:
///
///   fhat = f + e^{j beta/2} S(z) (1 / (R pi conj(beta0))) g,
///   S = sum_{s,t} (1 + k e^{i t_s}) m_s conj(m_t) e_{delta_s - delta_t} (1 + k e^{i t_t}) sin t_t,
///   R = |sum_t m_t sin t e_{delta_t}|^2 + |sum_t m_t e^{it} sin t e_{delta_t}|^2.
///
/// The denominator R is certified positive on a grid of the fundamental
/// domain at construction; VanishingDenominator reports min R and its
/// location otherwise.  The returned surface carries exact partials.
inline ParamSurface polychromatic_transform(const RectangularTorus& T,
                                            const PolychromaticData& P, int grid_check = 64) {
    const std::size_t nfreq = P.points.size();
    if (nfreq < 2) throw Error("polychromatic data needs at least two frequencies");
    if (P.m.size() != nfreq) throw Error("one coefficient per frequency required");

    std::vector<Complex> deltas(nfreq), eits(nfreq), ms(P.m);
    std::vector<double> sints(nfreq);
    double max_sin = 0.0;
    for (std::size_t i = 0; i < nfreq; ++i) {
        deltas[i] = P.points[i].delta;
        eits[i] = std::polar(1.0, P.points[i].t);
        sints[i] = std::sin(P.points[i].t);
        max_sin = std::max(max_sin, std::abs(sints[i] * std::abs(ms[i])));
    }
    if (max_sin <= 1e-12)
        throw Error("admissible frequency set must differ from {0, pi}");

    const Complex beta0 = T.beta0();
    const double r2 = T.r() * T.r();

    // R(z) and its partial derivatives, all through the two complex sums.
    auto denom = [=](double x, double y, double* dRx = nullptr, double* dRy = nullptr) {
        const Complex z{x, y};
        Complex s1{}, s2{}, s1x{}, s2x{}, s1y{}, s2y{};
        for (std::size_t i = 0; i < nfreq; ++i) {
            const Complex e = ms[i] * sints[i] * e_gamma_c(deltas[i], z);
            s1 += e;
            s2 += eits[i] * e;
            const Complex iwx{0.0, 2.0 * kPi * deltas[i].real()};
            const Complex iwy{0.0, 2.0 * kPi * deltas[i].imag()};
            s1x += iwx * e;
            s2x += eits[i] * (iwx * e);
            s1y += iwy * e;
            s2y += eits[i] * (iwy * e);
        }
        if (dRx) *dRx = 2.0 * (std::conj(s1) * s1x + std::conj(s2) * s2x).real();
        if (dRy) *dRy = 2.0 * (std::conj(s1) * s1y + std::conj(s2) * s2y).real();
        return std::norm(s1) + std::norm(s2);
    };

    double rmin = 0.0, rmax = 0.0, argx = 0.0, argy = 0.0;
    const double px = 1.0 / T.u(), py = 1.0 / T.v();
    for (int i = 0; i < grid_check; ++i) {
        for (int j = 0; j < grid_check; ++j) {
            const double x = i * px / grid_check, y = j * py / grid_check;
            const double rv = denom(x, y);
            if (i == 0 && j == 0) rmin = rmax = rv;
            rmax = std::max(rmax, rv);
            if (rv < rmin) {
                rmin = rv;
                argx = x;
                argy = y;
            }
        }
    }
    if (rmin <= 1e-10 * std::max(1.0, rmax)) {
        std::ostringstream os;
        os << "denominator R reaches " << rmin << " at (" << argx << ", " << argy << ")";
        throw VanishingDenominator(os.str());
    }

    // S(z) and its partials; every z-dependence sits in the e_gamma factors.
    auto numer = [=](double x, double y, Quaternion* dSx = nullptr, Quaternion* dSy = nullptr) {
        const Complex z{x, y};
        Quaternion S{};
        for (std::size_t i = 0; i < nfreq; ++i) {
            const Quaternion left = kOne + kK * embed_i(eits[i]);
            for (std::size_t j = 0; j < nfreq; ++j) {
                const Complex gamma = deltas[i] - deltas[j];
                const Complex mid = ms[i] * std::conj(ms[j]) * e_gamma_c(gamma, z);
                const Quaternion right = (kOne + kK * embed_i(eits[j])) * sints[j];
                S += left * embed_i(mid) * right;
                if (dSx) *dSx += left * embed_i(Complex{0.0, 2.0 * kPi * gamma.real()} * mid) * right;
                if (dSy) *dSy += left * embed_i(Complex{0.0, 2.0 * kPi * gamma.imag()} * mid) * right;
            }
        }
        return S;
    };

    auto assemble = [=](double x, double y, bool with_partials, Partials* out) {
        const TorusFrame fr = T.frame(x, y);
        const Quaternion F1 = exp_j(fr.beta / 2.0);
        Quaternion Sx{}, Sy{};
        const Quaternion S = numer(x, y, with_partials ? &Sx : nullptr,
                                   with_partials ? &Sy : nullptr);
        double Rx = 0.0, Ry = 0.0;
        const double R = denom(x, y, with_partials ? &Rx : nullptr,
                               with_partials ? &Ry : nullptr);
        if (R <= 1e-14) throw VanishingDenominator("denominator vanished during evaluation");
        const Complex c = beta0 / (kPi * r2 * R);
        const Quaternion value = T.eval(x, y) + F1 * S * embed_i(c) * fr.g;
        if (with_partials) {
            const double u = T.u(), v = T.v();
            const Complex cx = -beta0 * Rx / (kPi * r2 * R * R);
            const Complex cy = -beta0 * Ry / (kPi * r2 * R * R);
            const Quaternion core = S * embed_i(c) * fr.g;
            out->fx = fr.fx + kPi * u * (kJ * (F1 * core)) + F1 * Sx * embed_i(c) * fr.g +
                      F1 * S * embed_i(cx) * fr.g + kPi * u * (F1 * S * embed_i(c) * (kJ * fr.g));
            out->fy = fr.fy - kPi * v * (kJ * (F1 * core)) + F1 * Sy * embed_i(c) * fr.g +
                      F1 * S * embed_i(cy) * fr.g + kPi * v * (F1 * S * embed_i(c) * (kJ * fr.g));
        }
        return value;
    };

    ParamSurface out;
    out.eval = [assemble](double x, double y) { return assemble(x, y, false, nullptr); };
    out.exact_partials = [assemble](double x, double y) {
        Partials p;
        assemble(x, y, true, &p);
        return p;
    };
    out.period_x = px;
    out.period_y = py;
    out.target = Target::R4;
    return out;
}

} // namespace dtori
