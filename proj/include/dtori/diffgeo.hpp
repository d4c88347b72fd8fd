#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "dtori/quaternion.hpp"
#include "dtori/surface.hpp"

namespace dtori {

/// First-order jet of a surface at a point.  step = 0 marks exact partials.
struct JetSample {
    Quaternion f;
    Quaternion fx;
    Quaternion fy;
    double step = 0.0;
};

/// Left and right normal candidates of a jet, returned unnormalized so the
/// caller can inspect residuals: N = fy fx^-1, R = -fx^-1 fy.  At conformal
/// samples both square to -1.
struct NormalPair {
    Quaternion N;
    Quaternion R;
};

/// Threshold on the conformality residual above which curvature values are
/// refused rather than tagged.
inline constexpr double kConformalTrust = 1e-3;

/// Default finite-difference step; central differences are O(h^2).
inline constexpr double kDefaultStep = 1e-5;

/// Jet of `surface` at (x, y).  Uses the surface's exact partials when
/// present, otherwise central differences with step h.
inline JetSample jet(const ParamSurface& surface, double x, double y, double h = kDefaultStep) {
    if (!(h > 0.0)) throw Error("finite-difference step must be positive");
    JetSample js;
    js.f = surface.eval(x, y);
    if (surface.exact_partials) {
        const Partials p = surface.exact_partials(x, y);
        js.fx = p.fx;
        js.fy = p.fy;
        js.step = 0.0;
    } else {
        js.fx = (surface.eval(x + h, y) - surface.eval(x - h, y)) / (2.0 * h);
        js.fy = (surface.eval(x, y + h) - surface.eval(x, y - h)) / (2.0 * h);
        js.step = h;
    }
    if (!js.f.finite() || !js.fx.finite() || !js.fy.finite()) throw NonFinite{};
    return js;
}

inline NormalPair normals_num(const JetSample& js) {
    if (js.fx.norm2() <= 0.0) throw DegenerateJet{};
    const Quaternion fxinv = js.fx.inverse();
    return {js.fy * fxinv, -(fxinv * js.fy)};
}

/// Scale-invariant conformality defect |N^2 + 1| / (2 |N|^2) with
/// N = fy fx^-1; zero exactly at conformal samples, where N^2 = -1.
inline double conformality_residual(const JetSample& js) {
    if (js.fx.norm2() <= 0.0) throw DegenerateJet{};
    const Quaternion N = js.fy * js.fx.inverse();
    const double n2 = N.norm2();
    if (n2 <= 0.0) throw DegenerateJet{};
    return (N * N + kOne).norm() / (2.0 * n2);
}

namespace detail {

/// 5-point central difference, O(h^4).
template <class F>
Quaternion d5(F&& f, double h) {
    return (f(-2.0 * h) - 8.0 * f(-h) + 8.0 * f(h) - f(2.0 * h)) / (12.0 * h);
}

} // namespace detail

struct CurvatureSample {
    double value;
    double conformality;
};

/// Curvature quaternion H, defined through (dN)' = -df H, from jets alone:
/// N on a 5-point stencil per axis, (dN)'(dx) = (N_x - N N_y)/2,
/// H = -fx^-1 (dN)'(dx).  Throws NonConformal when the conformality residual
/// at the centre exceeds 1e-3.
inline Quaternion mean_curvature_h(const ParamSurface& surface, double x, double y,
                                   double h = kDefaultStep) {
    const JetSample center = jet(surface, x, y, h);
    const double conf = conformality_residual(center);
    if (conf > kConformalTrust) throw NonConformal(conf);

    auto N_at = [&](double xx, double yy) {
        return normals_num(jet(surface, xx, yy, h)).N;
    };
    const Quaternion Nx = detail::d5([&](double d) { return N_at(x + d, y); }, h);
    const Quaternion Ny = detail::d5([&](double d) { return N_at(x, y + d); }, h);
    const Quaternion N0 = N_at(x, y);
    const Quaternion dNp = 0.5 * (Nx - N0 * Ny);
    return -(center.fx.inverse() * dNp);
}

/// Scalar mean curvature:
///   S3 target: H = Re(f H),     R3 target: H = Re(-H i).
inline CurvatureSample mean_curvature_sample(const ParamSurface& surface, double x, double y,
                                             double h = kDefaultStep) {
    if (surface.target != Target::S3 && surface.target != Target::R3)
        throw Error("mean curvature defined for S3 and R3 targets only");
    const JetSample center = jet(surface, x, y, h);
    const double conf = conformality_residual(center);
    if (conf > kConformalTrust) throw NonConformal(conf);
    const Quaternion H = mean_curvature_h(surface, x, y, h);
    const double value = surface.target == Target::S3 ? (center.f * H).re() : (-(H * kI)).re();
    return {value, conf};
}

inline double mean_curvature_num(const ParamSurface& surface, double x, double y,
                                 double h = kDefaultStep) {
    return mean_curvature_sample(surface, x, y, h).value;
}

/// Residual |(alpha_x + N alpha_y)/2| of the holomorphicity equation
/// D alpha = (d alpha + N * d alpha)/2 = 0, with *d alpha(dx) = alpha_y.
inline double holomorphic_residual(const std::function<Quaternion(double, double)>& alpha,
                                   const std::function<Quaternion(double, double)>& N,
                                   double x, double y, double h = kDefaultStep) {
    if (!(h > 0.0)) throw Error("finite-difference step must be positive");
    const Quaternion ax = (alpha(x + h, y) - alpha(x - h, y)) / (2.0 * h);
    const Quaternion ay = (alpha(x, y + h) - alpha(x, y - h)) / (2.0 * h);
    if (!ax.finite() || !ay.finite()) throw NonFinite{};
    return (0.5 * (ax + N(x, y) * ay)).norm();
}

/// Sup over `samples` of |alpha(z + gamma) - alpha(z) h_expected|.
inline double multiplier_residual(const std::function<Quaternion(double, double)>& alpha,
                                  const Complex& gamma, const Complex& h_expected,
                                  std::span<const Complex> samples) {
    const Quaternion hq = embed_i(h_expected);
    double worst = 0.0;
    for (const Complex& z : samples) {
        const Quaternion lhs = alpha(z.real() + gamma.real(), z.imag() + gamma.imag());
        const Quaternion rhs = alpha(z.real(), z.imag()) * hq;
        worst = std::max(worst, dist(lhs, rhs));
    }
    return worst;
}

/// Overload sampling a fixed 8x8 grid of the unit square.
inline double multiplier_residual(const std::function<Quaternion(double, double)>& alpha,
                                  const Complex& gamma, const Complex& h_expected) {
    std::vector<Complex> samples;
    samples.reserve(64);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            samples.emplace_back((i + 0.31) / 8.0, (j + 0.47) / 8.0);
    return multiplier_residual(alpha, gamma, h_expected, samples);
}

} // namespace dtori
