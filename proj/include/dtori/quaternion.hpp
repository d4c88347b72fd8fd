#pragma once

#include <cmath>
#include <complex>
#include <ostream>

#include "dtori/errors.hpp"

namespace dtori {

inline constexpr double kPi = 3.14159265358979323846;

/// Default absolute tolerance for comparisons of unit-scale quantities.
inline constexpr double kTol = 1e-12;

/// Point of the parameter plane / a frequency, z = re + i*im.
using Complex = std::complex<double>;

/// Quaternion q = w + x i + y j + z k.
///
/// Multiplication uses the right-handed Hamilton convention, fixed
/// project-wide:  i^2 = j^2 = k^2 = -1,  ij = k,  jk = i,  ki = j.
struct Quaternion {
    double w = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_, double y_, double z_)
        : w(w_), x(x_), y(y_), z(z_) {}
    constexpr explicit Quaternion(double scalar) : w(scalar) {}

    friend constexpr Quaternion operator+(const Quaternion& a, const Quaternion& b) {
        return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
    }
    friend constexpr Quaternion operator-(const Quaternion& a, const Quaternion& b) {
        return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
    }
    constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }

    friend constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
        return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
                a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
                a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
                a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
    }
    friend constexpr Quaternion operator*(const Quaternion& a, double s) {
        return {a.w * s, a.x * s, a.y * s, a.z * s};
    }
    friend constexpr Quaternion operator*(double s, const Quaternion& a) { return a * s; }
    friend constexpr Quaternion operator/(const Quaternion& a, double s) {
        return {a.w / s, a.x / s, a.y / s, a.z / s};
    }

    Quaternion& operator+=(const Quaternion& b) { return *this = *this + b; }
    Quaternion& operator-=(const Quaternion& b) { return *this = *this - b; }
    Quaternion& operator*=(const Quaternion& b) { return *this = *this * b; }

    constexpr Quaternion conj() const { return {w, -x, -y, -z}; }

    constexpr double norm2() const { return w * w + x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm2()); }

    /// Scalar (real) part.
    constexpr double re() const { return w; }

    /// Multiplicative inverse, conj(q)/|q|^2.  Throws ZeroQuaternion on q = 0.
    Quaternion inverse() const {
        const double n2 = norm2();
        if (n2 <= 0.0) throw ZeroQuaternion{};
        return conj() / n2;
    }

    bool finite() const {
        return std::isfinite(w) && std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }

    friend std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
        return os << '(' << q.w << ", " << q.x << "i, " << q.y << "j, " << q.z << "k)";
    }
};

inline constexpr Quaternion kOne{1, 0, 0, 0};
inline constexpr Quaternion kI{0, 1, 0, 0};
inline constexpr Quaternion kJ{0, 0, 1, 0};
inline constexpr Quaternion kK{0, 0, 0, 1};

inline double dist(const Quaternion& a, const Quaternion& b) { return (a - b).norm(); }

/// Embedding of C into Span{1, i}.
constexpr Quaternion embed_i(const Complex& c) { return {c.real(), c.imag(), 0, 0}; }

/// Embedding of C into the commuting subalgebra Span{1, j}.
constexpr Quaternion embed_j(const Complex& c) { return {c.real(), 0, c.imag(), 0}; }

/// e^{i t} as a quaternion in Span{1, i}.
inline Quaternion exp_i(double t) { return {std::cos(t), std::sin(t), 0, 0}; }

/// e^{j t} as a quaternion in Span{1, j}.
inline Quaternion exp_j(double t) { return {std::cos(t), 0, std::sin(t), 0}; }

/// Membership of Span{1, i} within absolute tolerance.
inline bool in_span_1i(const Quaternion& q, double tol = kTol) {
    return std::abs(q.y) <= tol && std::abs(q.z) <= tol;
}

/// Membership of the subalgebra Span{1, j} within absolute tolerance.
inline bool in_span_1j(const Quaternion& q, double tol = kTol) {
    return std::abs(q.x) <= tol && std::abs(q.z) <= tol;
}

/// Membership of Span{1, j, k} (the 3-space chart used by cylinders).
inline bool in_span_1jk(const Quaternion& q, double tol = kTol) {
    return std::abs(q.x) <= tol;
}

/// cos(angle) + axis*sin(angle) for a unit pure-imaginary axis.
/// Throws NotUnitAxis when the axis is not pure imaginary of unit length.
inline Quaternion exp_unit(const Quaternion& axis, double angle, double tol = kTol) {
    if (std::abs(axis.w) > tol || std::abs(axis.norm() - 1.0) > tol) throw NotUnitAxis{};
    return Quaternion{std::cos(angle), 0, 0, 0} + axis * std::sin(angle);
}

/// Real pairing <a + ib, x + iy> = a x + b y on the parameter plane.
constexpr double real_pairing(const Complex& w, const Complex& z) {
    return w.real() * z.real() + w.imag() * z.imag();
}

/// e_gamma(z) = e^{2 pi i <gamma, z>}, a unit quaternion in Span{1, i}.
inline Quaternion e_gamma(const Complex& gamma, const Complex& z) {
    return exp_i(2.0 * kPi * real_pairing(gamma, z));
}

/// Same exponential kept in C, for code that stays inside Span{1, i}.
inline Complex e_gamma_c(const Complex& gamma, const Complex& z) {
    return std::polar(1.0, 2.0 * kPi * real_pairing(gamma, z));
}

inline bool approx(double a, double b, double tol = kTol) { return std::abs(a - b) <= tol; }

inline bool approx(const Quaternion& a, const Quaternion& b, double tol = kTol) {
    return dist(a, b) <= tol;
}

} // namespace dtori
