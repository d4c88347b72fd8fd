#pragma once

#include <stdexcept>
#include <string>

namespace dtori {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroQuaternion : Error {
    ZeroQuaternion() : Error("inverse of the zero quaternion") {}
};

struct NotUnitAxis : Error {
    NotUnitAxis() : Error("axis must be a unit pure-imaginary quaternion") {}
};

struct NonFinite : Error {
    NonFinite() : Error("non-finite value encountered") {}
    explicit NonFinite(const std::string& what) : Error(what) {}
};

struct DegenerateJet : Error {
    DegenerateJet() : Error("jet has vanishing x-derivative") {}
};

struct NonConformal : Error {
    explicit NonConformal(double residual)
        : Error("conformality residual " + std::to_string(residual) +
                " exceeds the trust threshold") {}
};

struct EmptySpectrum : Error {
    EmptySpectrum() : Error("no admissible frequencies on the spectral circle") {}
};

struct BelowThreshold : Error {
    explicit BelowThreshold(const std::string& what) : Error(what) {}
};

struct BranchPoint : Error {
    BranchPoint(double x, double y)
        : Error("branch point of the transform near (" + std::to_string(x) + ", " +
                std::to_string(y) + ")") {}
};

struct VanishingDenominator : Error {
    explicit VanishingDenominator(const std::string& what) : Error(what) {}
};

struct VanishingQ : Error {
    VanishingQ() : Error("q factor vanishes; curvature formula undefined here") {}
};

struct DegenerateCMC : Error {
    DegenerateCMC()
        : Error("profile is constant at the CMC boundary; no isolated extrema") {}
};

struct DegeneratePoint : Error {
    DegeneratePoint() : Error("frame degenerates at this point") {}
};

struct NearPole : Error {
    NearPole() : Error("sample too close to the projection pole") {}
};

struct IoFailure : Error {
    explicit IoFailure(const std::string& path) : Error("cannot write " + path) {}
};

} // namespace dtori
