#pragma once

#include <array>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dtori/bulge_family.hpp"
#include "dtori/quaternion.hpp"
#include "dtori/surface.hpp"

namespace dtori {

using Vec3 = std::array<double, 3>;

struct ProjectionSpec {
    std::optional<Quaternion> pole; // unset: picked automatically per sample set
    double min_pole_distance = 1e-3;
};

/// Chart S^3 \ {pole} -> R^3.  The pole is moved to -1 by the isometry
/// q -> (-conj(pole)) q, then p = (x, y, z)/(1 + w).
inline Vec3 stereographic(const Quaternion& p, const Quaternion& pole,
                          double min_pole_distance = 1e-3) {
    if (std::abs(p.norm() - 1.0) > 1e-9)
        throw Error("stereographic projection expects a point of S^3");
    if (dist(p, pole) <= min_pole_distance) throw NearPole{};
    const Quaternion q = (-pole.conj()) * p;
    const double d = 1.0 + q.w;
    return {q.x / d, q.y / d, q.z / d};
}

inline Vec3 stereographic(const Quaternion& p, const ProjectionSpec& spec) {
    if (!spec.pole) throw Error("projection spec has no pole");
    return stereographic(p, *spec.pole, spec.min_pole_distance);
}

inline Quaternion stereographic_inverse(const Vec3& v, const Quaternion& pole) {
    const double n2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
    const double w = (1.0 - n2) / (1.0 + n2);
    const double scale = 1.0 + w;
    const Quaternion q{w, v[0] * scale, v[1] * scale, v[2] * scale};
    return (-pole) * q;
}

/// The 24 unit quaternions {+-1, +-i, +-j, +-k, (+-1 +- i +- j +- k)/2};
/// a fixed symmetric candidate set for pole selection.
inline const std::vector<Quaternion>& pole_candidates() {
    static const std::vector<Quaternion> poles = [] {
        std::vector<Quaternion> ps;
        for (int axis = 0; axis < 4; ++axis)
            for (double sgn : {1.0, -1.0}) {
                Quaternion q;
                (axis == 0 ? q.w : axis == 1 ? q.x : axis == 2 ? q.y : q.z) = sgn;
                ps.push_back(q);
            }
        for (double sw : {0.5, -0.5})
            for (double sx : {0.5, -0.5})
                for (double sy : {0.5, -0.5})
                    for (double sz : {0.5, -0.5})
                        ps.push_back({sw, sx, sy, sz});
        return ps;
    }();
    return poles;
}

/// Candidate pole maximizing the minimum distance to the samples.
/// Throws NearPole when even the best candidate has clearance below
/// min_pole_distance.
inline Quaternion choose_pole(const std::vector<Quaternion>& samples,
                              double min_pole_distance = 1e-3) {
    Quaternion best{-1, 0, 0, 0};
    double best_clearance = -1.0;
    for (const Quaternion& cand : pole_candidates()) {
        double clearance = 4.0;
        for (const Quaternion& s : samples) clearance = std::min(clearance, dist(s, cand));
        if (clearance > best_clearance) {
            best_clearance = clearance;
            best = cand;
        }
    }
    if (best_clearance <= min_pole_distance) throw NearPole{};
    return best;
}

/// Sampled surface with torus or cylinder topology.
struct MeshGrid {
    int nx = 0;
    int ny = 0;
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> faces;
    bool wrap_x = false;
    bool wrap_y = false;

    /// Checks the structural invariants: vertex/face counts, index ranges,
    /// and positive face area.  Throws Error on violation.
    void validate() const {
        if (nx < 3 || ny < 3) throw Error("mesh grid needs nx, ny >= 3");
        if (static_cast<int>(vertices.size()) != nx * ny)
            throw Error("mesh grid vertex count mismatch");
        const std::size_t quads =
            static_cast<std::size_t>(nx - (wrap_x ? 0 : 1)) * (ny - (wrap_y ? 0 : 1));
        if (faces.size() != 2 * quads) throw Error("mesh grid face count mismatch");
        for (const auto& f : faces) {
            for (int idx : f)
                if (idx < 0 || idx >= nx * ny) throw Error("mesh face index out of range");
            const Vec3 &a = vertices[f[0]], &b = vertices[f[1]], &c = vertices[f[2]];
            const Vec3 e1{b[0] - a[0], b[1] - a[1], b[2] - a[2]};
            const Vec3 e2{c[0] - a[0], c[1] - a[1], c[2] - a[2]};
            const double cx = e1[1] * e2[2] - e1[2] * e2[1];
            const double cy = e1[2] * e2[0] - e1[0] * e2[2];
            const double cz = e1[0] * e2[1] - e1[1] * e2[0];
            if (!(cx * cx + cy * cy + cz * cz > 0.0)) throw Error("degenerate mesh face");
        }
    }
};

/// Samples the fundamental domain of `surface` on an nx-by-ny grid and
/// builds the triangulated mesh.  S^3 surfaces are projected
/// stereographically (pole picked automatically when the spec leaves it
/// unset); R^3 surfaces use their (1, j, k) coordinates directly.  The wrap
/// flags follow the periods: a translational y-period gives an open strip.
inline MeshGrid sample_grid(const ParamSurface& surface, int nx, int ny,
                            const ProjectionSpec& spec = {}) {
    if (nx < 3 || ny < 3) throw Error("mesh grid needs nx, ny >= 3");
    if (!surface.period_x || !surface.period_y)
        throw Error("grid sampling needs both periods");
    if (surface.target == Target::R4)
        throw Error("cannot project an R^4 surface to 3-space");

    MeshGrid mesh;
    mesh.nx = nx;
    mesh.ny = ny;
    mesh.wrap_x = true;
    mesh.wrap_y = surface.y_shift.norm2() == 0.0;

    const double px = *surface.period_x, py = *surface.period_y;
    std::vector<Quaternion> samples;
    samples.reserve(static_cast<std::size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j) {
        const double y = mesh.wrap_y ? j * py / ny : j * py / (ny - 1);
        for (int i = 0; i < nx; ++i) samples.push_back(surface.eval(i * px / nx, y));
    }

    mesh.vertices.reserve(samples.size());
    if (surface.target == Target::S3) {
        const Quaternion pole =
            spec.pole ? *spec.pole : choose_pole(samples, spec.min_pole_distance);
        for (const Quaternion& s : samples)
            mesh.vertices.push_back(stereographic(s, pole, spec.min_pole_distance));
    } else {
        for (const Quaternion& s : samples) mesh.vertices.push_back({s.w, s.y, s.z});
    }

    const int imax = mesh.wrap_x ? nx : nx - 1;
    const int jmax = mesh.wrap_y ? ny : ny - 1;
    mesh.faces.reserve(2 * static_cast<std::size_t>(imax) * jmax);
    auto vid = [nx](int i, int j) { return j * nx + i; };
    for (int j = 0; j < jmax; ++j) {
        for (int i = 0; i < imax; ++i) {
            const int a = vid(i, j);
            const int b = vid((i + 1) % nx, j);
            const int c = vid((i + 1) % nx, (j + 1) % ny);
            const int d = vid(i, (j + 1) % ny);
            mesh.faces.push_back({a, b, c});
            mesh.faces.push_back({a, c, d});
        }
    }
    mesh.validate();
    return mesh;
}

/// ASCII OBJ: "v x y z" lines, then 1-based "f a b c" lines.  Coordinates
/// are printed with 17 significant digits so a reparse is bit-exact.
inline void write_obj(const MeshGrid& mesh, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw IoFailure(path);
    char buf[128];
    for (const Vec3& v : mesh.vertices) {
        std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v[0], v[1], v[2]);
        os << buf;
    }
    for (const auto& f : mesh.faces) {
        std::snprintf(buf, sizeof buf, "f %d %d %d\n", f[0] + 1, f[1] + 1, f[2] + 1);
        os << buf;
    }
    if (!os.good()) throw IoFailure(path);
}

/// Minimal OBJ reader for the files written above (v/f lines only).
inline MeshGrid read_obj(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoFailure(path);
    MeshGrid mesh;
    std::string line;
    while (std::getline(is, line)) {
        std::istringstream ss(line);
        std::string tag;
        ss >> tag;
        if (tag == "v") {
            Vec3 v{};
            ss >> v[0] >> v[1] >> v[2];
            mesh.vertices.push_back(v);
        } else if (tag == "f") {
            std::array<int, 3> f{};
            ss >> f[0] >> f[1] >> f[2];
            mesh.faces.push_back({f[0] - 1, f[1] - 1, f[2] - 1});
        }
    }
    return mesh;
}

/// CSV profile of a bulge family over one lattice period of y:
/// header "y,kappa0,H,Rhat", then ny rows at 17 significant digits.
inline void write_profiles(const BulgeTorusFamily& family, int ny, const std::string& path) {
    if (ny < 1) throw Error("profile needs at least one row");
    std::ofstream os(path);
    if (!os) throw IoFailure(path);
    os << "y,kappa0,H,Rhat\n";
    char buf[192];
    for (int i = 0; i < ny; ++i) {
        const double y = i / (family.v() * ny);
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", y, family.kappa0(y),
                      family.mean_curvature_closed(y), family.rhat(y));
        os << buf;
    }
    if (!os.good()) throw IoFailure(path);
}

} // namespace dtori
