#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "dtori/bulge_family.hpp"
#include "dtori/cylinder_family.hpp"
#include "dtori/meshio.hpp"
#include "dtori/torus.hpp"

using namespace dtori;

TEST_CASE("stereographic projection") {
    const Quaternion pole{-1, 0, 0, 0};
    const Vec3 origin = stereographic(kOne, pole);
    CHECK(origin[0] == 0.0);
    CHECK(origin[1] == 0.0);
    CHECK(origin[2] == 0.0);

    const Vec3 unit_i = stereographic(kI, pole);
    CHECK(unit_i[0] == Catch::Approx(1.0).margin(1e-15));
    CHECK(unit_i[1] == 0.0);
    CHECK(unit_i[2] == 0.0);

    CHECK_THROWS_AS(stereographic(pole, pole), NearPole);
    CHECK_THROWS_AS(stereographic(2.0 * kOne, pole), Error);

    SECTION("round trip on random points and poles") {
        std::mt19937_64 gen(51);
        std::normal_distribution<double> nd(0.0, 1.0);
        int used = 0;
        while (used < 1000) {
            Quaternion p{nd(gen), nd(gen), nd(gen), nd(gen)};
            p = p / p.norm();
            const Quaternion pole_i = pole_candidates()[used % 24];
            if (dist(p, pole_i) <= 1e-3) continue;
            ++used;
            CHECK(dist(stereographic_inverse(stereographic(p, pole_i), pole_i), p) < 1e-12);
        }
    }
}

TEST_CASE("pole selection clears the Clifford torus") {
    const RectangularTorus clifford(1.0, 1.0);
    std::vector<Quaternion> samples;
    for (int i = 0; i < 32; ++i)
        for (int j = 0; j < 32; ++j) samples.push_back(clifford.eval(i / 32.0, j / 32.0));
    const Quaternion pole = choose_pole(samples);
    double clearance = 4.0;
    for (const Quaternion& s : samples) clearance = std::min(clearance, dist(s, pole));
    // the 16 half-integer candidates lie on the Clifford torus; the axis
    // candidates keep sqrt(2 - sqrt(2)) of clearance
    CHECK(clearance > 0.7);
}

TEST_CASE("sample_grid") {
    SECTION("bulge family: torus topology") {
        const BulgeTorusFamily F(2.0, 1.0, 2);
        const MeshGrid mesh = sample_grid(F.surface(), 64, 64);
        CHECK(mesh.nx == 64);
        CHECK(mesh.ny == 64);
        CHECK(mesh.vertices.size() == 4096);
        CHECK(mesh.faces.size() == 8192);
        CHECK(mesh.wrap_x);
        CHECK(mesh.wrap_y);
        mesh.validate();
    }

    SECTION("cylinder family: open strip in y") {
        const CylinderFamily G(2.0, 1.0);
        const MeshGrid mesh = sample_grid(G.surface(), 24, 16);
        CHECK(mesh.wrap_x);
        CHECK_FALSE(mesh.wrap_y);
        CHECK(mesh.vertices.size() == 24u * 16u);
        CHECK(mesh.faces.size() == 2u * 24u * 15u);
        mesh.validate();
    }

    SECTION("Clifford torus projects to a torus of revolution") {
        const RectangularTorus clifford(1.0, 1.0);
        const MeshGrid mesh = sample_grid(clifford.surface(), 48, 48);
        for (int i = 0; i < 48; ++i) {
            double lo = 1e30, hi = -1e30;
            for (int j = 0; j < 48; ++j) {
                const Vec3& v = mesh.vertices[j * 48 + i];
                const double d = std::hypot(v[0], v[2]);
                lo = std::min(lo, d);
                hi = std::max(hi, d);
            }
            CHECK(hi / lo - 1.0 < 1e-6);
        }
    }

    SECTION("explicit pole on the surface is refused") {
        const RectangularTorus clifford(1.0, 1.0);
        ProjectionSpec spec;
        spec.pole = clifford.eval(0.0, 0.0);
        CHECK_THROWS_AS(sample_grid(clifford.surface(), 16, 16, spec), NearPole);
    }

    SECTION("a surface without periods cannot be gridded") {
        ParamSurface s;
        s.eval = [](double x, double y) { return Quaternion{x, y, 0, 0}; };
        CHECK_THROWS_AS(sample_grid(s, 8, 8), Error);
    }
}

TEST_CASE("mesh validation catches degenerate faces") {
    const BulgeTorusFamily F(2.0, 1.0, 2);
    MeshGrid mesh = sample_grid(F.surface(), 8, 8);
    mesh.vertices[1] = mesh.vertices[0];
    mesh.vertices[9] = mesh.vertices[0]; // collapse the first quad
    CHECK_THROWS_AS(mesh.validate(), Error);
}

TEST_CASE("OBJ round trip") {
    SECTION("a 3-vertex, 1-face mesh writes exactly four lines") {
        MeshGrid tiny;
        tiny.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
        tiny.faces = {{0, 1, 2}};
        write_obj(tiny, "tiny.obj");
        std::ifstream is("tiny.obj");
        std::string line;
        int lines = 0;
        while (std::getline(is, line)) ++lines;
        CHECK(lines == 4);
    }

    SECTION("reparse is bit-exact") {
        const BulgeTorusFamily F(2.9, 1.0, 3);
        const MeshGrid mesh = sample_grid(F.surface(), 24, 24);
        write_obj(mesh, "roundtrip.obj");
        const MeshGrid back = read_obj("roundtrip.obj");
        REQUIRE(back.vertices.size() == mesh.vertices.size());
        REQUIRE(back.faces.size() == mesh.faces.size());
        for (std::size_t i = 0; i < mesh.vertices.size(); ++i)
            for (int c = 0; c < 3; ++c) REQUIRE(back.vertices[i][c] == mesh.vertices[i][c]);
        for (std::size_t i = 0; i < mesh.faces.size(); ++i)
            REQUIRE(back.faces[i] == mesh.faces[i]);
    }

    CHECK_THROWS_AS(write_obj(MeshGrid{}, "/nonexistent-dir/x.obj"), IoFailure);
}

TEST_CASE("profile CSV") {
    SECTION("CMC family has a constant curvature column") {
        const BulgeTorusFamily F(1.7320508075688772, 1.0, 2);
        write_profiles(F, 32, "cmc_profile.csv");
        std::ifstream is("cmc_profile.csv");
        std::string header;
        std::getline(is, header);
        CHECK(header == "y,kappa0,H,Rhat");
        std::string line;
        int rows = 0;
        while (std::getline(is, line)) {
            double y, k0, H, Rhat;
            REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &y, &k0, &H, &Rhat) == 4);
            CHECK(std::abs(H - 1.0 / 1.7320508075688772) < 1e-12);
            ++rows;
        }
        CHECK(rows == 32);
    }

    SECTION("first row of the 2-bulge profile carries H(0) at full precision") {
        const BulgeTorusFamily F(2.0, 1.0, 2);
        write_profiles(F, 8, "bulge_profile.csv");
        std::ifstream is("bulge_profile.csv");
        std::string header, first;
        std::getline(is, header);
        std::getline(is, first);
        double y, k0, H, Rhat;
        REQUIRE(std::sscanf(first.c_str(), "%lf,%lf,%lf,%lf", &y, &k0, &H, &Rhat) == 4);
        CHECK(y == 0.0);
        CHECK(H == F.mean_curvature_closed(0.0)); // 17 digits round-trip doubles
        CHECK(std::abs(H - 7.0 / 36.0) < 1e-15);
        CHECK(Rhat == 14.0);
    }
}

TEST_CASE("x-translation permutes pre-projection samples") {
    const BulgeTorusFamily F(2.0, 1.0, 2);
    const int nx = 24;
    for (int i = 0; i < nx; ++i) {
        const double x = i / (F.u() * nx);
        const double shifted = (i + 5) % nx / (F.u() * nx);
        CHECK(dist(F.eval(x + 5.0 / (F.u() * nx), 0.37), F.eval(shifted, 0.37)) < 1e-9);
    }
}
