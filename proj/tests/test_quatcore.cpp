#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "dtori/quaternion.hpp"

using namespace dtori;

namespace {
constexpr double kSqrt3 = 1.7320508075688772;
}

TEST_CASE("multiplication table follows the Hamilton convention") {
    CHECK(dist(kI * kJ, kK) == 0.0);
    CHECK(dist(kJ * kK, kI) == 0.0);
    CHECK(dist(kK * kI, kJ) == 0.0);
    CHECK(dist(kJ * kI, -kK) == 0.0);
    CHECK(dist(kI * kI, -kOne) == 0.0);
    CHECK(dist(kJ * kJ, -kOne) == 0.0);
    CHECK(dist(kK * kK, -kOne) == 0.0);
}

TEST_CASE("k times a Span{1,i} value lands in Span{j,k}") {
    // k (0.8 - 0.6 i) = 0.8 k - 0.6 j, the combination used by the sections
    const Quaternion q = kK * embed_i(Complex{0.8, -0.6});
    CHECK(approx(q, Quaternion{0, 0, -0.6, 0.8}, 1e-15));
}

TEST_CASE("norm is multiplicative to a few ulps") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (int i = 0; i < 2000; ++i) {
        const Quaternion a{d(gen), d(gen), d(gen), d(gen)};
        const Quaternion b{d(gen), d(gen), d(gen), d(gen)};
        const double prod = a.norm() * b.norm();
        REQUIRE(std::abs((a * b).norm() - prod) <= 4.0 * eps * std::max(prod, 1.0));
    }
}

TEST_CASE("q conj(q) recovers the squared norm") {
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    for (int i = 0; i < 500; ++i) {
        const Quaternion q{d(gen), d(gen), d(gen), d(gen)};
        const Quaternion p = q * q.conj();
        CHECK(std::abs(p.w - q.norm2()) <= 1e-14 * std::max(1.0, q.norm2()));
        CHECK(std::abs(p.x) + std::abs(p.y) + std::abs(p.z) <= 1e-14);
    }
}

TEST_CASE("inverse") {
    CHECK(approx(kOne.inverse(), kOne, 0.0));
    CHECK(approx(kJ.inverse(), -kJ, 0.0));
    const Quaternion half{0.5, 0.5, 0.5, 0.5};
    CHECK(approx(half.inverse(), Quaternion{0.5, -0.5, -0.5, -0.5}, 1e-15));

    std::mt19937_64 gen(9);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (int i = 0; i < 500; ++i) {
        const Quaternion q{d(gen), d(gen), d(gen), d(gen)};
        if (q.norm() < 0.1) continue;
        CHECK(dist(q * q.inverse(), kOne) <= 8.0 * eps / q.norm());
    }

    CHECK_THROWS_AS(Quaternion{}.inverse(), ZeroQuaternion);
}

TEST_CASE("exp_unit") {
    CHECK(approx(exp_unit(kJ, 0.0), kOne, 0.0));
    CHECK(approx(exp_unit(kJ, kPi / 2.0), kJ, 1e-15));
    CHECK(approx(exp_unit(kJ, kPi / 3.0), Quaternion{0.5, 0, kSqrt3 / 2.0, 0}, 1e-15));
    CHECK_THROWS_AS(exp_unit(Quaternion{0, 0, 2, 0}, 1.0), NotUnitAxis);
    CHECK_THROWS_AS(exp_unit(Quaternion{0.5, 0, 1, 0}, 1.0), NotUnitAxis);

    std::mt19937_64 gen(10);
    std::uniform_real_distribution<double> d(-6.0, 6.0);
    for (int i = 0; i < 300; ++i) {
        Quaternion axis{0, d(gen), d(gen), d(gen)};
        if (axis.norm() == 0.0) continue;
        axis = axis / axis.norm();
        const double t1 = d(gen), t2 = d(gen);
        CHECK(std::abs(exp_unit(axis, t1).norm() - 1.0) <= 1e-15);
        CHECK(approx(exp_unit(axis, t1) * exp_unit(axis, t2), exp_unit(axis, t1 + t2), 1e-12));
    }
}

TEST_CASE("real pairing") {
    CHECK(real_pairing(Complex{2, -1}, Complex{0.25, 0}) == 0.5);
    // dual-lattice pairing <u - iv, i/v> = -1 for any u, v > 0
    for (double u : {0.7, 2.0, 3.5})
        for (double v : {0.4, 1.0, 2.2})
            CHECK(approx(real_pairing(Complex{u, -v}, Complex{0, 1.0 / v}), -1.0, 1e-15));
    CHECK(real_pairing(Complex{3.7, 1.1}, Complex{0, 0}) == 0.0);

    // bilinear and symmetric
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    for (int i = 0; i < 200; ++i) {
        const Complex a{d(gen), d(gen)}, b{d(gen), d(gen)}, c{d(gen), d(gen)};
        const double s = d(gen);
        CHECK(approx(real_pairing(a, b), real_pairing(b, a), 1e-14));
        CHECK(approx(real_pairing(a + s * c, b), real_pairing(a, b) + s * real_pairing(c, b),
                     1e-13));
    }
}

TEST_CASE("e_gamma") {
    CHECK(approx(e_gamma(Complex{2, -1}, Complex{0, 0}), kOne, 0.0));
    CHECK(approx(e_gamma(Complex{2, -1}, Complex{0.25, 0}), -kOne, 1e-15));
    for (double a : {0.5, 1.0, 3.0})
        CHECK(approx(e_gamma(Complex{0, a}, Complex{0.77, 1.0 / (2.0 * a)}), -kOne, 1e-12));

    std::mt19937_64 gen(12);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    for (int i = 0; i < 200; ++i) {
        const Complex g1{d(gen), d(gen)}, g2{d(gen), d(gen)}, z{d(gen), d(gen)};
        const Quaternion e = e_gamma(g1, z);
        CHECK(std::abs(e.norm() - 1.0) <= 1e-15);
        CHECK(in_span_1i(e, 0.0));
        CHECK(approx(e_gamma(g1 + g2, z), e * e_gamma(g2, z), 1e-12));
    }
}

TEST_CASE("real part is conjugation invariant") {
    std::mt19937_64 gen(13);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        Quaternion q{d(gen), d(gen), d(gen), d(gen)};
        if (q.norm() < 0.1) continue;
        q = q / q.norm();
        const Quaternion w{d(gen), d(gen), d(gen), d(gen)};
        CHECK(std::abs((q * w * q.inverse()).re() - w.re()) <= 1e-12);
    }
}

TEST_CASE("swap rule through k") {
    std::mt19937_64 gen(14);
    std::uniform_real_distribution<double> d(-8.0, 8.0);
    for (int i = 0; i < 300; ++i) {
        const double t = d(gen);
        CHECK(approx(kK * exp_i(t), exp_i(-t) * kK, 1e-12));
        CHECK(approx(kI * exp_j(t), exp_j(-t) * kI, 1e-12));
    }
}

TEST_CASE("span predicates and embeddings") {
    CHECK(in_span_1j(embed_j(Complex{1.5, -0.5})));
    CHECK(in_span_1i(embed_i(Complex{1.5, -0.5})));
    CHECK_FALSE(in_span_1j(kI));
    CHECK_FALSE(in_span_1i(kJ));
    CHECK(in_span_1jk(Quaternion{1, 0, 2, 3}));
    CHECK_FALSE(in_span_1jk(kI));
}
