#include <algorithm>

#include <catch2/catch_amalgamated.hpp>

#include <cckit/cckit.hpp>

#include "support/generators.hpp"

using namespace cckit;
using Catch::Approx;
using testsupport::octahedron_params;
using testsupport::random_configuration;

TEST_CASE("potential", "[central]") {
    SECTION("two unit masses at distance 2") {
        Configuration c;
        c.bodies = {{1, {1, 0, 0}}, {1, {-1, 0, 0}}};
        REQUIRE(potential(c) == 0.5);
    }
    SECTION("octahedron pair sum: 12 edges at sqrt6, 3 diagonals at 2 sqrt3") {
        Configuration c = build(octahedron_params(0.0));
        double expected = 12.0 / std::sqrt(6.0) + 3.0 / (2.0 * std::sqrt(3.0));
        REQUIRE(potential(c) == Approx(expected).epsilon(1e-14));
    }
    SECTION("homogeneity of degree -1") {
        std::mt19937_64 rng(7);
        Configuration c = random_configuration(6, rng);
        Configuration s = testsupport::transformed(c, nullptr, {0, 0, 0}, 2.5);
        REQUIRE(potential(s) == Approx(potential(c) / 2.5).epsilon(1e-13));
    }
}

TEST_CASE("moment of inertia", "[central]") {
    SECTION("octahedron gives 9 regardless of the central mass") {
        for (double m7 : {0.0, 1.0, 7.3}) {
            Configuration c = build(octahedron_params(m7));
            REQUIRE(moment_of_inertia(c) == Approx(9.0).epsilon(1e-14));
        }
    }
    SECTION("symmetric pair") {
        Configuration c;
        c.bodies = {{1, {1, 0, 0}}, {1, {-1, 0, 0}}};
        REQUIRE(moment_of_inertia(c) == 1.0);
    }
    SECTION("scales with the square of the size") {
        std::mt19937_64 rng(11);
        Configuration c = random_configuration(5, rng);
        Configuration s = testsupport::transformed(c, nullptr, {0, 0, 0}, 3.0);
        REQUIRE(moment_of_inertia(s) == Approx(9.0 * moment_of_inertia(c)).epsilon(1e-13));
    }
}

TEST_CASE("accelerations", "[central]") {
    SECTION("two-body inverse square") {
        Configuration c;
        c.bodies = {{1, {1, 0, 0}}, {1, {-1, 0, 0}}};
        auto a = accelerations(c);
        REQUIRE(a[0].x == Approx(-0.25).epsilon(1e-15));
        REQUIRE(a[0].y == 0.0);
        REQUIRE(a[1].x == Approx(0.25).epsilon(1e-15));
    }
    SECTION("radial on the octahedron for any central mass") {
        Configuration c = build(octahedron_params(2.7));
        auto a = accelerations(c);
        for (int i = 1; i <= 6; ++i) {
            Vec3 r = c.body(i).position;
            REQUIRE(a[i - 1].cross(r).norm() < 1e-12 * a[i - 1].norm() * r.norm());
        }
    }
    SECTION("force sum vanishes") {
        std::mt19937_64 rng(13);
        for (int rep = 0; rep < 10; ++rep) {
            Configuration c = random_configuration(6, rng);
            auto a = accelerations(c);
            Vec3 p;
            double scale = 0.0;
            for (int i = 0; i < 6; ++i) {
                p += c.bodies[i].mass * a[i];
                scale += c.bodies[i].mass * a[i].norm();
            }
            REQUIRE(p.norm() < 1e-12 * scale);
        }
    }
}

TEST_CASE("Euler identity fixes the sign convention", "[central]") {
    // sum_i m_i (accel_i . r_i) = -U for the degree -1 potential.
    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 25; ++rep) {
        Configuration c = recenter(random_configuration(5, rng));
        auto a = accelerations(c);
        double s = 0.0;
        for (int i = 0; i < 5; ++i) s += c.bodies[i].mass * a[i].dot(c.bodies[i].position);
        REQUIRE(s == Approx(-potential(c)).epsilon(1e-12));
    }
}

TEST_CASE("cc_residual on the octahedron", "[central]") {
    SECTION("central for m7 = 0 and m7 = 5") {
        Configuration c0 = build(octahedron_params(0.0));
        CCDiagnostics d0 = cc_residual(c0);
        REQUIRE(d0.max_residual <= 1e-12);
        REQUIRE(d0.lambda_ == Approx(d0.U / (2.0 * d0.I)).epsilon(1e-15));
        REQUIRE(d0.lambda_ ==
                Approx((2.0 * std::sqrt(6.0) + std::sqrt(3.0) / 2.0) / 18.0).epsilon(1e-13));

        CCDiagnostics d5 = cc_residual(build(octahedron_params(5.0)));
        REQUIRE(d5.max_residual <= 1e-12);
        // the central mass adds a radial m7 / |r|^3 term with |r| = sqrt(3)
        REQUIRE(d5.lambda_ ==
                Approx(d0.lambda_ + 5.0 * std::pow(3.0, -1.5)).epsilon(1e-13));
    }
    SECTION("far from central off the locus") {
        TwistedPrismParams p;
        p.l = 2.0;
        p.d = 1.0;
        REQUIRE(cc_residual(build(p)).max_residual > 1e-3);
    }
}

TEST_CASE("cc_residual invariances", "[central]") {
    std::mt19937_64 rng(19);
    Configuration c = recenter(random_configuration(6, rng));
    CCDiagnostics base = cc_residual(c);
    REQUIRE(base.lambda_ > 0.0);

    SECTION("rotation leaves lambda and the residual alone, accelerations co-rotate") {
        for (int rep = 0; rep < 10; ++rep) {
            auto rot = testsupport::random_rotation(rng);
            Configuration r = testsupport::transformed(c, &rot, {0, 0, 0});
            CCDiagnostics d = cc_residual(r);
            REQUIRE(d.lambda_ == Approx(base.lambda_).epsilon(1e-12));
            REQUIRE(d.max_residual == Approx(base.max_residual).margin(1e-12));
            auto a0 = accelerations(c);
            auto a1 = accelerations(r);
            for (int i = 0; i < 6; ++i)
                REQUIRE((a1[i] - rot.apply(a0[i])).norm() < 1e-12 * a0[i].norm());
        }
    }
    SECTION("automatic recentering") {
        Configuration shifted = testsupport::transformed(c, nullptr, {3, -1, 2});
        CCDiagnostics d = cc_residual(shifted);
        REQUIRE(d.lambda_ == Approx(base.lambda_).epsilon(1e-12));
        REQUIRE(d.max_residual == Approx(base.max_residual).margin(1e-12));
        REQUIRE(d.recenter_shift > 1e-12);
    }
}

TEST_CASE("diagnostics serialization", "[central]") {
    CCDiagnostics d = cc_residual(build(octahedron_params(1.0)));
    std::string text = d.to_text();
    REQUIRE(text.find("lambda=") != std::string::npos);
    REQUIRE(text.find("res_7=") != std::string::npos);
    std::string header = d.csv_header();
    REQUIRE(header == "lambda,U,I,max_residual,res_1,res_2,res_3,res_4,res_5,res_6,res_7\n");
    std::string row = d.to_csv_row();
    REQUIRE(std::count(row.begin(), row.end(), ',') == 10);
}
