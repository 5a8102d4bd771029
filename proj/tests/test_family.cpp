#include <cmath>

#include <catch2/catch_amalgamated.hpp>

#include <cckit/cckit.hpp>

#include "support/generators.hpp"

using namespace cckit;
using Catch::Approx;
using testsupport::octahedron_params;

TEST_CASE("coordinates of the built family", "[family]") {
    TwistedPrismParams p;
    p.l = 1.0;
    p.d = 1.0;
    Configuration c = build(p);

    REQUIRE(c.size() == 7);
    REQUIRE(c.body(2).position.x == Approx(-0.5).margin(1e-15));
    REQUIRE(c.body(2).position.y == Approx(std::sqrt(3.0) / 2.0).margin(1e-15));
    REQUIRE(c.body(2).position.z == -1.0);
    REQUIRE(c.body(7).position.norm() == 0.0);

    SECTION("bodies 4,5,6 are the antipodes of 1,2,3") {
        for (int i = 1; i <= 3; ++i)
            REQUIRE((c.body(i).position + c.body(i + 3).position).norm() < 1e-15);
    }

    SECTION("top view: the triangles differ by a pi/3 turn") {
        // rotating the projection of bodies 1,2,3 by pi/3 lands on 6,4,5
        const double ca = 0.5, sa = std::sqrt(3.0) / 2.0;  // cos, sin of pi/3
        int image[4] = {0, 6, 4, 5};
        for (int i = 1; i <= 3; ++i) {
            Vec3 r = c.body(i).position;
            Vec3 rot{ca * r.x - sa * r.y, sa * r.x + ca * r.y, 0.0};
            Vec3 top = c.body(image[i]).position;
            top.z = 0.0;
            REQUIRE((rot - top).norm() < 1e-12);
        }
    }
}

TEST_CASE("octahedron defect", "[family]") {
    SECTION("closed form matches the distance route") {
        std::mt19937_64 rng(43);
        for (int rep = 0; rep < 20; ++rep) {
            TwistedPrismParams p;
            p.l = uniform_in(rng, 0.5, 3.0);
            p.d = uniform_in(rng, 0.5, 3.0);
            Configuration c = build(p);
            double via_distances = mutual_distance(c, 1, 3) - mutual_distance(c, 3, 4);
            REQUIRE(octahedron_defect(p) == Approx(via_distances).margin(1e-12));
        }
    }
    SECTION("vanishes exactly on the locus") {
        TwistedPrismParams p;
        p.l = std::sqrt(2.0);
        p.d = 1.0;
        REQUIRE(std::abs(octahedron_defect(p)) < 1e-15);
    }
    SECTION("value at l = d = 1") {
        TwistedPrismParams p;
        p.l = 1.0;
        p.d = 1.0;
        REQUIRE(octahedron_defect(p) ==
                Approx(std::sqrt(3.0) - std::sqrt(5.0)).epsilon(1e-14));
    }
    SECTION("scale invariance of the locus") {
        TwistedPrismParams p;
        p.l = 2.0 * std::sqrt(2.0);
        p.d = 2.0;
        REQUIRE(std::abs(octahedron_defect(p)) < 1e-14);
    }
}

TEST_CASE("is_regular_octahedron", "[family]") {
    SECTION("true on the locus for any masses") {
        TwistedPrismParams p = octahedron_params(0.0);
        p.masses = {3, 1, 4, 1, 5, 9};
        REQUIRE(is_regular_octahedron(build(p), 1e-9));

        Configuration c = build(octahedron_params(2.0));
        REQUIRE(is_regular_octahedron(c, 1e-9));
        SECTION("all twelve edges are sqrt6") {
            for (auto [a, b] : octahedron_edges())
                REQUIRE(mutual_distance(c, a, b) == Approx(std::sqrt(6.0)).epsilon(1e-14));
        }
    }
    SECTION("false off the locus") {
        TwistedPrismParams p;
        p.l = 2.0;
        p.d = 1.0;
        REQUIRE_FALSE(is_regular_octahedron(build(p), 1e-9));
    }
    SECTION("false with the center displaced") {
        Configuration c = build(octahedron_params(1.0));
        c.body(7).position = {0, 0, 0.1};
        REQUIRE_FALSE(is_regular_octahedron(c, 1e-9));
    }
    SECTION("false for other body counts") {
        REQUIRE_FALSE(is_regular_octahedron(testsupport::tetrahedron_with_center(1.0), 1e-9));
    }
}

TEST_CASE("distance identities used by the symmetry analysis", "[family]") {
    std::mt19937_64 rng(47);
    for (int rep = 0; rep < 10; ++rep) {
        TwistedPrismParams p;
        p.l = uniform_in(rng, 0.5, 3.0);
        p.d = uniform_in(rng, 0.5, 3.0);
        Configuration c = build(p);

        auto R = [&](int a, int b) { return inverse_cube(mutual_distance(c, a, b)); };
        REQUIRE(R(1, 7) == Approx(R(2, 7)).epsilon(1e-14));
        REQUIRE(R(1, 6) == Approx(R(2, 6)).epsilon(1e-14));
        REQUIRE(R(2, 4) == Approx(R(1, 5)).epsilon(1e-14));
        REQUIRE(R(1, 4) == Approx(R(2, 5)).epsilon(1e-14));
        for (int i = 2; i <= 6; ++i)
            REQUIRE(mutual_distance(c, 1, 7) == Approx(mutual_distance(c, i, 7)).epsilon(1e-14));
    }
}

TEST_CASE("volume identities used by the symmetry analysis", "[family]") {
    std::mt19937_64 rng(53);
    for (int rep = 0; rep < 10; ++rep) {
        TwistedPrismParams p;
        p.l = uniform_in(rng, 0.5, 3.0);
        p.d = uniform_in(rng, 0.5, 3.0);
        Configuration c = build(p);

        double scale = std::abs(oriented_volume(c, 1, 2, 3, 4));
        REQUIRE(oriented_volume(c, 1, 2, 3, 4) ==
                Approx(oriented_volume(c, 1, 2, 3, 5)).margin(1e-12 * scale));
        REQUIRE(oriented_volume(c, 1, 4, 2, 6) ==
                Approx(-oriented_volume(c, 1, 4, 2, 3)).margin(1e-12 * scale));
        REQUIRE(std::abs(oriented_volume(c, 1, 4, 2, 5)) < 1e-12 * scale);
        REQUIRE(std::abs(oriented_volume(c, 1, 6, 7, 3)) < 1e-12 * scale);
        REQUIRE(std::abs(oriented_volume(c, 1, 6, 7, 4)) < 1e-12 * scale);
        REQUIRE(oriented_volume(c, 1, 6, 7, 2) ==
                Approx(-oriented_volume(c, 1, 6, 7, 5)).margin(1e-12 * scale));
    }
}

TEST_CASE("family parameter validation", "[family]") {
    TwistedPrismParams p;
    SECTION("positivity of the shape parameters") {
        p.l = 0.0;
        REQUIRE_THROWS_AS(build(p), std::invalid_argument);
        p.l = 1.0;
        p.d = -2.0;
        REQUIRE_THROWS_AS(build(p), std::invalid_argument);
    }
    SECTION("mass constraints") {
        p.masses[3] = -0.5;
        REQUIRE_THROWS_AS(build(p), std::invalid_argument);
        p.masses = {0, 0, 0, 0, 0, 0};
        p.m7 = 0.0;
        REQUIRE_THROWS_AS(build(p), std::invalid_argument);
    }
    SECTION("massless center is allowed: the six-body octahedron alone is central") {
        Configuration c = build(octahedron_params(0.0));
        REQUIRE(cc_residual(c).max_residual <= 1e-12);
    }
}

TEST_CASE("probe generation", "[family]") {
    SECTION("deterministic for a fixed seed") {
        auto a = random_prism_probes(4, 99, ProbeStyle::random_masses);
        auto b = random_prism_probes(4, 99, ProbeStyle::random_masses);
        for (int k = 0; k < 4; ++k)
            for (int i = 1; i <= 7; ++i) {
                REQUIRE(a[k].body(i).mass == b[k].body(i).mass);
                REQUIRE((a[k].body(i).position - b[k].body(i).position).norm() == 0.0);
            }
    }
    SECTION("locus probes really sit on the locus") {
        auto probes = random_prism_probes(5, 3, ProbeStyle::octahedron_locus);
        for (const auto& c : probes) REQUIRE(is_regular_octahedron(c, 1e-12));
    }
    SECTION("bad count") {
        REQUIRE_THROWS_AS(random_prism_probes(0, 1, ProbeStyle::random_masses),
                          std::invalid_argument);
    }
}
