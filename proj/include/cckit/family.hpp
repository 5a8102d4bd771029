#pragma once
/*
family.hpp
----------
The twisted two-triangle seven-body family: two congruent equilateral
triangles of circumradius l in the planes z = -d and z = +d, the upper
triangle rotated by pi/3 against the lower one, and a seventh body on the
axis midway between the planes. Explicit coordinates:

    r1 = ( l,        0,      -d)      r4 = (-l,        0,       d)
    r2 = (-l/2,  sqrt3 l/2,  -d)      r5 = ( l/2, -sqrt3 l/2,   d)
    r3 = (-l/2, -sqrt3 l/2,  -d)      r6 = ( l/2,  sqrt3 l/2,   d)
    r7 = (0, 0, 0)

Bodies 4,5,6 are the antipodes of 1,2,3. The six vertices form a regular
octahedron exactly when l = sqrt(2) d.
*/

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "dziobek.hpp"
#include "format.hpp"
#include "geometry.hpp"

namespace cckit {

struct TwistedPrismParams {
    double l = 1.0;  // triangle circumradius
    double d = 1.0;  // half plane separation
    std::array<double, 6> masses{1, 1, 1, 1, 1, 1};
    double m7 = 1.0;

    void check() const {
        if (!(l > 0.0) || !std::isfinite(l)) throw std::invalid_argument("l must be positive");
        if (!(d > 0.0) || !std::isfinite(d)) throw std::invalid_argument("d must be positive");
        double total = m7;
        for (double m : masses) {
            if (!std::isfinite(m) || m < 0.0)
                throw std::invalid_argument("masses must be finite and nonnegative");
            total += m;
        }
        if (!std::isfinite(m7) || m7 < 0.0)
            throw std::invalid_argument("m7 must be finite and nonnegative");
        if (!(total > 0.0)) throw std::invalid_argument("at least one mass must be positive");
    }
};

inline Configuration build(const TwistedPrismParams& p) {
    p.check();
    const double s3 = std::sqrt(3.0);
    std::vector<Body> bodies(7);
    bodies[0] = {p.masses[0], {p.l, 0.0, -p.d}};
    bodies[1] = {p.masses[1], {-p.l / 2.0, s3 * p.l / 2.0, -p.d}};
    bodies[2] = {p.masses[2], {-p.l / 2.0, -s3 * p.l / 2.0, -p.d}};
    bodies[3] = {p.masses[3], {-p.l, 0.0, p.d}};
    bodies[4] = {p.masses[4], {p.l / 2.0, -s3 * p.l / 2.0, p.d}};
    bodies[5] = {p.masses[5], {p.l / 2.0, s3 * p.l / 2.0, p.d}};
    bodies[6] = {p.m7, {0.0, 0.0, 0.0}};
    return Configuration{std::move(bodies)};
}

// r_13 - r_34 = sqrt(3) l - sqrt(l^2 + 4 d^2): the gap between a
// same-triangle edge and a cross-triangle edge. Zero exactly on the
// octahedron locus l = sqrt(2) d, strictly increasing in l.
inline double octahedron_defect(const TwistedPrismParams& p) {
    p.check();
    return std::sqrt(3.0) * p.l - std::sqrt(p.l * p.l + 4.0 * p.d * p.d);
}

// The twelve octahedron edges and three diagonals, by body index.
inline const std::array<std::pair<int, int>, 12>& octahedron_edges() {
    static const std::array<std::pair<int, int>, 12> e = {{{1, 2}, {1, 3}, {2, 3},
                                                           {4, 5}, {4, 6}, {5, 6},
                                                           {1, 5}, {1, 6}, {2, 4},
                                                           {2, 6}, {3, 4}, {3, 5}}};
    return e;
}

inline const std::array<std::pair<int, int>, 3>& octahedron_diagonals() {
    static const std::array<std::pair<int, int>, 3> d = {{{1, 4}, {2, 5}, {3, 6}}};
    return d;
}

// True iff bodies 1..6 sit at the vertices of a regular octahedron (all 12
// edges equal, all 3 diagonals equal to sqrt(2) x edge, within tol relative)
// and body 7 sits at their midpoint within tol x edge.
inline bool is_regular_octahedron(const Configuration& c, double tol) {
    if (c.size() != 7) return false;
    double edge_min = 0.0, edge_max = 0.0;
    bool first = true;
    for (auto [a, b] : octahedron_edges()) {
        double r = mutual_distance(c, a, b);
        if (first) { edge_min = edge_max = r; first = false; }
        edge_min = std::min(edge_min, r);
        edge_max = std::max(edge_max, r);
    }
    if (edge_max - edge_min > tol * edge_max) return false;
    const double sqrt2_edge = std::sqrt(2.0) * edge_max;
    for (auto [a, b] : octahedron_diagonals()) {
        double r = mutual_distance(c, a, b);
        if (std::abs(r - sqrt2_edge) > tol * sqrt2_edge) return false;
    }
    Vec3 centroid;
    for (int i = 1; i <= 6; ++i) centroid += c.body(i).position;
    centroid = centroid / 6.0;
    return (c.body(7).position - centroid).norm() <= tol * edge_max;
}

// ---------------------------------------------------------------------------
// Symmetry bookkeeping tables for the family's 105 Dziobek equations.
// ---------------------------------------------------------------------------

// The 27 equations that vanish identically for every (l, d) and every mass
// choice, by the shape symmetry alone.
inline const std::vector<TripleIndex>& shape_zero_triples() {
    static const std::vector<TripleIndex> z = {
        {1, 2, 4}, {1, 2, 5}, {1, 2, 7}, {1, 3, 4}, {1, 3, 6}, {1, 3, 7},
        {1, 4, 7}, {1, 7, 4}, {2, 3, 5}, {2, 3, 6}, {2, 3, 7}, {2, 5, 7},
        {2, 7, 5}, {3, 6, 7}, {3, 7, 6}, {4, 5, 1}, {4, 5, 2}, {4, 5, 7},
        {4, 6, 1}, {4, 6, 3}, {4, 6, 7}, {4, 7, 1}, {5, 6, 2}, {5, 6, 3},
        {5, 6, 7}, {5, 7, 2}, {6, 7, 3}};
    return z;
}

// The 12 further equations that vanish identically once the six triangle
// masses are equal, still for every (l, d).
inline const std::vector<TripleIndex>& equal_mass_zero_triples() {
    static const std::vector<TripleIndex> z = {
        {1, 2, 3}, {1, 2, 6}, {1, 3, 2}, {1, 3, 5}, {2, 3, 1}, {2, 3, 4},
        {4, 5, 3}, {4, 5, 6}, {4, 6, 2}, {4, 6, 5}, {5, 6, 1}, {5, 6, 4}};
    return z;
}

// With equal triangle masses the remaining 30 equations that involve body 7
// are all proportional; the recorded factors are relative to f_167, whose
// vanishing is equivalent to the octahedron condition. Some recorded signs
// in the +-1/2 block are wrong (measure_chain flags them); the measured
// factor is the authority.
inline const std::vector<ChainLink>& center_chain() {
    static const std::vector<ChainLink> ch = {
        {{1, 6, 7}, 1.0},  {{2, 4, 7}, 1.0},  {{3, 5, 7}, 1.0},
        {{1, 5, 7}, -1.0}, {{3, 4, 7}, -1.0}, {{2, 6, 7}, -1.0},
        {{1, 7, 2}, -0.5}, {{2, 7, 3}, -0.5}, {{4, 7, 5}, -0.5},
        {{5, 7, 6}, -0.5}, {{3, 7, 1}, -0.5}, {{6, 7, 4}, -0.5},
        {{1, 7, 3}, 0.5},  {{2, 7, 1}, 0.5},  {{3, 7, 2}, 0.5},
        {{4, 7, 6}, 0.5},  {{5, 7, 4}, 0.5},  {{6, 7, 5}, 0.5},
        {{1, 7, 5}, 0.5},  {{6, 7, 1}, 0.5},  {{2, 7, 6}, 0.5},
        {{4, 7, 2}, 0.5},  {{3, 7, 4}, 0.5},  {{5, 7, 3}, 0.5},
        {{1, 7, 6}, 0.5},  {{6, 7, 2}, 0.5},  {{2, 7, 4}, 0.5},
        {{4, 7, 3}, 0.5},  {{3, 7, 5}, 0.5},  {{5, 7, 1}, 0.5}};
    return ch;
}

// The 36 equations among the six vertices alone, factors relative to f_142.
// (2,5,4) appears twice with conflicting recorded factors (+1 and -1/2);
// measure_chain reports which claim the measurement supports (+1 — the
// -1/2 slot belongs to the absent f_354).
inline const std::vector<ChainLink>& vertex_chain() {
    static const std::vector<ChainLink> ch = {
        {{1, 4, 2}, 1.0},  {{1, 4, 6}, 1.0},  {{1, 4, 3}, -1.0}, {{1, 4, 5}, -1.0},
        {{2, 5, 3}, 1.0},  {{2, 5, 1}, -1.0}, {{2, 5, 4}, 1.0},  {{2, 5, 6}, -1.0},
        {{3, 6, 1}, 1.0},  {{3, 6, 2}, -1.0}, {{3, 6, 4}, -1.0}, {{3, 6, 5}, 1.0},
        {{1, 6, 4}, -1.0}, {{2, 4, 5}, -1.0}, {{3, 5, 6}, -1.0}, {{1, 6, 3}, -1.0},
        {{2, 4, 1}, -1.0}, {{3, 5, 2}, -1.0}, {{1, 5, 2}, 1.0},  {{2, 6, 3}, 1.0},
        {{2, 6, 5}, 1.0},  {{3, 4, 1}, 1.0},  {{3, 4, 6}, 1.0},  {{1, 5, 4}, 1.0},
        {{1, 6, 2}, -0.5}, {{1, 5, 3}, 0.5},  {{2, 4, 3}, -0.5}, {{2, 6, 1}, 0.5},
        {{3, 4, 2}, 0.5},  {{3, 5, 1}, -0.5}, {{1, 6, 5}, -0.5}, {{2, 4, 6}, -0.5},
        {{2, 5, 4}, -0.5}, {{1, 5, 6}, 0.5},  {{2, 6, 4}, 0.5},  {{3, 4, 5}, 0.5}};
    return ch;
}

// ---------------------------------------------------------------------------
// Seeded probe generation for the zero-set classifier.
// ---------------------------------------------------------------------------

enum class ProbeStyle {
    random_masses,       // l, d in [0.5, 3], all seven masses in [0.1, 10]
    equal_masses,        // same, but one common triangle mass
    octahedron_locus,    // equal masses and l = sqrt(2) d
};

inline std::vector<Configuration> random_prism_probes(int count, std::uint64_t seed,
                                                      ProbeStyle style) {
    if (count < 1) throw std::invalid_argument("probe count must be positive");
    std::mt19937_64 rng(seed);
    std::vector<Configuration> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int p = 0; p < count; ++p) {
        TwistedPrismParams params;
        params.d = uniform_in(rng, 0.5, 3.0);
        params.l = style == ProbeStyle::octahedron_locus ? std::sqrt(2.0) * params.d
                                                         : uniform_in(rng, 0.5, 3.0);
        if (style == ProbeStyle::random_masses) {
            for (double& m : params.masses) m = uniform_in(rng, 0.1, 10.0);
        } else {
            double m = uniform_in(rng, 0.1, 10.0);
            params.masses.fill(m);
        }
        params.m7 = uniform_in(rng, 0.1, 10.0);
        out.push_back(build(params));
    }
    return out;
}

}  // namespace cckit
