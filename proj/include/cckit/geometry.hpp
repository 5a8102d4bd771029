#pragma once
/*
geometry.hpp
------------
Point-mass configurations and the geometric primitives every residual
computation is built from: mutual distances, inverse cubes, oriented
tetrahedron volumes, barycenter handling.

Bodies are addressed with 1-based indices at every public interface so
that results can be compared label-for-label against the standard
subscript conventions for the Dziobek equations. Storage is 0-based.
*/

#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vec3.hpp"

namespace cckit {

// Any pair closer than this fraction of the largest separation is treated
// as a collision: inverse cubes lose all precision there and the residuals
// stop meaning anything.
inline constexpr double kCollisionRelThreshold = 1e-9;

struct Body {
    double mass = 0.0;
    Vec3 position;
};

struct Configuration {
    std::vector<Body> bodies;

    Configuration() = default;
    explicit Configuration(std::vector<Body> b) : bodies(std::move(b)) {}

    int size() const { return static_cast<int>(bodies.size()); }

    // 1-based access.
    const Body& body(int i) const {
        if (i < 1 || i > size())
            throw std::invalid_argument("body index " + std::to_string(i) +
                                        " out of range 1.." + std::to_string(size()));
        return bodies[static_cast<std::size_t>(i - 1)];
    }
    Body& body(int i) {
        return const_cast<Body&>(std::as_const(*this).body(i));
    }

    double total_mass() const {
        double m = 0.0;
        for (const Body& b : bodies) m += b.mass;
        return m;
    }
};

namespace detail {

inline void check_distinct(std::initializer_list<int> idx) {
    for (auto a = idx.begin(); a != idx.end(); ++a)
        for (auto b = a + 1; b != idx.end(); ++b)
            if (*a == *b)
                throw std::invalid_argument("repeated body index " + std::to_string(*a));
}

}  // namespace detail

inline double mutual_distance(const Configuration& c, int i, int j) {
    detail::check_distinct({i, j});
    return (c.body(i).position - c.body(j).position).norm();
}

// r^-3, the R_ij factor of the Dziobek equations.
inline double inverse_cube(double r) {
    if (!(r > 0.0))
        throw std::domain_error("inverse_cube requires r > 0 (collision or degenerate input)");
    return 1.0 / (r * r * r);
}

// Signed volume factor of the tetrahedron on bodies i,j,h,k:
//   (r_i - r_j) x (r_j - r_h) . (r_h - r_k),
// equal to six times the signed tetrahedron volume. Fully antisymmetric
// under index transpositions.
inline double oriented_volume(const Configuration& c, int i, int j, int h, int k) {
    detail::check_distinct({i, j, h, k});
    const Vec3& ri = c.body(i).position;
    const Vec3& rj = c.body(j).position;
    const Vec3& rh = c.body(h).position;
    const Vec3& rk = c.body(k).position;
    return triple(ri - rj, rj - rh, rh - rk);
}

inline Vec3 barycenter(const Configuration& c) {
    double m = c.total_mass();
    if (!(m > 0.0)) throw std::domain_error("barycenter requires positive total mass");
    Vec3 s;
    for (const Body& b : c.bodies) s += b.mass * b.position;
    return s / m;
}

// Translate so the barycenter sits at the origin. Relative geometry is
// untouched.
inline Configuration recenter(const Configuration& c) {
    Vec3 bc = barycenter(c);
    Configuration out = c;
    for (Body& b : out.bodies) b.position -= bc;
    return out;
}

inline double largest_distance(const Configuration& c) {
    double mx = 0.0;
    for (int i = 1; i <= c.size(); ++i)
        for (int j = i + 1; j <= c.size(); ++j)
            mx = std::max(mx, mutual_distance(c, i, j));
    return mx;
}

// Full well-formedness check: finite data, nonnegative masses, and no pair
// closer than the collision threshold.
inline void validate(const Configuration& c) {
    if (c.size() < 1) throw std::invalid_argument("configuration has no bodies");
    for (int i = 1; i <= c.size(); ++i) {
        const Body& b = c.body(i);
        if (!b.position.finite())
            throw std::invalid_argument("body " + std::to_string(i) + " has non-finite position");
        if (!std::isfinite(b.mass) || b.mass < 0.0)
            throw std::invalid_argument("body " + std::to_string(i) + " has invalid mass");
    }
    if (c.size() < 2) return;
    double mx = 0.0, mn = 0.0;
    int mni = 0, mnj = 0;
    for (int i = 1; i <= c.size(); ++i)
        for (int j = i + 1; j <= c.size(); ++j) {
            double r = mutual_distance(c, i, j);
            if (r > mx) mx = r;
            if (mni == 0 || r < mn) { mn = r; mni = i; mnj = j; }
        }
    if (mn < kCollisionRelThreshold * mx)
        throw std::domain_error("bodies " + std::to_string(mni) + " and " + std::to_string(mnj) +
                                " are in collision (r = " + std::to_string(mn) + ")");
}

}  // namespace cckit
