#pragma once
/*
central.hpp
-----------
Direct central-configuration test from the definition: a configuration is
central when accel_i + lambda * r_i = 0 for every body, with
lambda = U / (2 I) > 0 in the barycentric frame.

Sign convention. The defining equation is sometimes written with the
opposite sign on lambda, but Euler's identity for the degree -1 potential,
sum_i m_i (accel_i . r_i) = -U, forces the acceleration to point inward;
accel_i = -lambda r_i with lambda > 0 is the convention that makes the
regular-octahedron residual vanish, and it is the one used everywhere here.
*/

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "format.hpp"
#include "geometry.hpp"

namespace cckit {

// U = sum_{i<j} m_i m_j / r_ij  (positive for at least two positive masses).
inline double potential(const Configuration& c) {
    if (c.size() < 2) throw std::invalid_argument("potential requires at least 2 bodies");
    validate(c);
    double u = 0.0;
    for (int i = 1; i <= c.size(); ++i)
        for (int j = i + 1; j <= c.size(); ++j)
            u += c.body(i).mass * c.body(j).mass / mutual_distance(c, i, j);
    return u;
}

// I = 1/2 sum m_i |r_i|^2 about the origin; callers recenter first when the
// barycentric value is wanted.
inline double moment_of_inertia(const Configuration& c) {
    double s = 0.0;
    for (const Body& b : c.bodies) s += b.mass * b.position.norm2();
    return 0.5 * s;
}

// Acceleration kernel over raw arrays, shared with the integrator so both
// paths evaluate exactly the same right-hand side. Fixed summation order.
inline void accelerations_into(const std::vector<double>& masses,
                               const std::vector<Vec3>& positions,
                               std::vector<Vec3>& out) {
    const std::size_t n = masses.size();
    out.assign(n, Vec3{});
    double mx2 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            mx2 = std::max(mx2, (positions[i] - positions[j]).norm2());
    const double collide2 = kCollisionRelThreshold * kCollisionRelThreshold * mx2;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            Vec3 dv = positions[j] - positions[i];
            double r2 = dv.norm2();
            if (r2 <= collide2)
                throw std::domain_error("collision between bodies " + std::to_string(i + 1) +
                                        " and " + std::to_string(j + 1));
            out[i] += masses[j] / (r2 * std::sqrt(r2)) * dv;
        }
    }
}

inline std::vector<Vec3> accelerations(const Configuration& c) {
    validate(c);
    std::vector<double> m(c.bodies.size());
    std::vector<Vec3> x(c.bodies.size());
    for (std::size_t i = 0; i < c.bodies.size(); ++i) {
        m[i] = c.bodies[i].mass;
        x[i] = c.bodies[i].position;
    }
    std::vector<Vec3> a;
    accelerations_into(m, x, a);
    return a;
}

struct CCDiagnostics {
    double lambda_ = 0.0;  // U / (2 I)
    double U = 0.0;
    double I = 0.0;
    double max_residual = 0.0;
    std::vector<double> per_body_residual;
    double recenter_shift = 0.0;  // |barycenter| of the input, relative to L

    std::string to_text() const {
        std::string s;
        s += "lambda=" + g17(lambda_) + "\n";
        s += "U=" + g17(U) + "\n";
        s += "I=" + g17(I) + "\n";
        s += "max_residual=" + g17(max_residual) + "\n";
        for (std::size_t i = 0; i < per_body_residual.size(); ++i)
            s += "res_" + std::to_string(i + 1) + "=" + g17(per_body_residual[i]) + "\n";
        return s;
    }

    std::string csv_header() const {
        std::string s = "lambda,U,I,max_residual";
        for (std::size_t i = 0; i < per_body_residual.size(); ++i)
            s += ",res_" + std::to_string(i + 1);
        return s + "\n";
    }

    std::string to_csv_row() const {
        std::string s = g17(lambda_) + "," + g17(U) + "," + g17(I) + "," + g17(max_residual);
        for (double r : per_body_residual) s += "," + g17(r);
        return s + "\n";
    }
};

// Per-body residual |accel_i + lambda r_i| / (lambda L), L = max |r_i|,
// evaluated in the barycentric frame (the input is recentered internally;
// the applied shift is reported in the diagnostics).
inline CCDiagnostics cc_residual(const Configuration& input) {
    validate(input);
    Configuration c = recenter(input);
    CCDiagnostics d;
    d.U = potential(c);
    d.I = moment_of_inertia(c);
    if (!(d.I > 0.0)) throw std::domain_error("zero moment of inertia (all mass at the origin)");
    d.lambda_ = d.U / (2.0 * d.I);

    std::vector<Vec3> acc = accelerations(c);
    double L = 0.0;
    for (const Body& b : c.bodies) L = std::max(L, b.position.norm());
    d.recenter_shift = barycenter(input).norm() / L;

    d.per_body_residual.resize(c.bodies.size());
    for (std::size_t i = 0; i < c.bodies.size(); ++i) {
        Vec3 r = acc[i] + d.lambda_ * c.bodies[i].position;
        d.per_body_residual[i] = r.norm() / (d.lambda_ * L);
        d.max_residual = std::max(d.max_residual, d.per_body_residual[i]);
    }
    return d;
}

}  // namespace cckit
