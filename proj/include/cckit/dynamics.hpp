#pragma once
/*
dynamics.hpp
------------
Desk-scale demonstration that a central configuration released from rest
collapses homothetically: positions stay r_i(t) = phi(t) r_i(0) while the
scale factor obeys the scalar law phi'' = -lambda / phi^2, which reaches
zero at t_c = pi / (2 sqrt(2 lambda)).

Fixed-step classical RK4 on the flat (positions, velocities) state; the
right-hand side is the shared acceleration kernel from central.hpp, so the
integrator and the residual test see exactly the same forces.
*/

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "central.hpp"
#include "format.hpp"
#include "geometry.hpp"

namespace cckit {

// Scale-free shape metric: the largest relative change of any mutual
// distance after dividing out the reference pair (1,2).
inline double shape_deviation(const Configuration& reference, const std::vector<Vec3>& current) {
    const int n = reference.size();
    if (static_cast<int>(current.size()) != n)
        throw std::invalid_argument("shape_deviation: body count mismatch");
    if (n < 2) throw std::invalid_argument("shape_deviation needs at least 2 bodies");
    const double ref12 = mutual_distance(reference, 1, 2);
    const double cur12 = (current[0] - current[1]).norm();
    if (!(cur12 > 0.0)) throw std::domain_error("reference pair collided");
    double worst = 0.0;
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            if (i == 1 && j == 2) continue;
            double r0 = mutual_distance(reference, i, j);
            double rt = (current[static_cast<std::size_t>(i - 1)] -
                         current[static_cast<std::size_t>(j - 1)]).norm();
            if (!(rt > 0.0)) throw std::domain_error("collision in current positions");
            worst = std::max(worst, std::abs((rt / cur12) / (r0 / ref12) - 1.0));
        }
    }
    return worst;
}

struct TrajectoryStats {
    std::vector<double> times;
    std::vector<double> scale_factor;      // phi(t) = |r1(t)| / |r1(0)|
    std::vector<double> shape_deviation;
    std::vector<double> energy_rel_drift;
    std::vector<Vec3> final_positions;
    std::vector<Vec3> final_velocities;
    double max_shape_deviation = 0.0;
    double collapse_time_estimate = std::numeric_limits<double>::quiet_NaN();
    std::string halt_reason;               // empty when the horizon was reached

    std::string to_csv() const {
        std::string s = "t,phi,shape_deviation,energy_rel_drift\n";
        for (std::size_t k = 0; k < times.size(); ++k)
            s += g17(times[k]) + "," + g17(scale_factor[k]) + "," +
                 g17(shape_deviation[k]) + "," + g17(energy_rel_drift[k]) + "\n";
        return s;
    }
};

// Integrate the N-body system from rest over [0, t_end] with fixed step dt.
// Every step is recorded. If a step produces a collision the run is
// truncated and the reason recorded. The collapse-time estimate comes from
// the endpoint via the energy relation of the homothetic law,
// lambda_est = phi_dot^2 / (2 (1/phi - 1)), t_c = pi / (2 sqrt(2 lambda_est)).
inline TrajectoryStats integrate_from_rest(const Configuration& config, double t_end, double dt) {
    validate(config);
    if (!(t_end > 0.0) || !(dt > 0.0)) throw std::invalid_argument("t_end and dt must be positive");
    const std::size_t n = config.bodies.size();
    if (n < 2) throw std::invalid_argument("need at least 2 bodies");

    std::vector<double> m(n);
    std::vector<Vec3> x(n), v(n);
    for (std::size_t i = 0; i < n; ++i) {
        m[i] = config.bodies[i].mass;
        x[i] = config.bodies[i].position;
    }
    const double r1_0 = x[0].norm();
    if (!(r1_0 > 0.0))
        throw std::domain_error("body 1 sits at the origin; phi(t) is undefined");

    Configuration centered = recenter(config);
    const double U0 = potential(centered);
    double kinetic = 0.0;  // starts from rest
    const double E0 = kinetic - U0;

    TrajectoryStats stats;
    const int steps = static_cast<int>(std::ceil(t_end / dt - 1e-12));
    stats.times.reserve(static_cast<std::size_t>(steps) + 1);
    auto record = [&](double t) {
        stats.times.push_back(t);
        stats.scale_factor.push_back(x[0].norm() / r1_0);
        double dev = shape_deviation(config, x);
        stats.shape_deviation.push_back(dev);
        stats.max_shape_deviation = std::max(stats.max_shape_deviation, dev);
        Configuration cur = config;
        for (std::size_t i = 0; i < n; ++i) cur.bodies[i].position = x[i];
        double T = 0.0;
        for (std::size_t i = 0; i < n; ++i) T += 0.5 * m[i] * v[i].norm2();
        double E = T - potential(cur);
        stats.energy_rel_drift.push_back(std::abs((E - E0) / E0));
    };
    record(0.0);

    // Collision / resolvability guards. A uniform (homothetic) shrink never
    // crosses the configuration-relative collision threshold, so the
    // integrator works with the initial scale: separations below 1e-9 of the
    // starting size, or a step that moves a body by more than half the
    // current minimum separation, end the run.
    const double floor_dist = 1e-9 * largest_distance(config);
    auto min_separation = [&]() {
        double mn = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                mn = std::min(mn, (x[i] - x[j]).norm());
        return mn;
    };

    std::vector<Vec3> a1(n), a2(n), a3(n), a4(n), xt(n);
    double t = 0.0;
    for (int s = 0; s < steps; ++s) {
        double h = std::min(dt, t_end - t);
        double vmax = 0.0;
        for (std::size_t i = 0; i < n; ++i) vmax = std::max(vmax, v[i].norm());
        double mn = min_separation();
        if (mn < floor_dist) {
            stats.halt_reason = "collision: separation " + g17(mn) + " at t=" + g17(t);
            break;
        }
        if (vmax * h > 0.5 * mn) {
            stats.halt_reason = "collision approach unresolved by the step at t=" + g17(t);
            break;
        }
        try {
            accelerations_into(m, x, a1);
            for (std::size_t i = 0; i < n; ++i) xt[i] = x[i] + 0.5 * h * v[i];
            accelerations_into(m, xt, a2);
            for (std::size_t i = 0; i < n; ++i) xt[i] = x[i] + 0.5 * h * (v[i] + 0.5 * h * a1[i]);
            accelerations_into(m, xt, a3);
            for (std::size_t i = 0; i < n; ++i) xt[i] = x[i] + h * (v[i] + 0.5 * h * a2[i]);
            accelerations_into(m, xt, a4);
        } catch (const std::domain_error& e) {
            stats.halt_reason = std::string(e.what()) + " at t=" + g17(t);
            break;
        }
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += h * (v[i] + h / 6.0 * (a1[i] + a2[i] + a3[i]));
            v[i] += h / 6.0 * (a1[i] + 2.0 * a2[i] + 2.0 * a3[i] + a4[i]);
        }
        t += h;
        try {
            record(t);
        } catch (const std::domain_error& e) {
            stats.halt_reason = std::string(e.what()) + " at t=" + g17(t);
            break;
        }
    }
    stats.final_positions = x;
    stats.final_velocities = v;

    // Endpoint-based collapse-time estimate; left NaN for truncated runs,
    // where the endpoint no longer follows the homothetic law.
    double phi = stats.scale_factor.back();
    if (stats.halt_reason.empty() && stats.times.back() > 0.0 && phi < 1.0 && phi > 0.0) {
        double phidot = dot(x[0], v[0]) / (x[0].norm() * r1_0);
        if (phidot < 0.0) {
            double lambda_est = 0.5 * phidot * phidot / (1.0 / phi - 1.0);
            stats.collapse_time_estimate = M_PI / (2.0 * std::sqrt(2.0 * lambda_est));
        }
    }
    return stats;
}

}  // namespace cckit
