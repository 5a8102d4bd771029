#pragma once
/*
solver.hpp
----------
Two numerical attacks on the family's central-configuration problem:

 - shape root-finding: the octahedron defect (and, as a cross-check, the
   normalized f_167 residual) changes sign exactly once on l/d in [0.5, 3];
   bracketing bisection plus a secant tail locates the root l/d = sqrt(2).

 - mass-space analysis: the 105 residuals are linear homogeneous in the
   masses, f = A m with A[(ijh), k] = (R_ik - R_jk) D_ijhk. The admissible
   mass vectors for a fixed geometry are the nullspace of A. A one-sided
   Jacobi SVD computes the small singular values with high relative
   accuracy; the Gram-matrix route (eigenvalues of A^T A) floors them near
   sqrt(machine eps) x sigma_max, far above the 1e-10 decision threshold,
   so it is not used.
*/

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "central.hpp"
#include "dziobek.hpp"
#include "family.hpp"
#include "format.hpp"
#include "geometry.hpp"

namespace cckit {

namespace detail {

struct RootResult {
    double x = 0.0;
    double fx = 0.0;
    int iterations = 0;
};

// Bracketing bisection to width 1e-6, then bracket-guarded secant steps to
// tol. Derivative-free; at most max_iter function evaluations after the
// endpoint ones.
template <class F>
RootResult find_root(F&& f, double lo, double hi, double tol, int max_iter = 200) {
    double flo = f(lo), fhi = f(hi);
    RootResult res;
    if (flo == 0.0) return {lo, 0.0, 0};
    if (fhi == 0.0) return {hi, 0.0, 0};
    if ((flo > 0.0) == (fhi > 0.0))
        throw std::domain_error("bracket [" + g17(lo) + ", " + g17(hi) +
                                "] does not straddle a sign change");
    while (hi - lo > 1e-6 && res.iterations < max_iter) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        ++res.iterations;
        if (fm == 0.0) return {mid, 0.0, res.iterations};
        if ((fm > 0.0) == (flo > 0.0)) { lo = mid; flo = fm; }
        else                           { hi = mid; fhi = fm; }
    }
    double x0 = lo, f0 = flo, x1 = hi, f1 = fhi;
    while (res.iterations < max_iter) {
        double x2;
        if (f1 != f0) {
            x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
            if (!(x2 > lo && x2 < hi)) x2 = 0.5 * (lo + hi);
        } else {
            x2 = 0.5 * (lo + hi);
        }
        double f2 = f(x2);
        ++res.iterations;
        if ((f2 > 0.0) == (flo > 0.0)) { lo = x2; flo = f2; }
        else                           { hi = x2; fhi = f2; }
        double step = std::abs(x2 - x1);
        x0 = x1; f0 = f1; x1 = x2; f1 = f2;
        if (f2 == 0.0 || step <= tol) break;
    }
    return {x1, f1, res.iterations};
}

}  // namespace detail

struct ShapeSolveResult {
    double l_over_d = 0.0;
    int iterations = 0;
    double residual_at_root = 0.0;
    std::pair<double, double> bracket{0.5, 3.0};   // in l/d units
    double cross_check_l_over_d = 0.0;             // root of the f_167 residual
};

// Locate the octahedron shape ratio. The defect is solved in the scale-free
// variable x = l/d; the f_167 route rebuilds the family at each evaluation
// and roots the normalized residual. Both must agree within 10 x tol.
inline ShapeSolveResult solve_shape(double d, double equal_mass = 1.0, double tol = 1e-12) {
    if (!(d > 0.0) || !std::isfinite(d)) throw std::invalid_argument("d must be positive");
    if (!(equal_mass > 0.0) || !std::isfinite(equal_mass))
        throw std::invalid_argument("equal_mass must be positive");

    auto defect = [](double x) { return std::sqrt(3.0) * x - std::sqrt(x * x + 4.0); };
    auto f167 = [&](double x) {
        TwistedPrismParams p;
        p.l = x * d;
        p.d = d;
        p.masses.fill(equal_mass);
        p.m7 = 0.0;
        return all_residuals(build(p)).normalized_residual({1, 6, 7});
    };

    auto primary = detail::find_root(defect, 0.5, 3.0, tol);
    auto cross = detail::find_root(f167, 0.5, 3.0, tol);
    if (std::abs(primary.x - cross.x) > 10.0 * tol)
        throw std::runtime_error("defect-based and f167-based roots disagree: " +
                                 g17(primary.x) + " vs " + g17(cross.x));

    ShapeSolveResult r;
    r.l_over_d = primary.x;
    r.iterations = primary.iterations;
    r.residual_at_root = primary.fx;
    r.bracket = {0.5, 3.0};
    r.cross_check_l_over_d = cross.x;
    return r;
}

// The Dziobek system as a matrix acting on the mass vector: one row per
// triple, one column per body, A[(ijh), k] = (R_ik - R_jk) D_ijhk for
// k outside the triple and 0 otherwise.
struct MassMatrix {
    int n = 0;
    std::vector<TripleIndex> triples;  // row order, lexicographic
    std::vector<double> entries;       // row-major

    int rows() const { return static_cast<int>(triples.size()); }
    double operator()(int r, int k) const { return entries[static_cast<std::size_t>(r) * n + k]; }

    // A . m, the raw residual of every triple for mass vector m.
    std::vector<double> apply(const std::vector<double>& m) const {
        if (static_cast<int>(m.size()) != n)
            throw std::invalid_argument("mass vector length mismatch");
        std::vector<double> out(triples.size(), 0.0);
        for (int r = 0; r < rows(); ++r)
            for (int k = 0; k < n; ++k)
                out[static_cast<std::size_t>(r)] += (*this)(r, k) * m[static_cast<std::size_t>(k)];
        return out;
    }
};

inline MassMatrix mass_matrix(const Configuration& c) {
    if (c.size() < 4) throw std::invalid_argument("mass matrix needs n >= 4");
    validate(c);
    MassMatrix A;
    A.n = c.size();
    A.triples = all_triples(A.n);
    A.entries.assign(A.triples.size() * static_cast<std::size_t>(A.n), 0.0);
    auto R = detail::inverse_cube_table(c);
    double vol_max = 0.0;
    for (std::size_t r = 0; r < A.triples.size(); ++r) {
        const TripleIndex& t = A.triples[r];
        const Vec3& ri = c.body(t.i).position;
        const Vec3& rj = c.body(t.j).position;
        const Vec3& rh = c.body(t.h).position;
        for (int k = 1; k <= A.n; ++k) {
            if (k == t.i || k == t.j || k == t.h) continue;
            double dR = R[t.i - 1][k - 1] - R[t.j - 1][k - 1];
            double vol = triple(ri - rj, rj - rh, rh - c.body(k).position);
            A.entries[r * static_cast<std::size_t>(A.n) + (k - 1)] = dR * vol;
            vol_max = std::max(vol_max, std::abs(vol));
        }
    }
    if (vol_max == 0.0)
        throw std::domain_error("planar configuration: Dziobek matrix vanishes");
    return A;
}

namespace detail {

// One-sided Jacobi SVD of an m x n matrix (m >= n): plane rotations
// orthogonalize the columns; singular values are the final column norms and
// the accumulated rotations form the right singular vectors. Small singular
// values come out with high relative accuracy.
struct JacobiSVD {
    std::vector<double> sigma;  // descending
    std::vector<std::vector<double>> V;  // V[c] = right singular vector c
};

inline JacobiSVD jacobi_svd(const MassMatrix& A) {
    const int m = A.rows(), n = A.n;
    std::vector<std::vector<double>> col(n, std::vector<double>(m));
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < n; ++c) col[c][static_cast<std::size_t>(r)] = A(r, c);
    std::vector<std::vector<double>> V(n, std::vector<double>(n, 0.0));
    for (int c = 0; c < n; ++c) V[c][static_cast<std::size_t>(c)] = 1.0;

    const double orth_tol = 1e-15;
    for (int sweep = 0; sweep < 30; ++sweep) {
        bool rotated = false;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0, apq = 0.0;
                for (int r = 0; r < m; ++r) {
                    app += col[p][r] * col[p][r];
                    aqq += col[q][r] * col[q][r];
                    apq += col[p][r] * col[q][r];
                }
                if (apq == 0.0 || std::abs(apq) <= orth_tol * std::sqrt(app) * std::sqrt(aqq))
                    continue;
                rotated = true;
                double zeta = (aqq - app) / (2.0 * apq);
                double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                double cs = 1.0 / std::sqrt(1.0 + t * t);
                double sn = cs * t;
                for (int r = 0; r < m; ++r) {
                    double xp = col[p][r], xq = col[q][r];
                    col[p][r] = cs * xp - sn * xq;
                    col[q][r] = sn * xp + cs * xq;
                }
                for (int r = 0; r < n; ++r) {
                    double vp = V[p][static_cast<std::size_t>(r)], vq = V[q][static_cast<std::size_t>(r)];
                    V[p][static_cast<std::size_t>(r)] = cs * vp - sn * vq;
                    V[q][static_cast<std::size_t>(r)] = sn * vp + cs * vq;
                }
            }
        }
        if (!rotated) break;
    }

    JacobiSVD out;
    out.sigma.resize(n);
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> norms(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) {
        double s = 0.0;
        for (int r = 0; r < m; ++r) s += col[c][static_cast<std::size_t>(r)] * col[c][static_cast<std::size_t>(r)];
        norms[static_cast<std::size_t>(c)] = std::sqrt(s);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return norms[static_cast<std::size_t>(a)] > norms[static_cast<std::size_t>(b)]; });
    out.V.resize(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) {
        out.sigma[static_cast<std::size_t>(c)] = norms[static_cast<std::size_t>(order[static_cast<std::size_t>(c)])];
        out.V[static_cast<std::size_t>(c)] = V[static_cast<std::size_t>(order[static_cast<std::size_t>(c)])];
        // canonical sign: largest-magnitude component positive
        auto& v = out.V[static_cast<std::size_t>(c)];
        double big = 0.0;
        for (double x : v)
            if (std::abs(x) > std::abs(big)) big = x;
        if (big < 0.0)
            for (double& x : v) x = -x;
    }
    return out;
}

}  // namespace detail

struct MassSpaceResult {
    std::vector<double> singular_values;                // descending
    int nullspace_dim = 0;
    std::vector<std::vector<double>> nullspace_basis;   // orthonormal rows of length n
};

// SVD of the mass matrix; singular values below tol x sigma_max count as
// zero and their right singular vectors span the admissible mass space.
inline MassSpaceResult mass_space(const Configuration& c, double tol = 1e-10) {
    MassMatrix A = mass_matrix(c);
    auto svd = detail::jacobi_svd(A);
    MassSpaceResult r;
    r.singular_values = svd.sigma;
    double smax = svd.sigma.empty() ? 0.0 : svd.sigma.front();
    for (std::size_t k = 0; k < svd.sigma.size(); ++k) {
        if (svd.sigma[k] < tol * smax) {
            ++r.nullspace_dim;
            r.nullspace_basis.push_back(svd.V[k]);
        }
    }
    return r;
}

struct SweepRow {
    double l = 0.0, d = 0.0, l_over_d = 0.0;
    double defect = std::numeric_limits<double>::quiet_NaN();
    double max_dziobek = std::numeric_limits<double>::quiet_NaN();
    double max_cc_residual = std::numeric_limits<double>::quiet_NaN();
    int nullspace_dim = -1;
    std::string error;
};

// Grid evaluation; a failing row records its error and the sweep continues.
inline std::vector<SweepRow> sweep(const std::vector<TwistedPrismParams>& grid) {
    if (grid.empty()) throw std::invalid_argument("sweep requires a non-empty grid");
    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (const TwistedPrismParams& p : grid) {
        SweepRow row;
        row.l = p.l;
        row.d = p.d;
        row.l_over_d = p.d != 0.0 ? p.l / p.d : std::numeric_limits<double>::quiet_NaN();
        try {
            Configuration c = build(p);
            row.defect = octahedron_defect(p);
            row.max_dziobek = all_residuals(c).max_normalized;
            row.max_cc_residual = cc_residual(c).max_residual;
            row.nullspace_dim = mass_space(c).nullspace_dim;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string s = "l,d,l_over_d,defect,max_dziobek,max_cc_residual,nullspace_dim,error\n";
    for (const SweepRow& r : rows) {
        std::string err = r.error;
        std::replace(err.begin(), err.end(), ',', ';');
        s += g17(r.l) + "," + g17(r.d) + "," + g17(r.l_over_d) + "," + g17(r.defect) + "," +
             g17(r.max_dziobek) + "," + g17(r.max_cc_residual) + "," +
             std::to_string(r.nullspace_dim) + "," + err + "\n";
    }
    return s;
}

}  // namespace cckit
