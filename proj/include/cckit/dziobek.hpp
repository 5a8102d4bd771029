#pragma once
/*
dziobek.hpp
-----------
The Laura-Andoyer-Dziobek residuals

    f_ijh = sum_{k != i,j,h} m_k (R_ik - R_jk) D_ijhk,

with R_ab = r_ab^-3 and D_ijhk the oriented tetrahedron volume factor.
A nonplanar configuration is central exactly when every f_ijh vanishes.
Triples run over 1 <= i < j <= n, h != i,j (n(n-1)(n-2)/2 of them,
105 for n = 7), enumerated lexicographically in (i, j, h).

Residuals are reported both raw and divided by a single configuration-wide
normalization (the largest sum of absolute terms over all triples), which
makes "zero" thresholds scale- and mass-free. Note f_ijh is symmetric under
swapping i and j: both the R difference and the volume factor change sign.
*/

#include <algorithm>
#include <cmath>
#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

#include "format.hpp"
#include "geometry.hpp"

namespace cckit {

struct TripleIndex {
    int i = 0;
    int j = 0;
    int h = 0;

    auto operator<=>(const TripleIndex&) const = default;

    std::string label() const {
        return "f" + std::to_string(i) + std::to_string(j) + std::to_string(h);
    }
};

inline std::vector<TripleIndex> all_triples(int n) {
    if (n < 4) throw std::invalid_argument("Dziobek triples need n >= 4");
    std::vector<TripleIndex> out;
    out.reserve(static_cast<std::size_t>(n) * (n - 1) * (n - 2) / 2);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int h = 1; h <= n; ++h)
                if (h != i && h != j) out.push_back({i, j, h});
    return out;
}

namespace detail {

// Pairwise inverse-cube table, 0-based.
inline std::vector<std::vector<double>> inverse_cube_table(const Configuration& c) {
    const int n = c.size();
    std::vector<std::vector<double>> R(n, std::vector<double>(n, 0.0));
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b) {
            double v = inverse_cube(mutual_distance(c, a, b));
            R[a - 1][b - 1] = v;
            R[b - 1][a - 1] = v;
        }
    return R;
}

struct TripleSum {
    double value = 0.0;      // f_ijh
    double term_sum = 0.0;   // sum of |terms|, the local scale
    double max_volume = 0.0; // largest |D_ijhk| seen, for planarity detection
};

inline TripleSum triple_sum(const Configuration& c,
                            const std::vector<std::vector<double>>& R,
                            const TripleIndex& t) {
    TripleSum s;
    const int n = c.size();
    const Vec3& ri = c.body(t.i).position;
    const Vec3& rj = c.body(t.j).position;
    const Vec3& rh = c.body(t.h).position;
    for (int k = 1; k <= n; ++k) {
        if (k == t.i || k == t.j || k == t.h) continue;
        double dR = R[t.i - 1][k - 1] - R[t.j - 1][k - 1];
        double vol = triple(ri - rj, rj - rh, rh - c.body(k).position);
        double term = c.body(k).mass * dR * vol;
        s.value += term;
        s.term_sum += std::abs(term);
        s.max_volume = std::max(s.max_volume, std::abs(vol));
    }
    return s;
}

}  // namespace detail

// One residual, raw.
inline double dziobek_residual(const Configuration& c, const TripleIndex& t) {
    if (c.size() < 4) throw std::invalid_argument("Dziobek residuals need n >= 4");
    detail::check_distinct({t.i, t.j, t.h});
    validate(c);
    auto R = detail::inverse_cube_table(c);
    return detail::triple_sum(c, R, t).value;
}

struct ResidualClass {
    struct Member {
        TripleIndex triple;
        double factor = 1.0;  // value / representative value
    };
    TripleIndex representative;
    std::vector<Member> members;
};

struct DziobekReport {
    int n = 0;
    std::vector<TripleIndex> triples;   // lexicographic
    std::vector<double> residuals;      // raw f values
    std::vector<double> normalized;     // residuals / normalization
    double normalization = 1.0;
    double max_normalized = 0.0;
    std::vector<TripleIndex> zero_set;  // |normalized| < zero_tol
    std::vector<ResidualClass> classes; // equal-|value| groups of the rest
    std::vector<int> class_ids;         // per triple; 0 = zero_set, 1..K = classes

    int index_of(const TripleIndex& t) const {
        auto it = std::lower_bound(triples.begin(), triples.end(), t);
        if (it == triples.end() || !(*it == t))
            throw std::invalid_argument("triple " + t.label() + " not in report");
        return static_cast<int>(it - triples.begin());
    }

    double residual(const TripleIndex& t) const { return residuals[index_of(t)]; }
    double normalized_residual(const TripleIndex& t) const { return normalized[index_of(t)]; }

    std::string to_csv() const {
        std::string s = "i,j,h,residual,normalized_residual,class_id\n";
        for (std::size_t r = 0; r < triples.size(); ++r) {
            s += std::to_string(triples[r].i) + "," + std::to_string(triples[r].j) + "," +
                 std::to_string(triples[r].h) + "," + g17(residuals[r]) + "," +
                 g17(normalized[r]) + "," + std::to_string(class_ids[r]) + "\n";
        }
        return s;
    }
};

// All residuals plus the bookkeeping: zero set and equal-magnitude classes.
// Throws on planar configurations, where every volume factor vanishes and
// the Dziobek form carries no information.
inline DziobekReport all_residuals(const Configuration& c, double zero_tol = 1e-10) {
    if (c.size() < 4) throw std::invalid_argument("Dziobek residuals need n >= 4");
    validate(c);
    DziobekReport rep;
    rep.n = c.size();
    rep.triples = all_triples(rep.n);
    rep.residuals.resize(rep.triples.size());
    rep.normalized.resize(rep.triples.size());

    auto R = detail::inverse_cube_table(c);
    double norm = 0.0, vol_max = 0.0;
    for (std::size_t r = 0; r < rep.triples.size(); ++r) {
        auto s = detail::triple_sum(c, R, rep.triples[r]);
        rep.residuals[r] = s.value;
        norm = std::max(norm, s.term_sum);
        vol_max = std::max(vol_max, s.max_volume);
    }
    if (vol_max == 0.0)
        throw std::domain_error("planar configuration: all Dziobek volume factors vanish");
    // norm can still be zero for fully symmetric shapes (every R difference
    // cancels exactly); residuals are genuinely zero there.
    rep.normalization = norm > 0.0 ? norm : 1.0;
    for (std::size_t r = 0; r < rep.triples.size(); ++r) {
        rep.normalized[r] = rep.residuals[r] / rep.normalization;
        rep.max_normalized = std::max(rep.max_normalized, std::abs(rep.normalized[r]));
    }

    // Partition: zero set, then classes of equal |value| (relative 1e-9),
    // largest magnitude first. Member factors come out as +/-1.
    rep.class_ids.assign(rep.triples.size(), 0);
    std::vector<std::size_t> live;
    for (std::size_t r = 0; r < rep.triples.size(); ++r) {
        if (std::abs(rep.normalized[r]) < zero_tol)
            rep.zero_set.push_back(rep.triples[r]);
        else
            live.push_back(r);
    }
    std::stable_sort(live.begin(), live.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(rep.residuals[a]) > std::abs(rep.residuals[b]);
    });
    std::vector<bool> used(rep.triples.size(), false);
    for (std::size_t a = 0; a < live.size(); ++a) {
        if (used[live[a]]) continue;
        ResidualClass cls;
        cls.representative = rep.triples[live[a]];
        double ref = rep.residuals[live[a]];
        for (std::size_t b = a; b < live.size(); ++b) {
            std::size_t r = live[b];
            if (used[r]) continue;
            if (std::abs(std::abs(rep.residuals[r]) - std::abs(ref)) <= 1e-9 * std::abs(ref)) {
                used[r] = true;
                cls.members.push_back({rep.triples[r], rep.residuals[r] / ref});
                rep.class_ids[r] = static_cast<int>(rep.classes.size()) + 1;
            }
        }
        std::sort(cls.members.begin(), cls.members.end(),
                  [](const ResidualClass::Member& x, const ResidualClass::Member& y) {
                      return x.triple < y.triple;
                  });
        rep.classes.push_back(std::move(cls));
    }
    return rep;
}

// Triples whose normalized residual stays below tol on every probe: the
// numerically identified identically-zero set of the probed family.
inline std::vector<TripleIndex> classify_zeros(const std::vector<Configuration>& probes,
                                               double tol = 1e-10) {
    if (probes.size() < 3)
        throw std::invalid_argument("classify_zeros needs at least 3 probes to separate "
                                    "identically-zero from coincidentally-zero triples");
    const int n = probes.front().size();
    for (const Configuration& p : probes)
        if (p.size() != n)
            throw std::invalid_argument("all probes must have the same body count");

    std::vector<TripleIndex> triples = all_triples(n);
    std::vector<bool> zero(triples.size(), true);
    for (const Configuration& p : probes) {
        DziobekReport rep = all_residuals(p, tol);
        for (std::size_t r = 0; r < triples.size(); ++r)
            if (std::abs(rep.normalized[r]) >= tol) zero[r] = false;
    }
    std::vector<TripleIndex> out;
    for (std::size_t r = 0; r < triples.size(); ++r)
        if (zero[r]) out.push_back(triples[r]);
    return out;
}

// One link of a proportionality chain: the claim residual(triple) = factor * V
// for a chain-wide common value V.
struct ChainLink {
    TripleIndex triple;
    double factor = 1.0;
};

// True iff residual(a) * factor(b) == residual(b) * factor(a) for every pair,
// within tol on the normalized residuals. An all-zero chain passes.
inline bool verify_proportionality(const Configuration& c,
                                   const std::vector<ChainLink>& chain,
                                   double tol = 1e-10) {
    if (chain.empty()) return true;
    DziobekReport rep = all_residuals(c, tol);
    for (std::size_t a = 0; a < chain.size(); ++a) {
        double fa = rep.normalized_residual(chain[a].triple);
        for (std::size_t b = a + 1; b < chain.size(); ++b) {
            double fb = rep.normalized_residual(chain[b].triple);
            double lhs = fa * chain[b].factor;
            double rhs = fb * chain[a].factor;
            if (std::abs(lhs - rhs) > tol * std::max({std::abs(lhs), std::abs(rhs), 1.0}))
                return false;
        }
    }
    return true;
}

struct ChainMeasurement {
    TripleIndex triple;
    double claimed = 0.0;
    double measured = 0.0;
    bool matches_claim = false;
};

// Measure each member's factor relative to the first link and compare with
// the recorded claim. The representative must have a nonzero residual
// (i.e. evaluate at a generic shape, not on the zero locus).
inline std::vector<ChainMeasurement> measure_chain(const Configuration& c,
                                                   const std::vector<ChainLink>& chain,
                                                   double tol = 1e-10) {
    if (chain.empty()) return {};
    DziobekReport rep = all_residuals(c, tol);
    double ref = rep.normalized_residual(chain.front().triple) / chain.front().factor;
    if (std::abs(ref) < tol)
        throw std::domain_error("chain representative residual vanishes here; "
                                "factors are undefined on the zero locus");
    std::vector<ChainMeasurement> out;
    out.reserve(chain.size());
    for (const ChainLink& link : chain) {
        ChainMeasurement m;
        m.triple = link.triple;
        m.claimed = link.factor;
        m.measured = rep.normalized_residual(link.triple) / ref;
        m.matches_claim = std::abs(m.measured - m.claimed) <= tol * std::max(1.0, std::abs(m.claimed));
        out.push_back(m);
    }
    return out;
}

}  // namespace cckit
