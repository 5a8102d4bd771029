// cc-kit: verify, classify, and solve central configurations of the twisted
// two-triangle seven-body family.
//
// Subcommands: verify, solve, nullspace, classify, sweep, collapse.
// Exit codes: 0 success / verified central, 1 verified not central,
//             2 usage or parse error, 3 numerical or degenerate failure.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <cckit/cckit.hpp>

namespace {

using namespace cckit;

struct GlobalOpts {
    double tol = 1e-10;
    std::uint64_t seed = 12345;
    bool csv = false;
    std::string out;
};

// Primary payload goes to --out when given, stdout otherwise.
void emit(const GlobalOpts& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(g.out);
        if (!f) throw std::runtime_error("cannot write " + g.out);
        f << text;
    }
}

std::array<double, 6> parse_masses(const std::vector<double>& ms) {
    std::array<double, 6> out{1, 1, 1, 1, 1, 1};
    if (ms.empty()) return out;
    if (ms.size() != 6)
        throw std::invalid_argument("--masses needs exactly 6 comma-separated values");
    for (std::size_t k = 0; k < 6; ++k) out[k] = ms[k];
    return out;
}

struct FamilyArgs {
    std::string file;
    double l = 0.0, d = 0.0;
    std::vector<double> masses;
    double m7 = 1.0;
};

void add_family_inputs(CLI::App* cmd, FamilyArgs& fa, bool file_allowed = true) {
    if (file_allowed)
        cmd->add_option("input", fa.file, "configuration JSON file");
    cmd->add_option("--l", fa.l, "triangle circumradius")->check(CLI::PositiveNumber);
    cmd->add_option("--d", fa.d, "half plane separation")->check(CLI::PositiveNumber);
    cmd->add_option("--masses", fa.masses, "six triangle masses")->delimiter(',');
    cmd->add_option("--m7", fa.m7, "central mass")->check(CLI::NonNegativeNumber);
}

Configuration resolve_configuration(const CLI::App* cmd, const FamilyArgs& fa) {
    if (!fa.file.empty()) return load_configuration(fa.file);
    if (!cmd->count("--l") || !cmd->count("--d"))
        throw std::invalid_argument("provide a configuration file or both --l and --d");
    TwistedPrismParams p;
    p.l = fa.l;
    p.d = fa.d;
    p.masses = parse_masses(fa.masses);
    p.m7 = fa.m7;
    return build(p);
}

int run_verify(const CLI::App* cmd, const FamilyArgs& fa, const GlobalOpts& g, bool residuals_csv) {
    Configuration c = resolve_configuration(cmd, fa);
    CCDiagnostics cc = cc_residual(c);
    DziobekReport rep = all_residuals(c, g.tol);
    bool central = std::max(cc.max_residual, rep.max_normalized) < g.tol;

    if (residuals_csv) {
        emit(g, rep.to_csv());
    } else if (g.csv) {
        emit(g, "lambda,U,I,max_cc_residual,max_dziobek,verdict\n" + g17(cc.lambda_) + "," +
                g17(cc.U) + "," + g17(cc.I) + "," + g17(cc.max_residual) + "," +
                g17(rep.max_normalized) + "," + (central ? "CC" : "NOT-CC") + "\n");
    } else {
        std::string s = cc.to_text();
        s += "dziobek_normalization=" + g17(rep.normalization) + "\n";
        s += "max_dziobek=" + g17(rep.max_normalized) + "\n";
        s += "dziobek_zero_count=" + std::to_string(rep.zero_set.size()) + "\n";
        s += "tol=" + g17(g.tol) + "\n";
        s += std::string("verdict=") + (central ? "CC" : "NOT-CC") + "\n";
        if (cc.recenter_shift > 1e-12)
            std::cerr << "warning: input recentered (relative shift " << g17(cc.recenter_shift)
                      << ")\n";
        emit(g, s);
    }
    return central ? 0 : 1;
}

int run_solve(double d, const GlobalOpts& g) {
    double tol = std::min(g.tol, 1e-10);  // root tolerance, not a residual gate
    ShapeSolveResult r = solve_shape(d, 1.0, tol);
    if (g.csv) {
        emit(g, "d,l,l_over_d,iterations,residual_at_root,cross_check_l_over_d\n" + g17(d) + "," +
                g17(r.l_over_d * d) + "," + g17(r.l_over_d) + "," + std::to_string(r.iterations) +
                "," + g17(r.residual_at_root) + "," + g17(r.cross_check_l_over_d) + "\n");
    } else {
        std::string s;
        s += "l=" + g17(r.l_over_d * d) + "\n";
        s += "l_over_d=" + g17(r.l_over_d) + "\n";
        s += "iterations=" + std::to_string(r.iterations) + "\n";
        s += "residual_at_root=" + g17(r.residual_at_root) + "\n";
        s += "bracket=" + g17(r.bracket.first) + ".." + g17(r.bracket.second) + "\n";
        s += "cross_check_l_over_d=" + g17(r.cross_check_l_over_d) + "\n";
        emit(g, s);
    }
    return 0;
}

int run_nullspace(const CLI::App* cmd, const FamilyArgs& fa, const GlobalOpts& g) {
    Configuration c = resolve_configuration(cmd, fa);
    MassSpaceResult r = mass_space(c, g.tol);
    if (g.csv) {
        std::string s = "nullspace_dim";
        for (std::size_t k = 0; k < r.singular_values.size(); ++k)
            s += ",sigma_" + std::to_string(k + 1);
        s += "\n" + std::to_string(r.nullspace_dim);
        for (double sv : r.singular_values) s += "," + g17(sv);
        emit(g, s + "\n");
    } else {
        std::string s = "nullspace_dim=" + std::to_string(r.nullspace_dim) + "\n";
        for (std::size_t k = 0; k < r.singular_values.size(); ++k)
            s += "sigma_" + std::to_string(k + 1) + "=" + g17(r.singular_values[k]) + "\n";
        for (std::size_t k = 0; k < r.nullspace_basis.size(); ++k) {
            s += "basis_" + std::to_string(k + 1) + "=";
            for (std::size_t c2 = 0; c2 < r.nullspace_basis[k].size(); ++c2)
                s += (c2 ? "," : "") + g17(r.nullspace_basis[k][c2]);
            s += "\n";
        }
        emit(g, s);
    }
    return 0;
}

std::string chain_report(const Configuration& probe, const std::string& name,
                         const std::vector<ChainLink>& chain) {
    std::string s = "chain=" + name + " representative=" + chain.front().triple.label() + "\n";
    for (const ChainMeasurement& m : measure_chain(probe, chain)) {
        s += m.triple.label() + " claimed=" + g17(m.claimed) + " measured=" + g17(m.measured) +
             (m.matches_claim ? " ok" : " MISMATCH") + "\n";
    }
    return s;
}

int run_classify(int probes, bool equal_masses, bool octahedron, bool chains,
                 const GlobalOpts& g) {
    ProbeStyle style = octahedron ? ProbeStyle::octahedron_locus
                       : equal_masses ? ProbeStyle::equal_masses
                                      : ProbeStyle::random_masses;
    std::vector<Configuration> pr = random_prism_probes(probes, g.seed, style);
    std::vector<TripleIndex> zeros = classify_zeros(pr, g.tol);

    std::string s;
    s += "seed=" + std::to_string(g.seed) + "\n";
    s += "probes=" + std::to_string(probes) + "\n";
    s += std::string("style=") + (octahedron ? "octahedron-locus"
                                  : equal_masses ? "equal-masses"
                                                 : "random-masses") + "\n";
    s += "zero_count=" + std::to_string(zeros.size()) + "\n";
    for (const TripleIndex& t : zeros) s += t.label() + "\n";

    if (chains) {
        // Measure on a generic equal-mass shape, away from the zero locus.
        TwistedPrismParams p;
        p.l = 2.0;
        p.d = 1.0;
        Configuration probe = build(p);
        s += chain_report(probe, "center", center_chain());
        s += chain_report(probe, "vertex", vertex_chain());
    }
    emit(g, s);
    return 0;
}

int run_sweep(const std::string& ratio_range, const std::vector<double>& ratio_list, double d,
              const std::vector<double>& masses, double m7, const GlobalOpts& g) {
    std::vector<double> ratios = ratio_list;
    if (!ratio_range.empty()) {
        double lo = 0, hi = 0, step = 0;
        char c1 = 0, c2 = 0;
        std::istringstream ss(ratio_range);
        if (!(ss >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0.0)
            throw std::invalid_argument("--ratio expects lo:hi:step with step > 0");
        for (double x = lo; x <= hi + 1e-12; x += step) ratios.push_back(x);
    }
    if (ratios.empty())
        throw std::invalid_argument("provide --ratio lo:hi:step or --ratios r1,r2,...");

    std::vector<TwistedPrismParams> grid;
    for (double x : ratios) {
        TwistedPrismParams p;
        p.l = x * d;
        p.d = d;
        p.masses = parse_masses(masses);
        p.m7 = m7;
        grid.push_back(p);
    }
    emit(g, sweep_csv(sweep(grid)));
    return 0;
}

int run_collapse(const CLI::App* cmd, const FamilyArgs& fa, double t_frac, int steps, int stride,
                 const GlobalOpts& g) {
    Configuration c;
    if (!fa.file.empty()) {
        c = load_configuration(fa.file);
    } else {
        TwistedPrismParams p;
        p.d = cmd->count("--d") ? fa.d : 1.0;
        p.l = cmd->count("--l") ? fa.l : std::sqrt(2.0) * p.d;
        p.masses = parse_masses(fa.masses);
        p.m7 = fa.m7;
        c = build(p);
    }
    if (steps < 1 || stride < 1) throw std::invalid_argument("--steps and --stride must be >= 1");
    if (!(t_frac > 0.0) || t_frac >= 1.0)
        throw std::invalid_argument("--t-frac must lie in (0, 1): the run must stop short of collapse");

    CCDiagnostics cc = cc_residual(c);
    if (cc.max_residual >= g.tol)
        std::cerr << "warning: initial configuration is not central (max_residual="
                  << g17(cc.max_residual) << "); homothety is not expected\n";
    const double t_c = M_PI / (2.0 * std::sqrt(2.0 * cc.lambda_));
    const double t_end = t_frac * t_c;
    const double dt = t_end / steps;
    TrajectoryStats stats = integrate_from_rest(c, t_end, dt);

    std::string table = "t,phi,shape_deviation,energy_rel_drift\n";
    for (std::size_t k = 0; k < stats.times.size(); k += static_cast<std::size_t>(stride))
        table += g17(stats.times[k]) + "," + g17(stats.scale_factor[k]) + "," +
                 g17(stats.shape_deviation[k]) + "," + g17(stats.energy_rel_drift[k]) + "\n";

    std::string summary;
    summary += "lambda=" + g17(cc.lambda_) + "\n";
    summary += "t_collapse=" + g17(t_c) + "\n";
    summary += "t_end=" + g17(t_end) + "\n";
    summary += "steps=" + std::to_string(steps) + "\n";
    summary += "max_shape_deviation=" + g17(stats.max_shape_deviation) + "\n";
    summary += "final_phi=" + g17(stats.scale_factor.back()) + "\n";
    summary += "collapse_time_estimate=" + g17(stats.collapse_time_estimate) + "\n";
    summary += "energy_rel_drift=" + g17(stats.energy_rel_drift.back()) + "\n";
    if (!stats.halt_reason.empty()) summary += "halted=" + stats.halt_reason + "\n";

    if (g.csv) {
        emit(g, table);
        if (g.out.empty()) return 0;  // table went to stdout; nothing else to say
        std::cout << summary;
    } else if (!g.out.empty()) {
        emit(g, table);
        std::cout << summary;
    } else {
        std::cout << summary;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"central configurations of the twisted two-triangle seven-body problem"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    app.add_option("--tol", g.tol, "zero tolerance for residuals and nullspace decisions")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", g.seed, "seed for randomized commands")->capture_default_str();
    app.add_flag("--csv", g.csv, "machine-readable CSV output");
    app.add_option("--out", g.out, "write primary output to a file instead of stdout");

    // verify
    auto* verify = app.add_subcommand("verify", "test whether a configuration is central");
    FamilyArgs verify_args;
    bool residuals_csv = false;
    add_family_inputs(verify, verify_args);
    verify->add_flag("--residuals", residuals_csv, "emit the full per-triple residual table (CSV)");

    // solve
    auto* solve = app.add_subcommand("solve", "find the central shape ratio l/d");
    double solve_d = 0.0;
    solve->add_option("--d", solve_d, "half plane separation")
        ->required()
        ->check(CLI::PositiveNumber);

    // nullspace
    auto* nullspace = app.add_subcommand("nullspace", "admissible mass space of a fixed geometry");
    FamilyArgs null_args;
    add_family_inputs(nullspace, null_args);

    // classify
    auto* classify = app.add_subcommand("classify", "identically-zero residuals over random probes");
    int probes = 10;
    bool equal_masses = false, octahedron = false, chains = false;
    classify->add_option("--probes", probes, "number of probe configurations")
        ->capture_default_str()
        ->check(CLI::Range(1, 1000000));
    classify->add_flag("--equal-masses", equal_masses, "probe with equal triangle masses");
    classify->add_flag("--octahedron", octahedron, "probe on the octahedron locus l = sqrt(2) d");
    classify->add_flag("--chains", chains, "measure the proportionality chains and flag claim mismatches");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "evaluate a grid of shapes (CSV)");
    std::string ratio_range;
    std::vector<double> ratio_list, sweep_masses;
    double sweep_d = 1.0, sweep_m7 = 1.0;
    sweep_cmd->add_option("--ratio", ratio_range, "l/d range as lo:hi:step");
    sweep_cmd->add_option("--ratios", ratio_list, "explicit l/d list")->delimiter(',');
    sweep_cmd->add_option("--d", sweep_d, "half plane separation")->capture_default_str()
        ->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--masses", sweep_masses, "six triangle masses")->delimiter(',');
    sweep_cmd->add_option("--m7", sweep_m7, "central mass")->capture_default_str()
        ->check(CLI::NonNegativeNumber);

    // collapse
    auto* collapse = app.add_subcommand("collapse", "homothetic collapse integration from rest");
    FamilyArgs collapse_args;
    add_family_inputs(collapse, collapse_args);
    double t_frac = 0.9;
    int steps = 16384, stride = 16;
    collapse->add_option("--t-frac", t_frac, "integrate to this fraction of the collapse time")
        ->capture_default_str();
    collapse->add_option("--steps", steps, "number of fixed RK4 steps")->capture_default_str();
    collapse->add_option("--stride", stride, "record every stride-th step in the CSV")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (verify->parsed()) return run_verify(verify, verify_args, g, residuals_csv);
        if (solve->parsed()) return run_solve(solve_d, g);
        if (nullspace->parsed()) return run_nullspace(nullspace, null_args, g);
        if (classify->parsed()) return run_classify(probes, equal_masses, octahedron, chains, g);
        if (sweep_cmd->parsed())
            return run_sweep(ratio_range, ratio_list, sweep_d, sweep_masses, sweep_m7, g);
        if (collapse->parsed()) return run_collapse(collapse, collapse_args, t_frac, steps, stride, g);
    } catch (const cckit::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
