// pack: experiment driver for the transmitter packing relaxation.
//
//   pack sweep --kind nodes --density pow:-1 --epsilon 10 --n-list 5,10,15 --out nodes.csv
//   pack solve --instance layout.txt
//   pack generate --density 1 --side 4 --epsilon 10 --seed 7 --out layout.txt

#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pack/bounds.hpp"
#include "pack/exact.hpp"
#include "pack/experiments.hpp"
#include "pack/format.hpp"
#include "pack/network.hpp"
#include "pack/problem.hpp"
#include "pack/rounding.hpp"
#include "pack/sdp.hpp"

namespace {

constexpr int kExitExclusions = 2;

struct SweepArgs {
    std::string kind = "nodes";
    double beta = 3.0;
    std::string epsilon = "10";
    std::vector<std::string> densities{"const:1"};
    std::vector<int> n_list;
    std::vector<std::string> eps_list;
    int realizations = 1000;
    std::uint64_t seed = 1;
    std::string out;
    std::string plot;
    long exact_limit = pack::kDefaultExactLimit;
    int trials = 0;
    bool strict = false;
    double tol = pack::SolverConfig{}.tol;
};

int run_sweep_command(const SweepArgs& a) {
    pack::SweepConfig cfg;
    cfg.kind = pack::parse_sweep_kind(a.kind);
    cfg.beta = a.beta;
    cfg.epsilon = pack::EpsilonRule::parse(a.epsilon);
    cfg.densities.clear();
    for (const auto& d : a.densities) {
        cfg.densities.push_back(pack::DensityRule::parse(d));
    }
    cfg.n_values = a.n_list;
    for (const auto& e : a.eps_list) {
        cfg.eps_values.push_back(pack::EpsilonRule::parse(e));
    }
    cfg.realizations = a.realizations;
    cfg.master_seed = a.seed;
    cfg.exact_limit = a.exact_limit;
    cfg.rounding_k = a.trials;
    cfg.strict_rounding = a.strict;
    cfg.solver.tol = a.tol;

    const auto start = std::chrono::steady_clock::now();
    const pack::SweepResult res = pack::run_sweep(cfg);
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    pack::emit_csv(std::filesystem::path(a.out), res.rows);
    if (!a.plot.empty()) {
        pack::emit_plotdata(std::filesystem::path(a.plot), res.rows);
    }
    for (const auto& row : res.rows) {
        std::cerr << "N=" << row.n << " lambda=" << row.density_rule << " eps=" << row.epsilon_rule
                  << " rho=" << pack::format_double(row.mean_rho) << " sigma=" << pack::format_double(row.mean_sigma)
                  << " excluded=" << row.excluded << " cpu=" << row.wallclock << "s\n";
    }
    for (const auto& rec : res.records) {
        if (rec.excluded) {
            std::cerr << "excluded: point " << rec.point << " realization " << rec.realization << " seed "
                      << rec.layout_seed << ": " << rec.failure << '\n';
        }
    }
    std::cerr << "wrote " << res.rows.size() << " rows to " << a.out << " in " << elapsed << "s\n";
    if (res.exclusion_budget_exceeded) {
        std::cerr << "error: more than 1% of realizations excluded at some sweep point\n";
        return kExitExclusions;
    }
    return 0;
}

struct SolveArgs {
    std::string instance;
    long exact_limit = pack::kDefaultExactLimit;
    int trials = 0;
    std::uint64_t seed = 1;
    bool strict = false;
    int samples = 10000;
};

int run_solve_command(const SolveArgs& a) {
    const pack::InstanceFile file = pack::read_instance(std::filesystem::path(a.instance));
    const pack::Network net = pack::Network::from_positions(file.positions);
    const pack::PackingInstance inst = pack::build_instance(net, pack::PathLossModel{file.beta}, file.epsilon);
    const pack::SpinProblem sp = pack::lift(inst);
    const pack::SdrSolution sol = pack::solve_sdr(sp);
    const int k = a.trials > 0 ? a.trials : pack::default_trials(sp.n);
    const pack::RoundingResult rounded =
        pack::round_solution(sp, sol, k, pack::derive_seed(a.seed, {0}), a.strict);

    std::cout << "n: " << sp.n << '\n'
              << "beta: " << pack::format_double(file.beta) << '\n'
              << "epsilon: " << pack::format_double(file.epsilon) << '\n'
              << "rho: " << pack::format_double(sol.rho) << '\n'
              << "status: " << pack::to_string(sol.status) << '\n'
              << "iterations: " << sol.iterations << '\n'
              << "sigma_hat: " << rounded.sigma_hat << '\n'
              << "accepted: " << rounded.accepted << '/' << rounded.trials << '\n';

    int sigma = rounded.sigma_hat;
    bool exact = false;
    if (inst.size() <= a.exact_limit) {
        const pack::ExactResult ex = pack::solve_exact(inst, a.exact_limit);
        sigma = ex.sigma;
        exact = true;
        std::cout << "sigma: " << ex.sigma << '\n';
    }
    pack::BoundOptions opts;
    opts.samples = a.samples;
    opts.seed = pack::derive_seed(a.seed, {1});
    const pack::BoundReport rep = pack::theorem1_report(sp, sol, sigma, exact, opts);
    std::cout << pack::bound_csv_header() << '\n' << pack::bound_csv_row(rep) << '\n';
    return 0;
}

struct GenerateArgs {
    double density = 1.0;
    double side = 1.0;
    double beta = 3.0;
    double epsilon = 10.0;
    std::uint64_t seed = 1;
    std::string out;
};

int run_generate_command(const GenerateArgs& a) {
    const pack::Network net = pack::generate_uniform(a.density, a.side, a.seed);
    pack::write_instance(std::filesystem::path(a.out), {net.positions(), a.beta, a.epsilon});
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Transmitter packing: exact search, semidefinite relaxation and randomized rounding"};
    app.require_subcommand(1);

    SweepArgs sweep;
    auto* sc = app.add_subcommand("sweep", "Monte Carlo sweep over N or epsilon, written as CSV");
    sc->add_option("--kind", sweep.kind, "nodes | epsilon | density-fixed")
        ->check(CLI::IsMember({"nodes", "epsilon", "density-fixed"}));
    sc->add_option("--beta", sweep.beta, "Path-loss exponent")->check(CLI::PositiveNumber);
    sc->add_option("--epsilon", sweep.epsilon, "Budget for --kind nodes: a number or N/2");
    sc->add_option("--density", sweep.densities, "const:L or pow:E (lambda = N^E); comma separated for several")
        ->delimiter(',');
    sc->add_option("--n-list", sweep.n_list, "Node counts, comma separated")->delimiter(',')->required();
    sc->add_option("--eps-list", sweep.eps_list, "Budgets for epsilon / density-fixed sweeps")->delimiter(',');
    sc->add_option("--realizations", sweep.realizations, "Layouts per sweep point")->check(CLI::PositiveNumber);
    sc->add_option("--seed", sweep.seed, "Master seed");
    sc->add_option("--out", sweep.out, "CSV output path")->required();
    sc->add_option("--plot", sweep.plot, "Optional plot-data output path");
    sc->add_option("--exact-limit", sweep.exact_limit, "Largest N solved by exhaustive search");
    sc->add_option("--trials", sweep.trials, "Rounding trials per layout (default max(1000, 10N))");
    sc->add_option("--tol", sweep.tol, "SDR solver tolerance")->check(CLI::PositiveNumber);
    sc->add_flag("--strict-rounding", sweep.strict, "Reject samples with a negative last sign instead of negating");

    SolveArgs solve;
    auto* so = app.add_subcommand("solve", "Solve one instance file and print a bound report");
    so->add_option("--instance", solve.instance, "Instance file: 'N beta epsilon' then N lines 'x y'")
        ->required()
        ->check(CLI::ExistingFile);
    so->add_option("--exact-limit", solve.exact_limit, "Largest N solved by exhaustive search");
    so->add_option("--trials", solve.trials, "Rounding trials (default max(1000, 10N))");
    so->add_option("--seed", solve.seed, "Seed for rounding and sampling");
    so->add_option("--samples", solve.samples, "Sign samples for the violation estimate")->check(CLI::PositiveNumber);
    so->add_flag("--strict-rounding", solve.strict, "Reject samples with a negative last sign instead of negating");

    GenerateArgs gen;
    auto* ge = app.add_subcommand("generate", "Write a uniform random layout as an instance file");
    ge->add_option("--density", gen.density, "Nodes per unit area")->check(CLI::PositiveNumber);
    ge->add_option("--side", gen.side, "Side of the square region")->check(CLI::PositiveNumber);
    ge->add_option("--beta", gen.beta, "Path-loss exponent")->check(CLI::PositiveNumber);
    ge->add_option("--epsilon", gen.epsilon, "Interference budget")->check(CLI::PositiveNumber);
    ge->add_option("--seed", gen.seed, "Layout seed");
    ge->add_option("--out", gen.out, "Output path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sc) {
            return run_sweep_command(sweep);
        }
        if (*so) {
            return run_solve_command(solve);
        }
        return run_generate_command(gen);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
