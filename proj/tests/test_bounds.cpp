#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "pack/bounds.hpp"
#include "pack/exact.hpp"
#include "pack/linalg.hpp"

using namespace pack;

TEST_CASE("expected objective of a rank-one point is its own value") {
    const SpinProblem sp = lift(oracle::random_instance(2, 6, 2.0, 1.0));
    Rng rng(1);
    for (int t = 0; t < 10; ++t) {
        Spin u = Spin::Ones(7);
        for (int i = 0; i < 6; ++i) {
            u(i) = rng.uniform() < 0.5 ? -1 : 1;
        }
        const Vector v = u.cast<double>();
        CHECK(expected_objective(sp, v * v.transpose()) == doctest::Approx(v.dot(sp.q_matrix * v)).epsilon(1e-12));
    }
}

TEST_CASE("expected objective at the identity is Tr(Q) = 2N") {
    const SpinProblem sp = lift(oracle::random_instance(2, 6, 2.0, 1.0));
    CHECK(expected_objective(sp, Matrix::Identity(7, 7)) == doctest::Approx(12.0));
    const MonteCarloEstimate mc = sampled_objective(sp, Matrix::Identity(7, 7), 20000, 3);
    CHECK(std::abs(mc.mean - 12.0) <= 3.0 * mc.std_error);
}

TEST_CASE("arcsin identity agrees with sampling on a solved layout") {
    const SpinProblem sp = lift(oracle::random_instance(10, 10, 3.0, 10.0));
    const SdrSolution sol = solve_sdr(sp);
    const MonteCarloEstimate mc = sampled_objective(sp, sol.h_hat, 100000, 9);
    CHECK(mc.samples == 100000);
    CHECK(std::abs(mc.mean - expected_objective(sp, sol.h_hat)) <= 3.0 * mc.std_error);
    CHECK(sp.q_matrix.cwiseProduct(sol.h_hat).sum() <=
          sp.q_matrix.cwiseProduct(arcsin_matrix(sol.h_hat)).sum() + 1e-8);
}

TEST_CASE("eigenvalues of RH") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const SpinProblem sp = lift(oracle::random_instance(seed, 8, 3.0, 5.0));
        const SdrSolution sol = solve_sdr(sp);
        const Vector lam = rh_eigenvalues(sp, sol.h_hat);
        const double tr = sp.r_matrix.cwiseProduct(sol.h_hat).sum();
        CHECK(std::abs(lam.sum() - tr) <= 1e-8 * std::max(1.0, std::abs(tr)));
        CHECK(lam.minCoeff() >= -1e-8);
        CHECK(tr <= 4.0 + 1e-6);
    }
}

TEST_CASE("report for a single node") {
    Positions p(1, 2);
    p << 0.5, 0.5;
    const SpinProblem sp = lift(build_instance(Network(p, 1.0), PathLossModel{}, 1.0));
    const SdrSolution sol = solve_sdr(sp);
    const BoundReport rep = theorem1_report(sp, sol, 1, true);
    CHECK(rep.p_emp == 0.0);
    CHECK(rep.theta_emp == doctest::Approx(std::numbers::pi / 2.0));
    CHECK(rep.left_ok);
    CHECK(rep.right_ok);
    CHECK(rep.sandwich_ok);
    CHECK(rep.p_indicator);
}

TEST_CASE("left inequality on small layouts and theta above pi/2") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const int n = 3 + static_cast<int>(seed % 8);
        const PackingInstance inst = oracle::random_instance(seed, n, std::sqrt(double(n)), 10.0);
        const SpinProblem sp = lift(inst);
        const SdrSolution sol = solve_sdr(sp);
        BoundOptions opts;
        opts.samples = 2000;
        opts.seed = seed;
        const BoundReport rep = theorem1_report(sp, sol, solve_exact(inst).sigma, true, opts);
        CHECK(rep.left_ok);
        CHECK(rep.lambda_eigs.size() == n + 1);
        if (rep.p_emp > 0.0) {
            CHECK(rep.theta_emp > std::numbers::pi / 2.0);
        }
    }
}

TEST_CASE("certain violation reports an infinite theta") {
    // All-ones covariance samples only all-on and all-off patterns with the
    // last sign matching; here every active node alone breaks the budget.
    const InstanceFile file = read_instance(oracle::data_dir() / "dense6_eps1.txt");
    const SpinProblem sp =
        lift(build_instance(Network::from_positions(file.positions), PathLossModel{file.beta}, file.epsilon));
    SdrSolution sol;
    sol.h_hat = Matrix::Ones(7, 7);
    sol.rho = 6.0;
    BoundOptions opts;
    opts.samples = 100;
    const BoundReport rep = theorem1_report(sp, sol, 0, true, opts);
    CHECK(rep.p_emp == 1.0);
    CHECK(std::isinf(rep.theta_emp));
    CHECK(rep.left_ok);
    CHECK_FALSE(rep.right_ok);
    CHECK(rep.sandwich_ok);
}

TEST_CASE("bound report CSV row lines up with its header") {
    const SpinProblem sp = lift(oracle::random_instance(1, 4, 2.0, 1.0));
    const SdrSolution sol = solve_sdr(sp);
    BoundOptions opts;
    opts.samples = 100;
    const std::string row = bound_csv_row(theorem1_report(sp, sol, 1, false, opts));
    const auto commas = [](const std::string& s) { return std::count(s.begin(), s.end(), ','); };
    CHECK(commas(row) == commas(bound_csv_header()));
    CHECK(std::count(row.begin(), row.end(), ';') == 4);
}

TEST_CASE("bounds validate shapes") {
    const SpinProblem sp = lift(oracle::random_instance(1, 4, 2.0, 1.0));
    CHECK_THROWS_AS(expected_objective(sp, Matrix::Identity(3, 3)), InvalidArgument);
    CHECK_THROWS_AS(psd_indicator(sp, Vector::Zero(2)), InvalidArgument);
    CHECK_THROWS_AS(sampled_objective(sp, Matrix::Identity(5, 5), 1, 0), InvalidArgument);
}
