#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pack/linalg.hpp"
#include "pack/sdp.hpp"

using namespace pack;

namespace {

void check_feasible(const SpinProblem& sp, const SdrSolution& sol) {
    CHECK((sol.h_hat.diagonal().array() - 1.0).abs().maxCoeff() <= 1e-6);
    CHECK(min_eigenvalue(sol.h_hat) >= -1e-6);
    CHECK(sp.r_matrix.cwiseProduct(sol.h_hat).sum() <= 4.0 + 1e-6);
    CHECK(sol.rho == doctest::Approx(sp.q_matrix.cwiseProduct(sol.h_hat).sum() / 4.0).epsilon(1e-12));
}

SpinProblem fixture(const std::string& name) {
    const InstanceFile file = read_instance(oracle::data_dir() / (name + ".txt"));
    return lift(build_instance(Network::from_positions(file.positions), PathLossModel{file.beta}, file.epsilon));
}

} // namespace

TEST_CASE("project_psd") {
    Matrix psd(3, 3);
    psd << 2, 1, 0, 1, 2, 1, 0, 1, 2;
    CHECK((project_psd(psd) - psd).cwiseAbs().maxCoeff() <= 1e-12);

    Matrix a(2, 2);
    a << 1, 0, 0, -1;
    Matrix expected(2, 2);
    expected << 1, 0, 0, 0;
    CHECK((project_psd(a) - expected).cwiseAbs().maxCoeff() <= 1e-15);

    CHECK_THROWS_AS(project_psd(Matrix(2, 3)), InvalidArgument);
}

TEST_CASE("project_psd is Frobenius-nearest among nearby PSD matrices") {
    Rng rng(31);
    for (int t = 0; t < 10; ++t) {
        Matrix a(3, 3);
        for (Eigen::Index i = 0; i < 9; ++i) {
            a(i) = rng.uniform(-1.0, 1.0);
        }
        a = symmetrize(a);
        const Matrix p = project_psd(a);
        const double best = (a - p).norm();
        int probes = 0;
        for (int k = 0; k < 2000; ++k) {
            Matrix e(3, 3);
            for (Eigen::Index i = 0; i < 9; ++i) {
                e(i) = rng.uniform(-1e-2, 1e-2);
            }
            const Matrix cand = p + symmetrize(e);
            if (min_eigenvalue(cand) < 0.0) {
                continue;
            }
            ++probes;
            CHECK((a - cand).norm() >= best - 1e-12);
        }
        CHECK(probes > 0);
    }
}

TEST_CASE("all-off lift") {
    const Matrix h = all_off_lift(3);
    CHECK(h.rows() == 4);
    CHECK(h.diagonal() == Vector::Ones(4));
    CHECK(h(0, 3) == -1.0);
    CHECK(h(0, 1) == 1.0);
}

TEST_CASE("a single node relaxes to the rank-one all-on point") {
    Positions p(1, 2);
    p << 0.5, 0.5;
    const SpinProblem sp = lift(build_instance(Network(p, 1.0), PathLossModel{}, 1.0));
    const SdrSolution sol = solve_sdr(sp);
    CHECK(sol.status == SolveStatus::optimal);
    CHECK(sol.rho == doctest::Approx(1.0).epsilon(1e-7));
    CHECK((sol.h_hat - Matrix::Ones(2, 2)).cwiseAbs().maxCoeff() <= 1e-6);
}

TEST_CASE("relaxation values agree with the external reference solutions") {
    for (const auto& ref : oracle::load_references()) {
        CAPTURE(ref.name);
        const SpinProblem sp = fixture(ref.name);
        const SdrSolution sol = solve_sdr(sp);
        CHECK(sol.status == SolveStatus::optimal);
        check_feasible(sp, sol);
        CHECK(sol.rho >= ref.rho_feasible - 1e-7);
        CHECK(sol.rho <= ref.rho_raw + 1e-6);
        CHECK(sol.rho + 1e-6 >= ref.sigma);
        CHECK(sol.dual_bound >= sol.rho - 1e-6);
    }
}

TEST_CASE("near-coincident nodes") {
    // Two nodes 0.023 apart put an eigenvalue of ~2e9 into R. The interval
    // comes from this layout's feasible point and a dual certificate
    // (Diag(y) + t R - Q/4 >= 0) checked independently in numpy.
    const double n = 20.0;
    const Network net = generate_uniform(1.0 / n, n, 1084);
    const SpinProblem sp = lift(build_instance(net, PathLossModel{3.0}, 10.0));
    const SdrSolution sol = solve_sdr(sp);
    check_feasible(sp, sol);
    CHECK(sol.rho >= 17.4098);
    CHECK(sol.rho <= 17.40996 + 1e-6);
}

TEST_CASE("a pair 0.0065 apart still yields a point that dominates the optimum") {
    // R spans 7e-5 .. 4e12 here and the solve stops short of the tolerance,
    // but the polished point is feasible, so its value is a valid lower bound.
    const Network net = generate_uniform(1.0, std::sqrt(11.0), 541);
    const PackingInstance inst = build_instance(net, PathLossModel{3.0}, 10.0);
    const SpinProblem sp = lift(inst);
    const SdrSolution sol = solve_sdr(sp);
    check_feasible(sp, sol);
    CHECK(oracle::enumerate_sigma(inst).sigma == 2);
    CHECK(sol.rho >= 2.0);
    CHECK(sol.rho <= sol.dual_bound + 0.05);
}

TEST_CASE("relaxation dominates the enumerated optimum on small layouts") {
    Rng rng(41);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 9);
        const double side = seed % 2 == 0 ? std::sqrt(static_cast<double>(n)) : static_cast<double>(n);
        const double eps = seed % 3 == 0 ? 1.0 : (seed % 3 == 1 ? 10.0 : 100.0);
        const PackingInstance inst = oracle::random_instance(seed, n, side, eps);
        const SpinProblem sp = lift(inst);
        const SdrSolution sol = solve_sdr(sp);
        CAPTURE(seed);
        check_feasible(sp, sol);
        CHECK(sol.rho + 1e-6 >= oracle::enumerate_sigma(inst).sigma);
        CHECK(sol.rho <= n + 1e-6);
        CHECK(sol.rho >= -1e-9);
    }
}

TEST_CASE("relaxation value grows with the budget") {
    const Network net = generate_uniform(1.0, 3.0, 17);
    double last = -1.0;
    for (double eps : {0.5, 1.0, 5.0, 10.0, 100.0, 1000.0}) {
        const SdrSolution sol = solve_sdr(lift(build_instance(net, PathLossModel{}, eps)));
        CHECK(sol.rho + 1e-6 >= last);
        last = sol.rho;
    }
}

TEST_CASE("solve_sdr is deterministic and reports its iterations") {
    const SpinProblem sp = lift(oracle::random_instance(3, 8, 3.0, 2.0));
    int calls = 0;
    int last = 0;
    const SdrSolution a = solve_sdr(sp, {}, [&](const IterationTrace& t) {
        ++calls;
        // A second, wider-precision pass restarts the count.
        CHECK((t.iteration > last || t.iteration == 1));
        last = t.iteration;
    });
    const SdrSolution b = solve_sdr(sp);
    CHECK(a.h_hat == b.h_hat);
    CHECK(a.rho == b.rho);
    CHECK(calls <= a.iterations);
    CHECK(calls > 0);
    CHECK(a.iterations > 0);
}

TEST_CASE("iteration cap is reported, and the point is still feasible") {
    const SpinProblem sp = lift(oracle::random_instance(3, 8, 3.0, 2.0));
    SolverConfig cfg;
    cfg.max_iter = 2;
    const SdrSolution sol = solve_sdr(sp, cfg);
    CHECK(sol.status == SolveStatus::max_iterations);
    check_feasible(sp, sol);
    CHECK(to_string(sol.status) == "max-iterations");
}

TEST_CASE("solve_sdr validates its input") {
    SpinProblem sp = lift(oracle::random_instance(3, 4, 2.0, 1.0));
    SolverConfig cfg;
    cfg.tol = 0.0;
    CHECK_THROWS_AS(solve_sdr(sp, cfg), InvalidArgument);
    cfg = {};
    cfg.max_iter = 0;
    CHECK_THROWS_AS(solve_sdr(sp, cfg), InvalidArgument);
    sp.r_matrix(0, 0) = std::nan("");
    CHECK_THROWS_AS(solve_sdr(sp), NumericalFailure);
    sp.r_matrix.resize(2, 2);
    CHECK_THROWS_AS(solve_sdr(sp), InvalidArgument);
}
