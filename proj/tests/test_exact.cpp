#include <doctest.h>

#include "oracles.hpp"
#include "pack/exact.hpp"

using namespace pack;

TEST_CASE("trivial layouts") {
    Positions one(1, 2);
    one << 0.1, 0.1;
    const ExactResult single = solve_exact(build_instance(Network(one, 1.0), PathLossModel{}, 1.0));
    CHECK(single.sigma == 1);
    CHECK(single.best_x == Activation::Ones(1));

    Positions two(2, 2);
    two << 0.0, 0.0, 2.0, 0.0;
    const ExactResult pair = solve_exact(build_instance(Network(two, 2.0), PathLossModel{3.0}, 1.0));
    CHECK(pair.sigma == 2);
}

TEST_CASE("matches plain enumeration, including the tie-break") {
    Rng rng(51);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 11);
        const double side = rng.uniform() < 0.5 ? std::sqrt(static_cast<double>(n)) : static_cast<double>(n);
        const double eps = std::pow(10.0, rng.uniform(-1.0, 2.0));
        const PackingInstance inst = oracle::random_instance(seed, n, side, eps);
        const ExactResult got = solve_exact(inst);
        const oracle::Enumerated want = oracle::enumerate_sigma(inst);
        CAPTURE(seed);
        CHECK(got.sigma == want.sigma);
        CHECK(got.best_x == want.best_x);
        CHECK(got.best_x.sum() == got.sigma);
        CHECK(is_feasible(inst, got.best_x));
        CHECK(got.sigma <= n);
        CHECK(got.subsets_checked >= 1);
    }
}

TEST_CASE("lexicographically smallest optimum among symmetric choices") {
    // Three collinear nodes, spacing 1, tight budget: any single node fits,
    // no pair does. The smallest x in lexicographic order is (0, 0, 1).
    Positions p(3, 2);
    p << 0.0, 0.0, 1.0, 0.0, 2.0, 0.0;
    const PackingInstance inst = build_instance(Network(p, 2.0), PathLossModel{3.0}, 1.1);
    const ExactResult res = solve_exact(inst);
    CHECK(res.sigma == 1);
    Activation x(3);
    x << 0, 0, 1;
    CHECK(res.best_x == x);
}

TEST_CASE("optimum grows with the budget") {
    const Network net = generate_uniform(1.0, 3.5, 4);
    int last = 0;
    for (double eps : {0.1, 1.0, 10.0, 100.0, 1e4}) {
        const int s = solve_exact(build_instance(net, PathLossModel{}, eps)).sigma;
        CHECK(s >= last);
        last = s;
    }
}

TEST_CASE("fixture optima") {
    for (const auto& ref : oracle::load_references()) {
        CAPTURE(ref.name);
        const InstanceFile file = read_instance(oracle::data_dir() / (ref.name + ".txt"));
        const PackingInstance inst =
            build_instance(Network::from_positions(file.positions), PathLossModel{file.beta}, file.epsilon);
        CHECK(solve_exact(inst).sigma == ref.sigma);
    }
}

TEST_CASE("size limit") {
    const PackingInstance inst = oracle::random_instance(1, 21, 5.0, 1.0);
    CHECK_THROWS_AS(solve_exact(inst), InstanceTooLarge);
    CHECK_THROWS_AS(solve_exact(oracle::random_instance(1, 6, 2.0, 1.0), 5), InstanceTooLarge);
}
