#include "pack/rounding.hpp"

#include <algorithm>
#include <string>

#include "pack/linalg.hpp"

namespace pack {

GaussianSignSampler::GaussianSignSampler(const Matrix& covariance) {
    if (covariance.rows() < 1 || covariance.rows() != covariance.cols()) {
        throw InvalidArgument("sampler: covariance must be a non-empty square matrix");
    }
    if (!covariance.allFinite()) {
        throw NumericalFailure("sampler: non-finite covariance");
    }
    factor_ = psd_factor(covariance);
}

Spin GaussianSignSampler::sample(Rng& rng) const {
    Vector z(factor_.cols());
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        z(i) = rng.normal();
    }
    const Vector n = factor_ * z;
    return n.unaryExpr([](double v) { return v > 0.0 ? 1 : -1; });
}

Spin GaussianSignSampler::sample(std::uint64_t seed) const {
    Rng rng(seed);
    return sample(rng);
}

Spin sample_signs(const Matrix& h_hat, std::uint64_t seed) {
    return GaussianSignSampler(h_hat).sample(seed);
}

int default_trials(Eigen::Index n) {
    return static_cast<int>(std::max<Eigen::Index>(1000, 10 * n));
}

RoundingResult round_solution(const SpinProblem& sp, const SdrSolution& sol, int trials, std::uint64_t seed,
                              bool strict) {
    if (trials <= sp.n) {
        throw InvalidArgument("rounding: need more than N=" + std::to_string(sp.n) + " trials, got " +
                              std::to_string(trials));
    }
    if (sol.h_hat.rows() != sp.dim() || sol.h_hat.cols() != sp.dim()) {
        throw InvalidArgument("rounding: SDR solution does not match the problem size");
    }
    const GaussianSignSampler sampler(sol.h_hat);

    RoundingResult res;
    res.trials = trials;
    res.best_spin = -Spin::Ones(sp.dim());
    res.best_spin(sp.n) = 1;
    res.sigma_hat = 0;
    bool found = false;
    for (int t = 0; t < trials; ++t) {
        Spin r = sampler.sample(derive_seed(seed, {static_cast<std::uint64_t>(t)}));
        if (r(sp.n) == -1) {
            if (strict) {
                continue;
            }
            r = -r;
        }
        if (!spin_feasible(sp, r)) {
            continue;
        }
        ++res.accepted;
        const int count = activation_count(r);
        if (!found || count > res.sigma_hat) {
            res.best_spin = r;
            res.sigma_hat = count;
            found = true;
        }
    }
    return res;
}

} // namespace pack
