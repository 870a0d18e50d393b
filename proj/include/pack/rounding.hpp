#ifndef PACK_ROUNDING_HPP
#define PACK_ROUNDING_HPP

#include <cstdint>

#include "pack/common.hpp"
#include "pack/problem.hpp"
#include "pack/rng.hpp"
#include "pack/sdp.hpp"

namespace pack {

/**
 * Draws r = sign(n) with n ~ N(0, H) and sign(0) = -1.
 *
 * The factor L with L L' = H_+ comes from a symmetric eigendecomposition with
 * negative eigenvalues clipped, which stays well defined when H is (close to)
 * rank one.
 */
class GaussianSignSampler {
public:
    explicit GaussianSignSampler(const Matrix& covariance);

    Eigen::Index dim() const { return factor_.rows(); }

    Spin sample(Rng& rng) const;

    /// One sample from a fresh stream seeded with seed.
    Spin sample(std::uint64_t seed) const;

private:
    Matrix factor_;
};

Spin sample_signs(const Matrix& h_hat, std::uint64_t seed);

struct RoundingResult {
    /// Best accepted vector, last entry +1. The all-off vector if nothing was accepted.
    Spin best_spin;
    int sigma_hat = 0;
    int accepted = 0;
    int trials = 0;
};

/// max(1000, 10 N).
int default_trials(Eigen::Index n);

/**
 * Gaussian sign rounding of an SDR solution.
 *
 * Trial t draws from sample_signs(h_hat, derive_seed(seed, {t})). A sample
 * with r_{N+1} = -1 is negated (u'Qu and u'Ru are even in u); with strict
 * set it is discarded instead. Feasible samples are kept and the one with
 * the most active nodes wins, earliest trial first on ties.
 *
 * Throws InvalidArgument if trials <= N.
 */
RoundingResult round_solution(const SpinProblem& sp, const SdrSolution& sol, int trials, std::uint64_t seed,
                              bool strict = false);

} // namespace pack

#endif // PACK_ROUNDING_HPP
