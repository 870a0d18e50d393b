#ifndef PACK_EXACT_HPP
#define PACK_EXACT_HPP

#include <cstdint>

#include "pack/common.hpp"
#include "pack/network.hpp"

namespace pack {

inline constexpr Eigen::Index kDefaultExactLimit = 20;

struct ExactResult {
    int sigma = 0;
    Activation best_x;
    /// Number of subsets whose interference energy was evaluated.
    std::uint64_t subsets_checked = 0;
};

/**
 * Largest feasible activation set, by search over cardinalities from N down.
 *
 * Within one cardinality the search walks subsets in lexicographic order of
 * x (x_i = 0 branch first) and cuts a branch as soon as its partial energy
 * x'Fx exceeds the budget; F has non-negative entries, so no superset of an
 * infeasible set is feasible. The first hit is therefore the
 * lexicographically smallest optimum.
 *
 * Throws InstanceTooLarge if N > limit. A limit above 20 is honoured with a
 * warning on std::clog.
 */
ExactResult solve_exact(const PackingInstance& inst, Eigen::Index limit = kDefaultExactLimit);

} // namespace pack

#endif // PACK_EXACT_HPP
