#ifndef PACK_SDP_HPP
#define PACK_SDP_HPP

#include <functional>
#include <string_view>

#include "pack/common.hpp"
#include "pack/problem.hpp"

namespace pack {

enum class SolveStatus { optimal, max_iterations, infeasible_numerics };

std::string_view to_string(SolveStatus status);

struct SolverConfig {
    /// Stop when relative primal infeasibility, dual infeasibility and gap are all below tol.
    double tol = 1e-9;
    int max_iter = 200;
};

struct IterationTrace {
    int iteration = 0;
    double objective = 0.0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    double gap = 0.0;
    double step_primal = 0.0;
    double step_dual = 0.0;
};

using TraceCallback = std::function<void(const IterationTrace&)>;

/**
 * Result of the relaxation
 *
 *   rho = max Tr(QH)/4  s.t.  Tr(RH) <= 4,  H = H' >= 0,  diag(H) = 1.
 *
 * h_hat is always feasible to the stated tolerances (unit diagonal to
 * rounding, PSD, Tr(R h_hat) <= 4), whatever the status. rho is evaluated
 * at h_hat, so it never overstates what h_hat certifies; dual_bound is the
 * final dual objective, which bounds the optimum from above up to the
 * reported dual residual.
 */
struct SdrSolution {
    Matrix h_hat;
    double rho = 0.0;
    SolveStatus status = SolveStatus::optimal;
    int iterations = 0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    double gap = 0.0;
    double dual_bound = 0.0;
    double min_eigenvalue = 0.0;
    double trace_rh = 0.0;
};

/// Throws NumericalFailure on NaN/Inf iterates or a failed eigendecomposition.
SdrSolution solve_sdr(const SpinProblem& sp, const SolverConfig& cfg = {}, const TraceCallback& trace = {});

/// Rank-one lift u0 u0' of the all-off pattern, u0 = [-1, ..., -1, 1]. Always feasible.
Matrix all_off_lift(Eigen::Index n);

} // namespace pack

#endif // PACK_SDP_HPP
