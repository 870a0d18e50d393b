#ifndef PACK_PROBLEM_HPP
#define PACK_PROBLEM_HPP

#include "pack/common.hpp"
#include "pack/network.hpp"

namespace pack {

/**
 * The {-1,+1} form of the packing problem over u = [v; 1], v = 2x - 1:
 *
 *   maximize  u'Qu / 4   subject to  u'Ru <= 4,  u_i^2 = 1
 *
 * with Q = [[I, 1], [1', N]] and R = (1/eps) [[F, F1], [1'F, 1'F1]].
 * Both are (N+1) x (N+1), dense and symmetric. The unit-modulus
 * constraints are not stored; they become diag(H) = 1 in the lifted problem.
 */
struct SpinProblem {
    Matrix q_matrix;
    Matrix r_matrix;
    Eigen::Index n = 0;

    Eigen::Index dim() const { return n + 1; }
};

SpinProblem lift(const PackingInstance& inst);

Spin binary_to_spin(const Activation& x);
Activation spin_to_binary(const Spin& v);

/// [2x - 1; 1], the homogenized spin vector of an activation pattern.
Spin homogenize(const Activation& x);

/// u'Qu / 4 for u in {-1,+1}^{N+1} with u_{N+1} = +1; equals the number of active nodes.
int activation_count(const Spin& u);

/// u'Ru, the lifted interference energy (4/eps) x'Fx.
double spin_energy(const SpinProblem& sp, const Spin& u);

/// u'Ru <= 4 + kFeasTol.
bool spin_feasible(const SpinProblem& sp, const Spin& u);

} // namespace pack

#endif // PACK_PROBLEM_HPP
