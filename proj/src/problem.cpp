#include "pack/problem.hpp"

#include <string>

namespace pack {

namespace {

void check_spin(const Spin& v) {
    if ((v.array() != 1 && v.array() != -1).any()) {
        throw InvalidArgument("spin entries must be -1 or +1");
    }
}

} // namespace

SpinProblem lift(const PackingInstance& inst) {
    if (!(inst.epsilon > 0.0)) {
        throw InvalidArgument("lift: epsilon must be positive");
    }
    const Eigen::Index n = inst.size();
    const Matrix& f = inst.gram;

    SpinProblem sp;
    sp.n = n;

    sp.q_matrix.resize(n + 1, n + 1);
    sp.q_matrix.topLeftCorner(n, n).setIdentity();
    sp.q_matrix.topRightCorner(n, 1).setOnes();
    sp.q_matrix.bottomLeftCorner(1, n).setOnes();
    sp.q_matrix(n, n) = static_cast<double>(n);

    const Vector f1 = f.rowwise().sum();
    sp.r_matrix.resize(n + 1, n + 1);
    sp.r_matrix.topLeftCorner(n, n) = f;
    sp.r_matrix.topRightCorner(n, 1) = f1;
    sp.r_matrix.bottomLeftCorner(1, n) = f1.transpose();
    sp.r_matrix(n, n) = f1.sum();
    sp.r_matrix /= inst.epsilon;
    return sp;
}

Spin binary_to_spin(const Activation& x) {
    if ((x.array() != 0 && x.array() != 1).any()) {
        throw InvalidArgument("binary entries must be 0 or 1");
    }
    return (2 * x.array() - 1).matrix();
}

Activation spin_to_binary(const Spin& v) {
    check_spin(v);
    return ((v.array() + 1) / 2).matrix();
}

Spin homogenize(const Activation& x) {
    Spin u(x.size() + 1);
    u.head(x.size()) = binary_to_spin(x);
    u(x.size()) = 1;
    return u;
}

int activation_count(const Spin& u) {
    if (u.size() < 1) {
        throw InvalidArgument("activation_count: empty spin vector");
    }
    check_spin(u);
    if (u(u.size() - 1) != 1) {
        throw InvalidArgument("activation_count: homogenizing coordinate must be +1 (negate the vector first)");
    }
    // u'Qu = sum v_i^2 + 2 * 1'v + N = 2N + 2 * 1'v, so u'Qu / 4 = (N + 1'v) / 2.
    const Eigen::Index n = u.size() - 1;
    const int sum_v = u.head(n).sum();
    return static_cast<int>((n + sum_v) / 2);
}

double spin_energy(const SpinProblem& sp, const Spin& u) {
    if (u.size() != sp.dim()) {
        throw InvalidArgument("spin vector length " + std::to_string(u.size()) + " does not match N+1=" +
                              std::to_string(sp.dim()));
    }
    check_spin(u);
    const Vector ud = u.cast<double>();
    return ud.dot(sp.r_matrix * ud);
}

bool spin_feasible(const SpinProblem& sp, const Spin& u) {
    return spin_energy(sp, u) <= 4.0 + kFeasTol;
}

} // namespace pack
