#ifndef PACK_LINALG_HPP
#define PACK_LINALG_HPP

// Dense symmetric kernels shared by the solver, the rounding sampler and the
// bound diagnostics. Everything here is templated on the Eigen expression so
// float/long double instantiations work the same way as double.

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "pack/common.hpp"

namespace pack {

template <typename Derived>
typename Derived::PlainObject symmetrize(const Eigen::MatrixBase<Derived>& a) {
    return (a + a.transpose()) / typename Derived::Scalar(2);
}

namespace detail {

template <typename Derived>
Eigen::SelfAdjointEigenSolver<typename Derived::PlainObject> eigh(const Eigen::MatrixBase<Derived>& a,
                                                                  int options = Eigen::ComputeEigenvectors) {
    if (a.rows() != a.cols()) {
        throw InvalidArgument("symmetric kernel expects a square matrix");
    }
    Eigen::SelfAdjointEigenSolver<typename Derived::PlainObject> es(a.derived(), options);
    if (es.info() != Eigen::Success) {
        throw NumericalFailure("symmetric eigendecomposition did not converge");
    }
    return es;
}

} // namespace detail

/// Frobenius-nearest PSD matrix: clip the spectrum of the symmetric part at zero.
template <typename Derived>
typename Derived::PlainObject project_psd(const Eigen::MatrixBase<Derived>& a) {
    using Scalar = typename Derived::Scalar;
    const auto es = detail::eigh(symmetrize(a));
    const auto& v = es.eigenvectors();
    const auto clipped = es.eigenvalues().cwiseMax(Scalar(0));
    typename Derived::PlainObject out = v * clipped.asDiagonal() * v.transpose();
    return symmetrize(out);
}

/// Returns L with L L^T = A_+ (negative eigenvalues clipped), so L z ~ N(0, A_+).
template <typename Derived>
typename Derived::PlainObject psd_factor(const Eigen::MatrixBase<Derived>& a) {
    using Scalar = typename Derived::Scalar;
    const auto es = detail::eigh(symmetrize(a));
    const auto roots = es.eigenvalues().cwiseMax(Scalar(0)).cwiseSqrt();
    return es.eigenvectors() * roots.asDiagonal();
}

/// Principal square root of the PSD part of a symmetric matrix.
template <typename Derived>
typename Derived::PlainObject psd_sqrt(const Eigen::MatrixBase<Derived>& a) {
    using Scalar = typename Derived::Scalar;
    const auto es = detail::eigh(symmetrize(a));
    const auto& v = es.eigenvectors();
    typename Derived::PlainObject out = v * es.eigenvalues().cwiseMax(Scalar(0)).cwiseSqrt().asDiagonal() * v.transpose();
    return symmetrize(out);
}

template <typename Derived>
typename Derived::Scalar min_eigenvalue(const Eigen::MatrixBase<Derived>& a) {
    const auto es = detail::eigh(symmetrize(a), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> eigenvalues_ascending(const Eigen::MatrixBase<Derived>& a) {
    return detail::eigh(symmetrize(a), Eigen::EigenvaluesOnly).eigenvalues();
}

/**
 * Entrywise arcsin. Entries may exceed [-1, 1] by at most clamp_tol (solver
 * round-off) and are clamped; anything further out is rejected.
 */
template <typename Derived>
typename Derived::PlainObject arcsin_matrix(const Eigen::MatrixBase<Derived>& a,
                                            typename Derived::Scalar clamp_tol = typename Derived::Scalar(1e-9)) {
    using Scalar = typename Derived::Scalar;
    typename Derived::PlainObject out(a.rows(), a.cols());
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            const Scalar v = a(i, j);
            if (!(std::abs(v) <= Scalar(1) + clamp_tol)) {
                throw InvalidArgument("arcsin_matrix: entry outside [-1, 1]");
            }
            out(i, j) = std::asin(std::clamp(v, Scalar(-1), Scalar(1)));
        }
    }
    return out;
}

} // namespace pack

#endif // PACK_LINALG_HPP
