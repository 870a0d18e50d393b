#ifndef PACK_COMMON_HPP
#define PACK_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace pack {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IntVector = Eigen::VectorXi;

/// Binary activation pattern x in {0,1}^N.
using Activation = Eigen::VectorXi;
/// Sign vector in {-1,+1}^N (or N+1 with the homogenizing coordinate).
using Spin = Eigen::VectorXi;

// Absolute slack on the lifted budget check u'Ru <= 4.
inline constexpr double kFeasTol = 1e-9;

class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Two nodes share a position, so r^-beta diverges.
class DegenerateGeometry : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class InstanceTooLarge : public std::length_error {
public:
    using std::length_error::length_error;
};

/// NaN/Inf in iterates or a failed eigendecomposition.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace pack

#endif // PACK_COMMON_HPP
