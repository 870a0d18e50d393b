#ifndef PACK_NETWORK_HPP
#define PACK_NETWORK_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "pack/common.hpp"

namespace pack {

/// N x 2 node coordinates, one row per node.
using Positions = Eigen::Matrix<double, Eigen::Dynamic, 2>;

/**
 * A planar layout: N nodes in the square [0, side]^2 with density N / side^2.
 *
 * Immutable once built. Layouts produced by generate_uniform() are a pure
 * function of (density, side, seed).
 */
class Network {
public:
    /// Wraps explicit coordinates. side must bound every coordinate.
    Network(Positions positions, double side, std::uint64_t seed = 0);

    /// Smallest square [0, s]^2 holding the given (non-negative) coordinates.
    static Network from_positions(Positions positions);

    const Positions& positions() const { return positions_; }
    Eigen::Index size() const { return positions_.rows(); }
    double side() const { return side_; }
    double density() const { return static_cast<double>(size()) / (side_ * side_); }
    std::uint64_t seed() const { return seed_; }

private:
    Positions positions_;
    double side_;
    std::uint64_t seed_;
};

/// Power-law path loss l(r) = r^-beta, with l(0) = 0 for the self term.
struct PathLossModel {
    double beta = 3.0;

    double gain(double r) const;
};

/**
 * The binary packing problem for one layout: D holds pairwise path-loss gains
 * (zero diagonal), F = D^T D, and x is admissible iff ||D x||^2 <= epsilon.
 */
struct PackingInstance {
    Matrix dist_matrix;
    Matrix gram;
    double epsilon = 0.0;

    Eigen::Index size() const { return dist_matrix.rows(); }
};

/// N = round(density * side^2) i.i.d. uniform nodes in [0, side]^2.
Network generate_uniform(double density, double side, std::uint64_t seed);

/// Throws DegenerateGeometry on coincident nodes, InvalidArgument on epsilon <= 0.
PackingInstance build_instance(const Network& net, const PathLossModel& model, double epsilon);

/// Interference vector w = D x.
Vector interference(const PackingInstance& inst, const Activation& x);

/// ||D x||^2, the total interference energy of an activation pattern.
double interference_energy(const PackingInstance& inst, const Activation& x);

/// Budget test shared by every solver: ||Dx||^2 <= epsilon, with the same
/// absolute slack as the lifted check u'Ru <= 4 + kFeasTol.
bool within_budget(double energy, double epsilon);

bool is_feasible(const PackingInstance& inst, const Activation& x);

/// Plain-text instance file: "N beta epsilon" then N lines of "x y".
struct InstanceFile {
    Positions positions;
    double beta = 3.0;
    double epsilon = 1.0;
};

void write_instance(std::ostream& out, const InstanceFile& file);
void write_instance(const std::filesystem::path& path, const InstanceFile& file);
InstanceFile read_instance(std::istream& in);
InstanceFile read_instance(const std::filesystem::path& path);

} // namespace pack

#endif // PACK_NETWORK_HPP
