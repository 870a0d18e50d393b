#include "pack/network.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "pack/format.hpp"
#include "pack/rng.hpp"

namespace pack {

Network::Network(Positions positions, double side, std::uint64_t seed)
    : positions_(std::move(positions)), side_(side), seed_(seed) {
    if (!(side_ > 0.0) || !std::isfinite(side_)) {
        throw InvalidArgument("network side must be positive and finite");
    }
    if (positions_.rows() < 1) {
        throw InvalidArgument("network needs at least one node");
    }
    if (!positions_.allFinite() || positions_.minCoeff() < 0.0 || positions_.maxCoeff() > side_) {
        throw InvalidArgument("node coordinates must lie in [0, side]^2");
    }
}

Network Network::from_positions(Positions positions) {
    if (positions.rows() < 1) {
        throw InvalidArgument("network needs at least one node");
    }
    const double extent = positions.maxCoeff();
    return Network(std::move(positions), extent > 0.0 ? extent : 1.0);
}

double PathLossModel::gain(double r) const {
    return r > 0.0 ? std::pow(r, -beta) : 0.0;
}

Network generate_uniform(double density, double side, std::uint64_t seed) {
    if (!(density > 0.0) || !(side > 0.0) || !std::isfinite(density) || !std::isfinite(side)) {
        throw InvalidArgument("density and side must be positive and finite");
    }
    const double expected = std::round(density * side * side);
    if (expected < 1.0) {
        throw InvalidArgument("density * side^2 rounds to zero nodes");
    }
    const auto n = static_cast<Eigen::Index>(expected);
    Rng rng(seed);
    Positions pos(n, 2);
    for (Eigen::Index i = 0; i < n; ++i) {
        pos(i, 0) = rng.uniform(0.0, side);
        pos(i, 1) = rng.uniform(0.0, side);
    }
    return Network(std::move(pos), side, seed);
}

PackingInstance build_instance(const Network& net, const PathLossModel& model, double epsilon) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw InvalidArgument("interference budget epsilon must be positive");
    }
    if (!(model.beta > 0.0)) {
        throw InvalidArgument("path-loss exponent must be positive");
    }
    const auto& p = net.positions();
    const Eigen::Index n = net.size();
    PackingInstance inst;
    inst.epsilon = epsilon;
    inst.dist_matrix = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double r = (p.row(i) - p.row(j)).norm();
            if (!(r > 0.0)) {
                throw DegenerateGeometry("nodes " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
            }
            const double g = model.gain(r);
            if (!std::isfinite(g)) {
                throw DegenerateGeometry("path loss overflows for nodes " + std::to_string(i) + " and " +
                                         std::to_string(j));
            }
            inst.dist_matrix(i, j) = g;
            inst.dist_matrix(j, i) = g;
        }
    }
    inst.gram = inst.dist_matrix.transpose() * inst.dist_matrix;
    inst.gram = (inst.gram + inst.gram.transpose()).eval() / 2.0;
    return inst;
}

namespace {

void check_activation(const PackingInstance& inst, const Activation& x) {
    if (x.size() != inst.size()) {
        throw InvalidArgument("activation length " + std::to_string(x.size()) + " does not match N=" +
                              std::to_string(inst.size()));
    }
    if ((x.array() != 0 && x.array() != 1).any()) {
        throw InvalidArgument("activation entries must be 0 or 1");
    }
}

} // namespace

Vector interference(const PackingInstance& inst, const Activation& x) {
    check_activation(inst, x);
    return inst.dist_matrix * x.cast<double>();
}

double interference_energy(const PackingInstance& inst, const Activation& x) {
    return interference(inst, x).squaredNorm();
}

bool within_budget(double energy, double epsilon) {
    return 4.0 * energy / epsilon <= 4.0 + kFeasTol;
}

bool is_feasible(const PackingInstance& inst, const Activation& x) {
    return within_budget(interference_energy(inst, x), inst.epsilon);
}

void write_instance(std::ostream& out, const InstanceFile& file) {
    out << file.positions.rows() << ' ' << format_double(file.beta) << ' ' << format_double(file.epsilon) << '\n';
    for (Eigen::Index i = 0; i < file.positions.rows(); ++i) {
        out << format_double(file.positions(i, 0)) << ' ' << format_double(file.positions(i, 1)) << '\n';
    }
}

void write_instance(const std::filesystem::path& path, const InstanceFile& file) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    write_instance(out, file);
    if (!out) {
        throw IoError("write to " + path.string() + " failed");
    }
}

InstanceFile read_instance(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw InvalidArgument("instance file: missing header line");
    }
    std::istringstream header(line);
    std::string n_tok, beta_tok, eps_tok;
    if (!(header >> n_tok >> beta_tok >> eps_tok)) {
        throw InvalidArgument("instance file: header must be 'N beta epsilon'");
    }
    const auto n = parse_int<long>(n_tok);
    if (n < 1) {
        throw InvalidArgument("instance file: N must be at least 1");
    }
    InstanceFile file;
    file.beta = parse_double(beta_tok);
    file.epsilon = parse_double(eps_tok);
    file.positions.resize(n, 2);
    for (long i = 0; i < n; ++i) {
        if (!std::getline(in, line)) {
            throw InvalidArgument("instance file: expected " + std::to_string(n) + " coordinate lines");
        }
        std::istringstream row(line);
        std::string x_tok, y_tok;
        if (!(row >> x_tok >> y_tok)) {
            throw InvalidArgument("instance file: malformed coordinate line " + std::to_string(i + 2));
        }
        file.positions(i, 0) = parse_double(x_tok);
        file.positions(i, 1) = parse_double(y_tok);
    }
    return file;
}

InstanceFile read_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    return read_instance(in);
}

} // namespace pack
