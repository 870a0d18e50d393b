#include "pack/exact.hpp"

#include <iostream>
#include <string>
#include <vector>

namespace pack {

namespace {

class CardinalitySearch {
public:
    explicit CardinalitySearch(const PackingInstance& inst)
        : f_(inst.gram), eps_(inst.epsilon), n_(inst.size()), x_(Activation::Zero(n_)),
          fx_(static_cast<std::size_t>(n_) + 1, Vector::Zero(n_)) {}

    // Looks for a feasible subset of exactly `target` nodes.
    bool find(int target) {
        target_ = target;
        x_.setZero();
        return descend(0, 0, 0.0);
    }

    const Activation& solution() const { return x_; }
    std::uint64_t checked() const { return checked_; }

private:
    bool descend(Eigen::Index i, int chosen, double energy) {
        if (chosen == target_) {
            return true;
        }
        if (chosen + (n_ - i) < target_) {
            return false;
        }
        // x_i = 0 first keeps the walk in lexicographic order.
        if (descend(i + 1, chosen, energy)) {
            return true;
        }
        const Vector& fx = fx_[static_cast<std::size_t>(chosen)];
        const double grown = energy + 2.0 * fx(i) + f_(i, i);
        ++checked_;
        if (!within_budget(grown, eps_)) {
            return false;
        }
        fx_[static_cast<std::size_t>(chosen) + 1] = fx + f_.col(i);
        x_(i) = 1;
        if (descend(i + 1, chosen + 1, grown)) {
            return true;
        }
        x_(i) = 0;
        return false;
    }

    const Matrix& f_;
    double eps_;
    Eigen::Index n_;
    Activation x_;
    // fx_[k] = F x restricted to the first k chosen nodes of the current branch.
    std::vector<Vector> fx_;
    int target_ = 0;
    std::uint64_t checked_ = 0;
};

} // namespace

ExactResult solve_exact(const PackingInstance& inst, Eigen::Index limit) {
    const Eigen::Index n = inst.size();
    if (n > limit) {
        throw InstanceTooLarge("exact search limited to N <= " + std::to_string(limit) + ", got N=" +
                               std::to_string(n));
    }
    if (n > kDefaultExactLimit) {
        std::clog << "warning: exact search over N=" << n << " nodes may take very long\n";
    }
    if (!(inst.epsilon > 0.0)) {
        throw InvalidArgument("exact: epsilon must be positive");
    }

    CardinalitySearch search(inst);
    ExactResult res;
    res.best_x = Activation::Zero(n);
    for (int c = static_cast<int>(n); c > 0; --c) {
        if (search.find(c)) {
            res.sigma = c;
            res.best_x = search.solution();
            break;
        }
    }
    res.subsets_checked = search.checked() + 1;
    return res;
}

} // namespace pack
