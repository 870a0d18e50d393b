#ifndef PACK_RNG_HPP
#define PACK_RNG_HPP

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>

namespace pack {

/// SplitMix64 finalizer. Used to mix seeds; never as a stream generator.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/**
 * Derives an independent sub-seed from a master seed and a path of indices.
 *
 *   h = splitmix64(master); for each k: h = splitmix64(h ^ splitmix64(k + 1))
 *
 * The sweep uses derive_seed(master, point, realization) for layouts and
 * derive_seed(layout_seed, tag, trial) for rounding trials, so any single
 * realization or trial can be replayed in isolation.
 */
constexpr std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) noexcept {
    std::uint64_t h = splitmix64(master);
    for (std::uint64_t k : path) {
        h = splitmix64(h ^ splitmix64(k + 1));
    }
    return h;
}

/**
 * Reproducible random stream on top of std::mt19937_64.
 *
 * The engine's output sequence is fixed by the C++ standard; the real-valued
 * draws are computed here rather than through <random> distributions, whose
 * algorithms are implementation-defined. Same seed gives the same stream on
 * every conforming toolchain (up to libm for the Gaussian transform).
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal, Box-Muller with a cached second variate.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace pack

#endif // PACK_RNG_HPP
