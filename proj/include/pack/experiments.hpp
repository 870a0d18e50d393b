#ifndef PACK_EXPERIMENTS_HPP
#define PACK_EXPERIMENTS_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pack/common.hpp"
#include "pack/exact.hpp"
#include "pack/sdp.hpp"

namespace pack {

/**
 * Node density as a function of N: "const:L" gives lambda = L, "pow:E" gives
 * lambda = N^E. The layout square has side sqrt(N / lambda).
 */
struct DensityRule {
    enum class Kind { constant, power };
    Kind kind = Kind::constant;
    double value = 1.0;

    double lambda(int n) const;
    double side(int n) const;
    std::string to_string() const;
    static DensityRule parse(std::string_view text);
};

/// A fixed budget, or "N/2" evaluated per node count.
struct EpsilonRule {
    bool half_n = false;
    double value = 10.0;

    double epsilon(int n) const;
    std::string to_string() const;
    static EpsilonRule parse(std::string_view text);
};

enum class SweepKind { nodes, epsilon, density_fixed };

std::string_view to_string(SweepKind kind);
SweepKind parse_sweep_kind(std::string_view text);

/**
 * nodes:         every N in n_values at the single rule `epsilon`.
 * epsilon:       every rule in eps_values at every N in n_values.
 * density_fixed: same grid as epsilon, grouped by budget in the plot data.
 *
 * Sweep points are ordered density, then N, then budget.
 */
struct SweepConfig {
    SweepKind kind = SweepKind::nodes;
    std::vector<int> n_values;
    std::vector<EpsilonRule> eps_values;
    std::vector<DensityRule> densities{DensityRule{}};
    double beta = 3.0;
    EpsilonRule epsilon;
    int realizations = 1000;
    std::uint64_t master_seed = 1;
    SolverConfig solver;
    /// Rounding trials per realization; 0 selects max(1000, 10 N).
    int rounding_k = 0;
    bool strict_rounding = false;
    Eigen::Index exact_limit = kDefaultExactLimit;
    /// Worker threads; 0 reads PACK_THREADS, falling back to the hardware count.
    unsigned threads = 0;
};

/// One realization, kept so individual layouts can be inspected or replayed.
struct RealizationRecord {
    std::size_t point = 0;
    int realization = 0;
    std::uint64_t layout_seed = 0;
    int n = 0;
    double epsilon = 0.0;
    bool excluded = false;
    std::string failure;
    double rho = 0.0;
    SolveStatus status = SolveStatus::optimal;
    int sigma_hat = 0;
    /// -1 when N exceeds the exact limit.
    int sigma = -1;
};

/// Aggregates over the realizations of one sweep point. Means skip excluded realizations.
struct SweepRow {
    std::string density_rule;
    std::string epsilon_rule;
    int n = 0;
    double lambda = 0.0;
    double epsilon = 0.0;
    double beta = 0.0;
    /// NaN when N exceeds the exact limit.
    double mean_sigma = 0.0;
    double mean_rho = 0.0;
    double mean_sigma_hat = 0.0;
    /// Fraction of realizations with rho - sigma <= 1; NaN without exact sigma.
    double frac_gap_le_1 = 0.0;
    int realizations = 0;
    int excluded = 0;
    /// Seconds spent on this point summed over workers. Not written to CSV.
    double wallclock = 0.0;

    friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<RealizationRecord> records;
    /// Some point excluded more than 1% of its realizations.
    bool exclusion_budget_exceeded = false;
};

/// Layout seed of a realization: derive_seed(master, {density index, N, realization}).
std::uint64_t layout_seed(std::uint64_t master, std::size_t density_index, int n, int realization);

/// Rounding seed of a realization: derive_seed(master, {point, realization, 1}).
std::uint64_t rounding_seed(std::uint64_t master, std::size_t point, int realization);

/// Thread count from PACK_THREADS, else std::thread::hardware_concurrency(), at least 1.
unsigned default_thread_count();

/**
 * Runs every realization of every sweep point. Realizations that fail with
 * NumericalFailure or DegenerateGeometry are recorded and excluded; other
 * exceptions propagate. Output is independent of the thread count.
 */
SweepResult run_sweep(const SweepConfig& cfg);

std::string csv_header();
void emit_csv(std::ostream& out, const std::vector<SweepRow>& rows);
void emit_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows);
std::vector<SweepRow> parse_csv(std::istream& in);

/**
 * Plot data in gnuplot index blocks: one block per curve, headed by
 * "# <quantity> <label>", then "x y" lines, blocks separated by two blank
 * lines. Rows sharing N are plotted against epsilon, otherwise against N
 * with one curve pair per density and budget rule. NaN points are skipped.
 */
void emit_plotdata(std::ostream& out, const std::vector<SweepRow>& rows);
void emit_plotdata(const std::filesystem::path& path, const std::vector<SweepRow>& rows);

} // namespace pack

#endif // PACK_EXPERIMENTS_HPP
