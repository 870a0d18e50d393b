#include "pack/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "pack/format.hpp"
#include "pack/network.hpp"
#include "pack/problem.hpp"
#include "pack/rng.hpp"
#include "pack/rounding.hpp"

namespace pack {

double DensityRule::lambda(int n) const {
    if (n < 1) {
        throw InvalidArgument("density rule: N must be positive");
    }
    return kind == Kind::constant ? value : std::pow(static_cast<double>(n), value);
}

double DensityRule::side(int n) const {
    return std::sqrt(n / lambda(n));
}

std::string DensityRule::to_string() const {
    return (kind == Kind::constant ? "const:" : "pow:") + format_double(value);
}

DensityRule DensityRule::parse(std::string_view text) {
    DensityRule rule;
    if (text.starts_with("const:")) {
        rule.kind = Kind::constant;
        rule.value = parse_double(text.substr(6));
        if (!(rule.value > 0.0) || !std::isfinite(rule.value)) {
            throw InvalidArgument("density: constant must be positive");
        }
    } else if (text.starts_with("pow:")) {
        rule.kind = Kind::power;
        rule.value = parse_double(text.substr(4));
        if (!std::isfinite(rule.value)) {
            throw InvalidArgument("density: exponent must be finite");
        }
    } else {
        throw InvalidArgument("density must be const:L or pow:E, got '" + std::string(text) + "'");
    }
    return rule;
}

double EpsilonRule::epsilon(int n) const {
    return half_n ? n / 2.0 : value;
}

std::string EpsilonRule::to_string() const {
    return half_n ? "N/2" : format_double(value);
}

EpsilonRule EpsilonRule::parse(std::string_view text) {
    EpsilonRule rule;
    if (text == "N/2") {
        rule.half_n = true;
        return rule;
    }
    rule.value = parse_double(text);
    if (!(rule.value > 0.0) || !std::isfinite(rule.value)) {
        throw InvalidArgument("epsilon must be positive, got '" + std::string(text) + "'");
    }
    return rule;
}

std::string_view to_string(SweepKind kind) {
    switch (kind) {
    case SweepKind::nodes:
        return "nodes";
    case SweepKind::epsilon:
        return "epsilon";
    case SweepKind::density_fixed:
        return "density-fixed";
    }
    return "unknown";
}

SweepKind parse_sweep_kind(std::string_view text) {
    if (text == "nodes") {
        return SweepKind::nodes;
    }
    if (text == "epsilon") {
        return SweepKind::epsilon;
    }
    if (text == "density-fixed") {
        return SweepKind::density_fixed;
    }
    throw InvalidArgument("sweep kind must be nodes, epsilon or density-fixed");
}

std::uint64_t layout_seed(std::uint64_t master, std::size_t density_index, int n, int realization) {
    return derive_seed(master, {density_index, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(realization)});
}

std::uint64_t rounding_seed(std::uint64_t master, std::size_t point, int realization) {
    return derive_seed(master, {point, static_cast<std::uint64_t>(realization), 1});
}

unsigned default_thread_count() {
    if (const char* env = std::getenv("PACK_THREADS"); env != nullptr && *env != '\0') {
        const auto n = parse_int<long>(env);
        if (n < 1) {
            throw InvalidArgument("PACK_THREADS must be a positive integer");
        }
        return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct SweepPoint {
    std::size_t density_index = 0;
    DensityRule density;
    EpsilonRule epsilon;
    int n = 0;
};

std::vector<SweepPoint> expand(const SweepConfig& cfg) {
    if (cfg.realizations < 1) {
        throw InvalidArgument("sweep: realizations must be at least 1");
    }
    if (cfg.n_values.empty()) {
        throw InvalidArgument("sweep: empty N list");
    }
    if (cfg.densities.empty()) {
        throw InvalidArgument("sweep: no density rule");
    }
    if (!(cfg.beta > 0.0)) {
        throw InvalidArgument("sweep: beta must be positive");
    }
    for (int n : cfg.n_values) {
        if (n < 1) {
            throw InvalidArgument("sweep: N values must be positive");
        }
    }
    std::vector<EpsilonRule> budgets;
    if (cfg.kind == SweepKind::nodes) {
        budgets.push_back(cfg.epsilon);
    } else {
        if (cfg.eps_values.empty()) {
            throw InvalidArgument("sweep: empty epsilon list");
        }
        budgets = cfg.eps_values;
    }
    std::vector<SweepPoint> points;
    for (std::size_t d = 0; d < cfg.densities.size(); ++d) {
        for (int n : cfg.n_values) {
            for (const auto& eps : budgets) {
                points.push_back({d, cfg.densities[d], eps, n});
            }
        }
    }
    return points;
}

RealizationRecord run_one(const SweepConfig& cfg, const SweepPoint& pt, std::size_t point, int r) {
    RealizationRecord rec;
    rec.point = point;
    rec.realization = r;
    rec.n = pt.n;
    rec.epsilon = pt.epsilon.epsilon(pt.n);
    rec.layout_seed = layout_seed(cfg.master_seed, pt.density_index, pt.n, r);
    try {
        const Network net = generate_uniform(pt.density.lambda(pt.n), pt.density.side(pt.n), rec.layout_seed);
        const PackingInstance inst = build_instance(net, PathLossModel{cfg.beta}, rec.epsilon);
        const SpinProblem sp = lift(inst);
        const SdrSolution sol = solve_sdr(sp, cfg.solver);
        rec.rho = sol.rho;
        rec.status = sol.status;
        const int k = cfg.rounding_k > 0 ? cfg.rounding_k : default_trials(sp.n);
        rec.sigma_hat =
            round_solution(sp, sol, k, rounding_seed(cfg.master_seed, point, r), cfg.strict_rounding).sigma_hat;
        if (inst.size() <= cfg.exact_limit) {
            rec.sigma = solve_exact(inst, cfg.exact_limit).sigma;
        }
    } catch (const NumericalFailure& e) {
        rec.excluded = true;
        rec.failure = e.what();
    } catch (const DegenerateGeometry& e) {
        rec.excluded = true;
        rec.failure = e.what();
    }
    return rec;
}

} // namespace

SweepResult run_sweep(const SweepConfig& cfg) {
    const std::vector<SweepPoint> points = expand(cfg);
    const std::size_t per_point = static_cast<std::size_t>(cfg.realizations);
    const std::size_t total = points.size() * per_point;

    SweepResult result;
    result.records.resize(total);
    std::vector<double> seconds(total, 0.0);

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t task = next++; task < total; task = next++) {
            const std::size_t point = task / per_point;
            const int r = static_cast<int>(task % per_point);
            const auto start = std::chrono::steady_clock::now();
            try {
                result.records[task] = run_one(cfg, points[point], point, r);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next = total;
                return;
            }
            seconds[task] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        }
    };

    const unsigned threads =
        static_cast<unsigned>(std::min<std::size_t>(cfg.threads > 0 ? cfg.threads : default_thread_count(), total));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }

    // Reduce in realization order so the sums do not depend on scheduling.
    for (std::size_t p = 0; p < points.size(); ++p) {
        const SweepPoint& pt = points[p];
        SweepRow row;
        row.density_rule = pt.density.to_string();
        row.epsilon_rule = pt.epsilon.to_string();
        row.n = pt.n;
        row.lambda = pt.density.lambda(pt.n);
        row.epsilon = pt.epsilon.epsilon(pt.n);
        row.beta = cfg.beta;
        row.realizations = cfg.realizations;

        double sum_rho = 0.0, sum_hat = 0.0, sum_sigma = 0.0;
        int used = 0, with_sigma = 0, small_gap = 0;
        for (std::size_t r = 0; r < per_point; ++r) {
            const RealizationRecord& rec = result.records[p * per_point + r];
            row.wallclock += seconds[p * per_point + r];
            if (rec.excluded) {
                ++row.excluded;
                continue;
            }
            ++used;
            sum_rho += rec.rho;
            sum_hat += rec.sigma_hat;
            if (rec.sigma >= 0) {
                ++with_sigma;
                sum_sigma += rec.sigma;
                if (rec.rho - rec.sigma <= 1.0) {
                    ++small_gap;
                }
            }
        }
        const double nan = std::nan("");
        row.mean_rho = used > 0 ? sum_rho / used : nan;
        row.mean_sigma_hat = used > 0 ? sum_hat / used : nan;
        row.mean_sigma = with_sigma > 0 ? sum_sigma / with_sigma : nan;
        row.frac_gap_le_1 = with_sigma > 0 ? static_cast<double>(small_gap) / with_sigma : nan;
        if (row.excluded > 0.01 * cfg.realizations) {
            result.exclusion_budget_exceeded = true;
        }
        result.rows.push_back(std::move(row));
    }
    return result;
}

std::string csv_header() {
    return "density_rule,epsilon_rule,n,lambda,epsilon,beta,mean_sigma,mean_rho,mean_sigma_hat,frac_gap_le_1,"
           "realizations,excluded";
}

void emit_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    if (rows.empty()) {
        throw InvalidArgument("emit_csv: no rows");
    }
    out << csv_header() << '\n';
    for (const auto& r : rows) {
        out << r.density_rule << ',' << r.epsilon_rule << ',' << r.n << ',' << format_double(r.lambda) << ','
            << format_double(r.epsilon) << ',' << format_double(r.beta) << ',' << format_double(r.mean_sigma) << ','
            << format_double(r.mean_rho) << ',' << format_double(r.mean_sigma_hat) << ','
            << format_double(r.frac_gap_le_1) << ',' << r.realizations << ',' << r.excluded << '\n';
    }
}

void emit_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    emit_csv(out, rows);
    if (!out.flush()) {
        throw IoError("write to " + path.string() + " failed");
    }
}

std::vector<SweepRow> parse_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != csv_header()) {
        throw InvalidArgument("csv: missing or unexpected header");
    }
    std::vector<SweepRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> f;
        std::istringstream fields(line);
        for (std::string cell; std::getline(fields, cell, ',');) {
            f.push_back(cell);
        }
        if (f.size() != 12) {
            throw InvalidArgument("csv: expected 12 fields, got " + std::to_string(f.size()));
        }
        SweepRow r;
        r.density_rule = f[0];
        r.epsilon_rule = f[1];
        r.n = parse_int<int>(f[2]);
        r.lambda = parse_double(f[3]);
        r.epsilon = parse_double(f[4]);
        r.beta = parse_double(f[5]);
        r.mean_sigma = parse_double(f[6]);
        r.mean_rho = parse_double(f[7]);
        r.mean_sigma_hat = parse_double(f[8]);
        r.frac_gap_le_1 = parse_double(f[9]);
        r.realizations = parse_int<int>(f[10]);
        r.excluded = parse_int<int>(f[11]);
        rows.push_back(std::move(r));
    }
    return rows;
}

void emit_plotdata(std::ostream& out, const std::vector<SweepRow>& rows) {
    if (rows.empty()) {
        throw InvalidArgument("emit_plotdata: no rows");
    }
    const bool against_eps = std::all_of(rows.begin(), rows.end(), [&](const SweepRow& r) { return r.n == rows[0].n; }) &&
                             rows.size() > 1;

    // Curves in first-appearance order.
    std::vector<std::string> labels;
    std::map<std::string, std::vector<const SweepRow*>> curves;
    for (const auto& r : rows) {
        std::string label = "lambda=" + r.density_rule;
        if (against_eps) {
            label += " N=" + std::to_string(r.n);
        } else {
            label += " eps=" + r.epsilon_rule;
        }
        if (!curves.contains(label)) {
            labels.push_back(label);
        }
        curves[label].push_back(&r);
    }

    bool first = true;
    auto block = [&](const std::string& quantity, const std::string& label, auto value) {
        if (!first) {
            out << "\n\n";
        }
        first = false;
        out << "# " << quantity << ' ' << label << '\n';
        for (const SweepRow* r : curves[label]) {
            const double y = value(*r);
            if (std::isnan(y)) {
                continue;
            }
            const double x = against_eps ? r->epsilon : static_cast<double>(r->n);
            out << format_double(x) << ' ' << format_double(y) << '\n';
        }
    };
    for (const auto& label : labels) {
        block("sigma", label, [](const SweepRow& r) { return r.mean_sigma; });
        block("rho", label, [](const SweepRow& r) { return r.mean_rho; });
    }
}

void emit_plotdata(const std::filesystem::path& path, const std::vector<SweepRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    emit_plotdata(out, rows);
    if (!out.flush()) {
        throw IoError("write to " + path.string() + " failed");
    }
}

} // namespace pack
