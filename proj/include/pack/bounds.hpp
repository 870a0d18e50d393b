#ifndef PACK_BOUNDS_HPP
#define PACK_BOUNDS_HPP

#include <cstdint>
#include <string>

#include "pack/common.hpp"
#include "pack/problem.hpp"
#include "pack/sdp.hpp"

namespace pack {

/// (2/pi) Tr(Q arcsin H): the mean of r'Qr for r = sign(n), n ~ N(0, H).
double expected_objective(const SpinProblem& sp, const Matrix& h_hat);

struct MonteCarloEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    int samples = 0;
};

/// Sample mean of r'Qr over sign samples of N(0, H); sample i uses derive_seed(seed, {i}).
MonteCarloEstimate sampled_objective(const SpinProblem& sp, const Matrix& h_hat, int samples, std::uint64_t seed);

/// Fraction of sign samples with r'Rr > 4 + kFeasTol.
double violation_frequency(const SpinProblem& sp, const Matrix& h_hat, int samples, std::uint64_t seed);

/// Eigenvalues of R H in ascending order, computed from the symmetric R^1/2 H R^1/2.
Vector rh_eigenvalues(const SpinProblem& sp, const Matrix& h_hat);

/// Whether R - diag(lambda) is PSD, with slack 1e-8 * max(1, ||R||_2).
bool psd_indicator(const SpinProblem& sp, const Vector& lambda);

struct BoundOptions {
    int samples = 10000;
    std::uint64_t seed = 0;
    double tol = 1e-6;
};

/**
 * Diagnostics around sigma <= rho <= theta sigma, theta = (pi/2) / (1 - p).
 *
 * p_emp is the square root of the empirical frequency of r'Rr > 4. When it
 * is 1, theta_emp is +inf and only the left inequality is checked.
 */
struct BoundReport {
    double rho = 0.0;
    int sigma_or_hat = 0;
    bool sigma_exact = false;
    double trace_rh = 0.0;
    Vector lambda_eigs;
    bool p_indicator = false;
    double p_emp = 0.0;
    double theta_emp = 0.0;
    bool left_ok = false;
    bool right_ok = false;
    bool sandwich_ok = false;
};

BoundReport theorem1_report(const SpinProblem& sp, const SdrSolution& sol, int sigma_or_hat, bool sigma_exact,
                            const BoundOptions& opts = {});

/// Column names for bound_csv_row, comma separated, no newline.
std::string bound_csv_header();

/// One CSV row; lambda_eigs is written as a single ';'-separated field.
std::string bound_csv_row(const BoundReport& report);

} // namespace pack

#endif // PACK_BOUNDS_HPP
