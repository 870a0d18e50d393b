#include "pack/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "pack/format.hpp"
#include "pack/linalg.hpp"
#include "pack/rounding.hpp"

namespace pack {

namespace {

void check_shape(const SpinProblem& sp, const Matrix& h_hat) {
    if (h_hat.rows() != sp.dim() || h_hat.cols() != sp.dim()) {
        throw InvalidArgument("bounds: H does not match the problem size");
    }
}

double quad(const Matrix& m, const Spin& r) {
    const Vector v = r.cast<double>();
    return v.dot(m * v);
}

} // namespace

double expected_objective(const SpinProblem& sp, const Matrix& h_hat) {
    check_shape(sp, h_hat);
    return 2.0 / std::numbers::pi * sp.q_matrix.cwiseProduct(arcsin_matrix(h_hat)).sum();
}

MonteCarloEstimate sampled_objective(const SpinProblem& sp, const Matrix& h_hat, int samples, std::uint64_t seed) {
    check_shape(sp, h_hat);
    if (samples < 2) {
        throw InvalidArgument("sampled_objective: need at least two samples");
    }
    const GaussianSignSampler sampler(h_hat);
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double v = quad(sp.q_matrix, sampler.sample(derive_seed(seed, {static_cast<std::uint64_t>(i)})));
        sum += v;
        sum_sq += v * v;
    }
    MonteCarloEstimate est;
    est.samples = samples;
    est.mean = sum / samples;
    const double var = std::max(0.0, (sum_sq - samples * est.mean * est.mean) / (samples - 1));
    est.std_error = std::sqrt(var / samples);
    return est;
}

double violation_frequency(const SpinProblem& sp, const Matrix& h_hat, int samples, std::uint64_t seed) {
    check_shape(sp, h_hat);
    if (samples < 1) {
        throw InvalidArgument("violation_frequency: need at least one sample");
    }
    const GaussianSignSampler sampler(h_hat);
    int violations = 0;
    for (int i = 0; i < samples; ++i) {
        if (!spin_feasible(sp, sampler.sample(derive_seed(seed, {static_cast<std::uint64_t>(i)})))) {
            ++violations;
        }
    }
    return static_cast<double>(violations) / samples;
}

Vector rh_eigenvalues(const SpinProblem& sp, const Matrix& h_hat) {
    check_shape(sp, h_hat);
    const Matrix root = psd_sqrt(sp.r_matrix);
    return eigenvalues_ascending(root * h_hat * root);
}

bool psd_indicator(const SpinProblem& sp, const Vector& lambda) {
    if (lambda.size() != sp.dim()) {
        throw InvalidArgument("psd_indicator: expected N+1 eigenvalues");
    }
    const Vector r_eigs = eigenvalues_ascending(sp.r_matrix);
    const double scale = std::max(1.0, r_eigs.cwiseAbs().maxCoeff());
    Matrix diff = sp.r_matrix;
    diff.diagonal() -= lambda;
    return min_eigenvalue(diff) >= -1e-8 * scale;
}

BoundReport theorem1_report(const SpinProblem& sp, const SdrSolution& sol, int sigma_or_hat, bool sigma_exact,
                            const BoundOptions& opts) {
    check_shape(sp, sol.h_hat);
    if (opts.samples < 1) {
        throw InvalidArgument("theorem1_report: need at least one sample");
    }
    BoundReport rep;
    rep.rho = sol.rho;
    rep.sigma_or_hat = sigma_or_hat;
    rep.sigma_exact = sigma_exact;
    rep.trace_rh = sp.r_matrix.cwiseProduct(sol.h_hat).sum();
    rep.lambda_eigs = rh_eigenvalues(sp, sol.h_hat);
    rep.p_indicator = psd_indicator(sp, rep.lambda_eigs);
    rep.p_emp = std::sqrt(violation_frequency(sp, sol.h_hat, opts.samples, opts.seed));
    rep.left_ok = sigma_or_hat <= rep.rho + opts.tol;
    if (rep.p_emp < 1.0) {
        rep.theta_emp = std::numbers::pi / (2.0 * (1.0 - rep.p_emp));
        rep.right_ok = rep.rho <= rep.theta_emp * sigma_or_hat + opts.tol;
        rep.sandwich_ok = rep.left_ok && rep.right_ok;
    } else {
        rep.theta_emp = std::numeric_limits<double>::infinity();
        rep.right_ok = false;
        rep.sandwich_ok = rep.left_ok;
    }
    return rep;
}

std::string bound_csv_header() {
    return "rho,sigma_or_hat,sigma_exact,trace_rh,lambda_eigs,p_indicator,p_emp,theta_emp,left_ok,right_ok,"
           "sandwich_ok";
}

std::string bound_csv_row(const BoundReport& r) {
    std::ostringstream out;
    out << format_double(r.rho) << ',' << r.sigma_or_hat << ',' << int(r.sigma_exact) << ','
        << format_double(r.trace_rh) << ',';
    for (Eigen::Index i = 0; i < r.lambda_eigs.size(); ++i) {
        out << (i ? ";" : "") << format_double(r.lambda_eigs(i));
    }
    out << ',' << int(r.p_indicator) << ',' << format_double(r.p_emp) << ',' << format_double(r.theta_emp) << ','
        << int(r.left_ok) << ',' << int(r.right_ok) << ',' << int(r.sandwich_ok);
    return out.str();
}

} // namespace pack
