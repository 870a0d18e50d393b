#include "pack/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "pack/linalg.hpp"

namespace pack {

std::string_view to_string(SolveStatus status) {
    switch (status) {
    case SolveStatus::optimal:
        return "optimal";
    case SolveStatus::max_iterations:
        return "max-iterations";
    case SolveStatus::infeasible_numerics:
        return "infeasible-numerics";
    }
    return "unknown";
}

Matrix all_off_lift(Eigen::Index n) {
    Vector u0 = -Vector::Ones(n + 1);
    u0(n) = 1.0;
    return u0 * u0.transpose();
}

namespace {

/*
 * Primal-dual interior-point method, HKM direction with a Mehrotra
 * predictor-corrector, for
 *
 *   max <C, X>  s.t.  A(X) = b,  X = blkdiag(H, s) >= 0
 *   min b'y     s.t.  A^T(y) - Z = C,  Z = blkdiag(Z_h, z) >= 0
 *
 * Rows: H_ii = 1, then <R~, H> + s = 4 / kappa, with the budget row scaled
 * by kappa = ||R||_F and the objective C = Q / (4 gamma), gamma = ||Q||_F / 4.
 *
 * The Schur complement M_ij = Tr(A_i Z^-1 A_j X) is (Z_h^-1 o H) bordered by
 * diag(Z_h^-1 R~ H) and Tr(R~ Z_h^-1 R~ H) + s/z.
 *
 * Nearby nodes put eigenvalues of order r^-2beta into R and Z_h inherits
 * that spread, so the scalar type is a parameter and such instances are
 * re-solved in extended precision.
 */
template <typename Scalar>
class InteriorPoint {
public:
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    InteriorPoint(const SpinProblem& sp, const SolverConfig& cfg) : n_(sp.dim()), cfg_(cfg) {
        const Mat r = sp.r_matrix.cast<Scalar>();
        kappa_ = r.norm();
        if (!(kappa_ > Scalar(0))) {
            kappa_ = Scalar(1);
        }
        r_ = r / kappa_;
        b_ = Vec::Ones(n_ + 1);
        b_(n_) = Scalar(4) / kappa_;
        const Mat q = sp.q_matrix.cast<Scalar>();
        gamma_ = q.norm() / Scalar(4);
        c_ = q / (Scalar(4) * gamma_);
        b_norm_ = b_.norm();
        c_norm_ = c_.norm();
    }

    SdrSolution run(const TraceCallback& trace) {
        State st = feasible_start();
        Residuals res = residuals(st);
        State best = st;
        Residuals best_res = res;

        SdrSolution sol;
        sol.status = SolveStatus::max_iterations;
        int it = 0;
        while (it < cfg_.max_iter) {
            if (res.worst() <= Scalar(cfg_.tol)) {
                sol.status = SolveStatus::optimal;
                break;
            }
            ++it;
            Eigen::LLT<Mat> zh_llt(st.zh);
            if (zh_llt.info() != Eigen::Success) {
                break;
            }
            const Mat g = zh_llt.solve(Mat::Identity(n_, n_));
            const Mat p = g * r_ * st.h;
            Mat m(n_ + 1, n_ + 1);
            m.topLeftCorner(n_, n_) = g.cwiseProduct(st.h);
            m.topRightCorner(n_, 1) = p.diagonal();
            m.bottomLeftCorner(1, n_) = p.diagonal().transpose();
            m(n_, n_) = r_.cwiseProduct(p.transpose()).sum() + st.s / st.z;
            m = symmetrize(m);
            Eigen::LLT<Mat> m_llt(m);
            if (m_llt.info() != Eigen::Success) {
                break;
            }

            const Scalar mu = complementarity(st.h, st.zh, st.s, st.z);

            const Direction aff = direction(st, g, m_llt, res, Scalar(0), nullptr, Scalar(0));
            const Scalar ap_aff = std::min(Scalar(1), max_step(st.h, aff.dh, st.s, aff.ds));
            const Scalar ad_aff = std::min(Scalar(1), max_step(st.zh, aff.dzh, st.z, aff.dz));
            const Scalar mu_aff = complementarity(st.h + ap_aff * aff.dh, st.zh + ad_aff * aff.dzh,
                                                  st.s + ap_aff * aff.ds, st.z + ad_aff * aff.dz);
            const Scalar ratio = mu_aff / mu;
            const Scalar sigma = std::clamp(Scalar(ratio * ratio * ratio), Scalar(0), Scalar(1));

            const Mat corr = aff.dzh * aff.dh;
            const Direction dir = direction(st, g, m_llt, res, sigma * mu, &corr, aff.dz * aff.ds);
            const Scalar ap = std::min(Scalar(1), kStepFraction * max_step(st.h, dir.dh, st.s, dir.ds));
            const Scalar ad = std::min(Scalar(1), kStepFraction * max_step(st.zh, dir.dzh, st.z, dir.dz));
            if (!(ap > Scalar(0)) && !(ad > Scalar(0))) {
                break;
            }

            st.h = symmetrize(Mat(st.h + ap * dir.dh));
            st.s += ap * dir.ds;
            st.y += ad * dir.dy;
            st.zh = symmetrize(Mat(st.zh + ad * dir.dzh));
            st.z += ad * dir.dz;

            if (!st.h.allFinite() || !st.zh.allFinite() || !st.y.allFinite() || !finite(st.s) || !finite(st.z)) {
                throw NumericalFailure("sdr: non-finite iterate at iteration " + std::to_string(it));
            }
            res = residuals(st);
            if (res.worst() < best_res.worst()) {
                best = st;
                best_res = res;
            }
            if (trace) {
                trace({it, static_cast<double>(res.pobj * gamma_), static_cast<double>(res.pri),
                       static_cast<double>(res.dua), static_cast<double>(res.gap), static_cast<double>(ap),
                       static_cast<double>(ad)});
            }
        }
        if (sol.status != SolveStatus::optimal) {
            st = best;
            res = best_res;
            if (res.worst() <= Scalar(100) * Scalar(cfg_.tol)) {
                sol.status = SolveStatus::optimal;
            }
        }
        sol.iterations = it;
        sol.primal_residual = static_cast<double>(res.pri);
        sol.dual_residual = static_cast<double>(res.dua);
        sol.gap = static_cast<double>(res.gap);
        sol.dual_bound = static_cast<double>(res.dobj * gamma_);
        sol.h_hat = st.h.template cast<double>();
        return sol;
    }

private:
    static constexpr Scalar kStepFraction = Scalar(0.95);

    struct State {
        Mat h;
        Scalar s = 0;
        Vec y;
        Mat zh;
        Scalar z = 0;
    };

    struct Residuals {
        Vec fp;    // b - A(X)
        Mat fd_h;  // A^T(y) - Z - C, H block
        Scalar fd_s = 0;
        Scalar pri = 0, dua = 0, gap = 0, pobj = 0, dobj = 0;

        Scalar worst() const { return std::max({pri, dua, gap}); }
    };

    struct Direction {
        Mat dh;
        Scalar ds = 0;
        Vec dy;
        Mat dzh;
        Scalar dz = 0;
    };

    static bool finite(Scalar v) {
        using std::isfinite;
        return isfinite(v);
    }

    Scalar complementarity(const Mat& h, const Mat& zh, Scalar s, Scalar z) const {
        return (h.cwiseProduct(zh).sum() + s * z) / Scalar(n_ + 1);
    }

    // Strictly feasible on both sides. Primal: H = u u' + Diag(sin^2 theta, 0)
    // with u = [-cos theta; 1], i.e. each node tilted away from "off" by an
    // angle that shrinks with its self-interference R_ii, halved until
    // Tr(R~ H) <= b_t / 2. Dual: y_t = 1 and a diagonal that makes
    // Z_h = Diag(y_d) + R~ - C strictly diagonally dominant.
    State feasible_start() const {
        using std::cos;
        using std::sin;
        using std::sqrt;
        State st;
        const Eigen::Index m = n_ - 1;
        const Scalar half_pi = Scalar(std::numbers::pi) / Scalar(2);
        const Vec weight = r_.diagonal().head(m).cwiseMax(std::numeric_limits<Scalar>::min()).cwiseSqrt().cwiseInverse();
        Scalar c = half_pi / weight.minCoeff();
        for (int halvings = 0; halvings < 200; ++halvings, c /= Scalar(2)) {
            const Vec theta = (c * weight).cwiseMin(half_pi);
            Vec u(n_);
            Vec d = Vec::Zero(n_);
            for (Eigen::Index i = 0; i < m; ++i) {
                u(i) = -cos(theta(i));
                d(i) = sin(theta(i)) * sin(theta(i));
            }
            u(m) = Scalar(1);
            st.h = u * u.transpose();
            st.h.diagonal() += d;
            st.h.diagonal().setOnes();
            if (r_.cwiseProduct(st.h).sum() <= Scalar(0.5) * b_(n_)) {
                break;
            }
        }
        st.s = b_(n_) - r_.cwiseProduct(st.h).sum();
        st.y = Vec::Zero(n_ + 1);
        st.y(n_) = Scalar(1);
        const Mat base = r_ - c_;
        st.y.head(n_) = base.cwiseAbs().rowwise().sum() - base.diagonal() + Vec::Ones(n_);
        st.zh = base;
        st.zh.diagonal() += st.y.head(n_);
        st.z = Scalar(1);
        return st;
    }

    Residuals residuals(const State& st) const {
        using std::abs;
        using std::sqrt;
        Residuals res;
        res.fp = b_;
        res.fp.head(n_) -= st.h.diagonal();
        res.fp(n_) -= r_.cwiseProduct(st.h).sum() + st.s;
        res.fd_h = st.y(n_) * r_ - st.zh - c_;
        res.fd_h.diagonal() += st.y.head(n_);
        res.fd_s = st.y(n_) - st.z;
        res.pobj = c_.cwiseProduct(st.h).sum();
        res.dobj = b_.dot(st.y);
        // Budget row in unscaled units: kappa * |row residual| is the excess of
        // Tr(RH) that the polish step has to remove.
        Vec fp_unscaled = res.fp;
        fp_unscaled(n_) *= kappa_;
        res.pri = fp_unscaled.norm() / (Scalar(1) + b_norm_);
        res.dua = sqrt(res.fd_h.squaredNorm() + res.fd_s * res.fd_s) / (Scalar(1) + c_norm_);
        const Scalar p = res.pobj * gamma_;
        const Scalar d = res.dobj * gamma_;
        res.gap = abs(p - d) / (Scalar(1) + abs(p) + abs(d));
        return res;
    }

    // HKM Newton system for Z dX + dZ X = target I - Z X - corr.
    Direction direction(const State& st, const Mat& g, const Eigen::LLT<Mat>& m_llt, const Residuals& res,
                        Scalar target, const Mat* corr_h, Scalar corr_s) const {
        Mat w = target * g - st.h - g * res.fd_h * st.h;
        if (corr_h != nullptr) {
            w -= g * (*corr_h);
        }
        const Scalar w_s = target / st.z - st.s - res.fd_s * st.s / st.z - corr_s / st.z;

        Vec rhs(n_ + 1);
        rhs.head(n_) = w.diagonal();
        rhs(n_) = r_.cwiseProduct(w).sum() + w_s;
        rhs -= res.fp;

        Direction d;
        d.dy = m_llt.solve(rhs);
        Mat aty = d.dy(n_) * r_;
        aty.diagonal() += d.dy.head(n_);
        d.dzh = aty + res.fd_h;
        d.dz = d.dy(n_) + res.fd_s;
        d.dh = symmetrize(Mat(w - g * aty * st.h));
        d.ds = w_s - d.dy(n_) * st.s / st.z;
        return d;
    }

    // Largest alpha with blkdiag(x + alpha dx, s + alpha ds) >= 0.
    static Scalar max_step(const Mat& x, const Mat& dx, Scalar s, Scalar ds) {
        Scalar alpha = std::numeric_limits<Scalar>::infinity();
        if (ds < Scalar(0)) {
            alpha = -s / ds;
        }
        Eigen::LLT<Mat> llt(x);
        if (llt.info() != Eigen::Success) {
            return Scalar(0);
        }
        const auto l = llt.matrixL();
        Mat b = l.solve(dx);
        b = l.solve(Mat(b.transpose()));
        const Scalar lam_min = min_eigenvalue(b);
        if (lam_min < Scalar(0)) {
            alpha = std::min(alpha, Scalar(-1) / lam_min);
        }
        return alpha;
    }

    Eigen::Index n_;
    SolverConfig cfg_;
    Mat r_;
    Mat c_;
    Vec b_;
    Scalar kappa_ = 1;
    Scalar gamma_ = 1;
    Scalar b_norm_ = 0;
    Scalar c_norm_ = 0;
};

/*
 * Turns an approximately feasible iterate into an exactly feasible one:
 * project onto the PSD cone, rescale by the diagonal congruence
 * D^-1/2 H D^-1/2 (unit diagonal, still PSD), then if Tr(RH) > 4 move
 * toward the all-off lift, which has Tr(R u0 u0') = 0 and unit diagonal.
 */
Matrix polish(const SpinProblem& sp, const Matrix& h_raw) {
    const Eigen::Index n = sp.dim();
    Matrix h = project_psd(h_raw);
    const Vector d = h.diagonal();
    if ((d.array() <= 0.0).any() || !d.allFinite()) {
        throw NumericalFailure("sdr: polished iterate has a non-positive diagonal");
    }
    const Vector inv_sqrt = d.cwiseSqrt().cwiseInverse();
    h = inv_sqrt.asDiagonal() * h * inv_sqrt.asDiagonal();
    h = symmetrize(h);
    h.diagonal().setOnes();

    // With R entries near r^-2beta the measured trace carries cancellation
    // error, so re-measure after each blend.
    const Matrix h_off = all_off_lift(n - 1);
    const double t_off = sp.r_matrix.cwiseProduct(h_off).sum();
    for (int pass = 0; pass < 8; ++pass) {
        const double t = sp.r_matrix.cwiseProduct(h).sum();
        if (t <= 4.0) {
            break;
        }
        const double target = 4.0 - 1e-12 * std::max(1.0, std::abs(t)) * (1 << (3 * pass));
        const double theta = pass == 7 ? 1.0 : std::clamp((t - target) / (t - t_off), 0.0, 1.0);
        h = (1.0 - theta) * h + theta * h_off;
        h.diagonal().setOnes();
    }
    return h;
}

SdrSolution finish(const SpinProblem& sp, SdrSolution sol) {
    sol.h_hat = polish(sp, sol.h_hat);
    sol.rho = sp.q_matrix.cwiseProduct(sol.h_hat).sum() / 4.0;
    sol.trace_rh = sp.r_matrix.cwiseProduct(sol.h_hat).sum();
    sol.min_eigenvalue = min_eigenvalue(sol.h_hat);
    if (!std::isfinite(sol.rho)) {
        throw NumericalFailure("solve_sdr: non-finite objective");
    }
    return sol;
}

} // namespace

SdrSolution solve_sdr(const SpinProblem& sp, const SolverConfig& cfg, const TraceCallback& trace) {
    if (sp.n < 1 || sp.q_matrix.rows() != sp.dim() || sp.q_matrix.cols() != sp.dim() ||
        sp.r_matrix.rows() != sp.dim() || sp.r_matrix.cols() != sp.dim()) {
        throw InvalidArgument("solve_sdr: malformed spin problem");
    }
    if (!(cfg.tol > 0.0) || cfg.max_iter < 1) {
        throw InvalidArgument("solve_sdr: tol must be positive and max_iter >= 1");
    }
    if (!sp.r_matrix.allFinite()) {
        throw NumericalFailure("solve_sdr: non-finite entries in R");
    }

    SdrSolution sol = finish(sp, InteriorPoint<double>(sp, cfg).run(trace));
    if (std::max({sol.primal_residual, sol.dual_residual, sol.gap}) <= cfg.tol) {
        return sol;
    }
    // Double precision stalled before the tolerance; redo in extended precision
    // and keep whichever polished point certifies more.
    SdrSolution wide = finish(sp, InteriorPoint<long double>(sp, cfg).run(trace));
    wide.iterations += sol.iterations;
    return wide.rho >= sol.rho ? wide : sol;
}

} // namespace pack
