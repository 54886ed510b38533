#include "mbgk/mls.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "mbgk/types.hpp"

namespace mbgk {

double gaussianWeight(double dist2, double hmax) {
    return std::exp(-6.0 * dist2 / (hmax * hmax));
}

namespace {

// Relative pivot threshold below which the scaled design matrix is treated
// as rank deficient.
constexpr double kRankThreshold = 1e-9;

// Weighted least-squares coefficient rows for one point: K = pinv(B) S with
// B = S A, S = diag(sqrt(w)), A the scaled Taylor design matrix. Row l of K
// maps neighbor differences to the l-th fitted (scaled) derivative.
// Returns the condition estimate of the scaled problem.
double solvePoint(const Eigen::MatrixXd& A, const Eigen::VectorXd& sqw, long point,
                  Eigen::MatrixXd& K) {
    const int n = static_cast<int>(A.rows());
    const int m = static_cast<int>(A.cols());
    Eigen::MatrixXd B = sqw.asDiagonal() * A;

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(B);
    qr.setThreshold(kRankThreshold);
    if (qr.rank() < m)
        throw StencilDegeneracyError(
            "mls: rank-deficient stencil (rank " + std::to_string(qr.rank()) + " < " +
                std::to_string(m) + ") at point " + std::to_string(point),
            point);

    const auto& R = qr.matrixR();
    const double cond = std::abs(R(0, 0) / R(m - 1, m - 1));

    Eigen::MatrixXd thinQ = qr.householderQ() * Eigen::MatrixXd::Identity(n, m);
    // pinv(B) = P R^-1 Q1^T, then scale columns by sqrt(w)
    Eigen::MatrixXd Rt = R.topLeftCorner(m, m).template triangularView<Eigen::Upper>().solve(
        thinQ.transpose());
    K.noalias() = qr.colsPermutation() * Rt;
    for (int j = 0; j < n; ++j) K.col(j) *= sqw[j];
    return cond;
}

}  // namespace

void buildMls1d(const StencilTable& st, double hmax, int order, MlsCoeffs1d& out,
                WeightKind wk) {
    if (order != 3 && order != 5)
        throw ConfigError("buildMls1d: order must be 3 or 5");
    const int m = order - 1;  // Taylor terms
    const int np = st.points();
    const int nnz = st.nnz();

    out.order = order;
    out.alpha.resize(nnz);
    out.beta.resize(nnz);
    if (order == 5) {
        out.d3.resize(nnz);
        out.d4.resize(nnz);
    } else {
        out.d3.resize(0);
        out.d4.resize(0);
    }
    out.maxCond = 0.0;

    Eigen::MatrixXd A, K;
    Eigen::VectorXd sqw;
    const double inv_h = 1.0 / hmax;

    for (int i = 0; i < np; ++i) {
        const int b = st.begin(i), e = st.end(i);
        const int n = e - b;
        if (n < m)
            throw StencilDegeneracyError("mls1d: point " + std::to_string(i) + " has " +
                                             std::to_string(n) + " neighbors, needs " +
                                             std::to_string(m),
                                         i);
        A.resize(n, m);
        sqw.resize(n);
        for (int r = 0; r < n; ++r) {
            const double d = st.dx[b + r];
            const double t = d * inv_h;
            A(r, 0) = t;
            A(r, 1) = 0.5 * t * t;
            if (m == 4) {
                A(r, 2) = t * t * t / 6.0;
                A(r, 3) = t * t * t * t / 24.0;
            }
            const double w = (wk == WeightKind::Gaussian) ? gaussianWeight(d * d, hmax) : 1.0;
            sqw[r] = std::sqrt(w);
        }
        const double cond = solvePoint(A, sqw, i, K);
        if (cond > out.maxCond) out.maxCond = cond;

        for (int r = 0; r < n; ++r) {
            out.alpha[b + r] = K(0, r) * inv_h;
            out.beta[b + r] = K(1, r) * inv_h * inv_h;
            if (m == 4) {
                out.d3[b + r] = K(2, r) * inv_h * inv_h * inv_h;
                out.d4[b + r] = K(3, r) * inv_h * inv_h * inv_h * inv_h;
            }
        }
    }
}

void buildMls2d(const StencilTable& st, double hmax, MlsCoeffs2d& out, WeightKind wk) {
    const int np = st.points();
    const int nnz = st.nnz();
    out.xi.resize(nnz);
    out.zeta.resize(nnz);
    out.eta.resize(nnz);
    out.nu.resize(nnz);
    out.gxy.resize(nnz);
    out.kbar.resize(nnz);
    out.lbar.resize(nnz);
    out.ex.resize(nnz);
    out.ey.resize(nnz);
    out.maxCond = 0.0;

    Eigen::MatrixXd A, K, A1, K1;
    Eigen::VectorXd sqw;
    const double inv_h = 1.0 / hmax;
    const double inv_h2 = inv_h * inv_h;

    for (int i = 0; i < np; ++i) {
        const int b = st.begin(i), e = st.end(i);
        const int n = e - b;
        if (n < 5)
            throw StencilDegeneracyError("mls2d: point " + std::to_string(i) + " has " +
                                             std::to_string(n) + " neighbors, needs 5",
                                         i);
        A.resize(n, 5);
        A1.resize(n, 2);
        sqw.resize(n);
        for (int r = 0; r < n; ++r) {
            const double dx = st.dx[b + r], dy = st.dy[b + r];
            const double tx = dx * inv_h, ty = dy * inv_h;
            A(r, 0) = tx;
            A(r, 1) = ty;
            A(r, 2) = 0.5 * tx * tx;
            A(r, 3) = 0.5 * ty * ty;
            A(r, 4) = tx * ty;
            A1(r, 0) = tx;
            A1(r, 1) = ty;
            const double w =
                (wk == WeightKind::Gaussian) ? gaussianWeight(dx * dx + dy * dy, hmax) : 1.0;
            sqw[r] = std::sqrt(w);
        }
        const double cond = solvePoint(A, sqw, i, K);
        if (cond > out.maxCond) out.maxCond = cond;
        solvePoint(A1, sqw, i, K1);  // gradient-only fit for the positive scheme

        for (int r = 0; r < n; ++r) {
            out.xi[b + r] = K(0, r) * inv_h;
            out.zeta[b + r] = K(1, r) * inv_h;
            out.eta[b + r] = K(2, r) * inv_h2;
            out.nu[b + r] = K(3, r) * inv_h2;
            out.gxy[b + r] = K(4, r) * inv_h2;

            const double dx = st.dx[b + r], dy = st.dy[b + r];
            const double rn = std::sqrt(dx * dx + dy * dy);
            const double ex = dx / rn, ey = dy / rn;
            out.ex[b + r] = ex;
            out.ey[b + r] = ey;
            const double kap = K1(0, r) * inv_h;
            const double lam = K1(1, r) * inv_h;
            out.kbar[b + r] = ex * kap + ey * lam;
            out.lbar[b + r] = -ey * kap + ex * lam;
        }
    }
}

}  // namespace mbgk
