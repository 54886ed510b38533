#include "mbgk/interpolate.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "mbgk/mls.hpp"

namespace mbgk {

int valueFitTerms(int dim, int order) {
    if (order <= 1) return 1;
    if (dim == 1) return order;  // 1, x, x^2, ...
    // full bivariate basis through degree order-1
    return order * (order + 1) / 2;
}

ValueFit fitValueWeights(const std::vector<int>& donors, const std::vector<double>& ddx,
                         const std::vector<double>& ddy, int dim, int order, double hmax) {
    const int n = static_cast<int>(donors.size());
    ValueFit out;
    out.donors = donors;
    out.coeff.resize(n);

    if (n == 0)
        throw StencilDegeneracyError("fitValueWeights: empty donor set", -1);

    if (order <= 1) {
        // Shepard average; weights positive, so the result is a convex
        // combination of donor values.
        double wsum = 0.0;
        for (int r = 0; r < n; ++r) {
            const double d2 = ddx[r] * ddx[r] + (dim == 2 ? ddy[r] * ddy[r] : 0.0);
            const double w = gaussianWeight(d2, hmax);
            out.coeff[r] = w;
            wsum += w;
        }
        out.coeff /= wsum;
        return out;
    }

    const int m = valueFitTerms(dim, order);
    if (n < m)
        throw StencilDegeneracyError("fitValueWeights: " + std::to_string(n) +
                                         " donors for " + std::to_string(m) + " terms",
                                     -1);

    const double inv_h = 1.0 / hmax;
    Eigen::MatrixXd B(n, m);
    Eigen::VectorXd sqw(n);
    for (int r = 0; r < n; ++r) {
        const double tx = ddx[r] * inv_h;
        const double ty = (dim == 2) ? ddy[r] * inv_h : 0.0;
        int c = 0;
        if (dim == 1) {
            double p = 1.0;
            for (int k = 0; k < order; ++k) {
                B(r, c++) = p;
                p *= tx;
            }
        } else {
            for (int deg = 0; deg < order; ++deg)
                for (int ky = 0; ky <= deg; ++ky)
                    B(r, c++) = std::pow(tx, deg - ky) * std::pow(ty, ky);
        }
        const double d2 = ddx[r] * ddx[r] + (dim == 2 ? ddy[r] * ddy[r] : 0.0);
        sqw[r] = std::sqrt(gaussianWeight(d2, hmax));
    }
    for (int r = 0; r < n; ++r) B.row(r) *= sqw[r];

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(B);
    qr.setThreshold(1e-9);
    if (qr.rank() < m)
        throw StencilDegeneracyError("fitValueWeights: rank-deficient donor set", -1);

    // Row 0 of pinv(B) diag(sqw) gives the value-reconstruction weights.
    Eigen::MatrixXd thinQ = qr.householderQ() * Eigen::MatrixXd::Identity(n, m);
    Eigen::MatrixXd Rt = qr.matrixR()
                             .topLeftCorner(m, m)
                             .template triangularView<Eigen::Upper>()
                             .solve(thinQ.transpose());
    Eigen::MatrixXd K = qr.colsPermutation() * Rt;
    for (int r = 0; r < n; ++r) out.coeff[r] = K(0, r) * sqw[r];
    return out;
}

}  // namespace mbgk
