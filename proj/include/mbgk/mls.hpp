#pragma once

#include <Eigen/Core>

#include "mbgk/stencil.hpp"

namespace mbgk {

/// Gaussian stencil weight w = exp(-6 |dx|^2 / hmax^2).
double gaussianWeight(double dist2, double hmax);

enum class WeightKind { Gaussian, Uniform };  // Uniform exists for test oracles

/// Per-neighbor derivative weights from the 1D weighted MLS fit, CSR-aligned
/// with the stencil table. The functionals act on differences:
///   d^l u / dx^l (x_i) ~= sum_j c_ij (u_j - u_i).
///
/// order 3: Taylor basis through dx^2/2, fills alpha (d/dx) and beta (d2/dx2).
/// order 5: basis through dx^4/24, additionally fills d3 and d4.
struct MlsCoeffs1d {
    int order = 3;
    Eigen::ArrayXd alpha, beta, d3, d4;
    double maxCond = 0.0;  // worst scaled condition estimate across points
};

/// 2D coefficients: quadratic fit (xi, zeta, eta, nu, gxy) plus the rotated
/// first-derivative pair (kbar, lbar) from the gradient-only fit used by the
/// positive first-order scheme, and the unit direction (ex, ey) toward each
/// neighbor.
struct MlsCoeffs2d {
    Eigen::ArrayXd xi, zeta;   // d/dx, d/dy
    Eigen::ArrayXd eta, nu;    // d2/dx2, d2/dy2
    Eigen::ArrayXd gxy;        // d2/dxdy
    Eigen::ArrayXd kbar, lbar; // rotated gradient pair along ehat/shat
    Eigen::ArrayXd ex, ey;     // ehat_ij components
    double maxCond = 0.0;
};

/// Scaled (1/hmax), sqrt(w)-weighted, QR-factorized least squares per point.
/// Throws StencilDegeneracyError on rank deficiency or too few neighbors.
void buildMls1d(const StencilTable& st, double hmax, int order, MlsCoeffs1d& out,
                WeightKind wk = WeightKind::Gaussian);

void buildMls2d(const StencilTable& st, double hmax, MlsCoeffs2d& out,
                WeightKind wk = WeightKind::Gaussian);

/// Condition estimate above which buildMls* records a report (kept in
/// maxCond; the run log surfaces it).
inline constexpr double kMlsCondReport = 1e8;

}  // namespace mbgk
