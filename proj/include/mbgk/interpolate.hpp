#pragma once

#include <vector>

#include <Eigen/Core>

#include "mbgk/types.hpp"

namespace mbgk {

/// Affine/polynomial MLS value fit at an arbitrary position: returns donor
/// indices and per-donor weights c_j with sum c_j = 1, so that
/// u(pos) ~= sum_j c_j u_j. Order selects the local polynomial basis:
///   1 -> Shepard weighted average (positive weights, convex combination)
///   2 -> linear polynomial (second-order accurate)
///   3 -> quadratic, 4 -> cubic (2D) / quartic (1D) for audit interpolation
struct ValueFit {
    std::vector<int> donors;
    Eigen::ArrayXd coeff;
};

/// Fit from an explicit donor set with displacements taken relative to pos.
/// Throws StencilDegeneracyError if the basis cannot be resolved.
ValueFit fitValueWeights(const std::vector<int>& donors, const std::vector<double>& ddx,
                         const std::vector<double>& ddy, int dim, int order, double hmax);

/// Number of polynomial terms (including the constant) of a fit order.
int valueFitTerms(int dim, int order);

}  // namespace mbgk
