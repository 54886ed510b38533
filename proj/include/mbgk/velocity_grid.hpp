#pragma once

#include <Eigen/Core>

namespace mbgk {

/// Truncated equispaced velocity grid with midpoint-rule quadrature.
///
/// 1D: nodes v_k = -vmax + 2 k vmax/(nv-1), k = 0..nv-1, weight = 2 vmax/(nv-1).
/// 2D: tensor grid on [-vmax, vmax]^2 flattened as n = k*nv + l with
///     v1 = axis[k], v2 = axis[l]; weight = (2 vmax/(nv-1))^2.
class VelocityGrid {
public:
    VelocityGrid(int dim, int nv, double vmax);

    int dim() const { return dim_; }
    int nvPerAxis() const { return nv_; }
    double vmax() const { return vmax_; }
    int count() const { return static_cast<int>(v1_.size()); }
    double weight() const { return weight_; }

    const Eigen::ArrayXd& axis() const { return axis_; }
    const Eigen::ArrayXd& v1() const { return v1_; }
    const Eigen::ArrayXd& v2() const { return v2_; }  // all zero in 1D

    /// |v|^2 per node (in-plane part only).
    const Eigen::ArrayXd& vsq() const { return vsq_; }

private:
    int dim_;
    int nv_;
    double vmax_;
    double weight_;
    Eigen::ArrayXd axis_;
    Eigen::ArrayXd v1_, v2_, vsq_;
};

}  // namespace mbgk
