#include "mbgk/velocity_grid.hpp"

#include <cmath>
#include <stdexcept>

namespace mbgk {

VelocityGrid::VelocityGrid(int dim, int nv, double vmax)
    : dim_(dim), nv_(nv), vmax_(vmax) {
    if (dim != 1 && dim != 2) throw std::invalid_argument("VelocityGrid: dim must be 1 or 2");
    if (nv < 2) throw std::invalid_argument("VelocityGrid: nv must be >= 2");
    if (!(vmax > 0.0)) throw std::invalid_argument("VelocityGrid: vmax must be positive");

    const double h = 2.0 * vmax / (nv - 1);
    axis_.resize(nv);
    for (int k = 0; k < nv; ++k) axis_[k] = -vmax + h * k;

    if (dim == 1) {
        weight_ = h;
        v1_ = axis_;
        v2_ = Eigen::ArrayXd::Zero(nv);
    } else {
        weight_ = h * h;
        const int n = nv * nv;
        v1_.resize(n);
        v2_.resize(n);
        for (int k = 0; k < nv; ++k)
            for (int l = 0; l < nv; ++l) {
                v1_[k * nv + l] = axis_[k];
                v2_[k * nv + l] = axis_[l];
            }
    }
    vsq_ = v1_.square() + v2_.square();
}

}  // namespace mbgk
