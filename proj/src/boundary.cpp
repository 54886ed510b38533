#include "mbgk/boundary.hpp"

#include <cmath>

namespace mbgk {

WallFluxReport applyDiffuseReflective(Eigen::Ref<Eigen::ArrayXd> g1,
                                      Eigen::Ref<Eigen::ArrayXd> g2, const WallSpec& wall,
                                      const VelocityGrid& grid, const GasParameters& gas) {
    const int nn = grid.count();
    const double w = grid.weight();

    // unit-density wall Maxwellian
    Eigen::ArrayXd M1(nn), M2(nn);
    Moments mw;
    mw.rho = 1.0;
    mw.U = wall.Uw;
    mw.T = wall.Tw;
    maxwellian(mw, gas, grid, M1, M2);

    // normal relative speed per node
    Eigen::ArrayXd cn = (grid.v1() - wall.Uw.x) * wall.nhat.x;
    if (grid.dim() == 2) cn += (grid.v2() - wall.Uw.y) * wall.nhat.y;

    double outUnit = 0.0;  // flux of the unit wall Maxwellian leaving the wall
    double inFlux = 0.0;   // flux of the transported field entering the wall
    for (int k = 0; k < nn; ++k) {
        if (cn[k] > 0.0)
            outUnit += w * cn[k] * M1[k];
        else if (cn[k] < 0.0)
            inFlux += w * cn[k] * g1[k];
    }

    WallFluxReport rep;
    if (outUnit <= 0.0) {
        if (inFlux != 0.0)
            throw BoundaryClosureError(
                "applyDiffuseReflective: no outgoing nodes but nonzero incoming flux");
        rep.rhoW = 0.0;
        return rep;
    }
    rep.rhoW = -inFlux / outUnit;

    double outFlux = 0.0;
    for (int k = 0; k < nn; ++k) {
        if (cn[k] > 0.0) {
            g1[k] = rep.rhoW * M1[k];
            g2[k] = rep.rhoW * M2[k];
            outFlux += w * cn[k] * g1[k];
        }
    }
    const double scale = std::max(std::abs(inFlux), std::abs(outFlux));
    rep.residual = (scale > 0.0) ? std::abs(outFlux + inFlux) / scale : 0.0;
    return rep;
}

Eigen::Matrix3d pressureTensor(const Eigen::Ref<const Eigen::ArrayXd>& g1,
                               const Eigen::Ref<const Eigen::ArrayXd>& g2, const Vec2& Uw,
                               const VelocityGrid& grid) {
    const double w = grid.weight();
    Eigen::Matrix3d psi = Eigen::Matrix3d::Zero();
    const Eigen::ArrayXd c1 = grid.v1() - Uw.x;
    psi(0, 0) = w * (c1.square() * g1).sum();
    const double trans = w * g2.sum();
    if (grid.dim() == 1) {
        psi(1, 1) = 0.5 * trans;
        psi(2, 2) = 0.5 * trans;
    } else {
        const Eigen::ArrayXd c2 = grid.v2() - Uw.y;
        psi(1, 1) = w * (c2.square() * g1).sum();
        psi(0, 1) = psi(1, 0) = w * (c1 * c2 * g1).sum();
        psi(2, 2) = trans;
    }
    return psi;
}

}  // namespace mbgk
