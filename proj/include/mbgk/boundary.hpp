#pragma once

#include <Eigen/Core>

#include "mbgk/gas.hpp"
#include "mbgk/kinetic.hpp"
#include "mbgk/types.hpp"
#include "mbgk/velocity_grid.hpp"

namespace mbgk {

/// Diffuse-reflective wall description at one boundary point.
struct WallSpec {
    double Tw = 1.0;  // wall temperature
    Vec2 Uw;          // wall velocity
    Vec2 nhat;        // unit normal pointing into the gas
};

struct WallFluxReport {
    double rhoW = 0.0;      // emitted wall density
    double residual = 0.0;  // |net mass flux| / max(|one-sided flux|, tiny)
};

/// Three-step non-iterative diffuse-reflective condition applied to one
/// point's post-transport distribution: keep nodes leaving the gas, solve the
/// zero-mass-flux closure for rho_w in one division, overwrite nodes entering
/// the gas with the wall Maxwellian (g2 gets the matching reduced component).
/// Nodes with (v - Uw).nhat == 0 are left untouched.
WallFluxReport applyDiffuseReflective(Eigen::Ref<Eigen::ArrayXd> g1,
                                      Eigen::Ref<Eigen::ArrayXd> g2, const WallSpec& wall,
                                      const VelocityGrid& grid, const GasParameters& gas);

/// Gas pressure tensor at a surface point, psi = int (v-Uw) ox (v-Uw) f dv by
/// the midpoint rule. In the Chu reduction the in-plane block comes from g1
/// and the out-of-plane diagonal from g2 (split evenly across the two
/// transverse directions in 1D).
Eigen::Matrix3d pressureTensor(const Eigen::Ref<const Eigen::ArrayXd>& g1,
                               const Eigen::Ref<const Eigen::ArrayXd>& g2, const Vec2& Uw,
                               const VelocityGrid& grid);

}  // namespace mbgk
