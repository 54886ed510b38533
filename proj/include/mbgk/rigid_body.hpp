#pragma once

#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "mbgk/types.hpp"

namespace mbgk {

/// Newton-Euler state of a rigid body. The solver is planar (1D/2D) but the
/// state and update are kept in full 3D form; planar cases simply have
/// omega = omega_z zhat and motion in the xy plane.
struct RigidBodyState {
    double m = 1.0;                                     // mass
    Eigen::Vector3d Xc = Eigen::Vector3d::Zero();       // center of mass
    Eigen::Vector3d V = Eigen::Vector3d::Zero();        // translational velocity
    Eigen::Matrix3d R = Eigen::Matrix3d::Identity();    // body -> lab rotation
    Eigen::Vector3d omega = Eigen::Vector3d::Zero();    // angular velocity (lab)
    Eigen::Matrix3d Ibody = Eigen::Matrix3d::Identity();  // body-frame inertia

    Eigen::Matrix3d labInertia() const { return R * Ibody * R.transpose(); }
    /// Velocity of a material point: U_w = V + omega x (x - Xc).
    Eigen::Vector3d pointVelocity(const Eigen::Vector3d& x) const {
        return V + omega.cross(x - Xc);
    }
};

/// One surface quadrature site: lab position, outward (from the body) unit
/// normal, area weight and the local gas pressure tensor.
struct SurfaceSample {
    Eigen::Vector3d x;
    Eigen::Vector3d nOut;
    double dA = 1.0;
    Eigen::Matrix3d psi = Eigen::Matrix3d::Zero();
};

struct ForceTorque {
    Eigen::Vector3d F = Eigen::Vector3d::Zero();
    Eigen::Vector3d T = Eigen::Vector3d::Zero();
};

/// F = sum (-psi n_out) dA, T = sum (x - Xc) x (-psi n_out) dA.
ForceTorque forceAndTorque(const RigidBodyState& body, const std::vector<SurfaceSample>& quad);

/// Explicit Euler update of V, Xc, omega and R; the rotation increment is the
/// exponential of skew(omega dt) followed by re-orthonormalization.
void advanceRigidBody(RigidBodyState& body, const Eigen::Vector3d& F, const Eigen::Vector3d& T,
                      double dt);

}  // namespace mbgk
