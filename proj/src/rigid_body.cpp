#include "mbgk/rigid_body.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace mbgk {

ForceTorque forceAndTorque(const RigidBodyState& body, const std::vector<SurfaceSample>& quad) {
    ForceTorque ft;
    for (const auto& s : quad) {
        const Eigen::Vector3d f = -(s.psi * s.nOut) * s.dA;
        ft.F += f;
        ft.T += (s.x - body.Xc).cross(f);
    }
    return ft;
}

void advanceRigidBody(RigidBodyState& body, const Eigen::Vector3d& F, const Eigen::Vector3d& T,
                      double dt) {
    body.Xc += dt * body.V;
    body.V += (dt / body.m) * F;

    const Eigen::Matrix3d I = body.labInertia();
    const Eigen::Vector3d rhs = T - body.omega.cross(I * body.omega);
    const Eigen::Vector3d omegaOld = body.omega;
    body.omega += dt * I.ldlt().solve(rhs);

    const double wn = omegaOld.norm();
    if (wn * dt > 0.0) {
        const Eigen::Vector3d axis = omegaOld / wn;
        Eigen::Matrix3d K;
        K << 0, -axis.z(), axis.y(), axis.z(), 0, -axis.x(), -axis.y(), axis.x(), 0;
        const double th = wn * dt;
        const Eigen::Matrix3d rot =
            Eigen::Matrix3d::Identity() + std::sin(th) * K + (1.0 - std::cos(th)) * K * K;
        body.R = rot * body.R;
        // Gram-Schmidt re-orthonormalization keeps drift below roundoff growth
        Eigen::Vector3d c0 = body.R.col(0).normalized();
        Eigen::Vector3d c1 = (body.R.col(1) - c0 * c0.dot(body.R.col(1))).normalized();
        Eigen::Vector3d c2 = c0.cross(c1);
        body.R.col(0) = c0;
        body.R.col(1) = c1;
        body.R.col(2) = c2;
    }
}

}  // namespace mbgk
