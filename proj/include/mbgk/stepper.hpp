#pragma once

#include <optional>
#include <vector>

#include "mbgk/boundary.hpp"
#include "mbgk/imex.hpp"
#include "mbgk/kinetic.hpp"
#include "mbgk/mls.hpp"
#include "mbgk/mood.hpp"
#include "mbgk/point_cloud.hpp"
#include "mbgk/rigid_body.hpp"
#include "mbgk/transport.hpp"

namespace mbgk {

/// A rigid object immersed in the gas: Newton-Euler state plus the shape
/// used for stencil blocking and hole masking.
struct RigidBody {
    RigidBodyState state;
    double halfWidth1d = 0.0;  // plate half thickness (1D)
    double halfSide2d = 0.0;   // square half side (2D)
    double faceArea = 1.0;     // quadrature face area (1D plate)
    bool mobile = true;

    std::vector<Vec2> shape1d() const;  // blocking interval as two vertices
    std::vector<Vec2> shape2d() const;  // lab-frame square, CCW
};

struct StepperOptions {
    SchemeKind scheme = SchemeKind::Muscl2;
    ImexTableau tableau = ImexTableau::ars222();
    MoodConfig mood;
    GasParameters gas;
    int cflRecheckEvery = 1;  // 0 disables the evolving-grid CFL diagnostic
};

struct StepStats {
    MoodStats mood;
    double wallResidualMax = 0.0;
    double firstOrderBound = 0.0;  // 0 when not evaluated this step
    bool cflWarning = false;
    MaintenanceStats maint;
    double maxCond = 0.0;
};

/// One IMEX Runge-Kutta step of the Chu-reduced ALE BGK system on the moving
/// cloud: explicit transport stages with MOOD, diffuse-reflective walls, the
/// closed-form implicit relaxation, grid motion and end-of-step maintenance.
class Stepper {
public:
    Stepper(PointCloud& cloud, ChuField& field, const VelocityGrid& vg, StepperOptions opt);

    std::vector<RigidBody>& bodies() { return bodies_; }
    const std::vector<RigidBody>& bodies() const { return bodies_; }

    /// Build stencils/coefficients for the initial cloud. Call once before
    /// stepping (and after external changes to the cloud).
    void prepare();

    StepStats step(double dt);

    long stepsTaken() const { return steps_; }
    const StepperOptions& options() const { return opt_; }
    const MlsCoeffs1d& coeffs1d() const { return c1_; }
    const MlsCoeffs2d& coeffs2d() const { return c2_; }

    /// First-order CFL bound on the current grid with the current field.
    double firstOrderBound();

private:
    void buildCoeffs();
    void refreshBodyGeometry();
    void bodySubstep(double dtSub);
    void applyWalls(ChuField& f, double& residualMax);
    void transportEval(const ChuField& f, const Eigen::ArrayXd& u1, const Eigen::ArrayXd& u2,
                       ChuField& out);
    void stageVelocity(int s);

    PointCloud& cloud_;
    ChuField& g_;
    const VelocityGrid& vg_;
    StepperOptions opt_;
    std::vector<RigidBody> bodies_;

    // per-step storage
    ChuField gn_, gprev_, gcand_;
    std::vector<std::optional<ChuField>> T_, R_;
    std::vector<Eigen::ArrayXd> u1s_, u2s_;
    std::vector<double> xn_, yn_;
    MomentField mom_;
    MlsCoeffs1d c1_;
    MlsCoeffs2d c2_;
    TransportWorkspace ws_;
    std::vector<char> needT_, needR_;
    long steps_ = 0;
};

}  // namespace mbgk
