#include "mbgk/stepper.hpp"

#include <cmath>
#include <string>

namespace mbgk {

std::vector<Vec2> RigidBody::shape1d() const {
    const double xc = state.Xc.x();
    return {{xc - halfWidth1d, 0.0}, {xc + halfWidth1d, 0.0}};
}

std::vector<Vec2> RigidBody::shape2d() const {
    const double h = halfSide2d;
    const Eigen::Matrix2d R2 = state.R.topLeftCorner<2, 2>();
    const Eigen::Vector2d xc = state.Xc.head<2>();
    std::vector<Vec2> poly;
    const double cx[4] = {+h, -h, -h, +h};
    const double cy[4] = {+h, +h, -h, -h};
    for (int k = 0; k < 4; ++k) {
        Eigen::Vector2d p = xc + R2 * Eigen::Vector2d(cx[k], cy[k]);
        poly.push_back({p.x(), p.y()});
    }
    // CCW ordering: (+,+), (-,+), (-,-), (+,-)
    return poly;
}

Stepper::Stepper(PointCloud& cloud, ChuField& field, const VelocityGrid& vg, StepperOptions opt)
    : cloud_(cloud), g_(field), vg_(vg), opt_(std::move(opt)) {
    opt_.tableau.validate();
    opt_.gas.validate();
    const int nu = opt_.tableau.stages;
    T_.resize(nu);
    R_.resize(nu);
    u1s_.resize(nu);
    u2s_.resize(nu);
    needT_.assign(nu, 0);
    needR_.assign(nu, 0);
    for (int p = 0; p < nu; ++p) {
        for (int s = p + 1; s < nu; ++s) {
            if (opt_.tableau.aExp(s, p) != 0.0) needT_[p] = 1;
            if (opt_.tableau.aImp(s, p) != 0.0) needR_[p] = 1;
        }
        if (!opt_.tableau.stifflyAccurate) {
            if (opt_.tableau.wExp[p] != 0.0) needT_[p] = 1;
            if (opt_.tableau.wImp[p] != 0.0) needR_[p] = 1;
        }
    }
}

void Stepper::buildCoeffs() {
    if (cloud_.dim() == 1) {
        if (opt_.scheme == SchemeKind::Upwind1) {
            // upwind scheme uses the weights directly; beta functionals are
            // still wanted by MOOD diagnostics when enabled on high-order
            // runs only, so nothing to build here
            c1_ = MlsCoeffs1d{};
            return;
        }
        const int order = (opt_.scheme == SchemeKind::Muscl4) ? 5 : 3;
        buildMls1d(cloud_.stencils(), cloud_.hmax(), order, c1_);
    } else {
        buildMls2d(cloud_.stencils(), cloud_.hmax(), c2_);
    }
}

void Stepper::refreshBodyGeometry() {
    if (bodies_.empty()) return;
    std::vector<std::vector<Vec2>> polys;
    for (const auto& b : bodies_)
        polys.push_back(cloud_.dim() == 1 ? b.shape1d() : b.shape2d());
    cloud_.setBodyPolygons(std::move(polys));

    const int n = cloud_.size();
    for (int i = 0; i < n; ++i) {
        if (cloud_.roleOf(i) != Role::RigidSurface) continue;
        WallData& wd = cloud_.wallOf(i);
        const RigidBody& b = bodies_[wd.body];
        const Eigen::Vector3d anchor(wd.anchorBody.x, wd.anchorBody.y, 0.0);
        const Eigen::Vector3d pos = b.state.Xc + b.state.R * anchor;
        cloud_.xAt(i) = pos.x();
        if (cloud_.dim() == 2) cloud_.yAt(i) = pos.y();
        const Eigen::Vector3d nb(wd.nhatBody.x, wd.nhatBody.y, 0.0);
        const Eigen::Vector3d nl = b.state.R * nb;
        wd.nhat = {nl.x(), nl.y()};
        const Eigen::Vector3d uw = b.state.pointVelocity(pos);
        wd.uw = {uw.x(), uw.y()};
    }
}

void Stepper::prepare() {
    if (cloud_.dim() == 1)
        cloud_.setMinNeighbors(opt_.scheme == SchemeKind::Muscl4 ? 4 : 2);
    else
        cloud_.setMinNeighbors(5);
    refreshBodyGeometry();
    cloud_.rebuildNeighbors();
    buildCoeffs();
}

void Stepper::bodySubstep(double dtSub) {
    if (bodies_.empty() || dtSub <= 0.0) return;
    const int n = cloud_.size();
    std::vector<std::vector<SurfaceSample>> quad(bodies_.size());
    for (int i = 0; i < n; ++i) {
        if (cloud_.roleOf(i) != Role::RigidSurface) continue;
        const WallData& wd = cloud_.wallOf(i);
        SurfaceSample s;
        s.x = Eigen::Vector3d(cloud_.x()[i], cloud_.dim() == 2 ? cloud_.y()[i] : 0.0, 0.0);
        s.nOut = Eigen::Vector3d(wd.nhat.x, wd.nhat.y, 0.0);  // into the gas = out of the body
        s.dA = wd.dA;
        s.psi = pressureTensor(gprev_.g1.col(i), gprev_.g2.col(i), wd.uw, vg_);
        quad[wd.body].push_back(s);
    }
    for (std::size_t b = 0; b < bodies_.size(); ++b) {
        if (!bodies_[b].mobile) continue;
        const ForceTorque ft = forceAndTorque(bodies_[b].state, quad[b]);
        Eigen::Vector3d F = ft.F, T = ft.T;
        if (cloud_.dim() == 1) {
            F.y() = F.z() = 0.0;
            T.setZero();
        } else {
            F.z() = 0.0;
            T.x() = T.y() = 0.0;
        }
        F *= bodies_[b].faceArea;
        T *= bodies_[b].faceArea;
        advanceRigidBody(bodies_[b].state, F, T, dtSub);
    }
    refreshBodyGeometry();
}

void Stepper::applyWalls(ChuField& f, double& residualMax) {
    const int n = cloud_.size();
    for (int i = 0; i < n; ++i) {
        if (cloud_.roleOf(i) == Role::Interior) continue;
        const WallData& wd = cloud_.wallOf(i);
        WallSpec spec{wd.Tw, wd.uw, wd.nhat};
        const WallFluxReport rep =
            applyDiffuseReflective(f.g1.col(i), f.g2.col(i), spec, vg_, opt_.gas);
        residualMax = std::max(residualMax, rep.residual);
    }
}

void Stepper::transportEval(const ChuField& f, const Eigen::ArrayXd& u1,
                            const Eigen::ArrayXd& u2, ChuField& out) {
    const StencilTable& st = cloud_.stencils();
    std::vector<Role> roles(cloud_.size());
    for (int i = 0; i < cloud_.size(); ++i) roles[i] = cloud_.roleOf(i);
    switch (opt_.scheme) {
        case SchemeKind::Upwind1:
            transportUpwind1d(st, cloud_.hmax(), roles, u1, vg_, f, out, ws_);
            break;
        case SchemeKind::Positive1:
            transportPositive2d(st, c2_, u1, u2, vg_, f, out);
            break;
        case SchemeKind::Muscl2:
            if (cloud_.dim() == 1)
                transportMuscl1d(st, c1_, 2, u1, vg_, f, out, ws_);
            else
                transportMuscl2d(st, cloud_.edges(), c2_, u1, u2, vg_, f, out, ws_);
            break;
        case SchemeKind::Muscl4:
            transportMuscl1d(st, c1_, 4, u1, vg_, f, out, ws_);
            break;
    }
}

void Stepper::stageVelocity(int s) {
    const int n = cloud_.size();
    u1s_[s].resize(n);
    u2s_[s].resize(n);
    for (int i = 0; i < n; ++i) {
        switch (cloud_.roleOf(i)) {
            case Role::Interior:
                u1s_[s][i] = mom_.u1[i];
                u2s_[s][i] = mom_.u2[i];
                break;
            case Role::OuterWall:
                u1s_[s][i] = 0.0;
                u2s_[s][i] = 0.0;
                break;
            case Role::RigidSurface: {
                const WallData& wd = cloud_.wallOf(i);
                u1s_[s][i] = wd.uw.x;
                u2s_[s][i] = wd.uw.y;
                break;
            }
        }
    }
}

// Align the discrete collision invariants of the sampled stage Maxwellian
// with the target moments: G1 <- G1 (a + b v1 + c v2) fixes mass and momentum,
// then the G2 scale fixes the total energy. The midpoint-rule defect of the
// plain sampled Maxwellian is tiny per evaluation but acts secularly through
// the relaxation (tf/tau times per run), which floors convergence studies on
// coarse velocity grids. The correction is skipped if it would turn G1
// negative (far-from-equilibrium states; the plain Maxwellian is kept there).
static void matchInvariants(const Moments& m, const VelocityGrid& vg, const GasParameters& gas,
                            Eigen::ArrayXd& G1, Eigen::ArrayXd& G2) {
    const double w = vg.weight();
    const Eigen::ArrayXd& v1 = vg.v1();
    const Eigen::ArrayXd& v2 = vg.v2();
    const int dim = vg.dim();

    // moment matrix of G1 against (1, v1[, v2])
    const double s0 = w * G1.sum();
    const double s1 = w * (v1 * G1).sum();
    const double s2 = (dim == 2) ? w * (v2 * G1).sum() : 0.0;
    const double s11 = w * (v1 * v1 * G1).sum();
    const double s12 = (dim == 2) ? w * (v1 * v2 * G1).sum() : 0.0;
    const double s22 = (dim == 2) ? w * (v2 * v2 * G1).sum() : 0.0;

    double a, b, c = 0.0;
    if (dim == 1) {
        Eigen::Matrix2d M;
        M << s0, s1, s1, s11;
        const Eigen::Vector2d rhs(m.rho, m.rho * m.U.x);
        const Eigen::Vector2d sol = M.fullPivLu().solve(rhs);
        a = sol[0];
        b = sol[1];
    } else {
        Eigen::Matrix3d M;
        M << s0, s1, s2, s1, s11, s12, s2, s12, s22;
        const Eigen::Vector3d rhs(m.rho, m.rho * m.U.x, m.rho * m.U.y);
        const Eigen::Vector3d sol = M.fullPivLu().solve(rhs);
        a = sol[0];
        b = sol[1];
        c = sol[2];
    }
    Eigen::ArrayXd corr = a + b * v1;
    if (dim == 2) corr += c * v2;
    if ((corr <= 0.0).any()) return;

    const Eigen::ArrayXd G1c = G1 * corr;
    const double eInPlane = 0.5 * w * (vg.vsq() * G1c).sum();
    const double g2sum = 0.5 * w * G2.sum();
    const double d = (m.E - eInPlane) / g2sum;
    if (!(d > 0.0)) return;
    G1 = G1c;
    G2 *= d;
    (void)gas;
}

double Stepper::firstOrderBound() {
    MomentField m;
    const int n = cloud_.size();
    m.resize(n);
    Eigen::ArrayXd u1(n), u2(n);
    for (int i = 0; i < n; ++i) {
        const Moments mi = momentsFromFieldUnchecked(g_, vg_, opt_.gas, i);
        u1[i] = (cloud_.roleOf(i) == Role::Interior) ? mi.U.x : cloud_.wallOf(i).uw.x;
        u2[i] = (cloud_.roleOf(i) == Role::Interior) ? mi.U.y : cloud_.wallOf(i).uw.y;
        if (cloud_.roleOf(i) == Role::OuterWall) u1[i] = u2[i] = 0.0;
    }
    std::vector<Role> roles(n);
    for (int i = 0; i < n; ++i) roles[i] = cloud_.roleOf(i);
    if (cloud_.dim() == 1)
        return cflTimestep1d(cloud_.stencils(), cloud_.hmax(), roles, u1, vg_);
    return cflTimestep2d(cloud_.stencils(), c2_, u1, u2, vg_);
}

StepStats Stepper::step(double dt) {
    StepStats stats;
    const ImexTableau& tab = opt_.tableau;
    const int nu = tab.stages;
    const double tau = opt_.gas.tau;
    const bool highOrder = !schemeIsFirstOrder(opt_.scheme);

    if (!bodies_.empty()) {
        bool mobileAny = false;
        for (const auto& b : bodies_) mobileAny |= b.mobile;
        if (mobileAny && !tab.stifflyAccurate)
            throw ConfigError("rigid bodies require a stiffly accurate tableau (ars222)");
    }

    gn_ = g_;
    gprev_ = g_;
    xn_ = cloud_.x();
    yn_ = cloud_.y();
    const int nodes = g_.nodes();

    Eigen::ArrayXd G1(nodes), G2(nodes);

    for (int s = 0; s < nu; ++s) {
        // grid and body move to the stage-s positions
        if (s > 0) {
            bodySubstep(dt * (tab.cExp[s] - tab.cExp[s - 1]));
            const int n = cloud_.size();
            for (int i = 0; i < n; ++i) {
                if (cloud_.roleOf(i) != Role::Interior) continue;
                double px = xn_[i], py = yn_[i];
                for (int p = 0; p < s; ++p) {
                    const double a = tab.aExp(s, p);
                    if (a == 0.0) continue;
                    px += dt * a * u1s_[p][i];
                    if (cloud_.dim() == 2) py += dt * a * u2s_[p][i];
                }
                cloud_.wrapPosition(px, py);
                cloud_.xAt(i) = px;
                if (cloud_.dim() == 2) cloud_.yAt(i) = py;
            }
            cloud_.rebuildNeighbors();
            buildCoeffs();
        }

        // explicit transport accumulation
        gcand_ = gn_;
        for (int p = 0; p < s; ++p) {
            const double a = tab.aExp(s, p);
            if (a == 0.0) continue;
            gcand_.g1 -= (dt * a) * T_[p]->g1;
            gcand_.g2 -= (dt * a) * T_[p]->g2;
        }

        // a-posteriori limiting against the previous stage
        if (s > 0 && highOrder && opt_.mood.enabled) {
            std::vector<Role> roles(cloud_.size());
            for (int i = 0; i < cloud_.size(); ++i) roles[i] = cloud_.roleOf(i);
            MoodContext cx;
            cx.st = &cloud_.stencils();
            cx.vg = &vg_;
            cx.roles = &roles;
            cx.u1 = &u1s_[s - 1];
            cx.u2 = &u2s_[s - 1];
            cx.c1 = &c1_;
            cx.c2 = &c2_;
            cx.hmax = cloud_.hmax();
            cx.dim = cloud_.dim();
            const double dtEff = dt * (tab.cImp[s] - tab.cImp[s - 1]);
            stats.mood += moodApply(gcand_, gprev_, cx, opt_.mood, dtEff);
        }

        // wall procedure after transport, before the relaxation; the first
        // stage accumulates no transport, so there is nothing to reflect yet
        if (s > 0 || tab.cExp[s] > 0.0) applyWalls(gcand_, stats.wallResidualMax);

        // prior implicit contributions
        for (int p = 0; p < s; ++p) {
            const double a = tab.aImp(s, p);
            if (a == 0.0) continue;
            gcand_.g1 += (dt / tau * a) * R_[p]->g1;
            gcand_.g2 += (dt / tau * a) * R_[p]->g2;
        }

        // stage moments (of gbar; the implicit step preserves them)
        try {
            momentsAll(gcand_, vg_, opt_.gas, mom_);
        } catch (const AdmissibilityError& e) {
            throw AdmissibilityError("stage " + std::to_string(s + 1) + ": " + e.what(),
                                     e.point(), e.rho(), e.temperature());
        }
        stageVelocity(s);

        // implicit relaxation in closed form
        const double ass = tab.aImp(s, s);
        const bool needR = needR_[s] != 0;
        if (needR && !R_[s]) R_[s].emplace();
        if (needR) R_[s]->resize(nodes, g_.points());
        if (ass > 0.0 || needR) {
            const double denom = tau + dt * ass;
            for (int i = 0; i < cloud_.size(); ++i) {
                const Moments mi = mom_.at(i);
                maxwellian(mi, opt_.gas, vg_, G1, G2, i);
                matchInvariants(mi, vg_, opt_.gas, G1, G2);
                if (ass > 0.0) {
                    gcand_.g1.col(i) = (tau * gcand_.g1.col(i) + (dt * ass) * G1) / denom;
                    gcand_.g2.col(i) = (tau * gcand_.g2.col(i) + (dt * ass) * G2) / denom;
                }
                if (needR) {
                    R_[s]->g1.col(i) = G1 - gcand_.g1.col(i);
                    R_[s]->g2.col(i) = G2 - gcand_.g2.col(i);
                }
            }
        }

        // stage transport for later stages / the final combination
        if (needT_[s]) {
            if (!T_[s]) T_[s].emplace();
            transportEval(gcand_, u1s_[s], u2s_[s], *T_[s]);
        }
        gprev_ = gcand_;
    }

    if (tab.stifflyAccurate) {
        g_ = gprev_;
    } else {
        g_ = gn_;
        for (int s = 0; s < nu; ++s) {
            if (tab.wExp[s] != 0.0) {
                g_.g1 -= (dt * tab.wExp[s]) * T_[s]->g1;
                g_.g2 -= (dt * tab.wExp[s]) * T_[s]->g2;
            }
            if (tab.wImp[s] != 0.0) {
                g_.g1 += (dt / tau * tab.wImp[s]) * R_[s]->g1;
                g_.g2 += (dt / tau * tab.wImp[s]) * R_[s]->g2;
            }
        }
        const int n = cloud_.size();
        for (int i = 0; i < n; ++i) {
            if (cloud_.roleOf(i) != Role::Interior) continue;
            double px = xn_[i], py = yn_[i];
            for (int s = 0; s < nu; ++s) {
                px += dt * tab.wExp[s] * u1s_[s][i];
                if (cloud_.dim() == 2) py += dt * tab.wExp[s] * u2s_[s][i];
            }
            cloud_.wrapPosition(px, py);
            cloud_.xAt(i) = px;
            if (cloud_.dim() == 2) cloud_.yAt(i) = py;
        }
        applyWalls(g_, stats.wallResidualMax);
    }

    // end-of-step grid maintenance and fresh coefficients
    stats.maint = cloud_.maintain(g_);
    buildCoeffs();
    stats.maxCond = (cloud_.dim() == 1) ? c1_.maxCond : c2_.maxCond;

    ++steps_;
    if (opt_.cflRecheckEvery > 0 && steps_ % opt_.cflRecheckEvery == 0) {
        stats.firstOrderBound = firstOrderBound();
        stats.cflWarning = dt > 1.1 * stats.firstOrderBound;
    }
    return stats;
}

}  // namespace mbgk
