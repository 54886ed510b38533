#include "mbgk/cases.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>

#include "mbgk/gas.hpp"

namespace mbgk {

namespace {

constexpr double kPi = std::numbers::pi;

using MomentsAt = std::function<Moments(double, double)>;

void fillMaxwellianField(const PointCloud& cloud, const VelocityGrid& vg,
                         const GasParameters& gas, const MomentsAt& momentsAt, ChuField& f) {
    f.resize(vg.count(), cloud.size());
    for (int i = 0; i < cloud.size(); ++i) {
        const Moments m = momentsAt(cloud.x()[i], cloud.dim() == 2 ? cloud.y()[i] : 0.0);
        maxwellian(m, gas, vg, f.g1.col(i), f.g2.col(i), i);
    }
}

// lid velocity U_max (2x/L)^2 (2 - 2x/L)^2; peaks at U_max mid-lid, zero at corners
double cavityLidProfile(double x, double L, double umax) {
    const double s = 2.0 * x / L;
    return umax * s * s * (2.0 - s) * (2.0 - s);
}

}  // namespace

Simulation::Simulation(const Config& cfg) : cfg_(cfg) { build(); }

long Simulation::stepsPlanned() const {
    if (tf_ <= 0.0 || dt_ <= 0.0) return 0;
    return std::llround(tf_ / dt_);
}

void Simulation::build() {
    caseName_ = cfg_.getS("case");
    if (caseName_.empty()) throw ConfigError("config: missing 'case'");

    if (caseName_ == "convergence1d")
        initConvergence1d();
    else if (caseName_ == "convergence2d")
        initConvergence2d();
    else if (caseName_ == "sod")
        initSod();
    else if (caseName_ == "plate")
        initPlate();
    else if (caseName_ == "cavity")
        initCavity();
    else if (caseName_ == "shear")
        initShear();
    else
        throw ConfigError("unknown case '" + caseName_ + "'");

    stepper_->prepare();
    dt_ = timestepFromConfig();
    if (!(dt_ > 0.0)) throw ConfigError("config: non-positive time step");
    if (tf_ < 0.0) throw ConfigError("config: non-positive final time");
    mass0_ = totals().mass;
}

namespace {

StepperOptions makeOptions(const Config& cfg, int dim, const GasParameters& gas,
                           const std::string& schemeDflt, const std::string& tabDflt,
                           bool moodDflt) {
    StepperOptions o;
    o.scheme = schemeFromName(cfg.getS("scheme", schemeDflt));
    o.tableau = ImexTableau::fromName(cfg.getS("tableau", tabDflt));
    o.mood = MoodConfig::defaults(dim);
    o.mood.enabled = cfg.getB("mood", moodDflt);
    o.mood.delta = cfg.getD("delta", o.mood.delta);
    o.gas = gas;
    o.cflRecheckEvery = cfg.getI("cfl_recheck_every", 1);

    const bool is1d = dim == 1;
    if (o.scheme == SchemeKind::Upwind1 && !is1d)
        throw ConfigError("scheme upwind1 is 1D-only");
    if (o.scheme == SchemeKind::Muscl4 && !is1d)
        throw ConfigError("scheme muscl4 is 1D-only");
    if (o.scheme == SchemeKind::Positive1 && is1d)
        throw ConfigError("scheme positive1 is 2D-only");
    return o;
}

CloudParams cloudParams(const Config& cfg, int dim) {
    CloudParams p = (dim == 1) ? CloudParams::defaults1d() : CloudParams::defaults2d();
    p.bRadius = cfg.getD("b_r", p.bRadius);
    p.bVoxel = cfg.getD("b_v", p.bVoxel);
    p.bMinDist = cfg.getD("b_mindist", p.bMinDist);
    return p;
}

}  // namespace

void Simulation::initConvergence1d() {
    dom_ = {-1.0, 1.0, 0.0, 0.0, false};
    gas_.rs = cfg_.getD("rs", 1.0);
    gas_.tau = cfg_.getD("tau", 1e-5);
    const int nx = cfg_.getI("nx", 100);
    const int nv = cfg_.getI("nv", 20);
    const double vmax = cfg_.getD("vmax", 10.0);
    tf_ = cfg_.getD("tf", 0.04);

    vg_ = std::make_unique<VelocityGrid>(1, nv, vmax);
    const double dx0 = (dom_.xhi - dom_.xlo) / (nx - 1);
    cloud_ = std::make_unique<PointCloud>(1, dx0, cloudParams(cfg_, 1));
    cloud_->setBounds(dom_.xlo, dom_.xhi);
    for (int i = 0; i < nx; ++i) {
        const double x = dom_.xlo + i * dx0;
        if (i == 0) {
            cloud_->appendPoint(x, 0.0, Role::OuterWall, {{1.0, 0.0}, 1.0, {0.0, 0.0}});
        } else if (i == nx - 1) {
            cloud_->appendPoint(x, 0.0, Role::OuterWall, {{-1.0, 0.0}, 1.0, {0.0, 0.0}});
        } else {
            cloud_->appendPoint(x, 0.0, Role::Interior);
        }
    }
    auto mom = [](double x, double) {
        Moments m;
        m.rho = 1.0;
        m.T = 1.0;
        m.U.x = (std::exp(-5.0 * (x - 0.1) * (x - 0.1)) -
                 2.0 * std::exp(-5.0 * (x + 0.3) * (x + 0.3))) /
                10.0;
        return m;
    };
    fillMaxwellianField(*cloud_, *vg_, gas_, mom, field_);
    stepper_ = std::make_unique<Stepper>(*cloud_, field_, *vg_,
                                         makeOptions(cfg_, 1, gas_, "muscl4", "ssp2_332", true));
}

void Simulation::initConvergence2d() {
    dom_ = {-1.0, 1.0, -1.0, 1.0, false};
    gas_.rs = cfg_.getD("rs", 1.0);
    gas_.tau = cfg_.getD("tau", 1e-5);
    const int nx = cfg_.getI("nx", 61);
    const int nv = cfg_.getI("nv", 20);
    const double vmax = cfg_.getD("vmax", 12.0);
    tf_ = cfg_.getD("tf", 5e-3);

    vg_ = std::make_unique<VelocityGrid>(2, nv, vmax);
    const double dx0 = (dom_.xhi - dom_.xlo) / (nx - 1);
    cloud_ = std::make_unique<PointCloud>(2, dx0, cloudParams(cfg_, 2));
    cloud_->setBounds(dom_.xlo, dom_.xhi, dom_.ylo, dom_.yhi);
    for (int iy = 0; iy < nx; ++iy)
        for (int ix = 0; ix < nx; ++ix) {
            const double x = dom_.xlo + ix * dx0;
            const double y = dom_.ylo + iy * dx0;
            const bool wl = ix == 0, wr = ix == nx - 1, wb = iy == 0, wt = iy == nx - 1;
            if (wl || wr || wb || wt) {
                Vec2 n{(wl ? 1.0 : 0.0) + (wr ? -1.0 : 0.0),
                       (wb ? 1.0 : 0.0) + (wt ? -1.0 : 0.0)};
                const double nn = n.norm();
                cloud_->appendPoint(x, y, Role::OuterWall,
                                    {{n.x / nn, n.y / nn}, 1.0, {0.0, 0.0}});
            } else {
                cloud_->appendPoint(x, y, Role::Interior);
            }
        }
    auto ring = [](double a, double b) {
        const double r1 = 10.0 * std::sqrt((a - 0.2) * (a - 0.2) + b * b) - 1.0;
        const double r2 = 10.0 * std::sqrt((a + 0.2) * (a + 0.2) + b * b) - 1.0;
        return 0.1 * (std::exp(-r1 * r1) - 2.0 * std::exp(-r2 * r2));
    };
    auto mom = [&](double x, double y) {
        Moments m;
        m.rho = 1.0;
        m.T = 1.0;
        m.U.x = ring(x, y);
        m.U.y = ring(y, x);
        return m;
    };
    fillMaxwellianField(*cloud_, *vg_, gas_, mom, field_);
    stepper_ = std::make_unique<Stepper>(*cloud_, field_, *vg_,
                                         makeOptions(cfg_, 2, gas_, "muscl2", "ars222", true));
}

void Simulation::initSod() {
    dom_ = {0.0, 1.0, 0.0, 0.0, false};
    gas_.rs = cfg_.getD("rs", 208.0);
    gas_.tau = cfg_.getD("tau", 1e-6);
    const int nx = cfg_.getI("nx", 100);
    const int nv = cfg_.getI("nv", 80);
    const double vmax = cfg_.getD("vmax", 20.0);
    tf_ = cfg_.getD("tf", 0.17);

    const double rhoL = cfg_.getD("sod_rho_l", 1e-3);
    const double TL = cfg_.getD("sod_t_l", 8.012e-3);
    const double uL = cfg_.getD("sod_u_l", 0.0);
    const double rhoR = cfg_.getD("sod_rho_r", 1e-3 / 8.0);
    const double TR = cfg_.getD("sod_t_r", 6.41e-3);
    const double uR = cfg_.getD("sod_u_r", 0.0);
    const double x0 = cfg_.getD("sod_x0", 0.5);

    vg_ = std::make_unique<VelocityGrid>(1, nv, vmax);
    const double dx0 = (dom_.xhi - dom_.xlo) / (nx - 1);
    cloud_ = std::make_unique<PointCloud>(1, dx0, cloudParams(cfg_, 1));
    cloud_->setBounds(dom_.xlo, dom_.xhi);
    for (int i = 0; i < nx; ++i) {
        const double x = dom_.xlo + i * dx0;
        if (i == 0)
            cloud_->appendPoint(x, 0.0, Role::OuterWall, {{1.0, 0.0}, TL, {0.0, 0.0}});
        else if (i == nx - 1)
            cloud_->appendPoint(x, 0.0, Role::OuterWall, {{-1.0, 0.0}, TR, {0.0, 0.0}});
        else
            cloud_->appendPoint(x, 0.0, Role::Interior);
    }
    auto mom = [&](double x, double) {
        Moments m;
        m.rho = x <= x0 ? rhoL : rhoR;
        m.T = x <= x0 ? TL : TR;
        m.U.x = x <= x0 ? uL : uR;
        return m;
    };
    fillMaxwellianField(*cloud_, *vg_, gas_, mom, field_);
    stepper_ = std::make_unique<Stepper>(*cloud_, field_, *vg_,
                                         makeOptions(cfg_, 1, gas_, "muscl2", "ars222", true));
}

void Simulation::initPlate() {
    const double chamber = cfg_.getD("plate_chamber", 1.0);
    const double l = cfg_.getD("plate_l", 0.1);
    const double p0 = cfg_.getD("plate_p0", 3.86e-2);
    const double T0 = cfg_.getD("plate_t0", 270.0);
    const double TwL = cfg_.getD("plate_t_left", 270.0);
    const double TwR = cfg_.getD("plate_t_right", 330.0);

    dom_ = {-(chamber + 0.5 * l), chamber + 0.5 * l, 0.0, 0.0, false};
    gas_.rs = cfg_.getD("rs", 208.0);
    gas_.d = cfg_.getD("plate_d", 3.68e-10);
    if (cfg_.has("tau")) {
        gas_.tau = cfg_.getD("tau", 0.0);
    } else {
        gas_.tau = relaxationTime(p0, T0, gas_).tau;
    }
    const double rho0 = p0 / (gas_.rs * T0);

    const int nx = cfg_.getI("nx", 54);
    if (nx % 2 != 0) throw ConfigError("plate: nx must be even (two chambers)");
    const int npc = nx / 2;
    const int nv = cfg_.getI("nv", 20);
    const double vmax = cfg_.getD("vmax", 1400.0);
    tf_ = cfg_.getD("tf", 0.2);

    vg_ = std::make_unique<VelocityGrid>(1, nv, vmax);
    const double dx0 = chamber / (npc - 1);
    cloud_ = std::make_unique<PointCloud>(1, dx0, cloudParams(cfg_, 1));
    cloud_->setBounds(dom_.xlo, dom_.xhi);

    // rigid plate, initially centered
    RigidBody body;
    const double rhoP = cfg_.getD("plate_rho_factor", 10.0) * rho0;
    body.halfWidth1d = 0.5 * l;
    body.faceArea = cfg_.getD("plate_area", 1.0);
    body.state.m = cfg_.has("plate_mass") ? cfg_.getD("plate_mass", 0.0)
                                          : rhoP * l * body.faceArea;
    body.state.Xc.setZero();
    cloud_->setBodyPolygons({body.shape1d()});

    // left chamber [-chamber - l/2, -l/2]
    for (int i = 0; i < npc; ++i) {
        const double x = dom_.xlo + i * dx0;
        if (i == 0) {
            cloud_->appendPoint(x, 0.0, Role::OuterWall, {{1.0, 0.0}, TwL, {0.0, 0.0}});
        } else if (i == npc - 1) {
            WallData wd{{-1.0, 0.0}, TwL, {0.0, 0.0}, 0, {-0.5 * l, 0.0}, {-1.0, 0.0}};
            cloud_->appendPoint(x, 0.0, Role::RigidSurface, wd);
        } else {
            cloud_->appendPoint(x, 0.0, Role::Interior);
        }
    }
    // right chamber [l/2, chamber + l/2]
    for (int i = 0; i < npc; ++i) {
        const double x = 0.5 * l + i * dx0;
        if (i == 0) {
            WallData wd{{1.0, 0.0}, TwR, {0.0, 0.0}, 0, {0.5 * l, 0.0}, {1.0, 0.0}};
            cloud_->appendPoint(x, 0.0, Role::RigidSurface, wd);
        } else if (i == npc - 1) {
            cloud_->appendPoint(x, 0.0, Role::OuterWall, {{-1.0, 0.0}, TwR, {0.0, 0.0}});
        } else {
            cloud_->appendPoint(x, 0.0, Role::Interior);
        }
    }

    auto mom = [&](double, double) {
        Moments m;
        m.rho = rho0;
        m.T = T0;
        return m;
    };
    fillMaxwellianField(*cloud_, *vg_, gas_, mom, field_);
    stepper_ = std::make_unique<Stepper>(*cloud_, field_, *vg_,
                                         makeOptions(cfg_, 1, gas_, "muscl2", "ars222", true));
    stepper_->bodies().push_back(body);
}

void Simulation::initCavity() {
    const double L = cfg_.getD("cavity_l", 1e-6);
    dom_ = {0.0, L, 0.0, L, false};
    gas_.rs = cfg_.getD("rs", 208.0);
    gas_.tau = cfg_.getD("tau", 3.37671e-11);
    const double T0 = cfg_.getD("cavity_t0", 270.0);
    const double p0 = cfg_.getD("cavity_p0", 61776.0);
    const double umax = cfg_.getD("cavity_umax", 10.0);
    const double rho0 = p0 / (gas_.rs * T0);

    const int nx = cfg_.getI("nx", 60);
    const int nv = cfg_.getI("nv", 20);
    const double vmax = cfg_.getD("vmax", 1500.0);
    tf_ = cfg_.getD("tf", 8e-8);

    vg_ = std::make_unique<VelocityGrid>(2, nv, vmax);
    const double dx0 = L / (nx - 1);
    cloud_ = std::make_unique<PointCloud>(2, dx0, cloudParams(cfg_, 2));
    cloud_->setBounds(0.0, L, 0.0, L);

    const double side = cfg_.getD("body_side", 0.0);
    RigidBody body;
    bool haveBody = side > 0.0;
    if (haveBody) {
        const double bx = cfg_.getD("body_x", 6e-7);
        const double by = cfg_.getD("body_y", 7e-7);
        const double rhoRb = cfg_.getD("body_rho_factor", 10.0) * rho0;
        body.halfSide2d = 0.5 * side;
        body.state.m = rhoRb * side * side;
        body.state.Xc = Eigen::Vector3d(bx, by, 0.0);
        body.state.Ibody.setZero();
        body.state.Ibody(0, 0) = body.state.m * side * side / 12.0;
        body.state.Ibody(1, 1) = body.state.m * side * side / 12.0;
        body.state.Ibody(2, 2) = body.state.m * side * side / 6.0;
        cloud_->setBodyPolygons({body.shape2d()});
    }

    const double margin = cloud_->params().bMinDist * dx0;
    for (int iy = 0; iy < nx; ++iy)
        for (int ix = 0; ix < nx; ++ix) {
            const double x = ix * dx0;
            const double y = iy * dx0;
            const bool wl = ix == 0, wr = ix == nx - 1, wb = iy == 0, wt = iy == nx - 1;
            if (wl || wr || wb || wt) {
                Vec2 n{(wl ? 1.0 : 0.0) + (wr ? -1.0 : 0.0),
                       (wb ? 1.0 : 0.0) + (wt ? -1.0 : 0.0)};
                const double nn = n.norm();
                WallData wd{{n.x / nn, n.y / nn}, T0, {0.0, 0.0}};
                if (wt && !wl && !wr) wd.uw.x = cavityLidProfile(x, L, umax);
                cloud_->appendPoint(x, y, Role::OuterWall, wd);
            } else {
                if (haveBody && !cloud_->insideGasDomain(x, y, margin)) continue;
                cloud_->appendPoint(x, y, Role::Interior);
            }
        }

    if (haveBody) {
        const double h = body.halfSide2d;
        const double Trb = cfg_.getD("body_t", 270.0);
        const double dA = 8.0 * h / 16.0;  // perimeter / 16
        const double inv = 1.0 / std::sqrt(2.0);
        auto addSurf = [&](double ax, double ay, double nxb, double nyb) {
            WallData wd{{nxb, nyb}, Trb, {0.0, 0.0}, 0, {ax, ay}, {nxb, nyb}};
            wd.dA = dA;
            const Eigen::Vector3d pos =
                body.state.Xc + body.state.R * Eigen::Vector3d(ax, ay, 0.0);
            cloud_->appendPoint(pos.x(), pos.y(), Role::RigidSurface, wd);
        };
        addSurf(+h, +h, +inv, +inv);
        addSurf(-h, +h, -inv, +inv);
        addSurf(-h, -h, -inv, -inv);
        addSurf(+h, -h, +inv, -inv);
        for (int k = 1; k <= 3; ++k) {
            const double t = -h + k * (2.0 * h / 4.0);
            addSurf(t, -h, 0.0, -1.0);
            addSurf(t, +h, 0.0, +1.0);
            addSurf(-h, t, -1.0, 0.0);
            addSurf(+h, t, +1.0, 0.0);
        }
    }

    auto mom = [&](double, double) {
        Moments m;
        m.rho = rho0;
        m.T = T0;
        return m;
    };
    fillMaxwellianField(*cloud_, *vg_, gas_, mom, field_);
    StepperOptions opts = makeOptions(cfg_, 2, gas_, "muscl2", "ars222", true);
    opts.cflRecheckEvery = cfg_.getI("cfl_recheck_every", 20);
    stepper_ = std::make_unique<Stepper>(*cloud_, field_, *vg_, opts);
    if (haveBody) stepper_->bodies().push_back(body);
}

void Simulation::initShear() {
    dom_ = {0.0, 2.0 * kPi, 0.0, 2.0 * kPi, true};
    gas_.rs = cfg_.getD("rs", 1.0);
    gas_.tau = cfg_.getD("tau", 1e-5);
    const double rho0 = cfg_.getD("shear_rho0", 15.0 / kPi);
    const double T0 = 1.0 / (2.0 * rho0);

    const int nx = cfg_.getI("nx", 80);
    const int nv = cfg_.getI("nv", 25);
    const double vmax = cfg_.getD("vmax", 6.0 * std::sqrt(gas_.rs * T0));
    tf_ = cfg_.getD("tf", 10.0);

    vg_ = std::make_unique<VelocityGrid>(2, nv, vmax);
    const double dx0 = 2.0 * kPi / nx;
    cloud_ = std::make_unique<PointCloud>(2, dx0, cloudParams(cfg_, 2));
    cloud_->setBounds(dom_.xlo, dom_.xhi, dom_.ylo, dom_.yhi);
    cloud_->setPeriodic(true);
    for (int iy = 0; iy < nx; ++iy)
        for (int ix = 0; ix < nx; ++ix)
            cloud_->appendPoint(ix * dx0, iy * dx0, Role::Interior);

    const double k = 15.0 / kPi;
    auto mom = [&](double x, double y) {
        Moments m;
        m.rho = rho0;
        m.T = T0;
        m.U.x = (y <= kPi) ? std::tanh(k * (y - 0.5 * kPi)) : std::tanh(k * (1.5 * kPi - y));
        m.U.y = 0.05 * std::sin(x);
        return m;
    };
    fillMaxwellianField(*cloud_, *vg_, gas_, mom, field_);
    stepper_ = std::make_unique<Stepper>(*cloud_, field_, *vg_,
                                         makeOptions(cfg_, 2, gas_, "muscl2", "ars222", false));
}

double Simulation::timestepFromConfig() const {
    const double dtExplicit = cfg_.getD("dt", 0.0);
    if (dtExplicit > 0.0) return dtExplicit;
    const double cfl = cfg_.getD("cfl", caseName_ == "cavity" ? 0.45 : 0.5);
    if (cloud_->dim() == 1) return cfl * stepper_->firstOrderBound();
    // fixed uniform-grid restriction dt = CFL * extent / (Nx vmax)
    const double extent = dom_.xhi - dom_.xlo;
    const int nx = cfg_.getI("nx", 0);
    if (nx <= 0) throw ConfigError("timestep: nx required");
    return cfl * extent / (nx * vg_->vmax());
}

StepStats Simulation::stepOnce() {
    last_ = stepper_->step(dt_);
    time_ += dt_;
    if (last_.cflWarning) ++cflWarnings_;
    return last_;
}

Snapshot Simulation::makeSnapshot() const {
    Snapshot s;
    s.dim = cloud_->dim();
    s.time = time_;
    const int n = cloud_->size();
    s.x = cloud_->x();
    s.y = cloud_->y();
    s.rho.resize(n);
    s.u1.resize(n);
    s.u2.resize(n);
    s.T.resize(n);
    s.role.resize(n);
    for (int i = 0; i < n; ++i) {
        const Moments m = momentsFromFieldUnchecked(field_, *vg_, gas_, i);
        s.rho[i] = m.rho;
        s.u1[i] = m.U.x;
        s.u2[i] = m.U.y;
        s.T[i] = m.T;
        s.role[i] = static_cast<int>(cloud_->roleOf(i));
    }
    if (s.dim == 2) {
        // vorticity from the MLS first-derivative functionals of U
        s.vort.resize(n);
        const StencilTable& st = cloud_->stencils();
        const MlsCoeffs2d& c = stepper_->coeffs2d();
        for (int i = 0; i < n; ++i) {
            double w = 0.0;
            for (int e = st.begin(i); e < st.end(i); ++e) {
                const int j = st.nbr[e];
                w += c.xi[e] * (s.u2[j] - s.u2[i]) - c.zeta[e] * (s.u1[j] - s.u1[i]);
            }
            s.vort[i] = w;
        }
    }
    return s;
}

Totals Simulation::totals() const {
    MomentField mom;
    mom.resize(cloud_->size());
    for (int i = 0; i < cloud_->size(); ++i) {
        const Moments m = momentsFromFieldUnchecked(field_, *vg_, gas_, i);
        mom.rho[i] = m.rho;
        mom.u1[i] = m.U.x;
        mom.u2[i] = m.U.y;
        mom.T[i] = m.T;
        mom.E[i] = m.E;
    }
    return cloudTotals(*cloud_, mom);
}

void Simulation::run(const std::string& outDir) {
    namespace fs = std::filesystem;
    fs::create_directories(outDir);
    const int snapEvery = cfg_.getI("snapshot_every", 0);
    const auto t0 = std::chrono::steady_clock::now();

    writeSnapshot(outDir + "/snapshot_000000.dat", makeSnapshot());

    std::ofstream diag(outDir + "/diagnostics.dat");
    diag << "# step time mass mom1" << (cloud_->dim() == 2 ? " mom2" : "")
         << " energy mass_err_pct dmp_fail u2_accept fallback wall_residual cfl_bound"
            " cfl_warn merged inserted\n";
    std::ofstream body;
    if (!stepper_->bodies().empty()) {
        body.open(outDir + "/body.dat");
        body << "# time xc_x xc_y v_x v_y omega_z theta\n";
    }

    auto diagRow = [&](long step) {
        const Totals t = totals();
        const double massErr = 100.0 * std::abs(t.mass - mass0_) / mass0_;
        diag << step << ' ' << fmt17(time_) << ' ' << fmt17(t.mass) << ' ' << fmt17(t.mom1);
        if (cloud_->dim() == 2) diag << ' ' << fmt17(t.mom2);
        diag << ' ' << fmt17(t.energy) << ' ' << fmt17(massErr) << ' ' << last_.mood.dmpFail
             << ' ' << last_.mood.u2Accept << ' ' << last_.mood.fallback << ' '
             << fmt17(last_.wallResidualMax) << ' ' << fmt17(last_.firstOrderBound) << ' '
             << (last_.cflWarning ? 1 : 0) << ' ' << last_.maint.merged << ' '
             << last_.maint.inserted << "\n";
    };
    auto bodyRow = [&]() {
        if (stepper_->bodies().empty()) return;
        const RigidBodyState& st = stepper_->bodies()[0].state;
        const double theta = std::atan2(st.R(1, 0), st.R(0, 0));
        body << fmt17(time_) << ' ' << fmt17(st.Xc.x()) << ' ' << fmt17(st.Xc.y()) << ' '
             << fmt17(st.V.x()) << ' ' << fmt17(st.V.y()) << ' ' << fmt17(st.omega.z()) << ' '
             << fmt17(theta) << "\n";
    };

    diagRow(0);
    bodyRow();
    const long nsteps = stepsPlanned();
    MoodStats moodTotal;
    double wallResMax = 0.0;
    for (long s = 1; s <= nsteps; ++s) {
        stepOnce();
        moodTotal += last_.mood;
        wallResMax = std::max(wallResMax, last_.wallResidualMax);
        diagRow(s);
        bodyRow();
        if (snapEvery > 0 && s % snapEvery == 0 && s != nsteps) {
            char name[64];
            std::snprintf(name, sizeof name, "/snapshot_%06ld.dat", s);
            writeSnapshot(outDir + name, makeSnapshot());
        }
    }
    writeSnapshot(outDir + "/snapshot_final.dat", makeSnapshot());

    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const Totals t = totals();
    std::ofstream sum(outDir + "/summary.txt");
    sum << "case = " << caseName_ << "\n";
    sum << "scheme = " << schemeName(stepper_->options().scheme) << "\n";
    sum << "steps = " << nsteps << "\n";
    sum << "t_end = " << fmt17(time_) << "\n";
    sum << "dt = " << fmt17(dt_) << "\n";
    sum << "points = " << cloud_->size() << "\n";
    sum << "mass = " << fmt17(t.mass) << "\n";
    sum << "mass_err_pct = " << fmt17(100.0 * std::abs(t.mass - mass0_) / mass0_) << "\n";
    sum << "energy = " << fmt17(t.energy) << "\n";
    sum << "mood_dmp_fail = " << moodTotal.dmpFail << "\n";
    sum << "mood_u2_accept = " << moodTotal.u2Accept << "\n";
    sum << "mood_fallback = " << moodTotal.fallback << "\n";
    sum << "wall_residual_max = " << fmt17(wallResMax) << "\n";
    sum << "cfl_warnings = " << cflWarnings_ << "\n";
    sum << "runtime_s = " << fmt17(secs) << "\n";
    if (!stepper_->bodies().empty()) {
        const RigidBodyState& st = stepper_->bodies()[0].state;
        sum << "body_x = " << fmt17(st.Xc.x()) << "\n";
        sum << "body_y = " << fmt17(st.Xc.y()) << "\n";
        sum << "body_vx = " << fmt17(st.V.x()) << "\n";
    }
}

CaseDomain caseDomainFor(const Config& cfg) {
    const std::string name = cfg.getS("case");
    if (name == "convergence1d") return {-1.0, 1.0, 0.0, 0.0, false};
    if (name == "convergence2d") return {-1.0, 1.0, -1.0, 1.0, false};
    if (name == "sod") return {0.0, 1.0, 0.0, 0.0, false};
    if (name == "plate") {
        const double chamber = cfg.getD("plate_chamber", 1.0);
        const double l = cfg.getD("plate_l", 0.1);
        return {-(chamber + 0.5 * l), chamber + 0.5 * l, 0.0, 0.0, false};
    }
    if (name == "cavity") {
        const double L = cfg.getD("cavity_l", 1e-6);
        return {0.0, L, 0.0, L, false};
    }
    if (name == "shear") return {0.0, 2.0 * kPi, 0.0, 2.0 * kPi, true};
    throw ConfigError("unknown case '" + name + "'");
}

Snapshot runCached(const Config& cfg, const std::string& cacheDir) {
    namespace fs = std::filesystem;
    fs::create_directories(cacheDir);
    const std::size_t h = std::hash<std::string>{}(cfg.fingerprint());
    char name[64];
    std::snprintf(name, sizeof name, "/run_%016zx.snap", h);
    const std::string path = cacheDir + name;
    if (fs::exists(path)) return readSnapshot(path);

    Simulation sim(cfg);
    const long nsteps = sim.stepsPlanned();
    for (long s = 0; s < nsteps; ++s) sim.stepOnce();
    const Snapshot snap = sim.makeSnapshot();
    writeSnapshot(path, snap);
    return snap;
}

ConvergenceTable runConvergence(const Config& base, const std::vector<int>& nxs, int nxRef,
                                const std::string& cacheDir, int auditN) {
    Config refCfg = base;
    refCfg.set("nx", std::to_string(nxRef));
    const Snapshot ref = runCached(refCfg, cacheDir);
    const CaseDomain dom = caseDomainFor(base);

    ConvergenceTable table;
    std::vector<int> nxv;
    std::vector<double> er, eu, et;
    for (int nx : nxs) {
        Config cfg = base;
        cfg.set("nx", std::to_string(nx));
        const Snapshot snap = runCached(cfg, cacheDir);
        ConvergenceRow row;
        row.nx = nx;
        row.errRho = l1ErrorVsReference(snap, ref, "rho", auditN, dom.xlo, dom.xhi, dom.ylo,
                                        dom.yhi, dom.periodic);
        row.errU = l1ErrorVsReference(snap, ref, "u1", auditN, dom.xlo, dom.xhi, dom.ylo,
                                      dom.yhi, dom.periodic);
        row.errT = l1ErrorVsReference(snap, ref, "T", auditN, dom.xlo, dom.xhi, dom.ylo,
                                      dom.yhi, dom.periodic);
        table.rows.push_back(row);
        nxv.push_back(nx);
        er.push_back(row.errRho);
        eu.push_back(row.errU);
        et.push_back(row.errT);
    }
    table.orderRho = fitOrder(nxv, er);
    table.orderU = fitOrder(nxv, eu);
    table.orderT = fitOrder(nxv, et);
    return table;
}

}  // namespace mbgk
