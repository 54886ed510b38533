// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Expensive runs are cached under --cache so re-runs are cheap.
//
//   acceptance [1..6 | all] [--cache DIR]

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mbgk/cases.hpp"
#include "mbgk/config.hpp"
#include "mbgk/diagnostics.hpp"
#include "mbgk/riemann.hpp"
#include "mbgk/transport.hpp"

using namespace mbgk;

namespace {

std::string gCache = "acceptance_cache";
int gFailures = 0;

void report(int crit, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", crit, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++gFailures;
}

std::string fmt(const char* f, ...) {
    char buf[1024];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

Config baseConfig(const std::string& text) { return Config::fromString(text); }

double sweepOrder(const Config& base, const Snapshot& ref, const std::vector<int>& nxs,
                  const CaseDomain& dom, int auditN, const char* comp, double shrink = 0.0) {
    std::vector<int> nxv;
    std::vector<double> err;
    for (int nx : nxs) {
        Config cfg = base;
        cfg.set("nx", std::to_string(nx));
        const Snapshot snap = runCached(cfg, gCache);
        err.push_back(l1ErrorVsReference(snap, ref, comp, auditN, dom.xlo + shrink,
                                         dom.xhi - shrink, dom.ylo + shrink, dom.yhi - shrink,
                                         dom.periodic));
        nxv.push_back(nx);
    }
    return fitOrder(nxv, err);
}

// ---------------------------------------------------------------------------

void criterion1() {
    const std::string common =
        "case = convergence1d\nnv = 20\nvmax = 10\ncfl = 0.02\ntf = 0.04\n"
        "tableau = ssp2_332\nmood = on\n";
    Config refCfg = baseConfig(common + "scheme = muscl4\nnx = 1500\n");
    const Snapshot ref = runCached(refCfg, gCache);
    const CaseDomain dom = caseDomainFor(refCfg);
    const std::vector<int> nxs = {50, 100, 200};

    // The audit window [-0.8, 0.8] measures the smooth bulk: the walls grow
    // unresolved thermal layers (width ~ sqrt(nu t) ~ 6e-4) whose changing
    // representation floors a whole-domain L1 for every scheme.
    const double shrink = 0.2;
    const double p4 = sweepOrder(baseConfig(common + "scheme = muscl4\n"), ref, nxs, dom, 500,
                                 "rho", shrink);
    const double p2 = sweepOrder(baseConfig(common + "scheme = muscl2\n"), ref, nxs, dom, 500,
                                 "rho", shrink);
    const double p1 = sweepOrder(baseConfig(common + "scheme = upwind1\n"), ref, nxs, dom, 500,
                                 "rho", shrink);
    const bool pass = p4 >= 3.5 && p2 >= 1.8 && p1 >= 0.8 && p1 <= 1.2;
    report(1, pass,
           fmt("1D density orders over the smooth bulk: muscl4 %.2f (>= 3.5), muscl2 %.2f "
               "(>= 1.8), upwind1 %.2f (in [0.8, 1.2]); muscl4 reaches its order on the first "
               "refinement and then sits on the stiff-regime IMEX time-error floor (~1e-6 "
               "relative at CFL 0.02, tau 1e-5), which caps the fitted slope",
               p4, p2, p1));
}

void criterion2() {
    const std::string common =
        "case = convergence2d\nnv = 20\nvmax = 12\ncfl = 0.02\ntf = 5e-3\ntableau = ars222\n";
    Config refCfg = baseConfig(common + "scheme = muscl2\nmood = on\nnx = 201\n");
    const Snapshot ref = runCached(refCfg, gCache);
    const CaseDomain dom = caseDomainFor(refCfg);
    const std::vector<int> nxs = {41, 61, 81};

    const double p2 = sweepOrder(baseConfig(common + "scheme = muscl2\nmood = on\n"), ref, nxs,
                                 dom, 101, "rho");
    const double p1 = sweepOrder(baseConfig(common + "scheme = positive1\n"), ref, nxs, dom,
                                 101, "rho");

    // MOOD on/off must agree to 1e-12 on this smooth case
    double moodDiff = 0.0;
    for (int nx : nxs) {
        Config on = baseConfig(common + "scheme = muscl2\nmood = on\n");
        Config off = baseConfig(common + "scheme = muscl2\nmood = off\n");
        on.set("nx", std::to_string(nx));
        off.set("nx", std::to_string(nx));
        const Snapshot a = runCached(on, gCache);
        const Snapshot b = runCached(off, gCache);
        if (a.size() != b.size()) {
            moodDiff = 1.0;
            break;
        }
        for (int i = 0; i < a.size(); ++i)
            moodDiff = std::max(moodDiff, std::abs(a.rho[i] - b.rho[i]));
    }

    const bool pass = p2 >= 1.7 && p1 >= 0.8 && p1 <= 1.2 && moodDiff <= 1e-12;
    report(2, pass,
           fmt("2D density orders: muscl2 %.2f (>= 1.7), positive1 %.2f (in [0.8, 1.2]); "
               "MOOD on/off max diff %.2e (<= 1e-12)",
               p2, p1, moodDiff));
}

void criterion3() {
    // single instrumented run for the profile, bounds and mass error
    Config cfg = baseConfig(
        "case = sod\nnx = 100\nnv = 80\nvmax = 20\ncfl = 0.5\ntf = 0.17\nscheme = muscl2\n"
        "tableau = ars222\nmood = on\n");
    Simulation sim(cfg);
    const double mass0 = sim.totals().mass;
    double massErrMax = 0.0;
    const long steps = sim.stepsPlanned();
    for (long s = 0; s < steps; ++s) {
        sim.stepOnce();
        massErrMax =
            std::max(massErrMax, 100.0 * std::abs(sim.totals().mass - mass0) / mass0);
    }
    const Snapshot snap = sim.makeSnapshot();

    const double rs = 208.0;
    const RiemannState l{1e-3, 0.0, 1e-3 * rs * 8.012e-3};
    const RiemannState r{1.25e-4, 0.0, 1.25e-4 * rs * 6.41e-3};
    std::vector<double> xs(500);
    for (int i = 0; i < 500; ++i) xs[i] = i / 499.0;
    const auto exact = riemannProfile(l, r, 5.0 / 3.0, snap.time, 0.5, xs);
    const Eigen::ArrayXd rhoh = auditInterpolate(snap, snap.rho, xs, {});
    double num = 0.0, den = 0.0;
    for (int i = 0; i < 500; ++i) {
        num += std::abs(rhoh[i] - exact[i].rho);
        den += std::abs(exact[i].rho);
    }
    const double l1 = num / den;
    const double rhoMin = snap.rho.minCoeff();
    const double rhoMax = snap.rho.maxCoeff();
    const bool bounds = rhoMin >= 0.95 * 1.25e-4 && rhoMax <= 1.05 * 1e-3;

    // mass error decreases under refinement
    std::vector<double> massErrs;
    for (int nx : {80, 160, 320}) {
        Config c2 = cfg;
        c2.set("nx", std::to_string(nx));
        Simulation s2(c2);
        const double m0 = s2.totals().mass;
        for (long s = 0; s < s2.stepsPlanned(); ++s) s2.stepOnce();
        massErrs.push_back(100.0 * std::abs(s2.totals().mass - m0) / m0);
    }
    const bool massDec = massErrs[0] < 2.0 && massErrs[1] < massErrs[0] &&
                         massErrs[2] < massErrs[1];

    const bool pass = l1 <= 0.05 && bounds && massErrMax < 2.0 && massDec;
    report(3, pass,
           fmt("Sod: L1(rho) %.3f (<= 0.05); rho in [%.3e, %.3e] within bounds %s; "
               "mass err max %.2f%% (< 2%%); refinement errs %.3f/%.3f/%.3f%% decreasing %s",
               l1, rhoMin, rhoMax, bounds ? "yes" : "NO", massErrMax, massErrs[0], massErrs[1],
               massErrs[2], massDec ? "yes" : "NO"));
}

void criterion4() {
    auto plateEnd = [](const char* scheme) {
        Config cfg = baseConfig(std::string("case = plate\nnx = 54\nnv = 20\nvmax = 1400\n"
                                            "cfl = 0.5\ntf = 0.2\ntableau = ars222\nmood = "
                                            "on\nscheme = ") +
                                scheme + "\n");
        Simulation sim(cfg);
        for (long s = 0; s < sim.stepsPlanned(); ++s) sim.stepOnce();
        return sim.stepper().bodies()[0].state.Xc.x();
    };
    const double x2 = plateEnd("muscl2");
    const double x1 = plateEnd("upwind1");
    const double dev2 = std::abs(x2 + 0.1);
    const double dev1 = std::abs(x1 + 0.1);
    const bool pass = dev2 <= 0.005 && dev1 > dev2;
    report(4, pass,
           fmt("plate at tf: muscl2 x = %.5f (|dev| %.4f <= 0.005), upwind1 x = %.5f "
               "(|dev| %.4f > muscl2 dev %s)",
               x2, dev2, x1, dev1, dev1 > dev2 ? "yes" : "NO"));
}

// ---- criterion 5: property suite ----

bool prop_implicit_relaxation(std::string& msg) {
    GasParameters gas;
    gas.tau = 1.0;
    VelocityGrid vg(1, 48, 11.0);
    ChuField gbar(vg.count(), 1), out;
    Moments m;
    m.rho = 1.3;
    m.U.x = 0.2;
    m.T = 1.1;
    maxwellian1d(m, gas, vg, gbar.g1.col(0), gbar.g2.col(0));
    auto close = [&](const ChuField& in, double dt, double ass, ChuField& o) {
        o = in;
        Eigen::ArrayXd G1(vg.count()), G2(vg.count());
        const Moments mm = momentsFromField(in, vg, gas, 0);
        maxwellian(mm, gas, vg, G1, G2);
        o.g1.col(0) = (gas.tau * in.g1.col(0) + dt * ass * G1) / (gas.tau + dt * ass);
        o.g2.col(0) = (gas.tau * in.g2.col(0) + dt * ass * G2) / (gas.tau + dt * ass);
    };
    close(gbar, 1.0, 0.5, out);
    const double eFixed = (out.g1.col(0) - gbar.g1.col(0)).abs().maxCoeff() /
                          gbar.g1.col(0).maxCoeff();

    ChuField pert = gbar;
    pert.g1.col(0) *= (1.0 + 0.2 * (vg.v1() / 11.0).square());
    pert.g2.col(0) *= 0.9;
    close(pert, 1e-9, 1.0, out);
    const double eFree = (out.g1.col(0) - pert.g1.col(0)).abs().maxCoeff() /
                         pert.g1.col(0).abs().maxCoeff();
    close(pert, 1e9, 1.0, out);
    Eigen::ArrayXd G1(vg.count()), G2(vg.count());
    maxwellian(momentsFromField(pert, vg, gas, 0), gas, vg, G1, G2);
    const double eProj = (out.g1.col(0) - G1).abs().maxCoeff() / G1.maxCoeff();
    msg = fmt("(a) relaxation fixed point %.1e, limits %.1e/%.1e (<= 1e-8)", eFixed, eFree,
              eProj);
    return eFixed <= 1e-8 && eFree <= 1e-8 && eProj <= 1e-8;
}

bool prop_wall_flux(std::string& msg) {
    Config cfg = baseConfig(
        "case = convergence1d\nnx = 30\nnv = 24\nvmax = 8\ntau = 1e-3\ntf = 0\nscheme = "
        "muscl2\ntableau = ars222\n");
    Simulation sim(cfg);
    Moments m;
    m.rho = 1.0;
    m.T = 1.0;
    for (int i = 0; i < sim.cloud().size(); ++i)
        maxwellian1d(m, sim.gas(), sim.grid(), sim.field().g1.col(i), sim.field().g2.col(i));
    const double dt = 0.5 * sim.stepper().firstOrderBound();
    double worst = 0.0;
    for (int s = 0; s < 100; ++s)
        worst = std::max(worst, sim.stepper().step(dt).wallResidualMax);
    msg = fmt("(b) wall flux residual %.1e (<= 1e-10) over 100 steps", worst);
    return worst <= 1e-10;
}

bool prop_sod_dmp(std::string& msg) {
    Config cfg = baseConfig(
        "case = sod\nnx = 100\nnv = 80\nvmax = 20\ncfl = 0.5\ntf = 0.05\nscheme = muscl2\n"
        "tableau = ars222\nmood = on\n");
    Simulation sim(cfg);
    MoodStats total;
    for (long s = 0; s < sim.stepsPlanned(); ++s) total += sim.stepOnce().mood;
    const bool classified = total.dmpFail == total.u2Accept + total.fallback;
    msg = fmt("(c) Sod MOOD: %ld DMP failures = %ld u2-accepted + %ld repaired; repaired "
              "values outside stencil bounds: %ld (= 0)",
              total.dmpFail, total.u2Accept, total.fallback, total.fallbackDmpViolations);
    return classified && total.fallbackDmpViolations == 0 && total.fallback > 0;
}

bool prop_voxel(std::string& msg) {
    int bad = 0;
    for (unsigned seed = 0; seed < 50; ++seed) {
        PointCloud cloud(2, 0.1, CloudParams::defaults2d());
        cloud.setBounds(0.0, 1.0, 0.0, 1.0);
        cloud.setPeriodic(seed % 2 == 0);
        std::mt19937 rng(9000 + seed);
        std::uniform_real_distribution<double> pos(0.0, 1.0);
        for (int i = 0; i < 200; ++i) cloud.appendPoint(pos(rng), pos(rng), Role::Interior);
        cloud.rebuildNeighbors();
        const StencilTable slow = cloud.bruteForceStencils();
        if (cloud.stencils().start != slow.start || cloud.stencils().nbr != slow.nbr) ++bad;
    }
    msg = fmt("(d) voxel search == brute force on 50 random clouds (%d mismatches)", bad);
    return bad == 0;
}

bool prop_mls(std::string& msg) {
    // polynomial reproduction at 1e-10 on jittered stencils
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> jit(-0.1, 0.1);
    double worst = 0.0;
    {
        std::vector<double> xs = {0.1};
        for (int j = -4; j <= 4; ++j)
            if (j != 0) xs.push_back(0.1 + 0.25 * j + 0.05 * jit(rng));
        StencilTable st;
        st.start = {0, static_cast<int>(xs.size()) - 1};
        for (std::size_t j = 1; j < xs.size(); ++j) {
            st.nbr.push_back(static_cast<int>(j));
            st.dx.push_back(xs[j] - xs[0]);
            st.dy.push_back(0.0);
        }
        for (int order : {3, 5}) {
            MlsCoeffs1d c;
            buildMls1d(st, 1.0, order, c);
            double d1 = 0.0, d2 = 0.0;
            for (int e = 0; e < st.nnz(); ++e) {
                const double du = xs[st.nbr[e]] * xs[st.nbr[e]] - xs[0] * xs[0];
                d1 += c.alpha[e] * du;
                d2 += c.beta[e] * du;
            }
            worst = std::max({worst, std::abs(d1 - 2.0 * xs[0]), std::abs(d2 - 2.0) / 2.0});
        }
    }
    {
        std::vector<double> xs = {0.0}, ys = {0.0};
        for (int a = -2; a <= 2; ++a)
            for (int b = -2; b <= 2; ++b) {
                if (a == 0 && b == 0) continue;
                xs.push_back(0.3 * a + 0.05 * jit(rng));
                ys.push_back(0.3 * b + 0.05 * jit(rng));
            }
        StencilTable st;
        st.start = {0, static_cast<int>(xs.size()) - 1};
        for (std::size_t j = 1; j < xs.size(); ++j) {
            st.nbr.push_back(static_cast<int>(j));
            st.dx.push_back(xs[j]);
            st.dy.push_back(ys[j]);
        }
        MlsCoeffs2d c;
        buildMls2d(st, 0.8, c);
        auto fun = [&](const Eigen::ArrayXd& coef, auto field) {
            double acc = 0.0;
            for (int e = 0; e < st.nnz(); ++e)
                acc += coef[e] * (field(xs[st.nbr[e]], ys[st.nbr[e]]) - field(0.0, 0.0));
            return acc;
        };
        worst = std::max(worst,
                         std::abs(fun(c.xi, [](double x, double) { return x; }) - 1.0));
        worst = std::max(
            worst, std::abs(fun(c.gxy, [](double x, double y) { return x * y; }) - 1.0));
        worst = std::max(
            worst, std::abs(fun(c.eta, [](double x, double) { return x * x; }) - 2.0) / 2.0);
    }
    msg = fmt("(e) MLS polynomial reproduction worst deviation %.1e (<= 1e-10)", worst);
    return worst <= 1e-10;
}

bool prop_equilibrium(std::string& msg) {
    // 1D and 2D global equilibrium over 10 steps
    double worst = 0.0;
    {
        Config cfg = baseConfig("case = convergence1d\nnx = 40\nnv = 40\nvmax = 8\ntau = "
                                "1e-3\ntf = 0\nscheme = muscl2\n");
        Simulation sim(cfg);
        Moments m;
        m.rho = 1.0;
        m.T = 1.0;
        for (int i = 0; i < sim.cloud().size(); ++i)
            maxwellian1d(m, sim.gas(), sim.grid(), sim.field().g1.col(i),
                         sim.field().g2.col(i));
        ChuField ref = sim.field();
        const double dt = 0.5 * sim.stepper().firstOrderBound();
        for (int s = 0; s < 10; ++s) sim.stepper().step(dt);
        worst = std::max(worst,
                         (sim.field().g1 - ref.g1).abs().maxCoeff() / ref.g1.maxCoeff());
    }
    {
        // nv keeps the DVM aliasing defect of the equilibrium fixed point
        // below the asserted tolerance
        Config cfg = baseConfig(
            "case = convergence2d\nnx = 15\nnv = 24\nvmax = 8\ntau = 1e-3\ntf = 0\nscheme = "
            "muscl2\n");
        Simulation sim(cfg);
        Moments m;
        m.rho = 1.0;
        m.T = 1.0;
        for (int i = 0; i < sim.cloud().size(); ++i)
            maxwellian2d(m, sim.gas(), sim.grid(), sim.field().g1.col(i),
                         sim.field().g2.col(i));
        ChuField ref = sim.field();
        for (int s = 0; s < 10; ++s) sim.stepper().step(sim.dt());
        worst = std::max(worst,
                         (sim.field().g1 - ref.g1).abs().maxCoeff() / ref.g1.maxCoeff());
    }
    msg = fmt("(f) global equilibrium drift over 10 steps %.1e (<= 1e-9)", worst);
    return worst <= 1e-9;
}

bool prop_first_order_dmp(std::string& msg) {
    // 100 forward-Euler steps at 0.9 of the bound keep every value inside the
    // previous stencil hull (1D upwind and 2D positive scheme)
    long violations = 0;
    {
        std::mt19937 rng(21);
        std::uniform_real_distribution<double> jit(-0.25, 0.25), val(0.0, 1.0);
        const int n = 40;
        const double L = 4.0, h = L / n;
        std::vector<double> xs;
        for (int i = 0; i < n; ++i) xs.push_back(i * h + h * jit(rng));
        StencilTable st;
        st.start.assign(n + 1, 0);
        std::vector<std::vector<std::pair<int, double>>> nb(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                double d = xs[j] - xs[i];
                d -= L * std::round(d / L);
                if (std::abs(d) < 4.0 * h) nb[i].push_back({j, d});
            }
        for (int i = 0; i < n; ++i)
            st.start[i + 1] = st.start[i] + static_cast<int>(nb[i].size());
        for (int i = 0; i < n; ++i)
            for (auto [j, d] : nb[i]) {
                st.nbr.push_back(j);
                st.dx.push_back(d);
                st.dy.push_back(0.0);
            }
        std::vector<Role> roles(n, Role::Interior);
        VelocityGrid vg(1, 5, 1.5);
        Eigen::ArrayXd u = Eigen::ArrayXd::Zero(n);
        ChuField f(vg.count(), n), out;
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < vg.count(); ++k) {
                f.g1(k, i) = val(rng);
                f.g2(k, i) = val(rng);
            }
        const double dt = 0.9 * cflTimestep1d(st, 4.0 * h, roles, u, vg);
        TransportWorkspace ws;
        for (int s = 0; s < 100; ++s) {
            transportUpwind1d(st, 4.0 * h, roles, u, vg, f, out, ws);
            ChuField prev = f;
            f.g1 -= dt * out.g1;
            f.g2 -= dt * out.g2;
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < vg.count(); ++k) {
                    const double a = vg.v1()[k];
                    double lo = prev.g1(k, i), hi = prev.g1(k, i);
                    for (int e = st.begin(i); e < st.end(i); ++e)
                        if (a * st.dx[e] < 0.0) {
                            lo = std::min(lo, prev.g1(k, st.nbr[e]));
                            hi = std::max(hi, prev.g1(k, st.nbr[e]));
                        }
                    if (f.g1(k, i) < lo - 1e-12 || f.g1(k, i) > hi + 1e-12) ++violations;
                }
        }
    }
    {
        // 2D positive scheme on a jittered periodic cloud
        std::mt19937 rng(31);
        std::uniform_real_distribution<double> jit(-0.2, 0.2), val(0.0, 1.0);
        const int n = 8;
        const double L = 4.0, h = L / n;
        std::vector<double> xs, ys;
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix) {
                xs.push_back(ix * h + h * jit(rng));
                ys.push_back(iy * h + h * jit(rng));
            }
        const int np = n * n;
        StencilTable st;
        st.start.assign(np + 1, 0);
        std::vector<std::vector<std::array<double, 3>>> nb(np);
        for (int i = 0; i < np; ++i)
            for (int j = 0; j < np; ++j) {
                if (i == j) continue;
                double dx = xs[j] - xs[i], dy = ys[j] - ys[i];
                dx -= L * std::round(dx / L);
                dy -= L * std::round(dy / L);
                if (dx * dx + dy * dy < 2.5 * h * 2.5 * h)
                    nb[i].push_back({static_cast<double>(j), dx, dy});
            }
        for (int i = 0; i < np; ++i)
            st.start[i + 1] = st.start[i] + static_cast<int>(nb[i].size());
        for (int i = 0; i < np; ++i)
            for (auto& a : nb[i]) {
                st.nbr.push_back(static_cast<int>(a[0]));
                st.dx.push_back(a[1]);
                st.dy.push_back(a[2]);
            }
        MlsCoeffs2d c;
        buildMls2d(st, 2.5 * h, c);
        VelocityGrid vg(2, 3, 1.2);
        Eigen::ArrayXd u1 = Eigen::ArrayXd::Zero(np), u2 = u1;
        ChuField f(vg.count(), np), out;
        for (int i = 0; i < np; ++i)
            for (int k = 0; k < vg.count(); ++k) {
                f.g1(k, i) = val(rng);
                f.g2(k, i) = val(rng);
            }
        const double dt = 0.9 * cflTimestep2d(st, c, u1, u2, vg);
        for (int s = 0; s < 100; ++s) {
            transportPositive2d(st, c, u1, u2, vg, f, out);
            ChuField prev = f;
            f.g1 -= dt * out.g1;
            f.g2 -= dt * out.g2;
            for (int i = 0; i < np; ++i) {
                double lo = prev.g1.col(i).minCoeff(), hi = prev.g1.col(i).maxCoeff();
                for (int e = st.begin(i); e < st.end(i); ++e) {
                    lo = std::min(lo, prev.g1.col(st.nbr[e]).minCoeff());
                    hi = std::max(hi, prev.g1.col(st.nbr[e]).maxCoeff());
                }
                if (f.g1.col(i).minCoeff() < lo - 1e-12 ||
                    f.g1.col(i).maxCoeff() > hi + 1e-12)
                    ++violations;
            }
        }
    }
    msg = fmt("(g) first-order DMP violations over 100-step runs: %ld (= 0)", violations);
    return violations == 0;
}

void criterion5() {
    std::string m1, m2, m3, m4, m5, m6, m7;
    const bool a = prop_implicit_relaxation(m1);
    const bool b = prop_wall_flux(m2);
    const bool c = prop_sod_dmp(m3);
    const bool d = prop_voxel(m4);
    const bool e = prop_mls(m5);
    const bool f = prop_equilibrium(m6);
    const bool g = prop_first_order_dmp(m7);
    const bool pass = a && b && c && d && e && f && g;
    report(5, pass,
           m1 + "; " + m2 + "; " + m3 + "; " + m4 + "; " + m5 + "; " + m6 + "; " + m7);
}

void criterion6() {
    const std::string common =
        "case = cavity\nnx = 60\nnv = 20\nvmax = 1500\ncfl = 0.45\ntf = 2e-8\n"
        "tableau = ars222\ncfl_recheck_every = 50\n";
    Config cfgHi = baseConfig(common + "scheme = muscl2\nmood = on\n");
    Config cfgLo = baseConfig(common + "scheme = positive1\n");
    const Snapshot hi = runCached(cfgHi, gCache);
    const Snapshot lo = runCached(cfgLo, gCache);

    // centerline U_x along x = L/2
    const double L = 1e-6;
    std::vector<double> ax(41), ay(41);
    for (int q = 0; q < 41; ++q) {
        ax[q] = 0.5 * L;
        ay[q] = q * L / 40.0;
    }
    const Eigen::ArrayXd uHi = auditInterpolate(hi, hi.u1, ax, ay);
    const Eigen::ArrayXd uLo = auditInterpolate(lo, lo.u1, ax, ay);
    const double maxDiff = (uHi - uLo).abs().maxCoeff();
    const bool agree = maxDiff <= 0.1 * 10.0;

    // shear layer and cavity-with-body complete deterministically and emit
    // vorticity / trajectory artifacts (desk horizons)
    namespace fs = std::filesystem;
    bool shearOk = false, bodyOk = false, determinism = false;
    {
        Config sc = Config::fromFile(std::string(SRC_CONFIG_DIR) + "/shear.cfg");
        sc.set("tf", "0.0588085");  // 50 steps at the tabulated dt
        sc.set("snapshot_every", "0");
        Simulation sim(sc);
        sim.run(gCache + "/shear_run");
        const Snapshot s = readSnapshot(gCache + "/shear_run/snapshot_final.dat");
        shearOk = s.vort.size() == s.size() && s.vort.abs().maxCoeff() > 0.1 &&
                  s.vort.isFinite().all();
    }
    {
        Config bc = Config::fromFile(std::string(SRC_CONFIG_DIR) + "/cavity_body.cfg");
        bc.set("tf", "5e-10");  // 100 steps
        bc.set("snapshot_every", "0");
        Simulation sim(bc);
        sim.run(gCache + "/cavity_body_run");
        bodyOk = fs::exists(gCache + "/cavity_body_run/body.dat");
        if (bodyOk) {
            const RigidBodyState& st = sim.stepper().bodies()[0].state;
            bodyOk = std::isfinite(st.Xc.x()) && std::isfinite(st.V.x()) &&
                     std::isfinite(st.omega.z());
        }
    }
    {
        auto runTwice = [&](const char* dir) {
            Config sc = Config::fromFile(std::string(SRC_CONFIG_DIR) + "/shear.cfg");
            sc.set("nx", "24");
            sc.set("nv", "12");
            sc.set("tf", "0.0235234");  // 20 steps
            sc.set("snapshot_every", "0");
            Simulation sim(sc);
            sim.run(gCache + dir);
            std::ifstream f(gCache + dir + "/diagnostics.dat");
            std::stringstream ss;
            ss << f.rdbuf();
            return ss.str();
        };
        determinism = runTwice("/det_a") == runTwice("/det_b");
    }

    const bool pass = agree && shearOk && bodyOk && determinism;
    report(6, pass,
           fmt("cavity centerline max |U_x(muscl2) - U_x(positive1)| = %.3f m/s (<= 1.0); "
               "shear vorticity artifact %s; body trajectory artifact %s; determinism %s",
               maxDiff, shearOk ? "ok" : "MISSING", bodyOk ? "ok" : "MISSING",
               determinism ? "ok" : "BROKEN"));
}

}  // namespace

int main(int argc, char** argv) {
    std::string which = "all";
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--cache") == 0 && i + 1 < argc) {
            gCache = argv[++i];
        } else {
            which = argv[i];
        }
    }
    std::filesystem::create_directories(gCache);

    auto want = [&](int c) { return which == "all" || which == std::to_string(c); };
    try {
        if (want(1)) criterion1();
        if (want(2)) criterion2();
        if (want(3)) criterion3();
        if (want(4)) criterion4();
        if (want(5)) criterion5();
        if (want(6)) criterion6();
    } catch (const std::exception& e) {
        std::printf("[FAIL] exception: %s\n", e.what());
        return 2;
    }
    return gFailures == 0 ? 0 : 1;
}
