#include "mbgk/mood.hpp"

#include <algorithm>
#include <cmath>

#include "mbgk/transport.hpp"

namespace mbgk {

bool dmpPass(double lo, double hi, double candidate) {
    return candidate >= lo && candidate <= hi;
}

bool u2Accept(double stencilRange, const CurvatureIndicators& ind, double delta, int dim) {
    if (std::abs(stencilRange) < delta) return true;  // flat region
    const bool signX = ind.xmin * ind.xmax > -delta;
    const bool ratioX = (ind.xtmax < delta) || (ind.xtmin / ind.xtmax >= 0.5);
    if (dim == 1) return signX && ratioX;
    const bool signY = ind.ymin * ind.ymax > -delta;
    const bool ratioY = (ind.ytmax < delta) || (ind.ytmin / ind.ytmax >= 0.5);
    return signX && ratioX && signY && ratioY;
}

namespace {

// MLS curvature of the previous-stage field at one (point, node).
double curvature(const Eigen::ArrayXXd& g, const StencilTable& st, const Eigen::ArrayXd& coef,
                 int i, int k) {
    double acc = 0.0;
    const double gi = g(k, i);
    for (int e = st.begin(i); e < st.end(i); ++e) acc += coef[e] * (g(k, st.nbr[e]) - gi);
    return acc;
}

CurvatureIndicators indicatorsAt(const Eigen::ArrayXXd& g, const MoodContext& cx, int i, int k) {
    const StencilTable& st = *cx.st;
    CurvatureIndicators ind;
    if (cx.dim == 1) {
        double c0 = curvature(g, st, cx.c1->beta, i, k);
        ind.xmin = ind.xmax = c0;
        ind.xtmin = ind.xtmax = std::abs(c0);
        for (int e = st.begin(i); e < st.end(i); ++e) {
            const double cj = curvature(g, st, cx.c1->beta, st.nbr[e], k);
            ind.xmin = std::min(ind.xmin, cj);
            ind.xmax = std::max(ind.xmax, cj);
            ind.xtmin = std::min(ind.xtmin, std::abs(cj));
            ind.xtmax = std::max(ind.xtmax, std::abs(cj));
        }
    } else {
        double cx0 = curvature(g, st, cx.c2->eta, i, k);
        double cy0 = curvature(g, st, cx.c2->nu, i, k);
        ind.xmin = ind.xmax = cx0;
        ind.xtmin = ind.xtmax = std::abs(cx0);
        ind.ymin = ind.ymax = cy0;
        ind.ytmin = ind.ytmax = std::abs(cy0);
        for (int e = st.begin(i); e < st.end(i); ++e) {
            const int j = st.nbr[e];
            const double cxj = curvature(g, st, cx.c2->eta, j, k);
            const double cyj = curvature(g, st, cx.c2->nu, j, k);
            ind.xmin = std::min(ind.xmin, cxj);
            ind.xmax = std::max(ind.xmax, cxj);
            ind.xtmin = std::min(ind.xtmin, std::abs(cxj));
            ind.xtmax = std::max(ind.xtmax, std::abs(cxj));
            ind.ymin = std::min(ind.ymin, cyj);
            ind.ymax = std::max(ind.ymax, cyj);
            ind.ytmin = std::min(ind.ytmin, std::abs(cyj));
            ind.ytmax = std::max(ind.ytmax, std::abs(cyj));
        }
    }
    return ind;
}

void repairComponent(Eigen::ArrayXXd& cand, const Eigen::ArrayXXd& prev, const MoodContext& cx,
                     const MoodConfig& cfg, double dtEff, MoodStats& stats) {
    const StencilTable& st = *cx.st;
    const int np = st.points();
    const int nn = static_cast<int>(cand.rows());
    Eigen::ArrayXd lo(nn), hi(nn);

    for (int i = 0; i < np; ++i) {
        lo = prev.col(i);
        hi = prev.col(i);
        for (int e = st.begin(i); e < st.end(i); ++e) {
            lo = lo.min(prev.col(st.nbr[e]));
            hi = hi.max(prev.col(st.nbr[e]));
        }
        for (int k = 0; k < nn; ++k) {
            const double val = cand(k, i);
            if (dmpPass(lo[k], hi[k], val)) continue;
            ++stats.dmpFail;
            // flat stencils accept without touching the curvature functionals
            if (hi[k] - lo[k] < cfg.delta) {
                ++stats.u2Accept;
                continue;
            }
            const CurvatureIndicators ind = indicatorsAt(prev, cx, i, k);
            if (u2Accept(hi[k] - lo[k], ind, cfg.delta, cx.dim)) {
                ++stats.u2Accept;
                continue;
            }
            ++stats.fallback;
            const double t1 =
                (cx.dim == 1)
                    ? upwind1dAt(st, cx.hmax, *cx.roles, *cx.u1, *cx.vg, prev, i, k)
                    : positive2dAt(st, *cx.c2, *cx.u1, *cx.u2, *cx.vg, prev, i, k);
            cand(k, i) = prev(k, i) - dtEff * t1;
            // within the first-order CFL bound the repaired value is a convex
            // combination of previous-stage values; audited, not assumed
            const double slack = 1e-12 * (1.0 + std::abs(hi[k]) + std::abs(lo[k]));
            if (cand(k, i) < lo[k] - slack || cand(k, i) > hi[k] + slack)
                ++stats.fallbackDmpViolations;
        }
    }
}

}  // namespace

MoodStats moodApply(ChuField& cand, const ChuField& prev, const MoodContext& cx,
                    const MoodConfig& cfg, double dtEff) {
    MoodStats stats;
    if (!cfg.enabled) return stats;
    repairComponent(cand.g1, prev.g1, cx, cfg, dtEff, stats);
    repairComponent(cand.g2, prev.g2, cx, cfg, dtEff, stats);
    return stats;
}

}  // namespace mbgk
