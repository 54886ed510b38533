#pragma once

#include <vector>

#include <Eigen/Core>

#include "mbgk/kinetic.hpp"
#include "mbgk/mls.hpp"
#include "mbgk/stencil.hpp"
#include "mbgk/types.hpp"
#include "mbgk/velocity_grid.hpp"

namespace mbgk {

struct MoodConfig {
    double delta = 1e-7;  // micro-oscillation floor; defaults 1e-7 (1D), 1e-8 (2D)
    bool enabled = true;

    static MoodConfig defaults(int dim) { return {dim == 1 ? 1e-7 : 1e-8, true}; }
};

struct MoodStats {
    long dmpFail = 0;   // entries exceeding the stencil extrema
    long u2Accept = 0;  // of those, accepted by the u2 relaxation
    long fallback = 0;  // recomputed with the first-order scheme
    long fallbackDmpViolations = 0;  // repaired values still outside the bounds
    void operator+=(const MoodStats& o) {
        dmpFail += o.dmpFail;
        u2Accept += o.u2Accept;
        fallback += o.fallback;
        fallbackDmpViolations += o.fallbackDmpViolations;
    }
};

/// Signed and absolute curvature extrema over a stencil.
struct CurvatureIndicators {
    double xmin = 0, xmax = 0, xtmin = 0, xtmax = 0;
    double ymin = 0, ymax = 0, ytmin = 0, ytmax = 0;  // 2D only
};

/// Discrete maximum property: closed inequality against the previous-stage
/// extrema over {i} union C_i.
bool dmpPass(double lo, double hi, double candidate);

/// u2 relaxation at a DMP failure: accept when the stencil is flat, or when
/// the sign check and the curvature-ratio check hold (both axes in 2D).
bool u2Accept(double stencilRange, const CurvatureIndicators& ind, double delta, int dim);

/// Everything the detector needs about the previous stage.
struct MoodContext {
    const StencilTable* st = nullptr;
    const VelocityGrid* vg = nullptr;
    const std::vector<Role>* roles = nullptr;
    const Eigen::ArrayXd* u1 = nullptr;  // ALE velocity of the previous stage
    const Eigen::ArrayXd* u2 = nullptr;
    const MlsCoeffs1d* c1 = nullptr;     // curvature functionals + 1D fallback
    const MlsCoeffs2d* c2 = nullptr;     // 2D curvature + positive fallback
    double hmax = 0.0;
    int dim = 1;
};

/// Detect-and-repair pass for one IMEX stage: every (point, node) entry of
/// `cand` violating the DMP against `prev` and rejected by u2 is recomputed
/// as prev - dtEff * transp1(prev). Single pass; indicators are not
/// re-evaluated after repair.
MoodStats moodApply(ChuField& cand, const ChuField& prev, const MoodContext& cx,
                    const MoodConfig& cfg, double dtEff);

}  // namespace mbgk
