#pragma once

#include <vector>

#include <Eigen/Core>

#include "mbgk/kinetic.hpp"
#include "mbgk/mls.hpp"
#include "mbgk/stencil.hpp"
#include "mbgk/types.hpp"
#include "mbgk/velocity_grid.hpp"

namespace mbgk {

enum class SchemeKind { Upwind1, Positive1, Muscl2, Muscl4 };

SchemeKind schemeFromName(const std::string& name);
const char* schemeName(SchemeKind k);
bool schemeIsFirstOrder(SchemeKind k);

/// Scratch buffers reused across transport evaluations. Velocity nodes are
/// processed in chunks so the per-point derivative tables stay bounded for
/// large clouds.
struct TransportWorkspace {
    Eigen::ArrayXXd d1[2], d2[2], d3[2], d4[2];  // 1D derivative tables per field
    Eigen::ArrayXXd dx[2], dy[2], dxx[2], dyy[2], dxy[2];  // 2D
    Eigen::ArrayXd accL, accR, sumL, sumR;
    int chunkFor(long points, long nodes, int nDerivs) const;
};

/// All transport routines return the ALE advection term
///   transp(g)(i,k) ~= (v_k - U_ALE,i) . grad g
/// so a forward Euler update reads g - dt * transp(g).
///
/// u1/u2 hold the per-point grid velocity U_ALE (u2 ignored in 1D).
/// Boundary points with an empty upwind set contribute zero (their incoming
/// half is rewritten by the wall procedure); the same situation at an
/// interior point raises StencilDegeneracyError.

void transportUpwind1d(const StencilTable& st, double hmax, const std::vector<Role>& roles,
                       const Eigen::ArrayXd& u1, const VelocityGrid& vg, const ChuField& f,
                       ChuField& out, TransportWorkspace& ws);

void transportPositive2d(const StencilTable& st, const MlsCoeffs2d& c,
                         const Eigen::ArrayXd& u1, const Eigen::ArrayXd& u2,
                         const VelocityGrid& vg, const ChuField& f, ChuField& out);

void transportMuscl1d(const StencilTable& st, const MlsCoeffs1d& c, int order,
                      const Eigen::ArrayXd& u1, const VelocityGrid& vg, const ChuField& f,
                      ChuField& out, TransportWorkspace& ws);

void transportMuscl2d(const StencilTable& st, const EdgeList& edges, const MlsCoeffs2d& c,
                      const Eigen::ArrayXd& u1, const Eigen::ArrayXd& u2,
                      const VelocityGrid& vg, const ChuField& f, ChuField& out,
                      TransportWorkspace& ws);

/// Pointwise first-order recompute used by the MOOD fallback: value of
/// transp at a single (point, node).
double upwind1dAt(const StencilTable& st, double hmax, const std::vector<Role>& roles,
                  const Eigen::ArrayXd& u1, const VelocityGrid& vg,
                  const Eigen::ArrayXXd& g, int i, int k);

double positive2dAt(const StencilTable& st, const MlsCoeffs2d& c, const Eigen::ArrayXd& u1,
                    const Eigen::ArrayXd& u2, const VelocityGrid& vg, const Eigen::ArrayXXd& g,
                    int i, int k);

/// Generalized CFL bound of the first-order 1D upwind scheme,
/// dt_max = min over (i,k) of sum w dx^2 / |a sum w dx| over the upwind set.
double cflTimestep1d(const StencilTable& st, double hmax, const std::vector<Role>& roles,
                     const Eigen::ArrayXd& u1, const VelocityGrid& vg);

/// Positive-scheme bound, dt_max = min over (i,k) of 1 / sum_j c_ij.
double cflTimestep2d(const StencilTable& st, const MlsCoeffs2d& c, const Eigen::ArrayXd& u1,
                     const Eigen::ArrayXd& u2, const VelocityGrid& vg);

}  // namespace mbgk
