#pragma once

#include <vector>

#include "mbgk/types.hpp"

namespace mbgk {

/// Primitive gas state for the Riemann problem.
struct RiemannState {
    double rho;
    double u;
    double p;
};

struct RiemannSolution {
    double pStar;
    double uStar;
};

/// Exact solution of the 1D Euler Riemann problem for a gamma-law gas
/// (Newton iteration on the pressure function). Throws ConfigError for
/// non-positive states and on vacuum formation.
RiemannSolution solveRiemann(const RiemannState& left, const RiemannState& right, double gamma);

/// Sample the self-similar solution at xi = (x - x0)/t.
RiemannState sampleRiemann(const RiemannState& left, const RiemannState& right, double gamma,
                           const RiemannSolution& sol, double xi);

/// Convenience: profiles on a grid at time t with the discontinuity at x0.
/// At t = 0 the sampling degenerates to the initial states.
std::vector<RiemannState> riemannProfile(const RiemannState& left, const RiemannState& right,
                                         double gamma, double t, double x0,
                                         const std::vector<double>& xs);

}  // namespace mbgk
