#pragma once

#include <Eigen/Core>

#include "mbgk/gas.hpp"
#include "mbgk/types.hpp"
#include "mbgk/velocity_grid.hpp"

namespace mbgk {

/// Chu-reduced distribution pair. Column i holds the per-node values of
/// point i (column-major, so one point's nodes are contiguous).
struct ChuField {
    Eigen::ArrayXXd g1;  // reduced density distribution, (nodes x points)
    Eigen::ArrayXXd g2;  // reduced transverse-energy distribution

    ChuField() = default;
    ChuField(int nodes, int points) { resize(nodes, points); }

    void resize(int nodes, int points) {
        g1.resize(nodes, points);
        g2.resize(nodes, points);
    }
    int nodes() const { return static_cast<int>(g1.rows()); }
    int points() const { return static_cast<int>(g1.cols()); }
};

struct Moments {
    double rho = 0.0;  // [kg/m^3]
    Vec2 U;            // mean velocity, y unused in 1D [m/s]
    double T = 0.0;    // [K]
    double E = 0.0;    // total energy density [J/m^3]
};

/// Per-point moment arrays for a whole cloud.
struct MomentField {
    Eigen::ArrayXd rho, u1, u2, T, E;
    void resize(int n) {
        rho.resize(n);
        u1.resize(n);
        u2.resize(n);
        T.resize(n);
        E.resize(n);
    }
    Moments at(int i) const { return {rho[i], {u1[i], u2[i]}, T[i], E[i]}; }
};

/// Reduced 1D Maxwellian pair evaluated at the grid nodes:
/// G1 = rho/sqrt(2 pi rs T) exp(-(v-U)^2/(2 rs T)), G2 = 2 rs T G1.
void maxwellian1d(const Moments& m, const GasParameters& gas, const VelocityGrid& grid,
                  Eigen::Ref<Eigen::ArrayXd> G1, Eigen::Ref<Eigen::ArrayXd> G2,
                  long point = -1);

/// Reduced 2D Maxwellian pair: G1 = rho/(2 pi rs T) exp(-|v-U|^2/(2 rs T)),
/// G2 = rs T G1.
void maxwellian2d(const Moments& m, const GasParameters& gas, const VelocityGrid& grid,
                  Eigen::Ref<Eigen::ArrayXd> G1, Eigen::Ref<Eigen::ArrayXd> G2,
                  long point = -1);

/// Dimension-dispatching variant.
void maxwellian(const Moments& m, const GasParameters& gas, const VelocityGrid& grid,
                Eigen::Ref<Eigen::ArrayXd> G1, Eigen::Ref<Eigen::ArrayXd> G2,
                long point = -1);

/// Midpoint-rule moments of one point's distribution pair.
/// rho = sum w g1, rho U = sum w v g1, E = sum w (|v|^2 g1 + g2)/2,
/// T from E = 3/2 rho rs T + 1/2 rho |U|^2 (transverse energy carried by g2).
Moments momentsFromField(const ChuField& f, const VelocityGrid& grid,
                         const GasParameters& gas, int point);

/// Same, without the admissibility check (returns whatever the quadrature
/// gives; caller decides). Used by diagnostics.
Moments momentsFromFieldUnchecked(const ChuField& f, const VelocityGrid& grid,
                                  const GasParameters& gas, int point);

/// Bulk moments for all points; throws AdmissibilityError naming the first
/// offending point.
void momentsAll(const ChuField& f, const VelocityGrid& grid, const GasParameters& gas,
                MomentField& out);

}  // namespace mbgk
