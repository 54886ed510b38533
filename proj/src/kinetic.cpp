#include "mbgk/kinetic.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace mbgk {

namespace {

void checkAdmissible(double rho, double T, long point, const char* where) {
    if (!(rho > 0.0) || !std::isfinite(rho))
        throw AdmissibilityError(std::string(where) + ": non-positive density " +
                                     std::to_string(rho) + " at point " + std::to_string(point),
                                 point, rho, T);
    if (!(T > 0.0) || !std::isfinite(T))
        throw AdmissibilityError(std::string(where) + ": non-positive temperature " +
                                     std::to_string(T) + " at point " + std::to_string(point),
                                 point, rho, T);
}

}  // namespace

void maxwellian1d(const Moments& m, const GasParameters& gas, const VelocityGrid& grid,
                  Eigen::Ref<Eigen::ArrayXd> G1, Eigen::Ref<Eigen::ArrayXd> G2, long point) {
    checkAdmissible(m.rho, m.T, point, "maxwellian1d");
    const double rt = gas.rs * m.T;
    const double norm = m.rho / std::sqrt(2.0 * std::numbers::pi * rt);
    G1 = norm * (-(grid.v1() - m.U.x).square() / (2.0 * rt)).exp();
    G2 = (2.0 * rt) * G1;
}

void maxwellian2d(const Moments& m, const GasParameters& gas, const VelocityGrid& grid,
                  Eigen::Ref<Eigen::ArrayXd> G1, Eigen::Ref<Eigen::ArrayXd> G2, long point) {
    checkAdmissible(m.rho, m.T, point, "maxwellian2d");
    const double rt = gas.rs * m.T;
    const double norm = m.rho / (2.0 * std::numbers::pi * rt);
    G1 = norm *
         (-((grid.v1() - m.U.x).square() + (grid.v2() - m.U.y).square()) / (2.0 * rt)).exp();
    G2 = rt * G1;
}

void maxwellian(const Moments& m, const GasParameters& gas, const VelocityGrid& grid,
                Eigen::Ref<Eigen::ArrayXd> G1, Eigen::Ref<Eigen::ArrayXd> G2, long point) {
    if (grid.dim() == 1)
        maxwellian1d(m, gas, grid, G1, G2, point);
    else
        maxwellian2d(m, gas, grid, G1, G2, point);
}

static Moments momentsImpl(const ChuField& f, const VelocityGrid& grid,
                           const GasParameters& gas, int point, bool check) {
    const double w = grid.weight();
    const auto g1 = f.g1.col(point);
    const auto g2 = f.g2.col(point);

    Moments m;
    m.rho = w * g1.sum();
    double mom1 = w * (grid.v1() * g1).sum();
    double mom2 = 0.0;
    if (grid.dim() == 2) mom2 = w * (grid.v2() * g1).sum();
    m.E = 0.5 * w * ((grid.vsq() * g1).sum() + g2.sum());

    if (check && (!(m.rho > 0.0) || !std::isfinite(m.rho)))
        throw AdmissibilityError("moments: non-positive density " + std::to_string(m.rho) +
                                     " at point " + std::to_string(point),
                                 point, m.rho, 0.0);

    m.U.x = mom1 / m.rho;
    m.U.y = mom2 / m.rho;
    const double usq = m.U.x * m.U.x + m.U.y * m.U.y;
    // 3 rho rs T = 2E - rho |U|^2 (g2 carries the out-of-plane energy)
    m.T = (2.0 * m.E - m.rho * usq) / (3.0 * m.rho * gas.rs);

    if (check && (!(m.T > 0.0) || !std::isfinite(m.T)))
        throw AdmissibilityError("moments: non-positive temperature " + std::to_string(m.T) +
                                     " at point " + std::to_string(point),
                                 point, m.rho, m.T);
    return m;
}

Moments momentsFromField(const ChuField& f, const VelocityGrid& grid, const GasParameters& gas,
                         int point) {
    return momentsImpl(f, grid, gas, point, true);
}

Moments momentsFromFieldUnchecked(const ChuField& f, const VelocityGrid& grid,
                                  const GasParameters& gas, int point) {
    return momentsImpl(f, grid, gas, point, false);
}

void momentsAll(const ChuField& f, const VelocityGrid& grid, const GasParameters& gas,
                MomentField& out) {
    const int n = f.points();
    out.resize(n);
    for (int i = 0; i < n; ++i) {
        Moments m = momentsImpl(f, grid, gas, i, true);
        out.rho[i] = m.rho;
        out.u1[i] = m.U.x;
        out.u2[i] = m.U.y;
        out.T[i] = m.T;
        out.E[i] = m.E;
    }
}

}  // namespace mbgk
