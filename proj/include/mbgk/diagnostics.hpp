#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "mbgk/kinetic.hpp"
#include "mbgk/point_cloud.hpp"

namespace mbgk {

/// Per-point macroscopic snapshot of a run (what the snapshot files hold).
struct Snapshot {
    int dim = 1;
    double time = 0.0;
    std::vector<double> x, y;
    Eigen::ArrayXd rho, u1, u2, T;
    std::vector<int> role;
    Eigen::ArrayXd vort;  // 2D only; empty otherwise

    int size() const { return static_cast<int>(x.size()); }
};

struct Totals {
    double mass = 0.0;
    double mom1 = 0.0;
    double mom2 = 0.0;
    double energy = 0.0;
};

/// 17-significant-digit formatting used for every floating-point artifact.
std::string fmt17(double v);

void writeSnapshot(const std::string& path, const Snapshot& s);
Snapshot readSnapshot(const std::string& path);

/// Integrated (mass, momentum, energy): trapezoid over the sorted points in
/// 1D, background-cell means in 2D.
Totals cloudTotals(const PointCloud& cloud, const MomentField& mom);

/// Interpolate a per-point scalar onto audit positions with a local MLS
/// polynomial fit: order 5 basis in 1D (quintic-spline-equivalent accuracy),
/// order 4 (cubic) in 2D. Audit nodes outside the cloud hull raise an error.
Eigen::ArrayXd auditInterpolate(const Snapshot& s, const Eigen::ArrayXd& values,
                                const std::vector<double>& ax, const std::vector<double>& ay,
                                bool periodic = false, double boxLx = 0.0, double boxLy = 0.0);

/// Relative L1 error of `comp` in {rho, u1, u2, T} between a run snapshot and
/// a reference snapshot, both interpolated to a uniform audit grid with
/// auditN nodes per axis spanning [xlo, xhi] (x [ylo, yhi]).
double l1ErrorVsReference(const Snapshot& run, const Snapshot& ref, const std::string& comp,
                          int auditN, double xlo, double xhi, double ylo = 0.0, double yhi = 0.0,
                          bool periodic = false);

/// Least-squares slope of log(err) against log(1/nx): the observed order.
double fitOrder(const std::vector<int>& nx, const std::vector<double>& err);

}  // namespace mbgk
