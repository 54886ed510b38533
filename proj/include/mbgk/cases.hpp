#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mbgk/config.hpp"
#include "mbgk/diagnostics.hpp"
#include "mbgk/stepper.hpp"

namespace mbgk {

struct CaseDomain {
    double xlo = 0.0, xhi = 1.0, ylo = 0.0, yhi = 1.0;
    bool periodic = false;
};

/// A fully initialized experiment: cloud, reduced field, velocity grid and
/// stepper, built from a case name and its parameters.
/// Cases: convergence1d, convergence2d, sod, plate, cavity, shear.
class Simulation {
public:
    explicit Simulation(const Config& cfg);

    Stepper& stepper() { return *stepper_; }
    PointCloud& cloud() { return *cloud_; }
    const PointCloud& cloud() const { return *cloud_; }
    ChuField& field() { return field_; }
    const VelocityGrid& grid() const { return *vg_; }
    const GasParameters& gas() const { return gas_; }
    const CaseDomain& domain() const { return dom_; }
    const Config& config() const { return cfg_; }
    const std::string& caseName() const { return caseName_; }

    double dt() const { return dt_; }
    double tf() const { return tf_; }
    double time() const { return time_; }
    long stepsPlanned() const;

    StepStats stepOnce();
    const StepStats& lastStats() const { return last_; }

    Snapshot makeSnapshot() const;
    Totals totals() const;

    /// Full driver: steps to tf, writing snapshots, a diagnostics time
    /// series, rigid-body trajectories and a key=value summary.
    void run(const std::string& outDir);

private:
    void build();
    void initConvergence1d();
    void initConvergence2d();
    void initSod();
    void initPlate();
    void initCavity();
    void initShear();
    double timestepFromConfig() const;

    Config cfg_;
    std::string caseName_;
    CaseDomain dom_;
    GasParameters gas_;
    std::unique_ptr<VelocityGrid> vg_;
    std::unique_ptr<PointCloud> cloud_;
    ChuField field_;
    std::unique_ptr<Stepper> stepper_;
    double dt_ = 0.0, tf_ = 0.0, time_ = 0.0;
    double mass0_ = 0.0;
    StepStats last_;
    long cflWarnings_ = 0;
};

/// Domain bounds of a case without building it.
CaseDomain caseDomainFor(const Config& cfg);

/// Deterministic run with snapshot caching: if an identical configuration was
/// run before (same fingerprint), the cached final snapshot is returned.
Snapshot runCached(const Config& cfg, const std::string& cacheDir);

struct ConvergenceRow {
    int nx = 0;
    double errRho = 0.0, errU = 0.0, errT = 0.0;
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    double orderRho = 0.0, orderU = 0.0, orderT = 0.0;
};

/// Error sweep against an nxRef self-reference (cached), errors measured on a
/// uniform audit grid.
ConvergenceTable runConvergence(const Config& base, const std::vector<int>& nxs, int nxRef,
                                const std::string& cacheDir, int auditN);

}  // namespace mbgk
