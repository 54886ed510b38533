#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "mbgk/interpolate.hpp"
#include "mbgk/kinetic.hpp"
#include "mbgk/stencil.hpp"
#include "mbgk/types.hpp"

namespace mbgk {

/// Grid-management parameters in units of the initial spacing dx0.
/// Defaults follow the 1D/2D tables; see cloud construction in the cases.
struct CloudParams {
    double bMinDist;  // merge threshold factor
    double bVoxel;    // background-cell / max-gap factor
    double bRadius;   // stencil radius factor

    static CloudParams defaults1d() { return {0.1, 2.0, 4.0}; }
    static CloudParams defaults2d() { return {0.5, 1.0, 2.5}; }
};

/// Wall data attached to a boundary point. For rigid-surface points the
/// anchor/normal are stored in the body frame and refreshed each stage.
struct WallData {
    Vec2 nhat;       // unit normal pointing into the gas
    double Tw = 0.0; // wall temperature
    Vec2 uw;         // wall velocity seen by the gas
    int body = -1;   // rigid body index, -1 for a static wall
    Vec2 anchorBody; // body-frame position (rigid-surface points)
    Vec2 nhatBody;   // body-frame normal
    double dA = 1.0; // surface quadrature weight (rigid-surface points)
};

struct MaintenanceStats {
    int merged = 0;
    int inserted = 0;
    int minNeighbors = 0;
    bool ok = true;
};

/// Moving point cloud with roles, voxel-accelerated neighbor search,
/// merge/insert maintenance and stencil bookkeeping.
class PointCloud {
public:
    PointCloud(int dim, double dx0, CloudParams prm);

    // domain description
    void setBounds(double xmin, double xmax, double ymin = 0.0, double ymax = 0.0);
    void setPeriodic(bool on) { periodic_ = on; }
    bool periodic() const { return periodic_; }

    /// Convex polygons (CCW) of rigid bodies currently immersed in the gas;
    /// stencil edges crossing them are suppressed and holes are not filled
    /// inside them. Refresh after each body update.
    void setBodyPolygons(std::vector<std::vector<Vec2>> polys);

    int appendPoint(double x, double y, Role role, const WallData& wd = {});

    int size() const { return static_cast<int>(x_.size()); }
    int dim() const { return dim_; }
    double dx0() const { return dx0_; }
    double hmax() const { return prm_.bRadius * dx0_; }
    const CloudParams& params() const { return prm_; }

    const std::vector<double>& x() const { return x_; }
    const std::vector<double>& y() const { return y_; }
    double& xAt(int i) { return x_[i]; }
    double& yAt(int i) { return y_[i]; }
    Role roleOf(int i) const { return role_[i]; }
    WallData& wallOf(int i) { return wall_[i]; }
    const WallData& wallOf(int i) const { return wall_[i]; }

    /// Wrap a position into the periodic box (no-op otherwise).
    void wrapPosition(double& px, double& py) const;

    /// Minimum-image displacement x_j - x_i.
    void displacement(int i, int j, double& dxx, double& dyy) const;

    /// Minimum usable stencil size (set from the scheme's fit order). Points
    /// left short by the radius rule -- one-sided wall stencils, thinned
    /// regions after motion -- get their search radius extended until the
    /// count is met, and the extra pairs are mirrored to keep the table
    /// symmetric.
    void setMinNeighbors(int n) { minNeighbors_ = n; }
    int minNeighbors() const { return minNeighbors_; }

    /// Rebuild the voxel table, the neighbor stencils C_i and the edge list.
    void rebuildNeighbors();
    const StencilTable& stencils() const { return st_; }
    const EdgeList& edges() const { return edges_; }

    /// O(N^2) reference search with identical radius/blocking rules.
    StencilTable bruteForceStencils() const;

    /// Number of voxel cells scanned in each direction.
    int scanExtent() const;

    /// Merge close interior pairs, fill empty cells/gaps, reorder points
    /// spatially and rebuild stencils. The field is kept consistent
    /// (interpolated at new points, columns permuted with the points).
    MaintenanceStats maintain(ChuField& field);

    /// Value interpolation at an arbitrary position from the current cloud:
    /// second-order MLS fit with a DMP guard falling back to the positive
    /// first-order average. Returns per-node values for g1 and g2.
    void interpolateAt(double px, double py, const ChuField& field,
                       Eigen::Ref<Eigen::ArrayXd> g1out,
                       Eigen::Ref<Eigen::ArrayXd> g2out) const;

    /// True if the position lies in the gas domain inset by `margin` from the
    /// outer boundary and from every body polygon.
    bool insideGasDomain(double px, double py, double margin) const;

    /// Spatially reorder points (voxel row-major) for kernel locality,
    /// permuting the field columns along. Safe to call any time.
    void reorderSpatial(ChuField* field);

    double xmin() const { return xmin_; }
    double xmax() const { return xmax_; }
    double ymin() const { return ymin_; }
    double ymax() const { return ymax_; }

private:
    struct Voxel {
        double cell = 0.0;
        int nx = 0, ny = 0;
        std::vector<int> cellStart;  // CSR over cells
        std::vector<int> order;      // point indices grouped by cell
    };

    void buildVoxel();
    void repairAndFinalize(std::vector<std::vector<int>>& nb, StencilTable& t) const;
    bool pairBlocked(double xi, double yi, double xj, double yj) const;
    std::vector<int> donorsNear(double px, double py, double radius) const;
    void gatherNeighbors(int i, std::vector<int>& out, std::vector<double>& odx,
                         std::vector<double>& ody) const;

    int dim_;
    double dx0_;
    CloudParams prm_;
    bool periodic_ = false;
    double xmin_ = 0.0, xmax_ = 0.0, ymin_ = 0.0, ymax_ = 0.0;

    std::vector<double> x_, y_;
    std::vector<Role> role_;
    std::vector<WallData> wall_;
    std::vector<std::vector<Vec2>> bodies_;

    Voxel vox_;
    StencilTable st_;
    EdgeList edges_;
    int minNeighbors_ = 0;  // 0 -> dim default (2 in 1D, 5 in 2D)
};

}  // namespace mbgk
