#include "mbgk/point_cloud.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "mbgk/mls.hpp"

namespace mbgk {

PointCloud::PointCloud(int dim, double dx0, CloudParams prm)
    : dim_(dim), dx0_(dx0), prm_(prm) {
    if (dim != 1 && dim != 2) throw ConfigError("PointCloud: dim must be 1 or 2");
    if (!(dx0 > 0.0)) throw ConfigError("PointCloud: dx0 must be positive");
}

void PointCloud::setBounds(double xmin, double xmax, double ymin, double ymax) {
    xmin_ = xmin;
    xmax_ = xmax;
    ymin_ = ymin;
    ymax_ = ymax;
}

void PointCloud::setBodyPolygons(std::vector<std::vector<Vec2>> polys) {
    bodies_ = std::move(polys);
}

int PointCloud::appendPoint(double px, double py, Role role, const WallData& wd) {
    x_.push_back(px);
    y_.push_back(py);
    role_.push_back(role);
    wall_.push_back(wd);
    return static_cast<int>(x_.size()) - 1;
}

void PointCloud::wrapPosition(double& px, double& py) const {
    if (!periodic_) return;
    const double lx = xmax_ - xmin_;
    px -= lx * std::floor((px - xmin_) / lx);
    px += xmin_;
    if (dim_ == 2) {
        const double ly = ymax_ - ymin_;
        py -= ly * std::floor((py - ymin_) / ly);
        py += ymin_;
    }
}

void PointCloud::displacement(int i, int j, double& dxx, double& dyy) const {
    dxx = x_[j] - x_[i];
    dyy = (dim_ == 2) ? y_[j] - y_[i] : 0.0;
    if (periodic_) {
        const double lx = xmax_ - xmin_;
        dxx -= lx * std::round(dxx / lx);
        if (dim_ == 2) {
            const double ly = ymax_ - ymin_;
            dyy -= ly * std::round(dyy / ly);
        }
    }
}

int PointCloud::scanExtent() const {
    return static_cast<int>(std::ceil(prm_.bRadius / prm_.bVoxel - 1e-12));
}

void PointCloud::buildVoxel() {
    const double cell = prm_.bVoxel * dx0_;
    const double lx = xmax_ - xmin_;
    const double ly = ymax_ - ymin_;
    if (periodic_) {
        vox_.nx = std::max(1, static_cast<int>(std::round(lx / cell)));
        vox_.ny = (dim_ == 2) ? std::max(1, static_cast<int>(std::round(ly / cell))) : 1;
    } else {
        vox_.nx = std::max(1, static_cast<int>(std::ceil(lx / cell - 1e-12)));
        vox_.ny = (dim_ == 2) ? std::max(1, static_cast<int>(std::ceil(ly / cell - 1e-12))) : 1;
    }
    vox_.cell = cell;

    const int ncell = vox_.nx * vox_.ny;
    const int n = size();
    std::vector<int> count(ncell + 1, 0);
    std::vector<int> cellIdx(n);
    for (int i = 0; i < n; ++i) {
        double px = x_[i], py = (dim_ == 2) ? y_[i] : 0.0;
        wrapPosition(px, py);
        const double cx = periodic_ ? lx / vox_.nx : cell;
        const double cy = periodic_ ? ((dim_ == 2) ? ly / vox_.ny : cell) : cell;
        int ix = std::clamp(static_cast<int>((px - xmin_) / cx), 0, vox_.nx - 1);
        int iy = (dim_ == 2) ? std::clamp(static_cast<int>((py - ymin_) / cy), 0, vox_.ny - 1) : 0;
        cellIdx[i] = iy * vox_.nx + ix;
        ++count[cellIdx[i] + 1];
    }
    for (int c = 0; c < ncell; ++c) count[c + 1] += count[c];
    vox_.cellStart = count;
    vox_.order.resize(n);
    std::vector<int> cursor(vox_.cellStart.begin(), vox_.cellStart.end() - 1);
    for (int i = 0; i < n; ++i) vox_.order[cursor[cellIdx[i]]++] = i;
}

bool PointCloud::pairBlocked(double xi, double yi, double xj, double yj) const {
    if (bodies_.empty()) return false;
    for (const auto& poly : bodies_) {
        if (dim_ == 1) {
            // interval [a, b]; pair blocked when endpoints lie on opposite sides
            const double a = poly[0].x, b = poly[1].x;
            auto side = [&](double px) { return px <= a ? -1 : (px >= b ? +1 : 0); };
            if (side(xi) != side(xj)) return true;
            continue;
        }
        // convex CCW polygon: does the open segment enter the interior?
        double bxlo = poly[0].x, bxhi = poly[0].x, bylo = poly[0].y, byhi = poly[0].y;
        for (const auto& v : poly) {
            bxlo = std::min(bxlo, v.x);
            bxhi = std::max(bxhi, v.x);
            bylo = std::min(bylo, v.y);
            byhi = std::max(byhi, v.y);
        }
        if ((xi < bxlo && xj < bxlo) || (xi > bxhi && xj > bxhi) ||
            (yi < bylo && yj < bylo) || (yi > byhi && yj > byhi))
            continue;

        const double eps = 1e-9 * dx0_;
        double t0 = 0.0, t1 = 1.0;
        bool empty = false;
        const int m = static_cast<int>(poly.size());
        for (int k = 0; k < m && !empty; ++k) {
            const Vec2& v0 = poly[k];
            const Vec2& v1v = poly[(k + 1) % m];
            const double exv = v1v.x - v0.x, eyv = v1v.y - v0.y;
            const double len = std::sqrt(exv * exv + eyv * eyv);
            const double nx = eyv / len, ny = -exv / len;  // outward for CCW
            // f(t) = n.(p(t) - v0) must be <= -eps (strictly inside)
            const double A = nx * (xi - v0.x) + ny * (yi - v0.y);
            const double B = nx * (xj - xi) + ny * (yj - yi);
            const double bound = -eps;
            if (std::abs(B) < 1e-300) {
                if (A > bound) empty = true;
            } else if (B > 0.0) {
                t1 = std::min(t1, (bound - A) / B);
            } else {
                t0 = std::max(t0, (bound - A) / B);
            }
            if (t0 >= t1) empty = true;
        }
        if (!empty && t1 - t0 > 1e-12) return true;
    }
    return false;
}

void PointCloud::rebuildNeighbors() {
    const int n = size();
    const double r = hmax();
    const double r2 = r * r;
    st_.clear();
    st_.start.assign(n + 1, 0);

    std::vector<std::vector<int>> nb(n);

    if (dim_ == 1) {
        // position-sorted index array
        std::vector<int> srt(n);
        std::iota(srt.begin(), srt.end(), 0);
        std::sort(srt.begin(), srt.end(), [&](int a, int b) {
            return x_[a] < x_[b] || (x_[a] == x_[b] && a < b);
        });
        std::vector<int> pos(n);
        for (int k = 0; k < n; ++k) pos[srt[k]] = k;
        for (int i = 0; i < n; ++i) {
            const int k = pos[i];
            for (int q = k - 1; q >= 0; --q) {
                const int j = srt[q];
                if (x_[i] - x_[j] >= r) break;
                if (!pairBlocked(x_[i], 0.0, x_[j], 0.0)) nb[i].push_back(j);
            }
            for (int q = k + 1; q < n; ++q) {
                const int j = srt[q];
                if (x_[j] - x_[i] >= r) break;
                if (!pairBlocked(x_[i], 0.0, x_[j], 0.0)) nb[i].push_back(j);
            }
        }
    } else {
        buildVoxel();
        const int ext = scanExtent();
        const double lx = xmax_ - xmin_;
        const double ly = ymax_ - ymin_;
        for (int i = 0; i < n; ++i) {
            double px = x_[i], py = y_[i];
            wrapPosition(px, py);
            const double cx = periodic_ ? lx / vox_.nx : vox_.cell;
            const double cy = periodic_ ? ly / vox_.ny : vox_.cell;
            const int ix = std::clamp(static_cast<int>((px - xmin_) / cx), 0, vox_.nx - 1);
            const int iy = std::clamp(static_cast<int>((py - ymin_) / cy), 0, vox_.ny - 1);
            for (int oy = -ext; oy <= ext; ++oy) {
                int cyI = iy + oy;
                if (periodic_) {
                    cyI = (cyI % vox_.ny + vox_.ny) % vox_.ny;
                } else if (cyI < 0 || cyI >= vox_.ny) {
                    continue;
                }
                for (int ox = -ext; ox <= ext; ++ox) {
                    int cxI = ix + ox;
                    if (periodic_) {
                        cxI = (cxI % vox_.nx + vox_.nx) % vox_.nx;
                    } else if (cxI < 0 || cxI >= vox_.nx) {
                        continue;
                    }
                    const int c = cyI * vox_.nx + cxI;
                    for (int q = vox_.cellStart[c]; q < vox_.cellStart[c + 1]; ++q) {
                        const int j = vox_.order[q];
                        if (j == i) continue;
                        double ddx, ddy;
                        displacement(i, j, ddx, ddy);
                        if (ddx * ddx + ddy * ddy >= r2) continue;
                        if (pairBlocked(x_[i], y_[i], x_[i] + ddx, y_[i] + ddy)) continue;
                        nb[i].push_back(j);
                    }
                }
            }
        }
        // periodic wrap can visit a cell twice on tiny grids
        if (periodic_)
            for (auto& v : nb) {
                std::sort(v.begin(), v.end());
                v.erase(std::unique(v.begin(), v.end()), v.end());
            }
    }

    repairAndFinalize(nb, st_);
    edges_.buildFrom(st_);
}

void PointCloud::repairAndFinalize(std::vector<std::vector<int>>& nb, StencilTable& t) const {
    const int n = size();
    // repair pass: points short of the minimum fit size extend their radius;
    // the extra pairs are mirrored so the table stays symmetric
    const int minNb = minNeighbors_ > 0 ? minNeighbors_ : (dim_ == 1 ? 2 : 5);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(nb[i].size()) >= minNb) continue;
        double radius = hmax();
        std::vector<int> cand;
        for (int attempt = 0; attempt < 8; ++attempt) {
            radius *= 1.3;
            cand = donorsNear(x_[i], (dim_ == 2) ? y_[i] : 0.0, radius);
            std::erase(cand, i);
            if (static_cast<int>(cand.size()) >= minNb) break;
        }
        std::sort(cand.begin(), cand.end(), [&](int a, int b) {
            double dax, day, dbx, dby;
            displacement(i, a, dax, day);
            displacement(i, b, dbx, dby);
            const double da = dax * dax + day * day, db = dbx * dbx + dby * dby;
            if (da != db) return da < db;
            return a < b;
        });
        for (int j : cand) {
            if (static_cast<int>(nb[i].size()) >= minNb) break;
            if (std::find(nb[i].begin(), nb[i].end(), j) != nb[i].end()) continue;
            nb[i].push_back(j);
            if (std::find(nb[j].begin(), nb[j].end(), i) == nb[j].end()) nb[j].push_back(i);
        }
    }

    t.start.assign(n + 1, 0);
    for (int i = 0; i < n; ++i) std::sort(nb[i].begin(), nb[i].end());
    for (int i = 0; i < n; ++i) t.start[i + 1] = t.start[i] + static_cast<int>(nb[i].size());
    t.nbr.resize(t.start[n]);
    t.dx.resize(t.start[n]);
    t.dy.resize(t.start[n]);
    for (int i = 0; i < n; ++i) {
        int e = t.start[i];
        for (int j : nb[i]) {
            double ddx, ddy;
            displacement(i, j, ddx, ddy);
            t.nbr[e] = j;
            t.dx[e] = ddx;
            t.dy[e] = ddy;
            ++e;
        }
    }
}

StencilTable PointCloud::bruteForceStencils() const {
    const int n = size();
    const double r2 = hmax() * hmax();
    StencilTable t;
    std::vector<std::vector<int>> nb(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            double ddx, ddy;
            displacement(i, j, ddx, ddy);
            if (ddx * ddx + ddy * ddy >= r2) continue;
            if (pairBlocked(x_[i], (dim_ == 2) ? y_[i] : 0.0, x_[i] + ddx,
                            (dim_ == 2) ? y_[i] + ddy : 0.0))
                continue;
            nb[i].push_back(j);
        }
    repairAndFinalize(nb, t);
    return t;
}

bool PointCloud::insideGasDomain(double px, double py, double margin) const {
    if (!periodic_) {
        if (px < xmin_ + margin || px > xmax_ - margin) return false;
        if (dim_ == 2 && (py < ymin_ + margin || py > ymax_ - margin)) return false;
    }
    for (const auto& poly : bodies_) {
        if (dim_ == 1) {
            if (px > poly[0].x - margin && px < poly[1].x + margin) return false;
            continue;
        }
        const int m = static_cast<int>(poly.size());
        double dmax = -std::numeric_limits<double>::infinity();
        for (int k = 0; k < m; ++k) {
            const Vec2& v0 = poly[k];
            const Vec2& v1v = poly[(k + 1) % m];
            const double exv = v1v.x - v0.x, eyv = v1v.y - v0.y;
            const double len = std::sqrt(exv * exv + eyv * eyv);
            const double nx = eyv / len, ny = -exv / len;
            dmax = std::max(dmax, nx * (px - v0.x) + ny * (py - v0.y));
        }
        if (dmax < margin) return false;  // inside the inflated polygon
    }
    return true;
}

std::vector<int> PointCloud::donorsNear(double px, double py, double radius) const {
    std::vector<int> out;
    const double r2 = radius * radius;
    const int n = size();
    for (int j = 0; j < n; ++j) {
        double ddx = x_[j] - px;
        double ddy = (dim_ == 2) ? y_[j] - py : 0.0;
        if (periodic_) {
            const double lx = xmax_ - xmin_;
            ddx -= lx * std::round(ddx / lx);
            if (dim_ == 2) {
                const double ly = ymax_ - ymin_;
                ddy -= ly * std::round(ddy / ly);
            }
        }
        if (ddx * ddx + ddy * ddy >= r2) continue;
        if (pairBlocked(px, py, px + ddx, py + ddy)) continue;
        out.push_back(j);
    }
    return out;
}

void PointCloud::interpolateAt(double px, double py, const ChuField& field,
                               Eigen::Ref<Eigen::ArrayXd> g1out,
                               Eigen::Ref<Eigen::ArrayXd> g2out) const {
    const int need = (dim_ == 1) ? 2 : 3;
    double radius = hmax();
    std::vector<int> donors;
    for (int attempt = 0; attempt < 3; ++attempt) {
        donors = donorsNear(px, py, radius);
        if (static_cast<int>(donors.size()) >= need) break;
        radius *= 1.5;
    }
    if (static_cast<int>(donors.size()) < need)
        throw StencilDegeneracyError(
            "interpolateAt: no usable donors near inserted point, insertion aborted", -1);

    const int nd = static_cast<int>(donors.size());
    std::vector<double> ddx(nd), ddy(nd);
    for (int r = 0; r < nd; ++r) {
        double ax = x_[donors[r]] - px;
        double ay = (dim_ == 2) ? y_[donors[r]] - py : 0.0;
        if (periodic_) {
            const double lx = xmax_ - xmin_;
            ax -= lx * std::round(ax / lx);
            if (dim_ == 2) {
                const double ly = ymax_ - ymin_;
                ay -= ly * std::round(ay / ly);
            }
        }
        ddx[r] = ax;
        ddy[r] = ay;
    }

    ValueFit fit2 = fitValueWeights(donors, ddx, ddy, dim_, 2, radius);
    ValueFit fit1 = fitValueWeights(donors, ddx, ddy, dim_, 1, radius);

    const int nodes = field.nodes();
    Eigen::ArrayXd lo1(nodes), hi1(nodes), lo2(nodes), hi2(nodes), s1(nodes), s2(nodes);
    lo1.setConstant(std::numeric_limits<double>::infinity());
    lo2 = lo1;
    hi1.setConstant(-std::numeric_limits<double>::infinity());
    hi2 = hi1;
    g1out.setZero();
    g2out.setZero();
    s1.setZero();
    s2.setZero();
    for (int r = 0; r < nd; ++r) {
        const auto c1 = field.g1.col(donors[r]);
        const auto c2 = field.g2.col(donors[r]);
        g1out += fit2.coeff[r] * c1;
        g2out += fit2.coeff[r] * c2;
        s1 += fit1.coeff[r] * c1;
        s2 += fit1.coeff[r] * c2;
        lo1 = lo1.min(c1);
        hi1 = hi1.max(c1);
        lo2 = lo2.min(c2);
        hi2 = hi2.max(c2);
    }
    // DMP guard: fall back to the positive average where the fit overshoots
    g1out = (g1out < lo1 || g1out > hi1).select(s1, g1out);
    g2out = (g2out < lo2 || g2out > hi2).select(s2, g2out);
}

void PointCloud::reorderSpatial(ChuField* field) {
    const int n = size();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    if (dim_ == 1) {
        std::sort(perm.begin(), perm.end(), [&](int a, int b) {
            return x_[a] < x_[b] || (x_[a] == x_[b] && a < b);
        });
    } else {
        buildVoxel();
        const double lx = xmax_ - xmin_;
        const double ly = ymax_ - ymin_;
        const double cx = periodic_ ? lx / vox_.nx : vox_.cell;
        const double cy = periodic_ ? ly / vox_.ny : vox_.cell;
        std::vector<long> key(n);
        for (int i = 0; i < n; ++i) {
            double px = x_[i], py = y_[i];
            wrapPosition(px, py);
            const int ix = std::clamp(static_cast<int>((px - xmin_) / cx), 0, vox_.nx - 1);
            const int iy = std::clamp(static_cast<int>((py - ymin_) / cy), 0, vox_.ny - 1);
            key[i] = static_cast<long>(iy) * vox_.nx + ix;
        }
        std::sort(perm.begin(), perm.end(), [&](int a, int b) {
            if (key[a] != key[b]) return key[a] < key[b];
            if (x_[a] != x_[b]) return x_[a] < x_[b];
            if (y_[a] != y_[b]) return y_[a] < y_[b];
            return a < b;
        });
    }

    std::vector<double> nx(n), ny(n);
    std::vector<Role> nrole(n);
    std::vector<WallData> nwall(n);
    for (int p = 0; p < n; ++p) {
        nx[p] = x_[perm[p]];
        ny[p] = y_[perm[p]];
        nrole[p] = role_[perm[p]];
        nwall[p] = wall_[perm[p]];
    }
    x_.swap(nx);
    y_.swap(ny);
    role_.swap(nrole);
    wall_.swap(nwall);

    if (field && field->points() == n) {
        Eigen::ArrayXXd g1(field->g1.rows(), n), g2(field->g2.rows(), n);
        for (int p = 0; p < n; ++p) {
            g1.col(p) = field->g1.col(perm[p]);
            g2.col(p) = field->g2.col(perm[p]);
        }
        field->g1.swap(g1);
        field->g2.swap(g2);
    }
}

MaintenanceStats PointCloud::maintain(ChuField& field) {
    MaintenanceStats stats;
    rebuildNeighbors();

    // ---- merge close interior pairs ----
    struct Pair {
        double dist;
        int i, j;
    };
    std::vector<Pair> close;
    const double thr = prm_.bMinDist * dx0_;
    for (int e = 0; e < edges_.size(); ++e) {
        const int i = edges_.a[e], j = edges_.b[e];
        if (role_[i] != Role::Interior || role_[j] != Role::Interior) continue;
        const double d =
            std::sqrt(edges_.dx[e] * edges_.dx[e] + edges_.dy[e] * edges_.dy[e]);
        if (d < thr) close.push_back({d, i, j});
    }
    std::sort(close.begin(), close.end(), [](const Pair& a, const Pair& b) {
        if (a.dist != b.dist) return a.dist < b.dist;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });

    std::vector<char> dead(size(), 0);
    std::vector<Vec2> newPos;
    for (const auto& p : close) {
        if (dead[p.i] || dead[p.j]) continue;
        dead[p.i] = dead[p.j] = 1;
        double ddx, ddy;
        displacement(p.i, p.j, ddx, ddy);
        double mx = x_[p.i] + 0.5 * ddx;
        double my = (dim_ == 2) ? y_[p.i] + 0.5 * ddy : 0.0;
        wrapPosition(mx, my);
        newPos.push_back({mx, my});
        ++stats.merged;
    }

    if (!newPos.empty()) {
        const int nodes = field.nodes();
        Eigen::ArrayXXd add1(nodes, static_cast<int>(newPos.size()));
        Eigen::ArrayXXd add2(nodes, static_cast<int>(newPos.size()));
        for (int q = 0; q < static_cast<int>(newPos.size()); ++q)
            interpolateAt(newPos[q].x, newPos[q].y, field, add1.col(q), add2.col(q));

        std::vector<double> nx2, ny2;
        std::vector<Role> nrole;
        std::vector<WallData> nwall;
        std::vector<int> keep;
        for (int i = 0; i < size(); ++i)
            if (!dead[i]) keep.push_back(i);
        const int nn = static_cast<int>(keep.size()) + static_cast<int>(newPos.size());
        Eigen::ArrayXXd g1(nodes, nn), g2(nodes, nn);
        int p = 0;
        for (int i : keep) {
            nx2.push_back(x_[i]);
            ny2.push_back(y_[i]);
            nrole.push_back(role_[i]);
            nwall.push_back(wall_[i]);
            g1.col(p) = field.g1.col(i);
            g2.col(p) = field.g2.col(i);
            ++p;
        }
        for (int q = 0; q < static_cast<int>(newPos.size()); ++q) {
            nx2.push_back(newPos[q].x);
            ny2.push_back(newPos[q].y);
            nrole.push_back(Role::Interior);
            nwall.push_back({});
            g1.col(p) = add1.col(q);
            g2.col(p) = add2.col(q);
            ++p;
        }
        x_.swap(nx2);
        y_.swap(ny2);
        role_.swap(nrole);
        wall_.swap(nwall);
        field.g1.swap(g1);
        field.g2.swap(g2);
    }

    // ---- fill holes ----
    const double margin = prm_.bMinDist * dx0_;
    if (dim_ == 1) {
        const double maxGap = prm_.bVoxel * dx0_;
        for (int pass = 0; pass < 32; ++pass) {
            std::vector<int> srt(size());
            std::iota(srt.begin(), srt.end(), 0);
            std::sort(srt.begin(), srt.end(), [&](int a, int b) { return x_[a] < x_[b]; });
            std::vector<double> centers;
            for (int k = 0; k + 1 < static_cast<int>(srt.size()); ++k) {
                const double xa = x_[srt[k]], xb = x_[srt[k + 1]];
                if (xb - xa > maxGap && !pairBlocked(xa, 0.0, xb, 0.0)) {
                    const double c = 0.5 * (xa + xb);
                    if (insideGasDomain(c, 0.0, margin)) centers.push_back(c);
                }
            }
            if (centers.empty()) break;
            const int nodes = field.nodes();
            for (double c : centers) {
                Eigen::ArrayXd a1(nodes), a2(nodes);
                interpolateAt(c, 0.0, field, a1, a2);
                appendPoint(c, 0.0, Role::Interior);
                field.g1.conservativeResize(Eigen::NoChange, field.g1.cols() + 1);
                field.g2.conservativeResize(Eigen::NoChange, field.g2.cols() + 1);
                field.g1.col(field.g1.cols() - 1) = a1;
                field.g2.col(field.g2.cols() - 1) = a2;
                ++stats.inserted;
            }
        }
    } else {
        buildVoxel();
        const double lx = xmax_ - xmin_;
        const double ly = ymax_ - ymin_;
        const double cx = periodic_ ? lx / vox_.nx : vox_.cell;
        const double cy = periodic_ ? ly / vox_.ny : vox_.cell;
        std::vector<Vec2> centers;
        for (int iy = 0; iy < vox_.ny; ++iy)
            for (int ix = 0; ix < vox_.nx; ++ix) {
                const int c = iy * vox_.nx + ix;
                if (vox_.cellStart[c + 1] > vox_.cellStart[c]) continue;
                const double px = xmin_ + (ix + 0.5) * cx;
                const double py = ymin_ + (iy + 0.5) * cy;
                if (!insideGasDomain(px, py, margin)) continue;
                centers.push_back({px, py});
            }
        if (!centers.empty()) {
            const int nodes = field.nodes();
            for (const auto& cpt : centers) {
                Eigen::ArrayXd a1(nodes), a2(nodes);
                interpolateAt(cpt.x, cpt.y, field, a1, a2);
                appendPoint(cpt.x, cpt.y, Role::Interior);
                field.g1.conservativeResize(Eigen::NoChange, field.g1.cols() + 1);
                field.g2.conservativeResize(Eigen::NoChange, field.g2.cols() + 1);
                field.g1.col(field.g1.cols() - 1) = a1;
                field.g2.col(field.g2.cols() - 1) = a2;
                ++stats.inserted;
            }
        }
    }

    reorderSpatial(&field);
    rebuildNeighbors();

    stats.minNeighbors = std::numeric_limits<int>::max();
    for (int i = 0; i < size(); ++i) stats.minNeighbors = std::min(stats.minNeighbors, st_.size(i));
    const int minNeeded = (dim_ == 1) ? 2 : 5;
    stats.ok = stats.minNeighbors >= minNeeded;
    return stats;
}

}  // namespace mbgk
