#include "mbgk/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "mbgk/interpolate.hpp"

namespace mbgk {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void writeSnapshot(const std::string& path, const Snapshot& s) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write snapshot '" + path + "'");
    out << "# mbgk snapshot dim=" << s.dim << " time=" << fmt17(s.time) << "\n";
    if (s.dim == 1)
        out << "# x rho u1 T role\n";
    else
        out << "# x y rho u1 u2 T role vort\n";

    std::vector<int> order(s.size());
    std::iota(order.begin(), order.end(), 0);
    if (s.dim == 1)
        std::sort(order.begin(), order.end(), [&](int a, int b) { return s.x[a] < s.x[b]; });

    for (int q = 0; q < s.size(); ++q) {
        const int i = order[q];
        if (s.dim == 1) {
            out << fmt17(s.x[i]) << ' ' << fmt17(s.rho[i]) << ' ' << fmt17(s.u1[i]) << ' '
                << fmt17(s.T[i]) << ' ' << s.role[i] << "\n";
        } else {
            const double w = (s.vort.size() == s.size()) ? s.vort[i] : 0.0;
            out << fmt17(s.x[i]) << ' ' << fmt17(s.y[i]) << ' ' << fmt17(s.rho[i]) << ' '
                << fmt17(s.u1[i]) << ' ' << fmt17(s.u2[i]) << ' ' << fmt17(s.T[i]) << ' '
                << s.role[i] << ' ' << fmt17(w) << "\n";
        }
    }
}

Snapshot readSnapshot(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read snapshot '" + path + "'");
    Snapshot s;
    std::string line;
    std::vector<double> rho, u1, u2, T, vort;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto dpos = line.find("dim=");
            if (dpos != std::string::npos) s.dim = std::stoi(line.substr(dpos + 4));
            const auto tpos = line.find("time=");
            if (tpos != std::string::npos) s.time = std::stod(line.substr(tpos + 5));
            continue;
        }
        std::istringstream ls(line);
        double a, b, c, d, e, f, w;
        int r;
        if (s.dim == 1) {
            ls >> a >> b >> c >> d >> r;
            s.x.push_back(a);
            rho.push_back(b);
            u1.push_back(c);
            T.push_back(d);
            s.role.push_back(r);
        } else {
            ls >> a >> b >> c >> d >> e >> f >> r >> w;
            s.x.push_back(a);
            s.y.push_back(b);
            rho.push_back(c);
            u1.push_back(d);
            u2.push_back(e);
            T.push_back(f);
            s.role.push_back(r);
            vort.push_back(w);
        }
    }
    auto toArr = [](const std::vector<double>& v) {
        return Eigen::Map<const Eigen::ArrayXd>(v.data(), v.size()).eval();
    };
    s.rho = toArr(rho);
    s.u1 = toArr(u1);
    s.u2 = s.dim == 2 ? toArr(u2) : Eigen::ArrayXd::Zero(s.rho.size()).eval();
    s.T = toArr(T);
    if (s.dim == 2) s.vort = toArr(vort);
    return s;
}

Totals cloudTotals(const PointCloud& cloud, const MomentField& mom) {
    Totals t;
    const int n = cloud.size();
    if (cloud.dim() == 1) {
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return cloud.x()[a] < cloud.x()[b]; });
        for (int q = 0; q + 1 < n; ++q) {
            const int i = order[q], j = order[q + 1];
            const double h = cloud.x()[j] - cloud.x()[i];
            if (h <= 0.0) continue;
            t.mass += 0.5 * h * (mom.rho[i] + mom.rho[j]);
            t.mom1 += 0.5 * h * (mom.rho[i] * mom.u1[i] + mom.rho[j] * mom.u1[j]);
            t.energy += 0.5 * h * (mom.E[i] + mom.E[j]);
        }
        return t;
    }
    // 2D: mean per occupied background cell times the cell area
    const double cell = cloud.params().bVoxel * cloud.dx0();
    const double lx = cloud.xmax() - cloud.xmin();
    const double ly = cloud.ymax() - cloud.ymin();
    int nx = std::max(1, static_cast<int>(std::llround(lx / cell)));
    int ny = std::max(1, static_cast<int>(std::llround(ly / cell)));
    if (!cloud.periodic()) {
        nx = std::max(1, static_cast<int>(std::ceil(lx / cell - 1e-12)));
        ny = std::max(1, static_cast<int>(std::ceil(ly / cell - 1e-12)));
    }
    const double cx = lx / nx, cy = ly / ny;
    std::vector<double> mass(nx * ny, 0.0), m1(nx * ny, 0.0), m2(nx * ny, 0.0),
        en(nx * ny, 0.0);
    std::vector<int> cnt(nx * ny, 0);
    for (int i = 0; i < n; ++i) {
        double px = cloud.x()[i], py = cloud.y()[i];
        cloud.wrapPosition(px, py);
        const int ix = std::clamp(static_cast<int>((px - cloud.xmin()) / cx), 0, nx - 1);
        const int iy = std::clamp(static_cast<int>((py - cloud.ymin()) / cy), 0, ny - 1);
        const int c = iy * nx + ix;
        mass[c] += mom.rho[i];
        m1[c] += mom.rho[i] * mom.u1[i];
        m2[c] += mom.rho[i] * mom.u2[i];
        en[c] += mom.E[i];
        ++cnt[c];
    }
    const double area = cx * cy;
    for (int c = 0; c < nx * ny; ++c) {
        if (cnt[c] == 0) continue;
        t.mass += area * mass[c] / cnt[c];
        t.mom1 += area * m1[c] / cnt[c];
        t.mom2 += area * m2[c] / cnt[c];
        t.energy += area * en[c] / cnt[c];
    }
    return t;
}

Eigen::ArrayXd auditInterpolate(const Snapshot& s, const Eigen::ArrayXd& values,
                                const std::vector<double>& ax, const std::vector<double>& ay,
                                bool periodic, double boxLx, double boxLy) {
    const int n = s.size();
    const int order = (s.dim == 1) ? 5 : 4;
    const int terms = valueFitTerms(s.dim, order);

    double xlo = s.x[0], xhi = s.x[0], ylo = 0.0, yhi = 0.0;
    for (double v : s.x) {
        xlo = std::min(xlo, v);
        xhi = std::max(xhi, v);
    }
    if (s.dim == 2) {
        ylo = yhi = s.y[0];
        for (double v : s.y) {
            ylo = std::min(ylo, v);
            yhi = std::max(yhi, v);
        }
    }
    const double spacing =
        (s.dim == 1) ? (xhi - xlo) / std::max(1, n - 1)
                     : std::sqrt((xhi - xlo) * (yhi - ylo) / std::max(1, n));

    const int na = static_cast<int>(ax.size());
    Eigen::ArrayXd out(na);
    std::vector<int> donors;
    std::vector<double> ddx, ddy;
    for (int q = 0; q < na; ++q) {
        const double px = ax[q];
        const double py = (s.dim == 2) ? ay[q] : 0.0;
        if (!periodic) {
            const double tol = 1e-9 * (xhi - xlo + 1.0);
            if (px < xlo - tol || px > xhi + tol ||
                (s.dim == 2 && (py < ylo - tol || py > yhi + tol)))
                throw ConfigError("auditInterpolate: audit node outside the cloud hull");
        }
        double radius = spacing * ((s.dim == 1) ? 0.6 * (terms + 2) : 1.05 * std::sqrt(terms));
        for (int attempt = 0;; ++attempt) {
            donors.clear();
            ddx.clear();
            ddy.clear();
            for (int j = 0; j < n; ++j) {
                double dxx = s.x[j] - px;
                double dyy = (s.dim == 2) ? s.y[j] - py : 0.0;
                if (periodic) {
                    dxx -= boxLx * std::round(dxx / boxLx);
                    if (s.dim == 2) dyy -= boxLy * std::round(dyy / boxLy);
                }
                if (dxx * dxx + dyy * dyy < radius * radius) {
                    donors.push_back(j);
                    ddx.push_back(dxx);
                    ddy.push_back(dyy);
                }
            }
            if (static_cast<int>(donors.size()) >= terms + 2 || attempt >= 6) break;
            radius *= 1.4;
        }
        const ValueFit fit = fitValueWeights(donors, ddx, ddy, s.dim, order, radius);
        double acc = 0.0;
        for (std::size_t r = 0; r < fit.donors.size(); ++r)
            acc += fit.coeff[r] * values[fit.donors[r]];
        out[q] = acc;
    }
    return out;
}

namespace {

const Eigen::ArrayXd& pick(const Snapshot& s, const std::string& comp) {
    if (comp == "rho") return s.rho;
    if (comp == "u1") return s.u1;
    if (comp == "u2") return s.u2;
    if (comp == "T") return s.T;
    throw ConfigError("l1ErrorVsReference: unknown component '" + comp + "'");
}

}  // namespace

double l1ErrorVsReference(const Snapshot& run, const Snapshot& ref, const std::string& comp,
                          int auditN, double xlo, double xhi, double ylo, double yhi,
                          bool periodic) {
    std::vector<double> ax, ay;
    if (run.dim == 1) {
        for (int q = 0; q < auditN; ++q)
            ax.push_back(xlo + (xhi - xlo) * q / double(auditN - 1));
    } else {
        for (int qy = 0; qy < auditN; ++qy)
            for (int qx = 0; qx < auditN; ++qx) {
                if (periodic) {
                    ax.push_back(xlo + (xhi - xlo) * qx / double(auditN));
                    ay.push_back(ylo + (yhi - ylo) * qy / double(auditN));
                } else {
                    ax.push_back(xlo + (xhi - xlo) * qx / double(auditN - 1));
                    ay.push_back(ylo + (yhi - ylo) * qy / double(auditN - 1));
                }
            }
    }
    const double lx = xhi - xlo, ly = yhi - ylo;
    const Eigen::ArrayXd a = auditInterpolate(run, pick(run, comp), ax, ay, periodic, lx, ly);
    const Eigen::ArrayXd b = auditInterpolate(ref, pick(ref, comp), ax, ay, periodic, lx, ly);
    const double denom = b.abs().sum();
    if (denom == 0.0) throw ConfigError("l1ErrorVsReference: zero reference norm");
    return (a - b).abs().sum() / denom;
}

double fitOrder(const std::vector<int>& nx, const std::vector<double>& err) {
    const int n = static_cast<int>(nx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int q = 0; q < n; ++q) {
        const double lx = std::log(static_cast<double>(nx[q]));
        const double le = std::log(err[q]);
        sx += lx;
        sy += le;
        sxx += lx * lx;
        sxy += lx * le;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return -slope;
}

}  // namespace mbgk
