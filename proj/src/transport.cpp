#include "mbgk/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mbgk {

SchemeKind schemeFromName(const std::string& name) {
    if (name == "upwind1") return SchemeKind::Upwind1;
    if (name == "positive1") return SchemeKind::Positive1;
    if (name == "muscl2") return SchemeKind::Muscl2;
    if (name == "muscl4") return SchemeKind::Muscl4;
    throw ConfigError("unknown scheme '" + name + "'");
}

const char* schemeName(SchemeKind k) {
    switch (k) {
        case SchemeKind::Upwind1: return "upwind1";
        case SchemeKind::Positive1: return "positive1";
        case SchemeKind::Muscl2: return "muscl2";
        case SchemeKind::Muscl4: return "muscl4";
    }
    return "?";
}

bool schemeIsFirstOrder(SchemeKind k) {
    return k == SchemeKind::Upwind1 || k == SchemeKind::Positive1;
}

int TransportWorkspace::chunkFor(long points, long nodes, int nDerivs) const {
    const long budget = 300L * 1000 * 1000;  // bytes for derivative tables
    long chunk = budget / (8L * 2 * nDerivs * std::max(1L, points));
    chunk = std::max(8L, std::min(chunk, nodes));
    return static_cast<int>(chunk);
}

// ---------------------------------------------------------------------------
// first-order 1D upwind
// ---------------------------------------------------------------------------

void transportUpwind1d(const StencilTable& st, double hmax, const std::vector<Role>& roles,
                       const Eigen::ArrayXd& u1, const VelocityGrid& vg, const ChuField& f,
                       ChuField& out, TransportWorkspace& ws) {
    const int np = st.points();
    const int nn = f.nodes();
    out.resize(nn, np);
    const double* v1 = vg.v1().data();

    ws.accL.resize(nn);
    ws.accR.resize(nn);
    Eigen::ArrayXd accL2(nn), accR2(nn);

    for (int i = 0; i < np; ++i) {
        double BL = 0.0, CL = 0.0, BR = 0.0, CR = 0.0;
        ws.accL.setZero();
        ws.accR.setZero();
        accL2.setZero();
        accR2.setZero();
        for (int e = st.begin(i); e < st.end(i); ++e) {
            const int j = st.nbr[e];
            const double d = st.dx[e];
            const double w = gaussianWeight(d * d, hmax);
            const double wd = w * d;
            if (d < 0.0) {
                BL += wd;
                CL += wd * d;
                ws.accL += wd * f.g1.col(j);
                accL2 += wd * f.g2.col(j);
            } else {
                BR += wd;
                CR += wd * d;
                ws.accR += wd * f.g1.col(j);
                accR2 += wd * f.g2.col(j);
            }
        }
        const bool interior = roles[i] == Role::Interior;
        double* o1 = out.g1.col(i).data();
        double* o2 = out.g2.col(i).data();
        const double* g1i = f.g1.col(i).data();
        const double* g2i = f.g2.col(i).data();
        const double ui = u1[i];
        for (int k = 0; k < nn; ++k) {
            const double a = v1[k] - ui;
            if (a == 0.0) {
                o1[k] = 0.0;
                o2[k] = 0.0;
                continue;
            }
            const bool left = a > 0.0;  // upwind set: a * dx < 0
            const double C = left ? CL : CR;
            if (C == 0.0) {
                if (interior)
                    throw StencilDegeneracyError(
                        "upwind1d: empty upwind set at interior point " + std::to_string(i), i);
                o1[k] = 0.0;
                o2[k] = 0.0;
                continue;
            }
            const double B = left ? BL : BR;
            const double A1 = left ? ws.accL[k] : ws.accR[k];
            const double A2 = left ? accL2[k] : accR2[k];
            o1[k] = a * (A1 - B * g1i[k]) / C;
            o2[k] = a * (A2 - B * g2i[k]) / C;
        }
    }
}

double upwind1dAt(const StencilTable& st, double hmax, const std::vector<Role>& roles,
                  const Eigen::ArrayXd& u1, const VelocityGrid& vg, const Eigen::ArrayXXd& g,
                  int i, int k) {
    const double a = vg.v1()[k] - u1[i];
    if (a == 0.0) return 0.0;
    double B = 0.0, C = 0.0, A = 0.0;
    for (int e = st.begin(i); e < st.end(i); ++e) {
        const double d = st.dx[e];
        if (a * d >= 0.0) continue;
        const double w = gaussianWeight(d * d, hmax);
        B += w * d;
        C += w * d * d;
        A += w * d * g(k, st.nbr[e]);
    }
    if (C == 0.0) {
        if (roles[i] == Role::Interior)
            throw StencilDegeneracyError(
                "upwind1d: empty upwind set at interior point " + std::to_string(i), i);
        return 0.0;
    }
    return a * (A - B * g(k, i)) / C;
}

double cflTimestep1d(const StencilTable& st, double hmax, const std::vector<Role>& roles,
                     const Eigen::ArrayXd& u1, const VelocityGrid& vg) {
    const int np = st.points();
    const double vmax = vg.vmax();
    double dtMax = std::numeric_limits<double>::infinity();
    for (int i = 0; i < np; ++i) {
        double BL = 0.0, CL = 0.0, BR = 0.0, CR = 0.0;
        for (int e = st.begin(i); e < st.end(i); ++e) {
            const double d = st.dx[e];
            const double w = gaussianWeight(d * d, hmax);
            if (d < 0.0) {
                BL += w * d;
                CL += w * d * d;
            } else {
                BR += w * d;
                CR += w * d * d;
            }
        }
        (void)roles;
        // fastest node on each side; nodes span [-vmax, vmax]
        const double aL = vmax - u1[i];   // a > 0 uses the left set
        const double aR = u1[i] + vmax;   // |a| for a < 0 uses the right set
        if (aL > 0.0 && CL > 0.0 && BL != 0.0)
            dtMax = std::min(dtMax, CL / std::abs(aL * BL));
        if (aR > 0.0 && CR > 0.0 && BR != 0.0)
            dtMax = std::min(dtMax, CR / std::abs(aR * BR));
    }
    return dtMax;
}

// ---------------------------------------------------------------------------
// first-order 2D positive scheme
// ---------------------------------------------------------------------------

void transportPositive2d(const StencilTable& st, const MlsCoeffs2d& c,
                         const Eigen::ArrayXd& u1, const Eigen::ArrayXd& u2,
                         const VelocityGrid& vg, const ChuField& f, ChuField& out) {
    const int np = st.points();
    const int nn = f.nodes();
    out.resize(nn, np);
    out.g1.setZero();
    out.g2.setZero();
    const double* v1 = vg.v1().data();
    const double* v2 = vg.v2().data();

    for (int i = 0; i < np; ++i) {
        const double u1i = u1[i], u2i = u2[i];
        double* __restrict o1 = out.g1.col(i).data();
        double* __restrict o2 = out.g2.col(i).data();
        const double* __restrict g1i = f.g1.col(i).data();
        const double* __restrict g2i = f.g2.col(i).data();
        for (int e = st.begin(i); e < st.end(i); ++e) {
            const int j = st.nbr[e];
            const double ex = c.ex[e], ey = c.ey[e];
            const double kb = c.kbar[e], lb = c.lbar[e];
            const double* __restrict g1j = f.g1.col(j).data();
            const double* __restrict g2j = f.g2.col(j).data();
            for (int k = 0; k < nn; ++k) {
                const double a1 = v1[k] - u1i;
                const double a2 = v2[k] - u2i;
                const double an = a1 * ex + a2 * ey;
                const double ls = lb * (a2 * ex - a1 * ey);
                const double term = kb * (an - std::abs(an)) + (ls - std::abs(ls));
                o1[k] += term * (g1j[k] - g1i[k]);
                o2[k] += term * (g2j[k] - g2i[k]);
            }
        }
    }
}

double positive2dAt(const StencilTable& st, const MlsCoeffs2d& c, const Eigen::ArrayXd& u1,
                    const Eigen::ArrayXd& u2, const VelocityGrid& vg, const Eigen::ArrayXXd& g,
                    int i, int k) {
    const double a1 = vg.v1()[k] - u1[i];
    const double a2 = vg.v2()[k] - u2[i];
    double acc = 0.0;
    for (int e = st.begin(i); e < st.end(i); ++e) {
        const double an = a1 * c.ex[e] + a2 * c.ey[e];
        const double ls = c.lbar[e] * (a2 * c.ex[e] - a1 * c.ey[e]);
        const double term = c.kbar[e] * (an - std::abs(an)) + (ls - std::abs(ls));
        acc += term * (g(k, st.nbr[e]) - g(k, i));
    }
    return acc;
}

double cflTimestep2d(const StencilTable& st, const MlsCoeffs2d& c, const Eigen::ArrayXd& u1,
                     const Eigen::ArrayXd& u2, const VelocityGrid& vg) {
    const int np = st.points();
    const int nn = vg.count();
    const double* v1 = vg.v1().data();
    const double* v2 = vg.v2().data();
    Eigen::ArrayXd csum(nn);
    double worst = 0.0;
    for (int i = 0; i < np; ++i) {
        csum.setZero();
        const double u1i = u1[i], u2i = u2[i];
        double* cs = csum.data();
        for (int e = st.begin(i); e < st.end(i); ++e) {
            const double ex = c.ex[e], ey = c.ey[e];
            const double kb = c.kbar[e], lb = c.lbar[e];
            for (int k = 0; k < nn; ++k) {
                const double a1 = v1[k] - u1i;
                const double a2 = v2[k] - u2i;
                const double an = a1 * ex + a2 * ey;
                const double ls = lb * (a2 * ex - a1 * ey);
                // c_ij = kbar (|an| - an) + |ls| - ls >= 0
                cs[k] += kb * (std::abs(an) - an) + std::abs(ls) - ls;
            }
        }
        worst = std::max(worst, csum.maxCoeff());
    }
    return worst > 0.0 ? 1.0 / worst : std::numeric_limits<double>::infinity();
}

// ---------------------------------------------------------------------------
// meshless MUSCL, 1D (orders 2 and 4)
// ---------------------------------------------------------------------------

namespace {

template <int ORDER>
void muscl1dImpl(const StencilTable& st, const MlsCoeffs1d& c, const Eigen::ArrayXd& u1,
                 const VelocityGrid& vg, const ChuField& f, ChuField& out,
                 TransportWorkspace& ws) {
    const int np = st.points();
    const int nn = f.nodes();
    out.resize(nn, np);
    out.g1.setZero();
    out.g2.setZero();
    const double* v1 = vg.v1().data();

    const Eigen::ArrayXXd* g[2] = {&f.g1, &f.g2};
    Eigen::ArrayXXd* o[2] = {&out.g1, &out.g2};

    // derivative tables
    for (int fl = 0; fl < 2; ++fl) {
        ws.d1[fl].setZero(nn, np);
        ws.d2[fl].setZero(nn, np);
        if constexpr (ORDER == 4) {
            ws.d3[fl].setZero(nn, np);
            ws.d4[fl].setZero(nn, np);
        }
    }
    for (int i = 0; i < np; ++i)
        for (int e = st.begin(i); e < st.end(i); ++e) {
            const int j = st.nbr[e];
            for (int fl = 0; fl < 2; ++fl) {
                auto diff = (g[fl]->col(j) - g[fl]->col(i)).eval();
                ws.d1[fl].col(i) += c.alpha[e] * diff;
                ws.d2[fl].col(i) += c.beta[e] * diff;
                if constexpr (ORDER == 4) {
                    ws.d3[fl].col(i) += c.d3[e] * diff;
                    ws.d4[fl].col(i) += c.d4[e] * diff;
                }
            }
        }

    for (int i = 0; i < np; ++i) {
        const double ui = u1[i];
        for (int e = st.begin(i); e < st.end(i); ++e) {
            const int j = st.nbr[e];
            const double d = st.dx[e];
            const double h1 = 0.5 * d;
            const double h2 = d * d / 8.0;
            const double h3 = d * d * d / 48.0;
            const double h4 = d * d * d * d / 384.0;
            const double al2 = 2.0 * c.alpha[e];
            for (int fl = 0; fl < 2; ++fl) {
                const double* gi = g[fl]->col(i).data();
                const double* gj = g[fl]->col(j).data();
                const double* D1i = ws.d1[fl].col(i).data();
                const double* D2i = ws.d2[fl].col(i).data();
                const double* D1j = ws.d1[fl].col(j).data();
                const double* D2j = ws.d2[fl].col(j).data();
                const double* D3i = nullptr;
                const double* D4i = nullptr;
                const double* D3j = nullptr;
                const double* D4j = nullptr;
                if constexpr (ORDER == 4) {
                    D3i = ws.d3[fl].col(i).data();
                    D4i = ws.d4[fl].col(i).data();
                    D3j = ws.d3[fl].col(j).data();
                    D4j = ws.d4[fl].col(j).data();
                }
                double* oi = o[fl]->col(i).data();
                for (int k = 0; k < nn; ++k) {
                    const double a = v1[k] - ui;
                    double recI = gi[k] + h1 * D1i[k] + h2 * D2i[k];
                    double recJ = gj[k] - h1 * D1j[k] + h2 * D2j[k];
                    if constexpr (ORDER == 4) {
                        recI += h3 * D3i[k] + h4 * D4i[k];
                        recJ += -h3 * D3j[k] + h4 * D4j[k];
                    }
                    const double gm = (a * d > 0.0) ? recI : recJ;
                    oi[k] += al2 * a * (gm - gi[k]);
                }
            }
        }
    }
}

}  // namespace

void transportMuscl1d(const StencilTable& st, const MlsCoeffs1d& c, int order,
                      const Eigen::ArrayXd& u1, const VelocityGrid& vg, const ChuField& f,
                      ChuField& out, TransportWorkspace& ws) {
    if (order == 2) {
        muscl1dImpl<2>(st, c, u1, vg, f, out, ws);
    } else if (order == 4) {
        if (c.order != 5)
            throw ConfigError("transportMuscl1d: order-4 scheme needs order-5 MLS coefficients");
        muscl1dImpl<4>(st, c, u1, vg, f, out, ws);
    } else {
        throw ConfigError("transportMuscl1d: order must be 2 or 4");
    }
}

// ---------------------------------------------------------------------------
// meshless MUSCL, 2D (second order)
// ---------------------------------------------------------------------------

namespace {

void accumDerivs2d(int len, const double* __restrict gi, const double* __restrict gj,
                   double cx, double cy, double cxx, double cyy, double cxy,
                   double* __restrict Dx, double* __restrict Dy, double* __restrict Dxx,
                   double* __restrict Dyy, double* __restrict Dxy) {
    for (int k = 0; k < len; ++k) {
        const double diff = gj[k] - gi[k];
        Dx[k] += cx * diff;
        Dy[k] += cy * diff;
        Dxx[k] += cxx * diff;
        Dyy[k] += cyy * diff;
        Dxy[k] += cxy * diff;
    }
}

struct EdgeScalars {
    double dxe, dye, hx, hy, qxx, qyy, qxy;
    double Pi, Qi, Pj, Qj;
    double u1i, u2i, u1j, u2j;
};

void musclEdgeKernel(int len, const EdgeScalars& s, const double* __restrict v1,
                     const double* __restrict v2, const double* __restrict gi,
                     const double* __restrict gj, const double* __restrict Dxi,
                     const double* __restrict Dyi, const double* __restrict Dxxi,
                     const double* __restrict Dyyi, const double* __restrict Dxyi,
                     const double* __restrict Dxj, const double* __restrict Dyj,
                     const double* __restrict Dxxj, const double* __restrict Dyyj,
                     const double* __restrict Dxyj, double* __restrict oi,
                     double* __restrict oj) {
    for (int k = 0; k < len; ++k) {
        const double a1i = v1[k] - s.u1i, a2i = v2[k] - s.u2i;
        const double a1j = v1[k] - s.u1j, a2j = v2[k] - s.u2j;
        const double si = a1i * s.dxe + a2i * s.dye;
        const double sj = a1j * s.dxe + a2j * s.dye;
        const double recI = gi[k] + s.hx * Dxi[k] + s.hy * Dyi[k] + s.qxx * Dxxi[k] +
                            s.qyy * Dyyi[k] + s.qxy * Dxyi[k];
        const double recJ = gj[k] - s.hx * Dxj[k] - s.hy * Dyj[k] + s.qxx * Dxxj[k] +
                            s.qyy * Dyyj[k] + s.qxy * Dxyj[k];
        const double gmi = (si > 0.0) ? recI : recJ;
        const double gmj = (sj < 0.0) ? recJ : recI;
        oi[k] += (s.Pi * a1i + s.Qi * a2i) * (gmi - gi[k]);
        oj[k] += (s.Pj * a1j + s.Qj * a2j) * (gmj - gj[k]);
    }
}

}  // namespace

void transportMuscl2d(const StencilTable& st, const EdgeList& edges, const MlsCoeffs2d& c,
                      const Eigen::ArrayXd& u1, const Eigen::ArrayXd& u2,
                      const VelocityGrid& vg, const ChuField& f, ChuField& out,
                      TransportWorkspace& ws) {
    const int np = st.points();
    const int nn = f.nodes();
    out.resize(nn, np);
    out.g1.setZero();
    out.g2.setZero();
    const double* v1all = vg.v1().data();
    const double* v2all = vg.v2().data();

    const Eigen::ArrayXXd* g[2] = {&f.g1, &f.g2};
    Eigen::ArrayXXd* o[2] = {&out.g1, &out.g2};

    const int chunk = ws.chunkFor(np, nn, 5);
    for (int k0 = 0; k0 < nn; k0 += chunk) {
        const int len = std::min(chunk, nn - k0);

        for (int fl = 0; fl < 2; ++fl) {
            ws.dx[fl].setZero(len, np);
            ws.dy[fl].setZero(len, np);
            ws.dxx[fl].setZero(len, np);
            ws.dyy[fl].setZero(len, np);
            ws.dxy[fl].setZero(len, np);
        }

        // phase A: per-point derivative tables for this node chunk
        for (int i = 0; i < np; ++i)
            for (int e = st.begin(i); e < st.end(i); ++e) {
                const int j = st.nbr[e];
                for (int fl = 0; fl < 2; ++fl)
                    accumDerivs2d(len, g[fl]->col(i).data() + k0, g[fl]->col(j).data() + k0,
                                  c.xi[e], c.zeta[e], c.eta[e], c.nu[e], c.gxy[e],
                                  ws.dx[fl].col(i).data(), ws.dy[fl].col(i).data(),
                                  ws.dxx[fl].col(i).data(), ws.dyy[fl].col(i).data(),
                                  ws.dxy[fl].col(i).data());
            }

        // phase B: one pass per undirected edge, scattering to both endpoints
        const double* v1 = v1all + k0;
        const double* v2 = v2all + k0;
        const int ne = edges.size();
        for (int ed = 0; ed < ne; ++ed) {
            const int i = edges.a[ed];
            const int j = edges.b[ed];
            const int eij = edges.eab[ed];
            const int eji = edges.eba[ed];
            EdgeScalars sc;
            sc.dxe = edges.dx[ed];
            sc.dye = edges.dy[ed];
            sc.hx = 0.5 * sc.dxe;
            sc.hy = 0.5 * sc.dye;
            sc.qxx = sc.dxe * sc.dxe / 8.0;
            sc.qyy = sc.dye * sc.dye / 8.0;
            sc.qxy = sc.dxe * sc.dye / 4.0;
            sc.Pi = 2.0 * c.xi[eij];
            sc.Qi = 2.0 * c.zeta[eij];
            sc.Pj = 2.0 * c.xi[eji];
            sc.Qj = 2.0 * c.zeta[eji];
            sc.u1i = u1[i];
            sc.u2i = u2[i];
            sc.u1j = u1[j];
            sc.u2j = u2[j];

            for (int fl = 0; fl < 2; ++fl)
                musclEdgeKernel(len, sc, v1, v2, g[fl]->col(i).data() + k0,
                                g[fl]->col(j).data() + k0, ws.dx[fl].col(i).data(),
                                ws.dy[fl].col(i).data(), ws.dxx[fl].col(i).data(),
                                ws.dyy[fl].col(i).data(), ws.dxy[fl].col(i).data(),
                                ws.dx[fl].col(j).data(), ws.dy[fl].col(j).data(),
                                ws.dxx[fl].col(j).data(), ws.dyy[fl].col(j).data(),
                                ws.dxy[fl].col(j).data(), o[fl]->col(i).data() + k0,
                                o[fl]->col(j).data() + k0);
        }
    }
}

}  // namespace mbgk
