#include "mbgk/riemann.hpp"

#include <cmath>
#include <string>

namespace mbgk {

namespace {

double soundSpeed(const RiemannState& s, double gamma) {
    return std::sqrt(gamma * s.p / s.rho);
}

// Toro's pressure function for one side and its derivative.
void pressureFunction(double p, const RiemannState& s, double gamma, double& f, double& df) {
    const double c = soundSpeed(s, gamma);
    if (p > s.p) {  // shock
        const double A = 2.0 / ((gamma + 1.0) * s.rho);
        const double B = (gamma - 1.0) / (gamma + 1.0) * s.p;
        const double q = std::sqrt(A / (p + B));
        f = (p - s.p) * q;
        df = q * (1.0 - 0.5 * (p - s.p) / (p + B));
    } else {  // rarefaction
        const double pr = p / s.p;
        f = 2.0 * c / (gamma - 1.0) * (std::pow(pr, (gamma - 1.0) / (2.0 * gamma)) - 1.0);
        df = std::pow(pr, -(gamma + 1.0) / (2.0 * gamma)) / (s.rho * c);
    }
}

}  // namespace

RiemannSolution solveRiemann(const RiemannState& left, const RiemannState& right, double gamma) {
    if (!(left.rho > 0.0) || !(left.p > 0.0) || !(right.rho > 0.0) || !(right.p > 0.0))
        throw ConfigError("solveRiemann: states must have positive density and pressure");
    const double cl = soundSpeed(left, gamma);
    const double cr = soundSpeed(right, gamma);
    if (2.0 * (cl + cr) / (gamma - 1.0) <= right.u - left.u)
        throw ConfigError("solveRiemann: vacuum formation is not supported");

    // two-rarefaction initial guess, clipped away from zero
    double p = std::pow(
        (cl + cr - 0.5 * (gamma - 1.0) * (right.u - left.u)) /
            (cl / std::pow(left.p, (gamma - 1.0) / (2.0 * gamma)) +
             cr / std::pow(right.p, (gamma - 1.0) / (2.0 * gamma))),
        2.0 * gamma / (gamma - 1.0));
    p = std::max(p, 1e-12 * std::min(left.p, right.p));

    for (int it = 0; it < 100; ++it) {
        double fl, dfl, fr, dfr;
        pressureFunction(p, left, gamma, fl, dfl);
        pressureFunction(p, right, gamma, fr, dfr);
        const double f = fl + fr + (right.u - left.u);
        const double dp = f / (dfl + dfr);
        double pn = p - dp;
        if (pn <= 0.0) pn = 0.5 * p;
        const double rel = std::abs(pn - p) / (0.5 * (pn + p));
        p = pn;
        if (rel < 1e-15) break;
    }
    double fl, dfl, fr, dfr;
    pressureFunction(p, left, gamma, fl, dfl);
    pressureFunction(p, right, gamma, fr, dfr);
    return {p, 0.5 * (left.u + right.u) + 0.5 * (fr - fl)};
}

RiemannState sampleRiemann(const RiemannState& left, const RiemannState& right, double gamma,
                           const RiemannSolution& sol, double xi) {
    const double g = gamma;
    const double gm = g - 1.0, gp = g + 1.0;
    if (xi <= sol.uStar) {
        const RiemannState& s = left;
        const double c = soundSpeed(s, g);
        if (sol.pStar > s.p) {  // left shock
            const double S = s.u - c * std::sqrt(gp / (2.0 * g) * sol.pStar / s.p + gm / (2.0 * g));
            if (xi <= S) return s;
            const double r = s.rho * ((sol.pStar / s.p + gm / gp) / (gm / gp * sol.pStar / s.p + 1.0));
            return {r, sol.uStar, sol.pStar};
        }
        const double head = s.u - c;
        const double cStar = c * std::pow(sol.pStar / s.p, gm / (2.0 * g));
        const double tail = sol.uStar - cStar;
        if (xi <= head) return s;
        if (xi >= tail) return {s.rho * std::pow(sol.pStar / s.p, 1.0 / g), sol.uStar, sol.pStar};
        const double fac = 2.0 / gp + gm / (gp * c) * (s.u - xi);
        return {s.rho * std::pow(fac, 2.0 / gm), 2.0 / gp * (c + 0.5 * gm * s.u + xi),
                s.p * std::pow(fac, 2.0 * g / gm)};
    }
    const RiemannState& s = right;
    const double c = soundSpeed(s, g);
    if (sol.pStar > s.p) {  // right shock
        const double S = s.u + c * std::sqrt(gp / (2.0 * g) * sol.pStar / s.p + gm / (2.0 * g));
        if (xi >= S) return s;
        const double r = s.rho * ((sol.pStar / s.p + gm / gp) / (gm / gp * sol.pStar / s.p + 1.0));
        return {r, sol.uStar, sol.pStar};
    }
    const double head = s.u + c;
    const double cStar = c * std::pow(sol.pStar / s.p, gm / (2.0 * g));
    const double tail = sol.uStar + cStar;
    if (xi >= head) return s;
    if (xi <= tail) return {s.rho * std::pow(sol.pStar / s.p, 1.0 / g), sol.uStar, sol.pStar};
    const double fac = 2.0 / gp - gm / (gp * c) * (s.u - xi);
    return {s.rho * std::pow(fac, 2.0 / gm), 2.0 / gp * (-c + 0.5 * gm * s.u + xi),
            s.p * std::pow(fac, 2.0 * g / gm)};
}

std::vector<RiemannState> riemannProfile(const RiemannState& left, const RiemannState& right,
                                         double gamma, double t, double x0,
                                         const std::vector<double>& xs) {
    std::vector<RiemannState> out;
    out.reserve(xs.size());
    if (t <= 0.0) {
        for (double x : xs) out.push_back(x <= x0 ? left : right);
        return out;
    }
    const RiemannSolution sol = solveRiemann(left, right, gamma);
    for (double x : xs) out.push_back(sampleRiemann(left, right, gamma, sol, (x - x0) / t));
    return out;
}

}  // namespace mbgk
