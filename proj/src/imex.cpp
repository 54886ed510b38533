#include "mbgk/imex.hpp"

#include <cmath>

#include "mbgk/types.hpp"

namespace mbgk {

namespace {

void finalize(ImexTableau& t) {
    const int s = t.stages;
    t.cExp = t.aExp.rowwise().sum();
    t.cImp = t.aImp.rowwise().sum();
    bool sa = std::abs(t.wExp[s - 1]) < 1e-14;  // explicit part needs w_nu = 0
    for (int p = 0; p < s; ++p) {
        if (std::abs(t.aExp(s - 1, p) - t.wExp[p]) > 1e-14) sa = false;
        if (std::abs(t.aImp(s - 1, p) - t.wImp[p]) > 1e-14) sa = false;
    }
    t.stifflyAccurate = sa;
    t.validate();
}

}  // namespace

ImexTableau ImexTableau::ars222() {
    const double g = 1.0 - std::sqrt(2.0) / 2.0;
    const double d = 1.0 - 1.0 / (2.0 * g);
    ImexTableau t;
    t.name = "ars222";
    t.stages = 3;
    t.aExp = Eigen::MatrixXd::Zero(3, 3);
    t.aImp = Eigen::MatrixXd::Zero(3, 3);
    t.aExp(1, 0) = g;
    t.aExp(2, 0) = d;
    t.aExp(2, 1) = 1.0 - d;
    t.aImp(1, 1) = g;
    t.aImp(2, 1) = 1.0 - g;
    t.aImp(2, 2) = g;
    t.wExp = Eigen::Vector3d(d, 1.0 - d, 0.0);
    t.wImp = Eigen::Vector3d(0.0, 1.0 - g, g);
    finalize(t);
    return t;
}

ImexTableau ImexTableau::ssp2_332() {
    ImexTableau t;
    t.name = "ssp2_332";
    t.stages = 3;
    t.aExp = Eigen::MatrixXd::Zero(3, 3);
    t.aImp = Eigen::MatrixXd::Zero(3, 3);
    t.aExp(1, 0) = 1.0;
    t.aExp(2, 0) = 0.25;
    t.aExp(2, 1) = 0.25;
    t.aImp(0, 0) = 0.25;
    t.aImp(1, 1) = 0.25;
    t.aImp(2, 0) = 1.0 / 3.0;
    t.aImp(2, 1) = 1.0 / 3.0;
    t.aImp(2, 2) = 1.0 / 3.0;
    t.wExp = Eigen::Vector3d(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0);
    t.wImp = Eigen::Vector3d(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0);
    finalize(t);
    return t;
}

ImexTableau ImexTableau::fromName(const std::string& n) {
    if (n == "ars222") return ars222();
    if (n == "ssp2_332" || n == "ssp2") return ssp2_332();
    throw ConfigError("unknown tableau '" + n + "'");
}

void ImexTableau::validate() const {
    const int s = stages;
    auto fail = [&](const std::string& m) {
        throw ConfigError("ImexTableau " + name + ": " + m);
    };
    if (aExp.rows() != s || aImp.rows() != s) fail("shape mismatch");
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) {
            if (j >= i && aExp(i, j) != 0.0) fail("explicit tableau not strictly lower");
            if (j > i && aImp(i, j) != 0.0) fail("implicit tableau not lower");
        }
    for (int i = 0; i < s; ++i)
        if (aImp(i, i) < 0.0) fail("negative implicit diagonal");
    if (std::abs(wExp.sum() - 1.0) > 1e-13) fail("explicit weights do not sum to 1");
    if (std::abs(wImp.sum() - 1.0) > 1e-13) fail("implicit weights do not sum to 1");
    if (std::abs(wExp.dot(cExp) - 0.5) > 1e-13) fail("explicit part not second order");
    if (std::abs(wImp.dot(cImp) - 0.5) > 1e-13) fail("implicit part not second order");
}

}  // namespace mbgk
