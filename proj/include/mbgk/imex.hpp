#pragma once

#include <string>

#include <Eigen/Core>

namespace mbgk {

/// IMEX Runge-Kutta tableau pair: explicit transport coefficients (aExp, wExp)
/// and DIRK relaxation coefficients (aImp, wImp). cExp/cImp are row sums.
struct ImexTableau {
    std::string name;
    int stages = 0;
    Eigen::MatrixXd aExp, aImp;
    Eigen::VectorXd wExp, wImp;
    Eigen::VectorXd cExp, cImp;
    bool stifflyAccurate = false;  // last rows equal the weights in both parts

    /// ARS(2,2,2): gamma = 1 - sqrt(2)/2, delta = 1 - 1/(2 gamma).
    static ImexTableau ars222();
    /// IMEX-SSP2(3,3,2) of the standard second-order family.
    static ImexTableau ssp2_332();

    static ImexTableau fromName(const std::string& n);

    /// Asserts structure and the consistency/order identities
    /// (triangularity, sum w = 1, w.c = 1/2 for both parts).
    void validate() const;
};

}  // namespace mbgk
