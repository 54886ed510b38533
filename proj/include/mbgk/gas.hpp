#pragma once

namespace mbgk {

/// Gas constants. SI units throughout; dimensionless cases set rs = 1.
struct GasParameters {
    double rs = 1.0;    // specific gas constant [J/(kg K)]
    double tau = 1.0;   // relaxation time [s]
    double kb = 1.380649e-23;  // Boltzmann constant [J/K]
    double d = 0.0;     // molecule diameter [m], used by relaxationTime()

    void validate() const;
};

struct RelaxationTime {
    double lambda;  // mean free path [m]
    double tau;     // relaxation time [s]
};

/// Hard-sphere mean free path and relaxation time from a reference state:
/// lambda = kb / (sqrt(2) pi rho0 rs d^2) with rho0 = p0/(rs T0),
/// tau = 4 lambda / sqrt(8 pi rs T0).
RelaxationTime relaxationTime(double p0, double T0, const GasParameters& gas);

}  // namespace mbgk
