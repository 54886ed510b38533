#include "mbgk/gas.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mbgk/types.hpp"

namespace mbgk {

void GasParameters::validate() const {
    if (!(rs > 0.0)) throw ConfigError("GasParameters: rs must be positive");
    if (!(tau > 0.0)) throw ConfigError("GasParameters: tau must be positive");
}

RelaxationTime relaxationTime(double p0, double T0, const GasParameters& gas) {
    if (!(p0 > 0.0) || !(T0 > 0.0) || !(gas.rs > 0.0) || !(gas.kb > 0.0) || !(gas.d > 0.0))
        throw ConfigError("relaxationTime: p0, T0, rs, kb, d must all be positive");
    const double rho0 = p0 / (gas.rs * T0);
    const double lambda =
        gas.kb / (std::sqrt(2.0) * std::numbers::pi * rho0 * gas.rs * gas.d * gas.d);
    const double tau = 4.0 * lambda / std::sqrt(8.0 * std::numbers::pi * gas.rs * T0);
    return {lambda, tau};
}

}  // namespace mbgk
