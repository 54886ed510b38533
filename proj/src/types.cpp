#include "mbgk/types.hpp"

#include <cmath>

namespace mbgk {

double Vec2::norm() const { return std::sqrt(x * x + y * y); }

const char* roleName(Role r) {
    switch (r) {
        case Role::Interior: return "interior";
        case Role::OuterWall: return "outer-wall";
        case Role::RigidSurface: return "rigid-surface";
    }
    return "?";
}

AdmissibilityError::AdmissibilityError(std::string what, long point, double rho, double T)
    : std::runtime_error(std::move(what)), point_(point), rho_(rho), T_(T) {}

StencilDegeneracyError::StencilDegeneracyError(std::string what, long point)
    : std::runtime_error(std::move(what)), point_(point) {}

BoundaryClosureError::BoundaryClosureError(std::string what)
    : std::runtime_error(std::move(what)) {}

ConfigError::ConfigError(std::string what) : std::runtime_error(std::move(what)) {}

}  // namespace mbgk
