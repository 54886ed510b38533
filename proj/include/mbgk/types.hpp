#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mbgk {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2& operator+=(const Vec2& o) {
        x += o.x;
        y += o.y;
        return *this;
    }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double norm2() const { return x * x + y * y; }
    double norm() const;
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

/// Role of a grid point in the moving cloud.
enum class Role : std::uint8_t {
    Interior = 0,   // moves with the local mean gas velocity
    OuterWall = 1,  // static domain boundary, U_ALE = 0
    RigidSurface = 2  // attached to a rigid body, U_ALE = U_w
};

const char* roleName(Role r);

/// Inadmissible macroscopic state (rho <= 0 or T <= 0).
class AdmissibilityError : public std::runtime_error {
public:
    AdmissibilityError(std::string what, long point, double rho, double T);
    long point() const { return point_; }
    double rho() const { return rho_; }
    double temperature() const { return T_; }

private:
    long point_;
    double rho_;
    double T_;
};

/// Stencil unable to support the requested least-squares fit.
class StencilDegeneracyError : public std::runtime_error {
public:
    StencilDegeneracyError(std::string what, long point);
    long point() const { return point_; }

private:
    long point_;
};

/// Wall-density closure of the diffuse-reflective condition is singular.
class BoundaryClosureError : public std::runtime_error {
public:
    explicit BoundaryClosureError(std::string what);
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::string what);
};

}  // namespace mbgk
