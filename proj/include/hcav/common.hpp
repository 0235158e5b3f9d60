#pragma once

// Shared basics for the hcav toolkit.
//
// Unit system: eps0 = c = hbar = 1. Lengths are measured in units of the
// domain bounding box, frequencies in c / length.

#include <cmath>
#include <stdexcept>
#include <string>

namespace hcav {

inline constexpr double eps0 = 1.0;    // vacuum permittivity
inline constexpr double c_light = 1.0; // speed of light

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double norm(const Vec2& a) { return std::sqrt(dot(a, a)); }

/// Bad input: malformed domain, misplaced dipole, schema violation, ...
/// The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
  public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A linear or eigenvalue solver failed to reach its tolerance.
/// Carries the residual that was attained. CLI exit code 3.
class SolverError : public std::runtime_error {
  public:
    SolverError(const std::string& msg, double attained_residual)
        : std::runtime_error(msg + " (attained residual " + std::to_string(attained_residual) + ")"),
          residual(attained_residual) {}
    double residual = 0.0;
};

} // namespace hcav
