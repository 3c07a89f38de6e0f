#pragma once

#include <numbers>

// Unit conventions: lengths mm, angles rad (deg at interfaces), pressure kPa,
// volume mm^3, energy uJ, torque N*mm, crease stiffness N/rad per mm of crease.
namespace kresling::units {

inline constexpr double kPi = std::numbers::pi;

constexpr double deg(double radians) { return radians * 180.0 / kPi; }
constexpr double rad(double degrees) { return degrees * kPi / 180.0; }

// SI scale of each unit used by the model.
inline constexpr double kPascalPerKiloPascal = 1e3;
inline constexpr double kCubicMetrePerCubicMillimetre = 1e-9;
inline constexpr double kJoulePerMicroJoule = 1e-6;
inline constexpr double kJoulePerMilliJoule = 1e-3;
inline constexpr double kNewtonMetrePerNewtonMillimetre = 1e-3;

/// kPa * mm^3 expressed in uJ (exactly 1).
inline constexpr double kMicroJoulePerKiloPascalCubicMillimetre =
    kPascalPerKiloPascal * kCubicMetrePerCubicMillimetre / kJoulePerMicroJoule;

/// Crease energy k[N/rad] * L[mm] * dtheta^2 comes out in N*mm = mJ.
inline constexpr double kMicroJoulePerNewtonMillimetre =
    kNewtonMetrePerNewtonMillimetre / kJoulePerMicroJoule;

/// dPi/dtheta in uJ/rad to torque in N*mm.
inline constexpr double kNewtonMillimetrePerMicroJoule =
    kJoulePerMicroJoule / kNewtonMetrePerNewtonMillimetre;

}  // namespace kresling::units
