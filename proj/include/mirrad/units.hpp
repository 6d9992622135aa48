#pragma once

#include <numbers>

namespace mirrad {

// Natural units throughout: c = 1, eps0 = 1. Frequencies and wavevectors
// carry inverse-length units; angles are radians unless a name says _deg.

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

// Emission angles are capped below grazing: cos(theta) -> 0 there and the
// low-order sideband truncation loses validity.
inline constexpr double kThetaMaxDeg = 89.9;
inline const double kThetaMaxRad = deg_to_rad(kThetaMaxDeg);

}  // namespace mirrad
