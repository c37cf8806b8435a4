#pragma once

namespace robgate {

// Algebraic identities are checked at this level.
inline constexpr double kIdentityTol = 1e-12;
// Inputs (axes, unitarity) are accepted within this.
inline constexpr double kInputTol = 1e-9;
inline constexpr double kUnitaryInputTol = 1e-10;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

inline constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

}  // namespace robgate
