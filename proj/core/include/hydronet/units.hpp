#pragma once

#include <string>

namespace hydronet {

/// EPANET flow-unit systems. The first five imply US customary lengths
/// (feet, inches), the rest metric lengths (meters, millimeters).
enum class FlowUnits { CFS, GPM, MGD, IMGD, AFD, LPS, LPM, MLD, CMH, CMD };

/// Conversion factor f such that (value in `units`) * f = m^3/s.
double flow_to_si_factor(FlowUnits units);

bool is_us_customary(FlowUnits units);

/// Throws UnsupportedUnits for tokens outside the enum.
FlowUnits parse_flow_units(const std::string& token);

const char* to_string(FlowUnits units);

namespace units {

inline constexpr double kGravity = 9.80665;        // m/s^2
inline constexpr double kFoot = 0.3048;            // m
inline constexpr double kInch = 0.0254;            // m
inline constexpr double kPsiPerFoot = 0.4333;      // EPANET pressure convention
inline constexpr double kPsiToMeter = kFoot / kPsiPerFoot;

}  // namespace units

}  // namespace hydronet
