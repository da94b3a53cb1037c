#include "hydronet/units.hpp"

#include <algorithm>
#include <cctype>

#include "hydronet/errors.hpp"

namespace hydronet {

namespace {

constexpr double kGallon = 3.785411784e-3;         // m^3 (US gallon)
constexpr double kImperialGallon = 4.54609e-3;     // m^3
constexpr double kCubicFoot = 0.3048 * 0.3048 * 0.3048;
constexpr double kAcreFoot = 43560.0 * kCubicFoot;
constexpr double kDay = 86400.0;

}  // namespace

double flow_to_si_factor(FlowUnits units) {
    switch (units) {
        case FlowUnits::CFS: return kCubicFoot;
        case FlowUnits::GPM: return kGallon / 60.0;
        case FlowUnits::MGD: return 1.0e6 * kGallon / kDay;
        case FlowUnits::IMGD: return 1.0e6 * kImperialGallon / kDay;
        case FlowUnits::AFD: return kAcreFoot / kDay;
        case FlowUnits::LPS: return 1.0e-3;
        case FlowUnits::LPM: return 1.0e-3 / 60.0;
        case FlowUnits::MLD: return 1.0e3 / kDay;
        case FlowUnits::CMH: return 1.0 / 3600.0;
        case FlowUnits::CMD: return 1.0 / kDay;
    }
    raise(ErrorCode::UnsupportedUnits, "unknown flow unit enum value");
}

bool is_us_customary(FlowUnits units) {
    switch (units) {
        case FlowUnits::CFS:
        case FlowUnits::GPM:
        case FlowUnits::MGD:
        case FlowUnits::IMGD:
        case FlowUnits::AFD:
            return true;
        default:
            return false;
    }
}

FlowUnits parse_flow_units(const std::string& token) {
    std::string t = token;
    std::transform(t.begin(), t.end(), t.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (t == "CFS") return FlowUnits::CFS;
    if (t == "GPM") return FlowUnits::GPM;
    if (t == "MGD") return FlowUnits::MGD;
    if (t == "IMGD") return FlowUnits::IMGD;
    if (t == "AFD") return FlowUnits::AFD;
    if (t == "LPS") return FlowUnits::LPS;
    if (t == "LPM") return FlowUnits::LPM;
    if (t == "MLD") return FlowUnits::MLD;
    if (t == "CMH") return FlowUnits::CMH;
    if (t == "CMD") return FlowUnits::CMD;
    raise(ErrorCode::UnsupportedUnits, "flow unit token '" + token + "' is not supported");
}

const char* to_string(FlowUnits units) {
    switch (units) {
        case FlowUnits::CFS: return "CFS";
        case FlowUnits::GPM: return "GPM";
        case FlowUnits::MGD: return "MGD";
        case FlowUnits::IMGD: return "IMGD";
        case FlowUnits::AFD: return "AFD";
        case FlowUnits::LPS: return "LPS";
        case FlowUnits::LPM: return "LPM";
        case FlowUnits::MLD: return "MLD";
        case FlowUnits::CMH: return "CMH";
        case FlowUnits::CMD: return "CMD";
    }
    return "?";
}

}  // namespace hydronet
