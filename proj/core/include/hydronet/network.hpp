#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hydronet/units.hpp"

namespace hydronet {

enum class HeadlossLaw { HazenWilliams, DarcyWeisbach };
enum class LinkStatus { Open, Closed };
enum class ValveType { GPV, TCV, PBV, FCV, PRV, PSV };
enum class ValveStatus { Open, Active, Closed };

const char* to_string(ValveType type);
ValveType parse_valve_type(const std::string& token);

struct Junction {
    std::string id;
    double elevation = 0.0;      // m
    double base_demand = 0.0;    // m^3/s
    std::optional<std::string> pattern_id;
};

struct Reservoir {
    std::string id;
    double head = 0.0;  // m
};

struct Tank {
    std::string id;
    double elevation = 0.0;   // m
    double init_level = 0.0;  // m above tank bottom
    double min_level = 0.0;
    double max_level = 0.0;
    double diameter = 0.0;    // m
};

struct Pipe {
    std::string id;
    std::string from;
    std::string to;
    double length = 0.0;      // m
    double diameter = 0.0;    // m
    double roughness = 0.0;   // HW C (dimensionless) or DW epsilon (m)
    double minor_loss = 0.0;  // dimensionless
    LinkStatus initial_status = LinkStatus::Open;
};

struct Pump {
    std::string id;
    std::string from;
    std::string to;
    std::string curve_id;
    double speed = 1.0;
    LinkStatus initial_status = LinkStatus::Open;
};

struct Valve {
    std::string id;
    std::string from;
    std::string to;
    double diameter = 0.0;  // m
    ValveType kind = ValveType::TCV;
    double setting = 0.0;   // kind dependent, SI where dimensional
    ValveStatus status = ValveStatus::Open;
};

struct CurvePoint {
    double flow = 0.0;  // m^3/s
    double head = 0.0;  // m
};

struct Pattern {
    std::vector<double> multipliers;
    double period = 3600.0;  // s per multiplier slot
};

struct NetworkOptions {
    HeadlossLaw headloss_model = HeadlossLaw::HazenWilliams;
    FlowUnits flow_units = FlowUnits::LPS;
    double duration = 0.0;        // s
    double hydraulic_step = 300.0;  // s
    double pattern_step = 3600.0;   // s
};

enum class ControlAttribute { Speed, Setting, Status };

/// Time-indexed setpoint change from [CONTROLS] or [STATUS]-style rules.
struct ControlEntry {
    double time = 0.0;  // s from run start
    std::string link_id;
    ControlAttribute attribute = ControlAttribute::Status;
    double value = 0.0;  // for Status: 1 = open, 0 = closed
};

struct NetworkDescription {
    std::string title;
    std::vector<Junction> junctions;
    std::vector<Reservoir> reservoirs;
    std::vector<Tank> tanks;
    std::vector<Pipe> pipes;
    std::vector<Pump> pumps;
    std::vector<Valve> valves;
    std::map<std::string, std::vector<CurvePoint>> curves;
    std::map<std::string, Pattern> patterns;
    NetworkOptions options;
    std::vector<ControlEntry> controls;
    FlowUnits source_units = FlowUnits::LPS;  // provenance of the parsed file
};

struct Diagnostic {
    std::string severity;  // "error" | "warning"
    std::string code;
    std::string id;        // offending node/link id, may be empty
    std::string message;
    int line = 0;
};

/// Checks the structural invariants of a NetworkDescription and returns one
/// diagnostic per violation. An empty list means the network is well formed.
std::vector<Diagnostic> validate(const NetworkDescription& net);

/// Serializes diagnostics as JSON lines {severity, code, id, message, line}.
std::string diagnostics_to_jsonl(const std::vector<Diagnostic>& diags);

/// Writes the network back out as a canonical INP text (metric units, LPS)
/// such that re-parsing reproduces the same structure.
std::string to_canonical_inp(const NetworkDescription& net);

}  // namespace hydronet
