#include "hydronet/network.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hydronet/errors.hpp"

namespace hydronet {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

const char* to_string(ValveType type) {
    switch (type) {
        case ValveType::GPV: return "GPV";
        case ValveType::TCV: return "TCV";
        case ValveType::PBV: return "PBV";
        case ValveType::FCV: return "FCV";
        case ValveType::PRV: return "PRV";
        case ValveType::PSV: return "PSV";
    }
    return "?";
}

ValveType parse_valve_type(const std::string& token) {
    std::string t = token;
    std::transform(t.begin(), t.end(), t.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (t == "GPV") return ValveType::GPV;
    if (t == "TCV") return ValveType::TCV;
    if (t == "PBV") return ValveType::PBV;
    if (t == "FCV") return ValveType::FCV;
    if (t == "PRV") return ValveType::PRV;
    if (t == "PSV") return ValveType::PSV;
    raise(ErrorCode::UnsupportedFeature, "valve type '" + token + "' is not supported");
}

std::vector<Diagnostic> validate(const NetworkDescription& net) {
    std::vector<Diagnostic> diags;
    auto add = [&](const std::string& code, const std::string& id, const std::string& msg) {
        diags.push_back({"error", code, id, msg, 0});
    };

    std::set<std::string> nodes;
    for (const auto& j : net.junctions) nodes.insert(j.id);
    for (const auto& t : net.tanks) nodes.insert(t.id);
    for (const auto& r : net.reservoirs) nodes.insert(r.id);

    auto check_endpoint = [&](const std::string& link, const std::string& node) {
        if (!nodes.count(node))
            add("UnresolvedReference", link, "link endpoint '" + node + "' is not a declared node");
    };
    for (const auto& p : net.pipes) {
        check_endpoint(p.id, p.from);
        check_endpoint(p.id, p.to);
        if (p.length <= 0.0) add("DegenerateGeometry", p.id, "pipe length must be positive");
        if (p.diameter <= 0.0) add("DegenerateGeometry", p.id, "pipe diameter must be positive");
    }
    for (const auto& m : net.pumps) {
        check_endpoint(m.id, m.from);
        check_endpoint(m.id, m.to);
        if (!net.curves.count(m.curve_id))
            add("UnresolvedReference", m.id, "pump curve '" + m.curve_id + "' is not declared");
        if (m.speed < 0.0) add("InvalidArgument", m.id, "pump speed must be nonnegative");
    }
    for (const auto& v : net.valves) {
        check_endpoint(v.id, v.from);
        check_endpoint(v.id, v.to);
        if (v.diameter <= 0.0) add("DegenerateGeometry", v.id, "valve diameter must be positive");
    }
    for (const auto& t : net.tanks) {
        if (t.diameter <= 0.0) add("DegenerateGeometry", t.id, "tank diameter must be positive");
        if (t.min_level < 0.0) add("InvalidArgument", t.id, "tank min level must be nonnegative");
        if (t.init_level < t.min_level)
            add("InvalidArgument", t.id, "tank init level below min level");
        if (t.max_level < t.init_level)
            add("InvalidArgument", t.id, "tank max level below init level");
    }
    for (const auto& j : net.junctions) {
        if (j.pattern_id && !net.patterns.count(*j.pattern_id))
            add("UnresolvedReference", j.id, "demand pattern '" + *j.pattern_id + "' is not declared");
    }
    if (net.reservoirs.empty() && net.tanks.empty())
        add("MissingSection", "", "network needs at least one reservoir or tank as a head anchor");
    return diags;
}

std::string diagnostics_to_jsonl(const std::vector<Diagnostic>& diags) {
    std::string out;
    for (const auto& d : diags) {
        nlohmann::json j;
        j["severity"] = d.severity;
        j["code"] = d.code;
        j["id"] = d.id;
        j["message"] = d.message;
        j["line"] = d.line;
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::string to_canonical_inp(const NetworkDescription& net) {
    // Canonical form is metric with LPS flow units: lengths in m, pipe and
    // valve diameters in mm, demands and curve flows in L/s.
    const double q_scale = 1.0e3;   // m^3/s -> L/s
    const double d_scale = 1.0e3;   // m -> mm
    std::ostringstream os;
    os << "[TITLE]\n" << net.title << "\n\n";

    os << "[JUNCTIONS]\n";
    for (const auto& j : net.junctions) {
        os << j.id << " " << fmt(j.elevation) << " " << fmt(j.base_demand * q_scale);
        if (j.pattern_id) os << " " << *j.pattern_id;
        os << "\n";
    }
    os << "\n[RESERVOIRS]\n";
    for (const auto& r : net.reservoirs) os << r.id << " " << fmt(r.head) << "\n";

    os << "\n[TANKS]\n";
    for (const auto& t : net.tanks) {
        os << t.id << " " << fmt(t.elevation) << " " << fmt(t.init_level) << " "
           << fmt(t.min_level) << " " << fmt(t.max_level) << " " << fmt(t.diameter) << "\n";
    }
    os << "\n[PIPES]\n";
    for (const auto& p : net.pipes) {
        os << p.id << " " << p.from << " " << p.to << " " << fmt(p.length) << " "
           << fmt(p.diameter * d_scale) << " "
           << fmt(net.options.headloss_model == HeadlossLaw::DarcyWeisbach ? p.roughness * d_scale
                                                                           : p.roughness)
           << " " << fmt(p.minor_loss) << " "
           << (p.initial_status == LinkStatus::Open ? "OPEN" : "CLOSED") << "\n";
    }
    os << "\n[PUMPS]\n";
    for (const auto& m : net.pumps) {
        os << m.id << " " << m.from << " " << m.to << " HEAD " << m.curve_id;
        if (m.speed != 1.0) os << " SPEED " << fmt(m.speed);
        os << "\n";
    }
    os << "\n[VALVES]\n";
    for (const auto& v : net.valves) {
        // FCV settings are flows and follow the file's flow units.
        double setting = v.kind == ValveType::FCV ? v.setting * q_scale : v.setting;
        os << v.id << " " << v.from << " " << v.to << " " << fmt(v.diameter * d_scale) << " "
           << to_string(v.kind) << " " << fmt(setting) << " 0\n";
    }
    os << "\n[CURVES]\n";
    for (const auto& [id, pts] : net.curves)
        for (const auto& pt : pts)
            os << id << " " << fmt(pt.flow * q_scale) << " " << fmt(pt.head) << "\n";

    os << "\n[PATTERNS]\n";
    for (const auto& [id, pat] : net.patterns) {
        for (const auto& m : pat.multipliers) os << id << " " << fmt(m) << "\n";
    }
    os << "\n[STATUS]\n";
    for (const auto& v : net.valves) {
        if (v.status == ValveStatus::Closed) os << v.id << " CLOSED\n";
        else if (v.status == ValveStatus::Open) os << v.id << " OPEN\n";
    }
    for (const auto& m : net.pumps) {
        if (m.initial_status == LinkStatus::Closed) os << m.id << " CLOSED\n";
    }
    os << "\n[CONTROLS]\n";
    for (const auto& c : net.controls) {
        os << "LINK " << c.link_id << " ";
        if (c.attribute == ControlAttribute::Status)
            os << (c.value > 0.5 ? "OPEN" : "CLOSED");
        else
            os << fmt(c.value);
        os << " AT TIME " << fmt(c.time / 3600.0) << "\n";
    }
    os << "\n[TIMES]\n";
    os << "DURATION " << fmt(net.options.duration / 3600.0) << " HOURS\n";
    os << "HYDRAULIC TIMESTEP " << fmt(net.options.hydraulic_step / 3600.0) << " HOURS\n";
    os << "PATTERN TIMESTEP " << fmt(net.options.pattern_step / 3600.0) << " HOURS\n";
    os << "\n[OPTIONS]\n";
    os << "UNITS LPS\n";
    os << "HEADLOSS "
       << (net.options.headloss_model == HeadlossLaw::DarcyWeisbach ? "D-W" : "H-W") << "\n";
    os << "\n[END]\n";
    return os.str();
}

}  // namespace hydronet
