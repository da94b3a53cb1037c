#include "hydronet/inp_parser.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "hydronet/errors.hpp"

namespace hydronet {

namespace {

std::string upcase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return s;
}

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream is(line);
    std::string t;
    while (is >> t) toks.push_back(t);
    return toks;
}

struct RawLine {
    std::vector<std::string> tokens;
    int number = 0;
};

double to_double(const std::string& tok, int line) {
    try {
        size_t pos = 0;
        double v = std::stod(tok, &pos);
        if (pos != tok.size())
            raise(ErrorCode::MalformedLine,
                  "trailing characters in numeric field '" + tok + "' at line " + std::to_string(line));
        return v;
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        raise(ErrorCode::MalformedLine,
              "expected a number, got '" + tok + "' at line " + std::to_string(line));
    }
}

/// TIMES values accept "H:M[:S]", a plain number of hours, or a number
/// followed by HOURS/MIN/MINUTES/SEC/SECONDS/DAYS.
double parse_clock_seconds(const std::vector<std::string>& toks, size_t first, int line) {
    if (first >= toks.size())
        raise(ErrorCode::MalformedLine, "missing time value at line " + std::to_string(line));
    const std::string& v = toks[first];
    if (v.find(':') != std::string::npos) {
        int h = 0, m = 0, s = 0;
        char c1 = 0, c2 = 0;
        std::istringstream is(v);
        is >> h >> c1 >> m;
        if (is && is.peek() == ':') is >> c2 >> s;
        return 3600.0 * h + 60.0 * m + s;
    }
    double value = to_double(v, line);
    double scale = 3600.0;  // default unit is hours
    if (first + 1 < toks.size()) {
        std::string unit = upcase(toks[first + 1]);
        if (unit.rfind("HOUR", 0) == 0 || unit == "HRS" || unit == "HR") scale = 3600.0;
        else if (unit.rfind("MIN", 0) == 0) scale = 60.0;
        else if (unit.rfind("SEC", 0) == 0) scale = 1.0;
        else if (unit.rfind("DAY", 0) == 0) scale = 86400.0;
    }
    return value * scale;
}

struct DemandRow {
    std::string junction;
    double value;
    std::optional<std::string> pattern;
    int line;
};

}  // namespace

ParseResult parse_inp(const std::string& text) {
    ParseResult result;
    NetworkDescription& net = result.net;

    static const std::set<std::string> kSupported = {
        "TITLE", "JUNCTIONS", "RESERVOIRS", "TANKS",   "PIPES", "PUMPS",    "VALVES",
        "DEMANDS", "PATTERNS",  "CURVES", "STATUS", "CONTROLS", "TIMES", "OPTIONS", "END"};

    // First pass: bucket data rows per section, strip comments and blanks.
    std::map<std::string, std::vector<RawLine>> sections;
    std::vector<std::string> title_lines;
    std::string section;
    std::set<std::string> skipped;
    std::istringstream stream(text);
    std::string line;
    int lineno = 0;
    while (std::getline(stream, line)) {
        ++lineno;
        if (auto pos = line.find(';'); pos != std::string::npos) line.erase(pos);
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.pop_back();
        size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        if (line[start] == '[') {
            size_t close = line.find(']', start);
            if (close == std::string::npos)
                raise(ErrorCode::MalformedLine, "unterminated section header at line " + std::to_string(lineno));
            section = upcase(line.substr(start + 1, close - start - 1));
            if (!kSupported.count(section) && !skipped.count(section)) {
                skipped.insert(section);
                result.warnings.push_back(
                    {"warning", "UnsupportedSection", section, "section skipped", lineno});
            }
            continue;
        }
        if (section.empty()) continue;
        if (section == "TITLE") {
            title_lines.push_back(line.substr(start));
            continue;
        }
        if (!kSupported.count(section)) continue;
        sections[section].push_back({tokenize(line), lineno});
    }
    for (size_t i = 0; i < title_lines.size(); ++i)
        net.title += (i ? "\n" : "") + title_lines[i];

    if (sections["JUNCTIONS"].empty() && sections["RESERVOIRS"].empty() && sections["TANKS"].empty())
        raise(ErrorCode::MissingSection, "no node sections ([JUNCTIONS]/[RESERVOIRS]/[TANKS]) found");
    if (sections["PIPES"].empty() && sections["PUMPS"].empty() && sections["VALVES"].empty())
        raise(ErrorCode::MissingSection, "no link sections ([PIPES]/[PUMPS]/[VALVES]) found");

    // Options first: unit handling depends on them.
    for (const auto& row : sections["OPTIONS"]) {
        if (row.tokens.empty()) continue;
        std::string key = upcase(row.tokens[0]);
        if (key == "UNITS" && row.tokens.size() >= 2) {
            net.options.flow_units = parse_flow_units(row.tokens[1]);
        } else if (key == "HEADLOSS" && row.tokens.size() >= 2) {
            std::string v = upcase(row.tokens[1]);
            if (v == "H-W" || v == "HW") net.options.headloss_model = HeadlossLaw::HazenWilliams;
            else if (v == "D-W" || v == "DW") net.options.headloss_model = HeadlossLaw::DarcyWeisbach;
            else
                raise(ErrorCode::UnsupportedFeature,
                      "headloss model '" + row.tokens[1] + "' is not supported");
        }
        // Remaining options (viscosity, trials, ...) are EPANET solver knobs
        // with no counterpart here.
    }
    net.source_units = net.options.flow_units;

    const bool us = is_us_customary(net.options.flow_units);
    const double q_si = flow_to_si_factor(net.options.flow_units);
    const double len = us ? units::kFoot : 1.0;          // lengths, elevations, heads
    const double dia = us ? units::kInch : 1.0e-3;       // pipe/valve diameters
    const double rough_dw = us ? units::kFoot * 1.0e-3 : 1.0e-3;  // DW roughness: millifeet / mm
    const double press = us ? units::kPsiToMeter : 1.0;  // PRV/PSV/PBV settings

    for (const auto& row : sections["TIMES"]) {
        if (row.tokens.empty()) continue;
        std::string key = upcase(row.tokens[0]);
        if (key == "DURATION")
            net.options.duration = parse_clock_seconds(row.tokens, 1, row.number);
        else if (key == "HYDRAULIC" && row.tokens.size() >= 2 && upcase(row.tokens[1]) == "TIMESTEP")
            net.options.hydraulic_step = parse_clock_seconds(row.tokens, 2, row.number);
        else if (key == "PATTERN" && row.tokens.size() >= 2 && upcase(row.tokens[1]) == "TIMESTEP")
            net.options.pattern_step = parse_clock_seconds(row.tokens, 2, row.number);
    }

    for (const auto& row : sections["JUNCTIONS"]) {
        const auto& t = row.tokens;
        if (t.size() < 2)
            raise(ErrorCode::MalformedLine, "junction row needs id and elevation at line " +
                                                 std::to_string(row.number));
        Junction j;
        j.id = t[0];
        j.elevation = to_double(t[1], row.number) * len;
        if (t.size() >= 3) j.base_demand = to_double(t[2], row.number) * q_si;
        if (t.size() >= 4) j.pattern_id = t[3];
        net.junctions.push_back(std::move(j));
    }
    for (const auto& row : sections["RESERVOIRS"]) {
        const auto& t = row.tokens;
        if (t.size() < 2)
            raise(ErrorCode::MalformedLine,
                  "reservoir row needs id and head at line " + std::to_string(row.number));
        net.reservoirs.push_back({t[0], to_double(t[1], row.number) * len});
    }
    for (const auto& row : sections["TANKS"]) {
        const auto& t = row.tokens;
        if (t.size() < 6)
            raise(ErrorCode::MalformedLine, "tank row needs id, elevation and four level fields at line " +
                                                 std::to_string(row.number));
        Tank tank;
        tank.id = t[0];
        tank.elevation = to_double(t[1], row.number) * len;
        tank.init_level = to_double(t[2], row.number) * len;
        tank.min_level = to_double(t[3], row.number) * len;
        tank.max_level = to_double(t[4], row.number) * len;
        tank.diameter = to_double(t[5], row.number) * len;  // tank diameters use length units
        net.tanks.push_back(std::move(tank));
    }
    for (const auto& row : sections["PIPES"]) {
        const auto& t = row.tokens;
        if (t.size() < 6)
            raise(ErrorCode::MalformedLine,
                  "pipe row needs id, endpoints, length, diameter, roughness at line " +
                      std::to_string(row.number));
        Pipe p;
        p.id = t[0];
        p.from = t[1];
        p.to = t[2];
        p.length = to_double(t[3], row.number) * len;
        p.diameter = to_double(t[4], row.number) * dia;
        double rough = to_double(t[5], row.number);
        p.roughness = net.options.headloss_model == HeadlossLaw::DarcyWeisbach ? rough * rough_dw : rough;
        if (t.size() >= 7) p.minor_loss = to_double(t[6], row.number);
        if (t.size() >= 8) {
            std::string st = upcase(t[7]);
            if (st == "CLOSED" || st == "CV") {
                if (st == "CV")
                    result.warnings.push_back({"warning", "UnsupportedFeature", p.id,
                                               "check valve flag treated as open pipe", row.number});
                else
                    p.initial_status = LinkStatus::Closed;
            }
        }
        net.pipes.push_back(std::move(p));
    }
    for (const auto& row : sections["PUMPS"]) {
        const auto& t = row.tokens;
        if (t.size() < 5)
            raise(ErrorCode::MalformedLine,
                  "pump row needs id, endpoints and a keyword clause at line " + std::to_string(row.number));
        Pump m;
        m.id = t[0];
        m.from = t[1];
        m.to = t[2];
        bool has_curve = false;
        for (size_t i = 3; i + 1 < t.size(); i += 2) {
            std::string key = upcase(t[i]);
            if (key == "HEAD") {
                m.curve_id = t[i + 1];
                has_curve = true;
            } else if (key == "SPEED") {
                m.speed = to_double(t[i + 1], row.number);
            } else if (key == "POWER") {
                raise(ErrorCode::UnsupportedFeature,
                      "constant-power pump '" + m.id + "' is not supported; use a HEAD curve");
            } else if (key == "PATTERN") {
                result.warnings.push_back({"warning", "UnsupportedFeature", m.id,
                                           "pump speed pattern ignored", row.number});
            } else {
                raise(ErrorCode::MalformedLine,
                      "unknown pump keyword '" + t[i] + "' at line " + std::to_string(row.number));
            }
        }
        if (!has_curve)
            raise(ErrorCode::UnsupportedFeature,
                  "pump '" + m.id + "' has no HEAD curve; only head-curve pumps are supported");
        net.pumps.push_back(std::move(m));
    }
    for (const auto& row : sections["VALVES"]) {
        const auto& t = row.tokens;
        if (t.size() < 6)
            raise(ErrorCode::MalformedLine,
                  "valve row needs id, endpoints, diameter, type, setting at line " +
                      std::to_string(row.number));
        Valve v;
        v.id = t[0];
        v.from = t[1];
        v.to = t[2];
        v.diameter = to_double(t[3], row.number) * dia;
        v.kind = parse_valve_type(t[4]);
        double setting = 0.0;
        if (v.kind == ValveType::GPV) {
            // GPV settings name a headloss curve; the valve is kept fully open.
            result.warnings.push_back({"warning", "UnsupportedFeature", v.id,
                                       "GPV headloss curve ignored; valve treated as open", row.number});
        } else {
            setting = to_double(t[5], row.number);
        }
        switch (v.kind) {
            case ValveType::PRV:
            case ValveType::PSV:
            case ValveType::PBV:
                v.setting = setting * press;
                v.status = ValveStatus::Active;
                break;
            case ValveType::FCV:
                v.setting = setting * q_si;
                v.status = ValveStatus::Active;
                break;
            case ValveType::TCV:
                v.setting = setting;  // dimensionless minor-loss coefficient
                v.status = ValveStatus::Open;
                break;
            case ValveType::GPV:
                v.setting = 0.0;
                v.status = ValveStatus::Open;
                break;
        }
        net.valves.push_back(std::move(v));
    }

    for (const auto& row : sections["CURVES"]) {
        const auto& t = row.tokens;
        if (t.size() < 3)
            raise(ErrorCode::MalformedLine,
                  "curve row needs id, x, y at line " + std::to_string(row.number));
        net.curves[t[0]].push_back(
            {to_double(t[1], row.number) * q_si, to_double(t[2], row.number) * len});
    }
    for (const auto& row : sections["PATTERNS"]) {
        const auto& t = row.tokens;
        if (t.size() < 2)
            raise(ErrorCode::MalformedLine,
                  "pattern row needs id and at least one multiplier at line " + std::to_string(row.number));
        auto& pat = net.patterns[t[0]];
        for (size_t i = 1; i < t.size(); ++i) pat.multipliers.push_back(to_double(t[i], row.number));
    }
    for (auto& [id, pat] : net.patterns) pat.period = net.options.pattern_step;

    // [DEMANDS] rows replace the inline junction demand; multiple rows for one
    // junction sum their base values. A single pattern per junction is kept.
    std::vector<DemandRow> demand_rows;
    for (const auto& row : sections["DEMANDS"]) {
        const auto& t = row.tokens;
        if (t.size() < 2)
            raise(ErrorCode::MalformedLine,
                  "demand row needs junction and value at line " + std::to_string(row.number));
        DemandRow d;
        d.junction = t[0];
        d.value = to_double(t[1], row.number) * q_si;
        if (t.size() >= 3) d.pattern = t[2];
        d.line = row.number;
        demand_rows.push_back(std::move(d));
    }
    if (!demand_rows.empty()) {
        std::map<std::string, Junction*> by_id;
        for (auto& j : net.junctions) by_id[j.id] = &j;
        std::set<std::string> reset;
        for (const auto& d : demand_rows) {
            auto it = by_id.find(d.junction);
            if (it == by_id.end())
                raise(ErrorCode::UnresolvedReference,
                      "[DEMANDS] references unknown junction '" + d.junction + "'");
            Junction& j = *it->second;
            if (!reset.count(j.id)) {
                j.base_demand = 0.0;
                j.pattern_id = d.pattern;
                reset.insert(j.id);
            } else if (d.pattern != j.pattern_id) {
                result.warnings.push_back({"warning", "UnsupportedFeature", j.id,
                                           "multiple demand categories with different patterns; "
                                           "keeping the first pattern",
                                           d.line});
            }
            j.base_demand += d.value;
        }
    }

    // Link id -> kind lookup for status and control rows.
    std::map<std::string, char> link_kind;  // 'P' pipe, 'M' pump, 'W' valve
    for (const auto& p : net.pipes) link_kind[p.id] = 'P';
    for (const auto& m : net.pumps) link_kind[m.id] = 'M';
    for (const auto& v : net.valves) link_kind[v.id] = 'W';

    for (const auto& row : sections["STATUS"]) {
        const auto& t = row.tokens;
        if (t.size() < 2)
            raise(ErrorCode::MalformedLine,
                  "status row needs link id and value at line " + std::to_string(row.number));
        auto it = link_kind.find(t[0]);
        if (it == link_kind.end())
            raise(ErrorCode::UnresolvedReference, "[STATUS] references unknown link '" + t[0] + "'");
        std::string v = upcase(t[1]);
        if (it->second == 'P') {
            for (auto& p : net.pipes)
                if (p.id == t[0]) p.initial_status = v == "CLOSED" ? LinkStatus::Closed : LinkStatus::Open;
        } else if (it->second == 'M') {
            for (auto& m : net.pumps) {
                if (m.id != t[0]) continue;
                if (v == "CLOSED") m.initial_status = LinkStatus::Closed;
                else if (v == "OPEN") m.initial_status = LinkStatus::Open;
                else m.speed = to_double(t[1], row.number);
            }
        } else {
            for (auto& w : net.valves) {
                if (w.id != t[0]) continue;
                if (v == "CLOSED") w.status = ValveStatus::Closed;
                else if (v == "OPEN") w.status = ValveStatus::Open;
                else w.setting = to_double(t[1], row.number) *
                                 (w.kind == ValveType::FCV ? q_si
                                  : w.kind == ValveType::TCV || w.kind == ValveType::GPV ? 1.0
                                                                                          : press);
            }
        }
    }

    for (const auto& row : sections["CONTROLS"]) {
        const auto& t = row.tokens;
        if (t.empty()) continue;
        std::string head = upcase(t[0]);
        if (head == "IF" || head == "RULE" || head == "PRIORITY") {
            result.warnings.push_back({"warning", "UnsupportedFeature", "",
                                       "conditional control skipped (only time-indexed controls "
                                       "are honored)",
                                       row.number});
            continue;
        }
        if (head != "LINK" || t.size() < 6)
            raise(ErrorCode::MalformedLine,
                  "control row must read 'LINK id value AT TIME t' at line " + std::to_string(row.number));
        std::string when = upcase(t[3]), what = upcase(t[4]);
        if (when != "AT" || what != "TIME") {
            if (what == "CLOCKTIME") {
                result.warnings.push_back({"warning", "UnsupportedFeature", t[1],
                                           "AT CLOCKTIME control skipped", row.number});
                continue;
            }
            raise(ErrorCode::MalformedLine,
                  "control row must read 'LINK id value AT TIME t' at line " + std::to_string(row.number));
        }
        auto it = link_kind.find(t[1]);
        if (it == link_kind.end())
            raise(ErrorCode::UnresolvedReference,
                  "[CONTROLS] references unknown link '" + t[1] + "'");
        ControlEntry c;
        c.link_id = t[1];
        c.time = parse_clock_seconds(t, 5, row.number);
        std::string value = upcase(t[2]);
        if (value == "OPEN" || value == "CLOSED") {
            c.attribute = ControlAttribute::Status;
            c.value = value == "OPEN" ? 1.0 : 0.0;
        } else {
            double v = to_double(t[2], row.number);
            if (it->second == 'M') {
                c.attribute = ControlAttribute::Speed;
                c.value = v;
            } else {
                c.attribute = ControlAttribute::Setting;
                c.value = v;  // TCV settings are dimensionless; others unsupported when active
            }
        }
        net.controls.push_back(std::move(c));
    }

    // Endpoint resolution is a hard parse error; the same check exists in
    // validate() for programmatically assembled networks.
    std::set<std::string> nodes;
    for (const auto& j : net.junctions) nodes.insert(j.id);
    for (const auto& t : net.tanks) nodes.insert(t.id);
    for (const auto& r : net.reservoirs) nodes.insert(r.id);
    auto check = [&](const std::string& link, const std::string& node) {
        if (!nodes.count(node))
            raise(ErrorCode::UnresolvedReference,
                  "link '" + link + "' references undeclared node '" + node + "'");
    };
    for (const auto& p : net.pipes) { check(p.id, p.from); check(p.id, p.to); }
    for (const auto& m : net.pumps) { check(m.id, m.from); check(m.id, m.to); }
    for (const auto& v : net.valves) { check(v.id, v.from); check(v.id, v.to); }
    for (const auto& m : net.pumps)
        if (!net.curves.count(m.curve_id))
            raise(ErrorCode::UnresolvedReference,
                  "pump '" + m.id + "' references undeclared curve '" + m.curve_id + "'");

    return result;
}

}  // namespace hydronet
