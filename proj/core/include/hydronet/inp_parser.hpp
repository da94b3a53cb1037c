#pragma once

#include <string>
#include <vector>

#include "hydronet/network.hpp"

namespace hydronet {

struct ParseResult {
    NetworkDescription net;
    std::vector<Diagnostic> warnings;  // skipped sections, ignored rows
};

/// Parses a restricted EPANET-style INP text into a unit-normalized
/// NetworkDescription.
///
/// Supported sections: TITLE, JUNCTIONS, RESERVOIRS, TANKS, PIPES, PUMPS,
/// VALVES, DEMANDS, PATTERNS, CURVES, STATUS, CONTROLS, TIMES, OPTIONS.
/// Any other section is skipped and recorded as a warning. All quantities
/// are converted to SI (m, m^3/s, s) according to the file's flow units.
///
/// Throws Error with codes UnresolvedReference, UnsupportedUnits,
/// MalformedLine (with line number), MissingSection, UnsupportedFeature.
ParseResult parse_inp(const std::string& text);

}  // namespace hydronet
