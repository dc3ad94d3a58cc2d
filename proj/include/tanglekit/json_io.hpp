#pragma once

#include <string>

#include "tanglekit/diagram.hpp"

namespace tanglekit {

/// {"crossings":C,"arcs":[[att,att],...],"free_loops":k,"boundaries":n}
/// with att = ["x", crossing, port] or ["b", boundary, "NW"|"NE"|"SE"|"SW"].
std::string diagram_to_json(const Diagram& d);

/// Throws SchemaError on malformed input and MatchingError when the arcs are not a perfect
/// matching. The result is marked planarity-unverified.
Diagram diagram_from_json(const std::string& text);

}  // namespace tanglekit
