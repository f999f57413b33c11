#pragma once

#include <string>

#include "tangleforge/diagram.hpp"

namespace tf {

// Deterministic schematic rendering: the 4g-gon (disk for g = 0) with the
// puncture row, dash ticks, stage-1 matching chords when available, band
// connectors, and a letter/color legend. Not isotopy-accurate.
std::string render_svg(const Diagram& d);

}  // namespace tf
