#pragma once

#include "tangleforge/diagram.hpp"

namespace tf {

struct RealizationResult {
    Diagram diagram;
    Census preliminaryCensus;
    std::vector<FoldRecord> foldTrace;
    int bandCount = 0;
};

// Stage 1: dashes from the reduced images, arcs from the tracked free
// reductions of the two relation-side words, puncture loops resolved.
Diagram preliminary_diagram(const FreeTargetHom& hom);

// Stages 1 + 2: folding-guided band sums down to g closed curves and b arcs.
RealizationResult realize(const FreeTargetHom& hom);

}  // namespace tf
