#pragma once

#include <map>
#include <optional>
#include <vector>

#include "tangleforge/fold.hpp"
#include "tangleforge/intmat.hpp"
#include "tangleforge/surface.hpp"
#include "tangleforge/words.hpp"

namespace tf {

// One oriented crossing of a curve/arc component through a generator curve
// (owner family a/b) or a puncture loop (owner family p).
struct Dash {
    Gen owner;
    int32_t pos;  // ordinal along the owner, 0-based
    Gen letter;   // h/t family
    int8_t sign;
    int32_t component;
};

enum class ComponentKind : uint8_t { Closed, Arc };

struct Component {
    int32_t id;
    ComponentKind kind;
    Gen letter;
    std::optional<std::pair<int, int>> endpoints;  // puncture indices, arcs only
};

struct BandEvent {
    int32_t from, to, result;
    OrientCase ocase;
};

// Stage-1 bookkeeping: which dash pairs were joined by arcs. w2 entries are
// positions along the polygon boundary word (a dash on an a/b curve occurs
// there twice); everything else is in dash ids.
struct ArcStructure {
    std::vector<std::pair<int32_t, int32_t>> w1;     // dash-id pairs
    std::vector<std::pair<int32_t, int32_t>> w2;     // boundary-position pairs
    std::vector<std::pair<int32_t, int32_t>> iface;  // (boundary position, dash id)
    struct LoopResolution {
        int32_t middle;  // dash id connected to the puncture
        std::vector<std::pair<int32_t, int32_t>> pairs;
    };
    std::vector<LoopResolution> loops;     // indexed by puncture - 1
    std::vector<int32_t> boundary;         // boundary position -> dash id
    std::vector<int32_t> prelimComponents; // dash id -> stage-1 component id
};

struct Diagram {
    SurfaceSig sig;
    std::vector<Dash> dashes;  // ordered: p1..p_{2b} loops, then a1, b1, ..., ag, bg
    std::vector<Component> components;  // sorted by id
    std::vector<BandEvent> bands;
    std::optional<ArcStructure> arcs;

    const Component& component(int32_t id) const;
};

FreeTargetHom read_off(const Diagram& d);

// g x 2g matrix; row i lists exp_{h_i} of (phi(b_1), phi(a_1), ..., phi(b_g), phi(a_g)).
IntMat homology_matrix(const Diagram& d);

bool is_cut_system(const Diagram& d);

struct Census {
    std::map<Gen, int> closed;
    std::map<Gen, int> arcs;
    std::vector<std::pair<int, int>> endpoints;  // sorted

    bool operator==(const Census&) const = default;
};

Census component_census(const Diagram& d);

}  // namespace tf
