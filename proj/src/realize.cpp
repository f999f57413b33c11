#include "tangleforge/realize.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace tf {

namespace {

struct Dsu {
    std::vector<int32_t> parent;
    explicit Dsu(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int32_t find(int32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    // Smaller root id wins.
    void unite(int32_t a, int32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        parent[b] = a;
    }
};

struct Layout {
    std::vector<Gen> owners;          // p1..p_{2b}, a1, b1, ..., ag, bg
    std::map<Gen, int32_t> offset;    // owner -> first dash id
    std::vector<Letter> dashLetters;  // dash id -> letter
    int32_t total = 0;
};

Layout make_layout(const FreeTargetHom& hom) {
    Layout lay;
    for (int i = 1; i <= 2 * hom.sig().bridges; ++i) lay.owners.push_back(gen_p(i));
    for (int i = 1; i <= hom.sig().genus; ++i) {
        lay.owners.push_back(gen_a(i));
        lay.owners.push_back(gen_b(i));
    }
    for (Gen o : lay.owners) {
        lay.offset[o] = lay.total;
        for (const auto& l : hom.image(o).letters()) {
            lay.dashLetters.push_back(l);
            ++lay.total;
        }
    }
    return lay;
}

}  // namespace

Diagram preliminary_diagram(const FreeTargetHom& hom) {
    BoundingReport rep = verify_bounding(hom);
    if (!rep.ok) {
        std::string msg = "preliminary_diagram: input is not a bounding homomorphism";
        for (const auto& f : rep.failures) msg += "; " + f;
        throw Error(msg);
    }
    const int g = hom.sig().genus, b = hom.sig().bridges;
    Layout lay = make_layout(hom);

    // w1 = phi(p1) ... phi(p_{2b}); positions coincide with dash ids.
    int32_t pTotal = 0;
    for (int i = 1; i <= 2 * b; ++i) pTotal += static_cast<int32_t>(hom.image(gen_p(i)).size());
    std::vector<Letter> w1letters(lay.dashLetters.begin(), lay.dashLetters.begin() + pTotal);

    // Polygon boundary word: phi(a_i) phi(b_i) phi(a_i)^-1 phi(b_i)^-1 blocks.
    ArcStructure arcs;
    std::vector<Letter> w2letters;
    for (int i = 1; i <= g; ++i) {
        for (Gen o : {gen_a(i), gen_b(i)}) {
            int32_t off = lay.offset[o];
            int32_t len = static_cast<int32_t>(hom.image(o).size());
            for (int32_t k = 0; k < len; ++k) {
                arcs.boundary.push_back(off + k);
                w2letters.push_back(lay.dashLetters[off + k]);
            }
        }
        for (Gen o : {gen_a(i), gen_b(i)}) {
            int32_t off = lay.offset[o];
            int32_t len = static_cast<int32_t>(hom.image(o).size());
            for (int32_t k = len - 1; k >= 0; --k) {
                arcs.boundary.push_back(off + k);
                w2letters.push_back(lay.dashLetters[off + k].inverse());
            }
        }
    }

    auto [w1red, trace1] = Word::reduce(w1letters);
    auto [w2red, trace2] = Word::reduce(w2letters);

    Dsu dsu(lay.total);
    for (auto [i, j] : trace1.matching) {
        arcs.w1.emplace_back(i, j);
        dsu.unite(i, j);
    }
    for (auto [i, j] : trace2.matching) {
        arcs.w2.emplace_back(i, j);
        dsu.unite(arcs.boundary[i], arcs.boundary[j]);
    }

    // Residual reduction of (w2')^-1 w1' down to the trivial word.
    {
        std::vector<Letter> residual;
        const auto& xs = w2red.letters();
        for (auto it = xs.rbegin(); it != xs.rend(); ++it) residual.push_back(it->inverse());
        residual.insert(residual.end(), w1red.letters().begin(), w1red.letters().end());
        auto [rest, trace3] = Word::reduce(residual);
        if (!rest.empty())
            throw Error("preliminary_diagram: relation sides failed to cancel (internal)");
        int32_t m = static_cast<int32_t>(xs.size());
        for (auto [i, j] : trace3.matching) {
            if (i >= m || j < m)
                throw Error("preliminary_diagram: unexpected non-interface cancellation");
            int32_t bpos = trace2.survivors[m - 1 - i];
            int32_t dash = trace1.survivors[j - m];
            arcs.iface.emplace_back(bpos, dash);
            dsu.unite(arcs.boundary[bpos], dash);
        }
    }

    // Resolve puncture loops: middle dash to the puncture, outer dashes paired.
    std::vector<int32_t> middlePuncture(lay.total, 0);  // 0 = none
    for (int i = 1; i <= 2 * b; ++i) {
        int32_t off = lay.offset[gen_p(i)];
        int32_t len = static_cast<int32_t>(hom.image(gen_p(i)).size());
        if (len % 2 == 0)
            throw Error("preliminary_diagram: even dash count on a puncture loop (internal)");
        ArcStructure::LoopResolution lr;
        lr.middle = off + len / 2;
        middlePuncture[lr.middle] = i;
        for (int32_t k = 0; k < len / 2; ++k) {
            lr.pairs.emplace_back(off + k, off + len - 1 - k);
            dsu.unite(off + k, off + len - 1 - k);
        }
        arcs.loops.push_back(std::move(lr));
    }

    // Components by union-find over the matchings.
    std::map<int32_t, std::vector<int32_t>> groups;
    for (int32_t d = 0; d < lay.total; ++d) groups[dsu.find(d)].push_back(d);

    Diagram out;
    out.sig = hom.sig();
    std::map<int32_t, int32_t> rootToId;
    int32_t nextId = 1;
    for (auto& [root, members] : groups) {
        Component c;
        c.id = nextId;
        rootToId[root] = nextId;
        ++nextId;
        c.letter = lay.dashLetters[members.front()].gen;
        std::vector<int> punctures;
        for (int32_t d : members) {
            if (lay.dashLetters[d].gen != c.letter)
                throw Error("preliminary_diagram: mixed letters in one component (internal)");
            if (middlePuncture[d]) punctures.push_back(middlePuncture[d]);
        }
        if (punctures.empty()) {
            c.kind = ComponentKind::Closed;
        } else if (punctures.size() == 2) {
            c.kind = ComponentKind::Arc;
            std::sort(punctures.begin(), punctures.end());
            c.endpoints = {punctures[0], punctures[1]};
        } else {
            throw Error("preliminary_diagram: component with " +
                        std::to_string(punctures.size()) + " puncture endpoints (internal)");
        }
        out.components.push_back(c);
    }

    int32_t d = 0;
    for (Gen o : lay.owners) {
        int32_t len = static_cast<int32_t>(hom.image(o).size());
        for (int32_t k = 0; k < len; ++k, ++d) {
            out.dashes.push_back(
                {o, k, lay.dashLetters[d].gen, lay.dashLetters[d].sign, rootToId[dsu.find(d)]});
            arcs.prelimComponents.push_back(rootToId[dsu.find(d)]);
        }
    }
    out.arcs = std::move(arcs);
    return out;
}

RealizationResult realize(const FreeTargetHom& hom) {
    RealizationResult res;
    Diagram prelim = preliminary_diagram(hom);
    res.preliminaryCensus = component_census(prelim);

    // Gamma: wedge over the nonempty image words, each edge tagged with the
    // component of its dash.
    std::map<std::pair<Gen, int32_t>, int32_t> dashComponent;
    for (const auto& dash : prelim.dashes) dashComponent[{dash.owner, dash.pos}] = dash.component;

    std::vector<Gen> owners;
    for (int i = 1; i <= 2 * hom.sig().bridges; ++i) owners.push_back(gen_p(i));
    for (int i = 1; i <= hom.sig().genus; ++i) {
        owners.push_back(gen_a(i));
        owners.push_back(gen_b(i));
    }
    std::vector<std::pair<Word, std::vector<int32_t>>> circles;
    for (Gen o : owners) {
        const Word& w = hom.image(o);
        if (w.empty()) continue;
        std::vector<int32_t> tags;
        for (int32_t k = 0; k < static_cast<int32_t>(w.size()); ++k)
            tags.push_back(dashComponent.at({o, k}));
        circles.emplace_back(w, std::move(tags));
    }

    FoldGraph gamma = FoldGraph::wedge_tagged(circles);
    const int initialEdges = gamma.edge_count();
    res.foldTrace = gamma.fold_to_core();
    if (!gamma.is_rose_on(hom.target_generators()))
        throw Error("realize: folding did not terminate in the expected rose (internal)");
    if (static_cast<int>(res.foldTrace.size()) != initialEdges - gamma.edge_count())
        throw Error("realize: fold trace length mismatch (internal)");

    // Replay the trace: distinct-tag folds become band sums.
    int32_t maxId = 0;
    for (const auto& c : prelim.components) maxId = std::max(maxId, c.id);
    Dsu comp(maxId + 1);
    Diagram final = prelim;
    final.bands.clear();
    for (const auto& rec : res.foldTrace) {
        int32_t r1 = comp.find(rec.tag1), r2 = comp.find(rec.tag2);
        if (r1 == r2) continue;
        final.bands.push_back({std::min(r1, r2), std::max(r1, r2), std::min(r1, r2), rec.ocase});
        comp.unite(r1, r2);
    }
    res.bandCount = static_cast<int>(final.bands.size());

    // Collapse components along the band log.
    std::map<int32_t, Component> merged;
    for (const auto& c : prelim.components) {
        int32_t root = comp.find(c.id);
        auto [it, fresh] = merged.try_emplace(root, c);
        if (fresh) {
            it->second.id = root;
            continue;
        }
        Component& m = it->second;
        if (m.letter != c.letter)
            throw Error("realize: band joined components of different letters (internal)");
        if (c.kind == ComponentKind::Arc) {
            if (m.kind == ComponentKind::Arc)
                throw Error("realize: band joined two arcs (internal)");
            m.kind = ComponentKind::Arc;
            m.endpoints = c.endpoints;
        }
    }
    final.components.clear();
    for (auto& [root, c] : merged) final.components.push_back(c);
    for (auto& dash : final.dashes) dash.component = comp.find(dash.component);

    // Contractual checks on the final diagram.
    Census census = component_census(final);
    std::map<Gen, int> wantClosed, wantArcs;
    for (int i = 1; i <= hom.sig().genus; ++i) wantClosed[gen_h(i)] = 1;
    for (int i = 1; i <= hom.sig().bridges; ++i) wantArcs[gen_t(i)] = 1;
    if (census.closed != wantClosed || census.arcs != wantArcs)
        throw Error("realize: final census is not g closed curves and b arcs (internal)");
    if (!(read_off(final) == hom))
        throw Error("realize: read-off disagrees with the input homomorphism (internal)");
    if (!is_cut_system(final))
        throw Error("realize: closed curves do not form a cut system (internal)");

    res.diagram = std::move(final);
    return res;
}

}  // namespace tf
