#include "tangleforge/diagram.hpp"

#include <algorithm>

namespace tf {

const Component& Diagram::component(int32_t id) const {
    for (const auto& c : components)
        if (c.id == id) return c;
    throw Error("diagram: unknown component id " + std::to_string(id));
}

FreeTargetHom read_off(const Diagram& d) {
    std::map<int32_t, const Component*> byId;
    for (const auto& c : d.components) byId[c.id] = &c;

    std::map<Gen, std::vector<std::pair<int32_t, Letter>>> perOwner;
    for (const auto& dash : d.dashes) {
        auto it = byId.find(dash.component);
        if (it == byId.end())
            throw Error("read_off: dash references unknown component " +
                        std::to_string(dash.component));
        if (it->second->letter != dash.letter)
            throw Error("read_off: dash letter disagrees with its component's letter");
        perOwner[dash.owner].emplace_back(dash.pos, Letter{it->second->letter, dash.sign});
    }

    auto imageOf = [&](Gen owner) {
        auto it = perOwner.find(owner);
        if (it == perOwner.end()) return Word{};
        auto& seq = it->second;
        std::sort(seq.begin(), seq.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        std::vector<Letter> raw;
        raw.reserve(seq.size());
        for (auto& [pos, l] : seq) raw.push_back(l);
        return Word::from_letters(std::move(raw));
    };

    std::vector<Word> p, a, b;
    for (int i = 1; i <= 2 * d.sig.bridges; ++i) p.push_back(imageOf(gen_p(i)));
    for (int i = 1; i <= d.sig.genus; ++i) {
        a.push_back(imageOf(gen_a(i)));
        b.push_back(imageOf(gen_b(i)));
    }
    return FreeTargetHom(d.sig, std::move(p), std::move(a), std::move(b));
}

IntMat homology_matrix(const Diagram& d) {
    const int g = d.sig.genus;
    std::map<Gen, int> closedCount;
    for (const auto& c : d.components)
        if (c.kind == ComponentKind::Closed) closedCount[c.letter]++;
    bool ok = static_cast<int>(closedCount.size()) == g;
    for (int i = 1; i <= g && ok; ++i) ok = closedCount.count(gen_h(i)) && closedCount[gen_h(i)] == 1;
    if (!ok) throw Error("homology_matrix: diagram does not have exactly one closed curve per h-generator");

    FreeTargetHom phi = read_off(d);
    IntMat m(g, std::vector<long long>(2 * g, 0));
    for (int i = 1; i <= g; ++i)
        for (int j = 1; j <= g; ++j) {
            m[i - 1][2 * (j - 1)] = exponent_sum(phi.image(gen_b(j)), gen_h(i));
            m[i - 1][2 * (j - 1) + 1] = exponent_sum(phi.image(gen_a(j)), gen_h(i));
        }
    return m;
}

bool is_cut_system(const Diagram& d) {
    return int_rank(homology_matrix(d)) == d.sig.genus;
}

Census component_census(const Diagram& d) {
    Census c;
    for (const auto& comp : d.components) {
        if (comp.kind == ComponentKind::Closed) {
            c.closed[comp.letter]++;
        } else {
            c.arcs[comp.letter]++;
            if (comp.endpoints) c.endpoints.push_back(*comp.endpoints);
        }
    }
    std::sort(c.endpoints.begin(), c.endpoints.end());
    return c;
}

}  // namespace tf
