#include "tangleforge/equiv.hpp"

#include <functional>
#include <algorithm>
#include <cassert>
#include <numeric>

namespace tf {

int flavor_arity(Flavor f) {
    return (f == Flavor::Alg3 || f == Flavor::Alg31) ? 2 : 3;
}

std::string flavor_name(Flavor f) {
    switch (f) {
        case Flavor::Alg3: return "Alg3";
        case Flavor::Alg31: return "Alg31";
        case Flavor::Alg4: return "Alg4";
        case Flavor::Alg42: return "Alg42";
    }
    return "?";
}

Flavor flavor_from_name(const std::string& s) {
    if (s == "Alg3") return Flavor::Alg3;
    if (s == "Alg31") return Flavor::Alg31;
    if (s == "Alg4") return Flavor::Alg4;
    if (s == "Alg42") return Flavor::Alg42;
    throw ParseError("unknown flavor '" + s + "'");
}

SplittingTuple SplittingTuple::make(Flavor flavor, std::vector<FreeTargetHom> homs) {
    if (static_cast<int>(homs.size()) != flavor_arity(flavor))
        throw Error("tuple arity does not match flavor " + flavor_name(flavor));
    for (size_t i = 1; i < homs.size(); ++i)
        if (!(homs[i].sig() == homs[0].sig()))
            throw Error("tuple homomorphisms have different signatures");
    if ((flavor == Flavor::Alg3 || flavor == Flavor::Alg4) && homs[0].sig().bridges != 0)
        throw Error(flavor_name(flavor) + " requires b = 0");
    for (size_t i = 0; i < homs.size(); ++i) {
        BoundingReport rep = verify_bounding(homs[i]);
        if (!rep.ok) {
            std::string msg = "phi" + std::to_string(i + 1) + " is not bounding";
            for (const auto& f : rep.failures) msg += "; " + f;
            throw Error(msg);
        }
    }
    return SplittingTuple{flavor, homs[0].sig(), std::move(homs)};
}

// ---------------------------------------------------------------------------
// Presentations

namespace {

std::vector<int32_t> reduce_rel(std::vector<int32_t> rel) {
    std::vector<int32_t> out;
    for (int32_t l : rel) {
        if (!out.empty() && out.back() == -l)
            out.pop_back();
        else
            out.push_back(l);
    }
    // Cyclic reduction: a relator is a cyclic word.
    size_t lo = 0, hi = out.size();
    while (hi - lo >= 2 && out[lo] == -out[hi - 1]) {
        ++lo;
        --hi;
    }
    return {out.begin() + lo, out.begin() + hi};
}

std::vector<int32_t> invert_rel(const std::vector<int32_t>& rel) {
    std::vector<int32_t> out(rel.rbegin(), rel.rend());
    for (auto& l : out) l = -l;
    return out;
}

}  // namespace

void Presentation::normalize() {
    std::vector<std::vector<int32_t>> kept;
    for (auto& r : relators) {
        auto red = reduce_rel(std::move(r));
        if (!red.empty()) kept.push_back(std::move(red));
    }
    relators = std::move(kept);
}

std::string Presentation::relator_str(const std::vector<int32_t>& rel) const {
    if (rel.empty()) return "e";
    std::string out;
    size_t i = 0;
    while (i < rel.size()) {
        size_t j = i;
        while (j < rel.size() && rel[j] == rel[i]) ++j;
        long run = static_cast<long>(j - i) * (rel[i] > 0 ? 1 : -1);
        if (!out.empty()) out += ' ';
        out += gens[std::abs(rel[i]) - 1];
        if (run != 1) out += "^" + std::to_string(run);
        i = j;
    }
    return out;
}

namespace {

// Encode target letters of hom `which` (0-based block) as presentation letters.
int32_t encode_target(const Letter& l, const SurfaceSig& sig, int block) {
    int base = block * (sig.bridges + sig.genus);
    int idx = l.gen.fam == Family::T ? l.gen.idx : sig.bridges + l.gen.idx;
    return static_cast<int32_t>((base + idx) * l.sign);
}

void append_image(std::vector<int32_t>& rel, const Word& w, bool invert,
                  const SurfaceSig& sig, int block) {
    if (!invert) {
        for (const auto& l : w.letters()) rel.push_back(encode_target(l, sig, block));
    } else {
        const auto& ls = w.letters();
        for (auto it = ls.rbegin(); it != ls.rend(); ++it)
            rel.push_back(encode_target(it->inverse(), sig, block));
    }
}

std::vector<std::string> copy_names(const SurfaceSig& sig, std::span<const char* const> prefixes) {
    std::vector<std::string> names;
    for (const char* p : prefixes)
        for (int i = 1; i <= sig.bridges + sig.genus; ++i)
            names.push_back(std::string(p) + std::to_string(i));
    return names;
}

}  // namespace

Presentation pushout_pair(const SplittingTuple& t, int i, int j) {
    if (i == j || i < 1 || j < 1 || i > t.arity() || j > t.arity())
        throw Error("pushout_pair: bad homomorphism indices");
    static constexpr const char* kPrefixes[2] = {"x", "y"};
    Presentation p;
    p.gens = copy_names(t.sig, kPrefixes);
    const FreeTargetHom& hi = t.homs[i - 1];
    const FreeTargetHom& hj = t.homs[j - 1];
    for (Gen x : hi.domain_generators()) {
        std::vector<int32_t> rel;
        append_image(rel, hi.image(x), false, t.sig, 0);
        append_image(rel, hj.image(x), true, t.sig, 1);
        p.relators.push_back(std::move(rel));
    }
    p.normalize();
    return p;
}

Presentation pushout_tuple(const SplittingTuple& t) {
    if (t.arity() != 3) throw Error("pushout_tuple: arity 3 required");
    static constexpr const char* kPrefixes[3] = {"x", "y", "z"};
    Presentation p;
    p.gens = copy_names(t.sig, kPrefixes);
    for (int pair = 0; pair < 2; ++pair) {
        const FreeTargetHom& hi = t.homs[pair];
        const FreeTargetHom& hj = t.homs[pair + 1];
        for (Gen x : hi.domain_generators()) {
            std::vector<int32_t> rel;
            append_image(rel, hi.image(x), false, t.sig, pair);
            append_image(rel, hj.image(x), true, t.sig, pair + 1);
            p.relators.push_back(std::move(rel));
        }
    }
    p.normalize();
    return p;
}

AbelianInvariants abelianization(const Presentation& p) {
    IntMat m(p.relators.size(), std::vector<long long>(p.gens.size(), 0));
    for (size_t r = 0; r < p.relators.size(); ++r)
        for (int32_t l : p.relators[r]) m[r][std::abs(l) - 1] += (l > 0 ? 1 : -1);
    auto factors = smith_invariant_factors(std::move(m));
    AbelianInvariants inv;
    inv.freeRank = static_cast<int>(p.gens.size()) - static_cast<int>(factors.size());
    for (long long d : factors)
        if (d >= 2) inv.torsion.push_back(d);
    return inv;
}

Presentation simplify(Presentation p, long budget) {
    if (budget < 0) throw Error("simplify: negative budget");
    p.normalize();
    AbelianInvariants before = abelianization(p);
    long steps = 0;

    auto eliminate_generator = [&]() -> bool {
        // A generator occurring exactly once in some relator can be solved for
        // and substituted away. Prefer the shortest such relator, then the
        // highest generator index, so the earliest copies survive.
        int bestRel = -1, bestGen = -1, bestPos = -1;
        for (size_t r = 0; r < p.relators.size(); ++r) {
            const auto& rel = p.relators[r];
            std::map<int, int> count;
            for (int32_t l : rel) count[std::abs(l)]++;
            for (size_t q = 0; q < rel.size(); ++q) {
                int k = std::abs(rel[q]);
                if (count[k] != 1) continue;
                if (bestRel < 0 || rel.size() < p.relators[bestRel].size() ||
                    (rel.size() == p.relators[bestRel].size() && k > bestGen)) {
                    bestRel = static_cast<int>(r);
                    bestGen = k;
                    bestPos = static_cast<int>(q);
                }
            }
        }
        if (bestRel < 0) return false;
        const auto rel = p.relators[bestRel];
        int s = rel[bestPos] > 0 ? 1 : -1;
        // u k^s v = 1  =>  k^s = u^-1 v^-1.
        std::vector<int32_t> u(rel.begin(), rel.begin() + bestPos);
        std::vector<int32_t> v(rel.begin() + bestPos + 1, rel.end());
        std::vector<int32_t> image = invert_rel(u);
        auto vInv = invert_rel(v);
        image.insert(image.end(), vInv.begin(), vInv.end());
        if (s < 0) image = invert_rel(image);
        image = reduce_rel(image);  // word k maps to

        p.relators.erase(p.relators.begin() + bestRel);
        for (auto& r : p.relators) {
            std::vector<int32_t> out;
            for (int32_t l : r) {
                if (std::abs(l) != bestGen) {
                    out.push_back(l);
                } else if (l > 0) {
                    out.insert(out.end(), image.begin(), image.end());
                } else {
                    auto inv = invert_rel(image);
                    out.insert(out.end(), inv.begin(), inv.end());
                }
            }
            r = std::move(out);
        }
        // Renumber generators above the removed one.
        p.gens.erase(p.gens.begin() + (bestGen - 1));
        for (auto& r : p.relators)
            for (auto& l : r) {
                int k = std::abs(l);
                if (k > bestGen) l = (l > 0) ? (l - 1) : (-(k - 1));
            }
        p.normalize();
        return true;
    };

    auto shorten_by_product = [&]() -> bool {
        // Replace r_i by r_i * w when strictly shorter, where w ranges over
        // cyclic rotations of another relator and its inverse.
        for (size_t i = 0; i < p.relators.size(); ++i) {
            for (size_t j = 0; j < p.relators.size(); ++j) {
                if (i == j) continue;
                for (bool inv : {false, true}) {
                    std::vector<int32_t> base =
                        inv ? invert_rel(p.relators[j]) : p.relators[j];
                    for (size_t rot = 0; rot < base.size(); ++rot) {
                        std::vector<int32_t> w(base.begin() + rot, base.end());
                        w.insert(w.end(), base.begin(), base.begin() + rot);
                        std::vector<int32_t> cand = p.relators[i];
                        cand.insert(cand.end(), w.begin(), w.end());
                        cand = reduce_rel(cand);
                        if (cand.size() < p.relators[i].size()) {
                            p.relators[i] = std::move(cand);
                            p.normalize();
                            return true;
                        }
                    }
                }
            }
        }
        return false;
    };

    while (steps < budget) {
        ++steps;
        if (eliminate_generator()) continue;
        if (shorten_by_product()) continue;
        break;
    }
    p.normalize();
    if (!(abelianization(p) == before))
        throw Error("simplify: abelianization changed (internal)");
    return p;
}

// ---------------------------------------------------------------------------
// Strand matchings and surface invariants

namespace {

// partner[i] = j iff the central letters of p_i and p_j are inverse.
std::vector<int> strand_partners(const FreeTargetHom& hom) {
    int n = 2 * hom.sig().bridges;
    std::vector<Letter> central(n + 1, Letter{});
    for (int i = 1; i <= n; ++i) {
        Word core = cyclic_reduce(hom.image(gen_p(i))).second;
        if (core.size() != 1 || core.letters()[0].gen.fam != Family::T)
            throw Error("strand matching: homomorphism is not bounding");
        central[i] = core.letters()[0];
    }
    std::vector<int> partner(n + 1, 0);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i != j && central[i] == central[j].inverse()) partner[i] = j;
    for (int i = 1; i <= n; ++i)
        if (!partner[i] || partner[partner[i]] != i)
            throw Error("strand matching: central letters do not pair up");
    return partner;
}

int count_cycles(const std::vector<std::vector<int>>& partners, int n) {
    std::vector<int> root(n + 1);
    std::iota(root.begin(), root.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (root[x] != x) {
            root[x] = root[root[x]];
            x = root[x];
        }
        return x;
    };
    for (const auto& m : partners)
        for (int i = 1; i <= n; ++i) root[find(i)] = find(m[i]);
    std::set<int> roots;
    for (int i = 1; i <= n; ++i) roots.insert(find(i));
    return static_cast<int>(roots.size());
}

}  // namespace

int link_components(const SplittingTuple& t, int i, int j) {
    if (t.sig.bridges < 1) throw Error("link_components: b = 0 gives no link");
    if (i == j || i < 1 || j < 1 || i > t.arity() || j > t.arity())
        throw Error("link_components: bad indices");
    return count_cycles({strand_partners(t.homs[i - 1]), strand_partners(t.homs[j - 1])},
                        2 * t.sig.bridges);
}

int surface_components(const SplittingTuple& t) {
    if (t.arity() != 3) throw Error("surface_components: arity 3 required");
    if (t.sig.bridges < 1) throw Error("surface_components: b = 0 gives no surface");
    return count_cycles({strand_partners(t.homs[0]), strand_partners(t.homs[1]),
                         strand_partners(t.homs[2])},
                        2 * t.sig.bridges);
}

int euler_characteristic(const SplittingTuple& t) {
    if (t.arity() != 3) throw Error("euler_characteristic: arity 3 required");
    if (t.sig.bridges < 1) throw Error("euler_characteristic: b = 0 gives no surface");
    int c = link_components(t, 1, 2) + link_components(t, 2, 3) + link_components(t, 3, 1);
    return c - t.sig.bridges;
}

bool is_spherical(const SplittingTuple& t) {
    return surface_components(t) == 1 && euler_characteristic(t) == 2;
}

// ---------------------------------------------------------------------------
// Membership

namespace {

struct Freeness {
    enum State { Free, Torsion, Inconclusive } state;
    int rank = 0;
    AbelianInvariants ab;
};

Freeness analyze_freeness(const Presentation& p, long budget) {
    Presentation simp = simplify(p, budget);
    Freeness f;
    f.ab = abelianization(simp);
    if (simp.relators.empty()) {
        f.state = Freeness::Free;
        f.rank = static_cast<int>(simp.gens.size());
    } else if (!f.ab.torsion.empty()) {
        f.state = Freeness::Torsion;
    } else {
        f.state = Freeness::Inconclusive;
    }
    return f;
}

}  // namespace

ConditionVerdict verify_membership(const SplittingTuple& t, Flavor flavor, long budget) {
    if (flavor_arity(flavor) != t.arity())
        throw Error("verify_membership: flavor/arity mismatch");
    if ((flavor == Flavor::Alg3 || flavor == Flavor::Alg4) && t.sig.bridges != 0)
        throw Error("verify_membership: " + flavor_name(flavor) + " requires b = 0");
    if ((flavor == Flavor::Alg31 || flavor == Flavor::Alg42) && t.sig.bridges < 1)
        throw Error("verify_membership: " + flavor_name(flavor) + " requires b >= 1");

    ConditionVerdict v;
    if (flavor == Flavor::Alg3 || flavor == Flavor::Alg31) {
        v.value = Verdict::Holds;
        v.evidence = "all homomorphisms are bounding";
        return v;
    }

    static constexpr std::pair<int, int> kPairs[3] = {{1, 2}, {2, 3}, {3, 1}};
    bool anyUnknown = false;
    std::string ev;

    if (flavor == Flavor::Alg4) {
        for (auto [i, j] : kPairs) {
            Freeness f = analyze_freeness(pushout_pair(t, i, j), budget);
            std::string tag = "pushout(" + std::to_string(i) + "," + std::to_string(j) + ")";
            if (f.state == Freeness::Torsion) {
                v.value = Verdict::Fails;
                v.evidence = tag + " has torsion in its abelianization, hence is not free";
                return v;
            }
            if (f.state == Freeness::Free) {
                ev += tag + " free of rank " + std::to_string(f.rank) + "; ";
            } else {
                anyUnknown = true;
                ev += tag + " not certified free within budget; ";
            }
        }
        v.value = anyUnknown ? Verdict::Unknown : Verdict::Holds;
        v.evidence = ev;
        return v;
    }

    // Alg42: closed pushouts free, and full pushouts free of matching rank.
    std::vector<FreeTargetHom> closedHoms;
    for (const auto& h : t.homs) closedHoms.push_back(associated_closed(h));
    SplittingTuple closed{Flavor::Alg4, closedHoms[0].sig(), closedHoms};

    for (auto [i, j] : kPairs) {
        std::string tag = "pair(" + std::to_string(i) + "," + std::to_string(j) + ")";
        Freeness fc = analyze_freeness(pushout_pair(closed, i, j), budget);
        if (fc.state == Freeness::Torsion) {
            v.value = Verdict::Fails;
            v.evidence = tag + ": closed pushout has torsion, hence is not free";
            return v;
        }
        Freeness ff = analyze_freeness(pushout_pair(t, i, j), budget);
        if (ff.state == Freeness::Torsion) {
            v.value = Verdict::Fails;
            v.evidence = tag + ": pushout has torsion, hence is not free";
            return v;
        }
        int comps = link_components(t, i, j);
        if (fc.state != Freeness::Free) {
            anyUnknown = true;
            ev += tag + " closed pushout not certified within budget; ";
            continue;
        }
        int required = fc.rank + comps;
        if (ff.ab.freeRank != required || !ff.ab.torsion.empty()) {
            v.value = Verdict::Fails;
            v.evidence = tag + ": pushout abelianization has rank " +
                         std::to_string(ff.ab.freeRank) + ", required " +
                         std::to_string(required);
            return v;
        }
        if (ff.state == Freeness::Free) {
            if (ff.rank != required) {
                v.value = Verdict::Fails;
                v.evidence = tag + ": pushout free of rank " + std::to_string(ff.rank) +
                             ", required " + std::to_string(required);
                return v;
            }
            ev += tag + " free of rank " + std::to_string(ff.rank) + " = " +
                  std::to_string(fc.rank) + "+" + std::to_string(comps) + "; ";
        } else {
            anyUnknown = true;
            ev += tag + " not certified free within budget; ";
        }
    }
    v.value = anyUnknown ? Verdict::Unknown : Verdict::Holds;
    v.evidence = ev;
    return v;
}

// ---------------------------------------------------------------------------
// Moves

namespace {

Word one(Gen g, int8_t s = 1) { return Word::trusted({{g, s}}); }

FreeTargetHom with_extra_handles(const FreeTargetHom& h, const std::vector<Word>& newA,
                                 const std::vector<Word>& newB) {
    SurfaceSig sig{h.sig().genus + static_cast<int>(newA.size()), h.sig().bridges};
    auto a = h.a_images();
    auto b = h.b_images();
    a.insert(a.end(), newA.begin(), newA.end());
    b.insert(b.end(), newB.begin(), newB.end());
    return FreeTargetHom(sig, h.p_images(), a, b);
}

}  // namespace

SplittingTuple move_stabilize_heegaard(const SplittingTuple& t) {
    if (t.arity() != 2) throw Error("move_stabilize_heegaard: arity 2 required");
    if (t.sig.bridges != 0) throw Error("move_stabilize_heegaard: b = 0 required");
    Gen hNew = gen_h(t.sig.genus + 1);
    return SplittingTuple::make(
        t.flavor, {with_extra_handles(t.homs[0], {one(hNew)}, {Word{}}),
                   with_extra_handles(t.homs[1], {Word{}}, {one(hNew)})});
}

SplittingTuple move_stabilize_genus(const SplittingTuple& t) {
    if (t.arity() == 2) {
        Gen hNew = gen_h(t.sig.genus + 1);
        return SplittingTuple::make(
            t.flavor, {with_extra_handles(t.homs[0], {one(hNew)}, {Word{}}),
                       with_extra_handles(t.homs[1], {Word{}}, {one(hNew)})});
    }
    Gen h1 = gen_h(t.sig.genus + 1), h2 = gen_h(t.sig.genus + 2), h3 = gen_h(t.sig.genus + 3);
    Word e;
    return SplittingTuple::make(
        t.flavor,
        {with_extra_handles(t.homs[0], {one(h1), one(h2), e}, {e, e, one(h3)}),
         with_extra_handles(t.homs[1], {one(h1), e, one(h3)}, {e, one(h2), e}),
         with_extra_handles(t.homs[2], {e, one(h2), one(h3)}, {one(h1), e, e})});
}

namespace {

FreeTargetHom replace_and_append_p(const FreeTargetHom& h,
                                   const std::map<int, Word>& replace,
                                   const std::vector<Word>& appended) {
    SurfaceSig sig{h.sig().genus, h.sig().bridges + static_cast<int>(appended.size()) / 2};
    auto p = h.p_images();
    for (const auto& [slot, w] : replace) p.at(slot - 1) = w;
    p.insert(p.end(), appended.begin(), appended.end());
    return FreeTargetHom(sig, p, h.a_images(), h.b_images());
}

void require_exact_slot(const FreeTargetHom& h, int slot, Gen tb, const char* who) {
    if (!(h.image(gen_p(slot)) == one(tb)))
        throw Error(std::string("perturbation normal form absent: ") + who + "(p" +
                    std::to_string(slot) + ") must equal " + tb.str());
}

}  // namespace

SplittingTuple move_perturb(const SplittingTuple& t, int side) {
    if (t.arity() != 2) throw Error("move_perturb: arity 2 required");
    if (t.sig.bridges < 1) throw Error("move_perturb: b >= 1 required");
    if (side != 1 && side != 2) throw Error("move_perturb: side must be 1 or 2");
    int b = t.sig.bridges;
    Gen tb = gen_t(b), tn = gen_t(b + 1);
    require_exact_slot(t.homs[side - 1], 2 * b, tb, "phi_side");
    require_exact_slot(t.homs[2 - side], 2 * b, tb, "phi_other");

    std::vector<FreeTargetHom> homs;
    for (int k = 0; k < 2; ++k) {
        if (k == side - 1)
            homs.push_back(replace_and_append_p(t.homs[k], {{2 * b, one(tn)}},
                                                {one(tn, -1), one(tb)}));
        else
            homs.push_back(replace_and_append_p(t.homs[k], {}, {one(tn), one(tn, -1)}));
    }
    SplittingTuple out = SplittingTuple::make(t.flavor, std::move(homs));
    if (link_components(out, 1, 2) != link_components(t, 1, 2))
        throw Error("move_perturb: link component count changed (internal)");
    return out;
}

SplittingTuple move_perturb_triple(const SplittingTuple& t, int color, PerturbMode mode) {
    if (t.arity() != 3) throw Error("move_perturb_triple: arity 3 required");
    if (t.sig.bridges < 1) throw Error("move_perturb_triple: b >= 1 required");
    if (color < 1 || color > 3) throw Error("move_perturb_triple: color must be 1, 2 or 3");
    int b = t.sig.bridges;
    Gen tb = gen_t(b), tn = gen_t(b + 1);
    int r1 = color - 1, r2 = color % 3, r3 = (color + 1) % 3;

    std::vector<FreeTargetHom> homs(t.homs.begin(), t.homs.end());
    if (mode == PerturbMode::Shared) {
        require_exact_slot(t.homs[r1], 2 * b, tb, "phi_c");
        require_exact_slot(t.homs[r2], 2 * b, tb, "phi_{c+1}");
        homs[r1] = replace_and_append_p(t.homs[r1], {{2 * b, one(tn)}}, {one(tn, -1), one(tb)});
        homs[r2] = replace_and_append_p(t.homs[r2], {{2 * b, one(tn)}}, {one(tn, -1), one(tb)});
        homs[r3] = replace_and_append_p(t.homs[r3], {}, {one(tn), one(tn, -1)});
    } else {
        require_exact_slot(t.homs[r1], 2 * b - 1, tb, "phi_c");
        require_exact_slot(t.homs[r2], 2 * b, tb, "phi_{c+1}");
        auto m1 = strand_partners(t.homs[r1]);
        auto m2 = strand_partners(t.homs[r2]);
        std::set<int> arc1{2 * b - 1, m1[2 * b - 1]}, arc2{2 * b, m2[2 * b]};
        for (int x : arc1)
            if (arc2.count(x))
                throw Error("move_perturb_triple: the two strands share an endpoint; "
                            "use shared mode");
        // The surface relation forces a conjugation of phi_c(p_{2b}) by
        // t_{b+1}^-1 t_b when the replaced slot is p_{2b-1}.
        Word cj = one(tn, -1) * one(tb);
        Word adjusted = cj * t.homs[r1].image(gen_p(2 * b)) * cj.inverse();
        homs[r1] = replace_and_append_p(t.homs[r1], {{2 * b - 1, one(tn)}, {2 * b, adjusted}},
                                        {one(tn, -1), one(tb)});
        homs[r2] = replace_and_append_p(t.homs[r2], {{2 * b, one(tn)}}, {one(tn, -1), one(tb)});
        homs[r3] = replace_and_append_p(t.homs[r3], {}, {one(tn), one(tn, -1)});
    }
    SplittingTuple out = SplittingTuple::make(t.flavor, std::move(homs));
    if (euler_characteristic(out) != euler_characteristic(t))
        throw Error("move_perturb_triple: Euler characteristic changed; the chosen strands "
                    "do not admit this perturbation");
    if (surface_components(out) != surface_components(t))
        throw Error("move_perturb_triple: surface component count changed; the chosen "
                    "strands do not admit this perturbation");
    return out;
}

SplittingTuple move_cyclic(const SplittingTuple& t) {
    if (t.arity() != 3) throw Error("move_cyclic: arity 3 required");
    return SplittingTuple::make(t.flavor, {t.homs[1], t.homs[2], t.homs[0]});
}

namespace {

void check_mutual_inverse(const std::vector<Gen>& gens, const std::map<Gen, Word>& fwd,
                          const std::map<Gen, Word>& inv, const char* what) {
    for (Gen g : gens) {
        Word w = one(g);
        if (!(substitute(substitute(w, fwd), inv) == w) ||
            !(substitute(substitute(w, inv), fwd) == w))
            throw Error(std::string(what) + ": maps are not mutually inverse on generator '" +
                        g.str() + "'");
    }
}

}  // namespace

SplittingTuple move_target_automorphism(const SplittingTuple& t, int index,
                                        const std::map<Gen, Word>& images,
                                        const std::map<Gen, Word>& inverseImages) {
    if (index < 1 || index > t.arity())
        throw Error("move_target_automorphism: bad homomorphism index");
    check_mutual_inverse(t.homs[index - 1].target_generators(), images, inverseImages,
                         "move_target_automorphism");
    std::vector<FreeTargetHom> homs(t.homs.begin(), t.homs.end());
    const FreeTargetHom& h = t.homs[index - 1];
    auto post = [&](const std::vector<Word>& ws) {
        std::vector<Word> out;
        for (const auto& w : ws) out.push_back(substitute(w, images));
        return out;
    };
    homs[index - 1] =
        FreeTargetHom(h.sig(), post(h.p_images()), post(h.a_images()), post(h.b_images()));
    return SplittingTuple::make(t.flavor, std::move(homs));
}

SplittingTuple move_surface_automorphism(const SplittingTuple& t,
                                         const std::map<Gen, Word>& images,
                                         const std::map<Gen, Word>& inverseImages) {
    const FreeTargetHom& h0 = t.homs[0];
    std::vector<Gen> dgens = h0.domain_generators();
    check_mutual_inverse(dgens, images, inverseImages, "move_surface_automorphism");

    // The automorphism must preserve the puncture conjugacy classes setwise,
    // sending each p_i to a conjugate of some p_j (positively), bijectively.
    int n = 2 * t.sig.bridges;
    std::vector<int> assigned(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        const Word& im = images.at(gen_p(i));
        int found = 0;
        for (int j = 1; j <= n; ++j)
            if (is_conjugate(im, one(gen_p(j)))) found = j;
        if (!found)
            throw Error("move_surface_automorphism: image of p" + std::to_string(i) +
                        " is not conjugate to any puncture generator");
        if (assigned[found])
            throw Error("move_surface_automorphism: puncture classes not permuted bijectively");
        assigned[found] = i;
    }

    // Orientation: the image of the relator must be conjugate to the relator
    // itself, not its inverse.
    auto [left, right] = surface_relation_sides(t.sig);
    Word relator = right * left.inverse();
    if (!relator.empty()) {
        Word image = substitute(relator, images);
        bool pres = is_conjugate(image, relator);
        bool rev = is_conjugate(image, relator.inverse());
        if (!pres && rev)
            throw Error("move_surface_automorphism: orientation-reversing automorphism");
        if (!pres)
            throw Error("move_surface_automorphism: relator image is conjugate to neither the "
                        "relator nor its inverse; orientation check inconclusive");
    }

    std::vector<FreeTargetHom> homs;
    for (const auto& h : t.homs) {
        auto phi = h.image_map();
        std::vector<Word> p, a, b;
        for (Gen g : dgens) {
            Word w = substitute(inverseImages.at(g), phi);
            switch (g.fam) {
                case Family::P: p.push_back(w); break;
                case Family::A: a.push_back(w); break;
                default: b.push_back(w); break;
            }
        }
        homs.emplace_back(h.sig(), std::move(p), std::move(a), std::move(b));
    }
    return SplittingTuple::make(t.flavor, std::move(homs));
}

// ---------------------------------------------------------------------------
// Normal-form helpers

namespace {

// Target automorphism theta with theta(g core g^-1) = t_b, where core is the
// central letter of hom(p_slot): theta = rho o conj_{g^-1} for the letter
// permutation rho swapping core onto t_b.
std::pair<std::map<Gen, Word>, std::map<Gen, Word>> slot_normalizer(const FreeTargetHom& h,
                                                                    int slot) {
    int b = h.sig().bridges;
    auto [conj, core] = cyclic_reduce(h.image(gen_p(slot)));
    if (core.size() != 1 || core.letters()[0].gen.fam != Family::T)
        throw Error("normalize_for_perturb: homomorphism is not bounding at p" +
                    std::to_string(slot));
    Letter c = core.letters()[0];
    Gen tb = gen_t(b);

    std::map<Gen, Word> rho;
    for (Gen g : h.target_generators()) rho[g] = one(g);
    if (c.sign > 0) {
        rho[c.gen] = one(tb);
        rho[tb] = one(c.gen);
    } else {
        rho[c.gen] = one(tb, -1);
        rho[tb] = one(c.gen, -1);
    }

    Word rg = substitute(conj, rho);
    std::map<Gen, Word> fwd, inv;
    for (Gen g : h.target_generators()) {
        fwd[g] = rg.inverse() * rho[g] * rg;          // theta(x) = rho(g)^-1 rho(x) rho(g)
        inv[g] = conj * substitute(one(g), rho) * conj.inverse();  // theta^-1(x) = g rho(x) g^-1
    }
    return {fwd, inv};
}

SplittingTuple normalize_slot(SplittingTuple t, int homIndex, int slot) {
    auto [fwd, inv] = slot_normalizer(t.homs[homIndex - 1], slot);
    return move_target_automorphism(t, homIndex, fwd, inv);
}

}  // namespace

SplittingTuple normalize_for_perturb(const SplittingTuple& t, int side) {
    (void)side;  // both homs are normalized at slot p_{2b}
    if (t.arity() != 2) throw Error("normalize_for_perturb: arity 2 required");
    if (t.sig.bridges < 1) throw Error("normalize_for_perturb: b >= 1 required");
    SplittingTuple out = normalize_slot(t, 1, 2 * t.sig.bridges);
    out = normalize_slot(out, 2, 2 * t.sig.bridges);
    return out;
}

SplittingTuple normalize_for_perturb_triple(const SplittingTuple& t, int color,
                                            PerturbMode mode) {
    if (t.arity() != 3) throw Error("normalize_for_perturb_triple: arity 3 required");
    if (t.sig.bridges < 1) throw Error("normalize_for_perturb_triple: b >= 1 required");
    if (color < 1 || color > 3) throw Error("normalize_for_perturb_triple: bad color");
    int b = t.sig.bridges;
    int r1 = color, r2 = color % 3 + 1;
    SplittingTuple out =
        normalize_slot(t, r1, mode == PerturbMode::Shared ? 2 * b : 2 * b - 1);
    out = normalize_slot(out, r2, 2 * b);
    return out;
}

}  // namespace tf
