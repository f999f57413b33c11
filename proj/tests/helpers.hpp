#pragma once

#include <random>
#include <string>
#include <vector>

#include "tangleforge/equiv.hpp"
#include "tangleforge/io.hpp"

namespace tfh {

using namespace tf;

inline std::string fixture_path(const std::string& name) {
    return std::string(TF_FIXTURE_DIR) + "/" + name;
}

inline FreeTargetHom load_hom(const std::string& name) {
    return parse_hom(read_file(fixture_path(name)));
}

inline SplittingTuple load_tuple(const std::string& name) {
    return parse_tuple(read_file(fixture_path(name)));
}

inline uint64_t global_seed() {
    if (const char* s = std::getenv("TANGLEFORGE_SEED")) return std::strtoull(s, nullptr, 10);
    return 20240817;
}

// Scan-and-delete reference reducer, independent of the stack implementation.
inline std::vector<Letter> naive_reduce(std::vector<Letter> w) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < w.size(); ++i) {
            if (w[i] == w[i + 1].inverse()) {
                w.erase(w.begin() + i, w.begin() + i + 2);
                changed = true;
                break;
            }
        }
    }
    return w;
}

inline Word random_reduced_word(std::mt19937_64& rng, const std::vector<Gen>& gens,
                                int maxLen) {
    std::uniform_int_distribution<int> len(0, maxLen);
    std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
    std::uniform_int_distribution<int> coin(0, 1);
    std::vector<Letter> raw;
    int n = len(rng);
    for (int i = 0; i < n; ++i)
        raw.push_back({gens[pick(rng)], static_cast<int8_t>(coin(rng) ? 1 : -1)});
    return Word::from_letters(std::move(raw));
}

// Identity-like bounding homomorphism: a_i -> h_i, b_i -> e, p_{2j-1} -> t_j,
// p_{2j} -> t_j^-1.
inline FreeTargetHom identity_like_hom(int g, int b) {
    std::vector<Word> p, a, bs;
    for (int j = 1; j <= b; ++j) {
        p.push_back(Word::trusted({{gen_t(j), 1}}));
        p.push_back(Word::trusted({{gen_t(j), -1}}));
    }
    for (int i = 1; i <= g; ++i) {
        a.push_back(Word::trusted({{gen_h(i), 1}}));
        bs.push_back(Word{});
    }
    return FreeTargetHom({g, b}, std::move(p), std::move(a), std::move(bs));
}

inline SplittingTuple identity_like_tuple(Flavor flavor, int g, int b) {
    int n = flavor_arity(flavor);
    std::vector<FreeTargetHom> homs(n, identity_like_hom(g, b));
    return SplittingTuple::make(flavor, std::move(homs));
}

inline std::map<Gen, Word> identity_map(const std::vector<Gen>& gens) {
    std::map<Gen, Word> m;
    for (Gen g : gens) m[g] = Word::trusted({{g, 1}});
    return m;
}

// Random target automorphism (a short Nielsen-style move) applied to one hom.
inline SplittingTuple random_target_move(const SplittingTuple& t, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pickHom(1, t.arity());
    int index = pickHom(rng);
    auto gens = t.homs[0].target_generators();
    auto fwd = identity_map(gens), inv = identity_map(gens);
    int g = t.sig.genus, b = t.sig.bridges;
    std::uniform_int_distribution<int> kind(0, 3);
    std::uniform_int_distribution<size_t> pickGen(0, gens.size() - 1);
    std::uniform_int_distribution<int> coin(0, 1);
    switch (kind(rng)) {
        case 0: {  // h_i -> h_i x
            if (g == 0 || gens.size() < 2) return t;
            std::uniform_int_distribution<int> pickH(1, g);
            Gen hi = gen_h(pickH(rng));
            Gen x = gens[pickGen(rng)];
            if (x == hi) return t;
            int8_t s = coin(rng) ? 1 : -1;
            fwd[hi] = Word::trusted({{hi, 1}, {x, s}});
            inv[hi] = Word::trusted({{hi, 1}, {x, static_cast<int8_t>(-s)}});
            break;
        }
        case 1: {  // h_i -> h_i^-1
            if (g == 0) return t;
            std::uniform_int_distribution<int> pickH(1, g);
            Gen hi = gen_h(pickH(rng));
            fwd[hi] = Word::trusted({{hi, -1}});
            inv[hi] = Word::trusted({{hi, -1}});
            break;
        }
        case 2: {  // t_j -> w t_j w^-1
            if (b == 0) return t;
            std::uniform_int_distribution<int> pickT(1, b);
            Gen tj = gen_t(pickT(rng));
            Word w = random_reduced_word(rng, gens, 3);
            fwd[tj] = w * Word::trusted({{tj, 1}}) * w.inverse();
            inv[tj] = w.inverse() * Word::trusted({{tj, 1}}) * w;
            break;
        }
        default: {  // t_j -> t_j^-1
            if (b == 0) return t;
            std::uniform_int_distribution<int> pickT(1, b);
            Gen tj = gen_t(pickT(rng));
            fwd[tj] = Word::trusted({{tj, -1}});
            inv[tj] = Word::trusted({{tj, -1}});
            break;
        }
    }
    return move_target_automorphism(t, index, fwd, inv);
}

// Random mapping-class-style domain automorphism applied to the whole tuple.
inline SplittingTuple random_surface_move(const SplittingTuple& t, std::mt19937_64& rng) {
    auto gens = t.homs[0].domain_generators();
    auto fwd = identity_map(gens), inv = identity_map(gens);
    int g = t.sig.genus, b = t.sig.bridges;
    std::uniform_int_distribution<int> kind(0, 2);
    switch (kind(rng)) {
        case 0: {  // handle twist
            if (g == 0) return t;
            std::uniform_int_distribution<int> pickH(1, g);
            std::uniform_int_distribution<int> which(0, 3);
            int i = pickH(rng);
            Gen a = gen_a(i), bb = gen_b(i);
            switch (which(rng)) {
                case 0:
                    fwd[bb] = Word::trusted({{bb, 1}, {a, 1}});
                    inv[bb] = Word::trusted({{bb, 1}, {a, -1}});
                    break;
                case 1:
                    fwd[bb] = Word::trusted({{bb, 1}, {a, -1}});
                    inv[bb] = Word::trusted({{bb, 1}, {a, 1}});
                    break;
                case 2:
                    fwd[a] = Word::trusted({{a, 1}, {bb, 1}});
                    inv[a] = Word::trusted({{a, 1}, {bb, -1}});
                    break;
                default:
                    fwd[a] = Word::trusted({{a, 1}, {bb, -1}});
                    inv[a] = Word::trusted({{a, 1}, {bb, 1}});
                    break;
            }
            break;
        }
        case 1: {  // puncture braid
            if (b == 0) return t;
            std::uniform_int_distribution<int> pickK(1, 2 * b - 1);
            int k = pickK(rng);
            Gen pk = gen_p(k), pk1 = gen_p(k + 1);
            fwd[pk] = Word::trusted({{pk, 1}, {pk1, 1}, {pk, -1}});
            fwd[pk1] = Word::trusted({{pk, 1}});
            inv[pk] = Word::trusted({{pk1, 1}});
            inv[pk1] = Word::trusted({{pk1, -1}, {pk, 1}, {pk1, 1}});
            break;
        }
        default: {  // inner automorphism
            Word w = random_reduced_word(rng, gens, 1);
            if (w.empty()) return t;
            for (Gen x : gens) {
                fwd[x] = w * Word::trusted({{x, 1}}) * w.inverse();
                inv[x] = w.inverse() * Word::trusted({{x, 1}}) * w;
            }
            break;
        }
    }
    return move_surface_automorphism(t, fwd, inv);
}

inline size_t total_image_length(const SplittingTuple& t) {
    size_t n = 0;
    for (const auto& h : t.homs)
        for (const auto& w : h.all_images()) n += w.size();
    return n;
}

// A random walk through the move set, keeping total image length below cap.
// Word-growing moves (automorphisms) dominate so the corpus is not a
// neighborhood of the identity-like tuples.
inline SplittingTuple random_move_walk(SplittingTuple t, std::mt19937_64& rng, int steps,
                                       size_t cap) {
    for (int s = 0; s < steps; ++s) {
        std::uniform_int_distribution<int> kind(0, 9);
        SplittingTuple next = t;
        int k = kind(rng);
        try {
            if (k == 0 && t.sig.genus < 3) {
                next = move_stabilize_genus(t);
            } else if (k == 1 && t.sig.bridges >= 1 && t.sig.bridges < 3) {
                if (t.arity() == 2) {
                    std::uniform_int_distribution<int> side(1, 2);
                    next = move_perturb(normalize_for_perturb(t, 1), side(rng));
                } else {
                    std::uniform_int_distribution<int> color(1, 3);
                    int c = color(rng);
                    next = move_perturb_triple(
                        normalize_for_perturb_triple(t, c, PerturbMode::Shared), c,
                        PerturbMode::Shared);
                }
            } else if (k == 2 && t.arity() == 3) {
                next = move_cyclic(t);
            } else if (k <= 5) {
                next = random_surface_move(t, rng);
            } else {
                next = random_target_move(t, rng);
            }
        } catch (const Error&) {
            continue;  // move not applicable here
        }
        if (total_image_length(next) <= cap) t = std::move(next);
    }
    return t;
}

inline FreeTargetHom random_bounding_hom(std::mt19937_64& rng, size_t cap,
                                         int steps = 40) {
    std::uniform_int_distribution<int> pickG(0, 2), pickB(0, 2);
    int g = pickG(rng), b = pickB(rng);
    if (g + b == 0) g = 1;
    Flavor flavor = b == 0 ? Flavor::Alg3 : Flavor::Alg31;
    SplittingTuple t = identity_like_tuple(flavor, g, b);
    t = random_move_walk(std::move(t), rng, steps, cap / 2);
    return t.homs[0];
}

}  // namespace tfh
