#pragma once

#include <string>
#include <vector>

#include "tangleforge/intmat.hpp"
#include "tangleforge/surface.hpp"

namespace tf {

enum class Flavor : uint8_t { Alg3, Alg31, Alg4, Alg42 };

int flavor_arity(Flavor f);
std::string flavor_name(Flavor f);
Flavor flavor_from_name(const std::string& s);

// 2 or 3 bounding homomorphisms over a common punctured surface.
struct SplittingTuple {
    Flavor flavor;
    SurfaceSig sig;
    std::vector<FreeTargetHom> homs;

    int arity() const { return static_cast<int>(homs.size()); }

    // Validates arity, shared signature, flavor side conditions and that every
    // homomorphism is bounding.
    static SplittingTuple make(Flavor flavor, std::vector<FreeTargetHom> homs);

    bool operator==(const SplittingTuple&) const = default;
};

// Finitely presented group: named generators, relators as signed index words
// (letter k > 0 means gens[k-1], k < 0 its inverse).
struct Presentation {
    std::vector<std::string> gens;
    std::vector<std::vector<int32_t>> relators;

    void normalize();  // freely reduce relators, drop trivial ones
    std::string relator_str(const std::vector<int32_t>& rel) const;
    bool operator==(const Presentation&) const = default;
};

struct AbelianInvariants {
    int freeRank = 0;
    std::vector<long long> torsion;  // d1 | d2 | ..., each >= 2

    bool operator==(const AbelianInvariants&) const = default;
};

enum class Verdict : uint8_t { Holds, Fails, Unknown };

struct ConditionVerdict {
    Verdict value = Verdict::Unknown;
    std::string evidence;
};

// Pushout of homs i and j (1-based): disjoint target copies, one relator
// phi_i(x) phi_j(x)^-1 per domain generator x.
Presentation pushout_pair(const SplittingTuple& t, int i, int j);
// Pushout of all three maps (arity 3).
Presentation pushout_tuple(const SplittingTuple& t);

// Budgeted Tietze simplification; the result presents an isomorphic group.
Presentation simplify(Presentation p, long budget);

AbelianInvariants abelianization(const Presentation& p);

// Cycle count of the union of the strand matchings of homs i and j.
int link_components(const SplittingTuple& t, int i, int j);
// Connected components of the graph of all three strand matchings (arity 3).
int surface_components(const SplittingTuple& t);
// chi = c12 + c23 + c31 - b for the bridge-trisected surface (arity 3).
int euler_characteristic(const SplittingTuple& t);
bool is_spherical(const SplittingTuple& t);

ConditionVerdict verify_membership(const SplittingTuple& t, Flavor flavor, long budget);

// The algebraic moves. Each re-verifies that every output homomorphism is
// bounding and rejects (throws) rather than emit an invalid tuple.
SplittingTuple move_stabilize_heegaard(const SplittingTuple& t);        // arity 2, b = 0
SplittingTuple move_stabilize_genus(const SplittingTuple& t);           // genus +1 (pairs) / +3 (triples)
SplittingTuple move_perturb(const SplittingTuple& t, int side);         // arity 2, b >= 1

enum class PerturbMode : uint8_t { Shared, Unshared };
SplittingTuple move_perturb_triple(const SplittingTuple& t, int color, PerturbMode mode);

SplittingTuple move_cyclic(const SplittingTuple& t);  // arity 3

SplittingTuple move_target_automorphism(const SplittingTuple& t, int index,
                                        const std::map<Gen, Word>& images,
                                        const std::map<Gen, Word>& inverseImages);
SplittingTuple move_surface_automorphism(const SplittingTuple& t,
                                         const std::map<Gen, Word>& images,
                                         const std::map<Gen, Word>& inverseImages);

// Helper used by the CLI and tests: post-composes target automorphisms so the
// perturbation normal form holds (slot images become exact t-letters).
SplittingTuple normalize_for_perturb(const SplittingTuple& t, int side);  // arity 2
SplittingTuple normalize_for_perturb_triple(const SplittingTuple& t, int color,
                                            PerturbMode mode);  // arity 3

inline constexpr long kDefaultSimplifyBudget = 100000;

}  // namespace tf
