#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tangleforge/words.hpp"

namespace tf {

struct SurfaceSig {
    int genus{0};
    int bridges{0};  // puncture count = 2 * bridges

    auto operator<=>(const SurfaceSig&) const = default;
};

// A homomorphism from the punctured-surface group on generators
// p1..p_{2b}, a1..ag, b1..bg to the free group on t1..tb, h1..hg,
// given by generator images.
class FreeTargetHom {
public:
    FreeTargetHom(SurfaceSig sig, std::vector<Word> pImages, std::vector<Word> aImages,
                  std::vector<Word> bImages);

    const SurfaceSig& sig() const { return sig_; }
    const Word& image(Gen domainGen) const;
    const std::vector<Word>& p_images() const { return p_; }
    const std::vector<Word>& a_images() const { return a_; }
    const std::vector<Word>& b_images() const { return b_; }

    // Images in the order p1..p_{2b}, a1, b1, ..., a_g, b_g.
    std::vector<Word> all_images() const;
    std::vector<Gen> domain_generators() const;
    std::vector<Gen> target_generators() const;
    std::map<Gen, Word> image_map() const;

    bool operator==(const FreeTargetHom&) const = default;

private:
    SurfaceSig sig_;
    std::vector<Word> p_, a_, b_;
};

// (p1 ... p_{2b},  [a1,b1] ... [ag,bg]) as words over the domain generators.
std::pair<Word, Word> surface_relation_sides(SurfaceSig sig);

// True iff the substituted-and-reduced relation sides agree.
bool verify_hom(const FreeTargetHom& hom);

struct BoundingReport {
    bool ok = false;
    bool surjective = false;
    bool cond1 = false;
    bool cond2 = false;
    std::map<int, Letter> f;        // puncture index -> central t-letter (when cond2 holds)
    std::map<int, Word> conjugators;
    std::vector<std::string> failures;

    // Pairing p_i ~ p_j iff f(p_i) = f(p_j)^{-1}; valid when cond2 holds.
    std::vector<std::pair<int, int>> strand_matching() const;
};

BoundingReport verify_bounding(const FreeTargetHom& hom);

// Quotient out all t's: the associated closed bounding homomorphism.
FreeTargetHom associated_closed(const FreeTargetHom& hom);

}  // namespace tf
