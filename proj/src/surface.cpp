#include "tangleforge/surface.hpp"

#include <algorithm>

#include "tangleforge/fold.hpp"

namespace tf {

namespace {

void check_target_alphabet(const Word& w, const SurfaceSig& sig, const char* what) {
    for (const auto& l : w.letters()) {
        bool ok = (l.gen.fam == Family::H && l.gen.idx <= sig.genus) ||
                  (l.gen.fam == Family::T && l.gen.idx <= sig.bridges);
        if (!ok)
            throw Error(std::string("image of ") + what + " uses generator '" + l.gen.str() +
                        "' outside the target free group");
    }
}

}  // namespace

FreeTargetHom::FreeTargetHom(SurfaceSig sig, std::vector<Word> pImages,
                             std::vector<Word> aImages, std::vector<Word> bImages)
    : sig_(sig), p_(std::move(pImages)), a_(std::move(aImages)), b_(std::move(bImages)) {
    if (sig_.genus < 0 || sig_.bridges < 0) throw Error("negative genus or bridge count");
    if (static_cast<int>(p_.size()) != 2 * sig_.bridges)
        throw Error("expected " + std::to_string(2 * sig_.bridges) + " puncture images");
    if (static_cast<int>(a_.size()) != sig_.genus ||
        static_cast<int>(b_.size()) != sig_.genus)
        throw Error("expected " + std::to_string(sig_.genus) + " a- and b-images");
    for (const auto& w : p_) check_target_alphabet(w, sig_, "p");
    for (const auto& w : a_) check_target_alphabet(w, sig_, "a");
    for (const auto& w : b_) check_target_alphabet(w, sig_, "b");
}

const Word& FreeTargetHom::image(Gen g) const {
    switch (g.fam) {
        case Family::P:
            if (g.idx >= 1 && g.idx <= static_cast<int>(p_.size())) return p_[g.idx - 1];
            break;
        case Family::A:
            if (g.idx >= 1 && g.idx <= static_cast<int>(a_.size())) return a_[g.idx - 1];
            break;
        case Family::B:
            if (g.idx >= 1 && g.idx <= static_cast<int>(b_.size())) return b_[g.idx - 1];
            break;
        default:
            break;
    }
    throw Error("no image for generator '" + g.str() + "'");
}

std::vector<Word> FreeTargetHom::all_images() const {
    std::vector<Word> out = p_;
    for (int i = 0; i < sig_.genus; ++i) {
        out.push_back(a_[i]);
        out.push_back(b_[i]);
    }
    return out;
}

std::vector<Gen> FreeTargetHom::domain_generators() const {
    std::vector<Gen> out;
    for (int i = 1; i <= 2 * sig_.bridges; ++i) out.push_back(gen_p(i));
    for (int i = 1; i <= sig_.genus; ++i) {
        out.push_back(gen_a(i));
        out.push_back(gen_b(i));
    }
    return out;
}

std::vector<Gen> FreeTargetHom::target_generators() const {
    std::vector<Gen> out;
    for (int i = 1; i <= sig_.bridges; ++i) out.push_back(gen_t(i));
    for (int i = 1; i <= sig_.genus; ++i) out.push_back(gen_h(i));
    return out;
}

std::map<Gen, Word> FreeTargetHom::image_map() const {
    std::map<Gen, Word> m;
    for (Gen g : domain_generators()) m[g] = image(g);
    return m;
}

std::pair<Word, Word> surface_relation_sides(SurfaceSig sig) {
    std::vector<Letter> left, right;
    for (int i = 1; i <= 2 * sig.bridges; ++i) left.push_back({gen_p(i), 1});
    for (int i = 1; i <= sig.genus; ++i) {
        right.push_back({gen_a(i), 1});
        right.push_back({gen_b(i), 1});
        right.push_back({gen_a(i), -1});
        right.push_back({gen_b(i), -1});
    }
    return {Word::trusted(std::move(left)), Word::trusted(std::move(right))};
}

bool verify_hom(const FreeTargetHom& hom) {
    auto [left, right] = surface_relation_sides(hom.sig());
    auto images = hom.image_map();
    return substitute(left, images) == substitute(right, images);
}

std::vector<std::pair<int, int>> BoundingReport::strand_matching() const {
    std::vector<std::pair<int, int>> pairs;
    for (const auto& [i, li] : f)
        for (const auto& [j, lj] : f)
            if (i < j && li == lj.inverse()) pairs.emplace_back(i, j);
    return pairs;
}

BoundingReport verify_bounding(const FreeTargetHom& hom) {
    if (!verify_hom(hom))
        throw Error("verify_bounding: images do not satisfy the surface relation");
    const auto& sig = hom.sig();
    BoundingReport rep;

    rep.surjective = generates_full_on(hom.all_images(), hom.target_generators());
    if (!rep.surjective) rep.failures.push_back("images do not generate the target free group");

    std::set<Gen> tset;
    for (int i = 1; i <= sig.bridges; ++i) tset.insert(gen_t(i));
    std::vector<Word> killed;
    for (const auto& w : hom.a_images()) killed.push_back(delete_letters(w, tset));
    for (const auto& w : hom.b_images()) killed.push_back(delete_letters(w, tset));
    std::vector<Gen> hgens;
    for (int i = 1; i <= sig.genus; ++i) hgens.push_back(gen_h(i));
    rep.cond1 = generates_full_on(killed, hgens);
    if (!rep.cond1)
        rep.failures.push_back(
            "condition (1): a/b images do not surject onto the quotient killing the t's");

    rep.cond2 = true;
    std::map<Letter, int> hits;
    for (int i = 1; i <= 2 * sig.bridges; ++i) {
        auto [conj, core] = cyclic_reduce(hom.image(gen_p(i)));
        if (core.size() != 1 || core.letters()[0].gen.fam != Family::T) {
            rep.cond2 = false;
            rep.failures.push_back("condition (2): image of p" + std::to_string(i) +
                                   " is not a conjugate of a single t-letter");
            continue;
        }
        Letter central = core.letters()[0];
        rep.f[i] = central;
        rep.conjugators[i] = conj;
        hits[central]++;
    }
    if (rep.cond2) {
        for (int j = 1; j <= sig.bridges; ++j) {
            for (int8_t s : {int8_t(1), int8_t(-1)}) {
                Letter l{gen_t(j), s};
                if (hits[l] != 1) {
                    rep.cond2 = false;
                    rep.failures.push_back("condition (2): " + l.gen.str() +
                                           (s > 0 ? "" : "^-1") +
                                           " is not hit exactly once as a central letter");
                }
            }
        }
    }
    if (!rep.cond2) {
        rep.f.clear();
        rep.conjugators.clear();
    }
    rep.ok = rep.surjective && rep.cond1 && rep.cond2;
    return rep;
}

FreeTargetHom associated_closed(const FreeTargetHom& hom) {
    BoundingReport rep = verify_bounding(hom);
    if (!rep.ok) throw Error("associated_closed: homomorphism is not bounding");
    std::set<Gen> tset;
    for (int i = 1; i <= hom.sig().bridges; ++i) tset.insert(gen_t(i));
    std::vector<Word> a, b;
    for (const auto& w : hom.a_images()) a.push_back(delete_letters(w, tset));
    for (const auto& w : hom.b_images()) b.push_back(delete_letters(w, tset));
    FreeTargetHom closed({hom.sig().genus, 0}, {}, std::move(a), std::move(b));
    if (!verify_bounding(closed).ok)
        throw Error("associated_closed: result unexpectedly fails to be bounding");
    return closed;
}

}  // namespace tf
