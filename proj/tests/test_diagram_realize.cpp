#include "doctest.h"
#include "helpers.hpp"
#include "tangleforge/io.hpp"
#include "tangleforge/realize.hpp"

using namespace tf;

namespace {

Diagram toy_genus1_diagram() {
    // One closed h1-curve crossing a1 once positively, b1 never.
    Diagram d;
    d.sig = {1, 0};
    d.components.push_back({1, ComponentKind::Closed, gen_h(1), std::nullopt});
    d.dashes.push_back({gen_a(1), 0, gen_h(1), 1, 1});
    return d;
}

}  // namespace

TEST_CASE("read_off hand-authored diagrams") {
    FreeTargetHom toy = read_off(toy_genus1_diagram());
    CHECK(toy.image(gen_a(1)).str() == "h1");
    CHECK(toy.image(gen_b(1)).empty());

    Diagram empty;
    empty.sig = {0, 0};
    FreeTargetHom trivial = read_off(empty);
    CHECK(trivial.sig() == SurfaceSig{0, 0});
}

TEST_CASE("read_off rejects letter inconsistency") {
    Diagram d = toy_genus1_diagram();
    d.dashes[0].letter = gen_h(2);  // disagrees with component letter h1
    d.components[0].letter = gen_h(1);
    CHECK_THROWS_AS(read_off(d), Error);
}

TEST_CASE("homology_matrix and is_cut_system") {
    RealizationResult res = realize(tfh::load_hom("poincare.hom"));
    IntMat m = homology_matrix(res.diagram);
    REQUIRE(m.size() == 2);
    CHECK(m[0] == std::vector<long long>{3, -1, 0, 5});
    CHECK(m[1] == std::vector<long long>{5, 0, 1, 8});
    CHECK(is_cut_system(res.diagram));

    IntMat toy = homology_matrix(toy_genus1_diagram());
    CHECK(toy[0] == std::vector<long long>{0, 1});
    CHECK(is_cut_system(toy_genus1_diagram()));

    // Rank-deficient: a1, b1 both map to the empty word.
    Diagram d;
    d.sig = {1, 0};
    d.components.push_back({1, ComponentKind::Closed, gen_h(1), std::nullopt});
    IntMat zero = homology_matrix(d);
    CHECK(zero[0] == std::vector<long long>{0, 0});
    CHECK_FALSE(is_cut_system(d));

    // Wrong closed-curve census is rejected.
    Diagram wrong = toy_genus1_diagram();
    wrong.components[0].letter = gen_h(2);
    wrong.dashes[0].letter = gen_h(2);
    CHECK_THROWS_AS(homology_matrix(wrong), Error);
}

TEST_CASE("preliminary diagram of the running example") {
    Diagram prelim = preliminary_diagram(tfh::load_hom("rp2cp2.hom"));
    Census c = component_census(prelim);
    CHECK(c.closed[gen_h(1)] == 2);
    CHECK(c.arcs[gen_t(1)] == 1);
    CHECK(c.arcs[gen_t(2)] == 1);
    REQUIRE(c.endpoints.size() == 2);
    CHECK(c.endpoints[0] == std::pair<int, int>{1, 3});
    CHECK(c.endpoints[1] == std::pair<int, int>{2, 4});
}

TEST_CASE("preliminary diagram of a trivial tangle") {
    Diagram prelim = preliminary_diagram(tfh::load_hom("trivial_tangle.hom"));
    Census c = component_census(prelim);
    CHECK(c.closed.empty());
    CHECK(c.arcs[gen_t(1)] == 1);
    CHECK(prelim.arcs->iface.empty());  // no residual cancellations
}

TEST_CASE("preliminary diagram of an identity-like closed map") {
    Diagram prelim = preliminary_diagram(tfh::identity_like_hom(2, 0));
    Census c = component_census(prelim);
    CHECK(c.closed[gen_h(1)] == 1);
    CHECK(c.closed[gen_h(2)] == 1);
    CHECK(c.arcs.empty());
    CHECK(prelim.dashes.size() == 2);
}

TEST_CASE("realize the running example") {
    RealizationResult res = realize(tfh::load_hom("rp2cp2.hom"));
    Census c = component_census(res.diagram);
    CHECK(c.closed[gen_h(1)] == 1);
    CHECK(c.arcs[gen_t(1)] == 1);
    CHECK(c.arcs[gen_t(2)] == 1);
    CHECK(c.endpoints[0] == std::pair<int, int>{1, 3});
    CHECK(c.endpoints[1] == std::pair<int, int>{2, 4});
    CHECK(res.bandCount >= 1);
    // Frozen regression value for the canonical stack reduction and fold order.
    CHECK(res.bandCount == 1);
    REQUIRE(res.diagram.bands.size() == 1);
    CHECK(is_cut_system(res.diagram));
    CHECK(read_off(res.diagram) == tfh::load_hom("rp2cp2.hom"));
}

TEST_CASE("realize the closed example") {
    RealizationResult res = realize(tfh::load_hom("poincare.hom"));
    Census c = component_census(res.diagram);
    CHECK(c.closed[gen_h(1)] == 1);
    CHECK(c.closed[gen_h(2)] == 1);
    CHECK(c.arcs.empty());
    CHECK(is_cut_system(res.diagram));
    CHECK(read_off(res.diagram) == tfh::load_hom("poincare.hom"));
}

TEST_CASE("realize an input needing chained band sums") {
    // Frozen regression: the fold order forces band sums whose inputs are
    // results of earlier bands, so the event order matters.
    RealizationResult res = realize(tfh::load_hom("multiband.hom"));
    CHECK(res.bandCount == 9);
    bool chained = false;
    for (size_t k = 1; k < res.diagram.bands.size(); ++k)
        for (size_t j = 0; j < k; ++j)
            if (res.diagram.bands[k].from == res.diagram.bands[j].result ||
                res.diagram.bands[k].to == res.diagram.bands[j].result)
                chained = true;
    CHECK(chained);
    CHECK(res.diagram.bands[0].from == 12);
    CHECK(res.diagram.bands[0].to == 15);
    CHECK(res.diagram.bands[0].result == 12);
    CHECK(read_off(res.diagram) == tfh::load_hom("multiband.hom"));
    CHECK(is_cut_system(res.diagram));
}

TEST_CASE("realize is deterministic") {
    RealizationResult a = realize(tfh::load_hom("rp2cp2.hom"));
    RealizationResult b = realize(tfh::load_hom("rp2cp2.hom"));
    CHECK(realization_to_json(a).dump() == realization_to_json(b).dump());
}

TEST_CASE("census law: bands collapse the preliminary census to g and b") {
    std::mt19937_64 rng(tfh::global_seed() + 30);
    for (int iter = 0; iter < 25; ++iter) {
        FreeTargetHom h = tfh::random_bounding_hom(rng, 300);
        RealizationResult res = realize(h);
        int prelimClosedH = 0, prelimClosedT = 0;
        for (const auto& [g, n] : res.preliminaryCensus.closed)
            (g.fam == Family::H ? prelimClosedH : prelimClosedT) += n;
        int bandsH = 0, bandsT = 0;
        std::map<int32_t, Gen> letters;
        for (const auto& dash : preliminary_diagram(h).dashes)
            letters[dash.component] = dash.letter;
        for (const auto& band : res.diagram.bands)
            (letters.at(band.from).fam == Family::H ? bandsH : bandsT)++;
        CHECK(prelimClosedH - bandsH == h.sig().genus);
        CHECK(prelimClosedT == bandsT);
        CHECK(static_cast<int>(res.foldTrace.size()) >= res.bandCount);
    }
}

TEST_CASE("round trip over a randomized move-generated corpus") {
    std::mt19937_64 rng(tfh::global_seed() + 31);
    for (int iter = 0; iter < 40; ++iter) {
        FreeTargetHom h = tfh::random_bounding_hom(rng, 400);
        RealizationResult res = realize(h);
        CHECK(read_off(res.diagram) == h);
        Census c = component_census(res.diagram);
        int closed = 0;
        for (const auto& [g, n] : c.closed) closed += n;
        int arcs = 0;
        for (const auto& [g, n] : c.arcs) arcs += n;
        CHECK(closed == h.sig().genus);
        CHECK(arcs == h.sig().bridges);
        CHECK(is_cut_system(res.diagram));
        // Arc endpoint pairing agrees with the bounding bijection.
        CHECK(c.endpoints == verify_bounding(h).strand_matching());
        // Bands join same-letter components only (checked inside realize; the
        // recorded events must reference stage-1 components of one letter).
        std::map<int32_t, Gen> letters;
        for (const auto& dash : preliminary_diagram(h).dashes)
            letters[dash.component] = dash.letter;
        for (const auto& band : res.diagram.bands)
            CHECK(letters.at(band.from) == letters.at(band.to));
    }
}

TEST_CASE("arc structure matchings are non-crossing per region") {
    auto nonCrossing = [](const std::vector<std::pair<int32_t, int32_t>>& m) {
        for (auto [i, j] : m)
            for (auto [k, l] : m)
                if (i < k && k < j && j < l) return false;
        return true;
    };
    std::mt19937_64 rng(tfh::global_seed() + 32);
    for (int iter = 0; iter < 15; ++iter) {
        FreeTargetHom h = tfh::random_bounding_hom(rng, 300);
        Diagram prelim = preliminary_diagram(h);
        REQUIRE(prelim.arcs.has_value());
        CHECK(nonCrossing(prelim.arcs->w1));
        CHECK(nonCrossing(prelim.arcs->w2));
        for (const auto& loop : prelim.arcs->loops) CHECK(nonCrossing(loop.pairs));
    }
}

TEST_CASE("realize the degenerate empty signature") {
    RealizationResult res = realize(tfh::identity_like_hom(0, 0));
    CHECK(res.diagram.components.empty());
    CHECK(res.diagram.dashes.empty());
    CHECK(res.bandCount == 0);
    CHECK(read_off(res.diagram) == tfh::identity_like_hom(0, 0));
    CHECK(is_cut_system(res.diagram));
}

TEST_CASE("rejects non-bounding inputs") {
    FreeTargetHom good = tfh::load_hom("rp2cp2.hom");
    auto p = good.p_images();
    p[1] = Word::parse("t2^2");
    p[3] = Word::parse("h1 t2^-2 h1^-1");
    FreeTargetHom notBounding({1, 2}, p, good.a_images(), good.b_images());
    CHECK_THROWS_AS(preliminary_diagram(notBounding), Error);
    CHECK_THROWS_AS(realize(notBounding), Error);
}
