#include "doctest.h"
#include "helpers.hpp"
#include "tangleforge/intmat.hpp"
#include "tangleforge/surface.hpp"

using namespace tf;

TEST_CASE("surface_relation_sides") {
    auto [l1, r1] = surface_relation_sides({1, 2});
    CHECK(l1.str() == "p1 p2 p3 p4");
    CHECK(r1.str() == "a1 b1 a1^-1 b1^-1");
    auto [l2, r2] = surface_relation_sides({0, 1});
    CHECK(l2.str() == "p1 p2");
    CHECK(r2.empty());
    auto [l3, r3] = surface_relation_sides({2, 0});
    CHECK(l3.empty());
    CHECK(r3.str() == "a1 b1 a1^-1 b1^-1 a2 b2 a2^-1 b2^-1");
}

TEST_CASE("verify_hom") {
    FreeTargetHom good = tfh::load_hom("rp2cp2.hom");
    CHECK(verify_hom(good));

    auto p = good.p_images();
    p[3] = Word::parse("h1 t2 h1^-1");  // drop the inverse: relation now fails
    FreeTargetHom bad({1, 2}, p, good.a_images(), good.b_images());
    CHECK_FALSE(verify_hom(bad));

    FreeTargetHom tiny({0, 1}, {Word::parse("t1"), Word::parse("t1^-1")}, {}, {});
    CHECK(verify_hom(tiny));
}

TEST_CASE("verify_bounding on the running example") {
    BoundingReport rep = verify_bounding(tfh::load_hom("rp2cp2.hom"));
    CHECK(rep.ok);
    CHECK(rep.surjective);
    CHECK(rep.cond1);
    CHECK(rep.cond2);
    CHECK(rep.f.at(1) == Letter{gen_t(1), 1});
    CHECK(rep.f.at(2) == Letter{gen_t(2), 1});
    CHECK(rep.f.at(3) == Letter{gen_t(1), -1});
    CHECK(rep.f.at(4) == Letter{gen_t(2), -1});
    CHECK(rep.conjugators.at(1).str() == "t2 h1");
    CHECK(rep.conjugators.at(2).empty());
    CHECK(rep.conjugators.at(3).str() == "h1");
    CHECK(rep.conjugators.at(4).str() == "h1");
    auto matching = rep.strand_matching();
    REQUIRE(matching.size() == 2);
    CHECK(matching[0] == std::pair<int, int>{1, 3});
    CHECK(matching[1] == std::pair<int, int>{2, 4});
}

TEST_CASE("verify_bounding on the closed example") {
    BoundingReport rep = verify_bounding(tfh::load_hom("poincare.hom"));
    CHECK(rep.ok);
    CHECK(rep.cond2);  // vacuous
    CHECK(rep.f.empty());
}

TEST_CASE("verify_bounding rejects a squared central letter") {
    // p1 -> t1^2, p2 -> t1^-2 satisfies the relation but a square is not a
    // conjugate of a generator.
    FreeTargetHom h({0, 1}, {Word::parse("t1^2"), Word::parse("t1^-2")}, {}, {});
    REQUIRE(verify_hom(h));
    BoundingReport rep = verify_bounding(h);
    CHECK_FALSE(rep.cond2);
    CHECK_FALSE(rep.ok);
    CHECK(rep.f.empty());
    CHECK(!rep.failures.empty());
}

TEST_CASE("verify_bounding rejects an ill-defined homomorphism") {
    FreeTargetHom good = tfh::load_hom("rp2cp2.hom");
    auto p = good.p_images();
    p[3] = Word::parse("h1 t2 h1^-1");
    FreeTargetHom bad({1, 2}, p, good.a_images(), good.b_images());
    CHECK_THROWS_AS(verify_bounding(bad), Error);
}

TEST_CASE("associated_closed") {
    FreeTargetHom rp2 = tfh::load_hom("rp2cp2.hom");
    FreeTargetHom closed = associated_closed(rp2);
    CHECK(closed.sig() == SurfaceSig{1, 0});
    CHECK(closed.image(gen_a(1)).str() == "h1");
    CHECK(closed.image(gen_b(1)).str() == "h1");
    CHECK(verify_bounding(closed).ok);

    FreeTargetHom poincare = tfh::load_hom("poincare.hom");
    CHECK(associated_closed(poincare) == poincare);

    FreeTargetHom tiny = tfh::load_hom("trivial_tangle.hom");
    FreeTargetHom trivial = associated_closed(tiny);
    CHECK(trivial.sig() == SurfaceSig{0, 0});

    // Idempotence.
    CHECK(associated_closed(closed) == closed);
}

TEST_CASE("surjectivity implies full exponent-sum rank (randomized)") {
    std::mt19937_64 rng(tfh::global_seed() + 20);
    for (int iter = 0; iter < 30; ++iter) {
        FreeTargetHom h = tfh::random_bounding_hom(rng, 200);
        REQUIRE(verify_bounding(h).ok);
        auto tg = h.target_generators();
        auto imgs = h.all_images();
        IntMat m(tg.size(), std::vector<long long>(imgs.size(), 0));
        for (size_t i = 0; i < tg.size(); ++i)
            for (size_t j = 0; j < imgs.size(); ++j) m[i][j] = exponent_sum(imgs[j], tg[i]);
        CHECK(int_rank(m) == static_cast<int>(tg.size()));
    }
}

TEST_CASE("cond2 strand matching is a perfect matching (randomized)") {
    std::mt19937_64 rng(tfh::global_seed() + 21);
    for (int iter = 0; iter < 30; ++iter) {
        FreeTargetHom h = tfh::random_bounding_hom(rng, 200);
        BoundingReport rep = verify_bounding(h);
        auto matching = rep.strand_matching();
        CHECK(static_cast<int>(matching.size()) == h.sig().bridges);
        std::set<int> seen;
        for (auto [i, j] : matching) {
            CHECK(i < j);
            CHECK(seen.insert(i).second);
            CHECK(seen.insert(j).second);
        }
        CHECK(static_cast<int>(seen.size()) == 2 * h.sig().bridges);
    }
}
