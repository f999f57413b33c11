#include "doctest.h"
#include "helpers.hpp"
#include "tangleforge/words.hpp"

using namespace tf;
using tfh::naive_reduce;

namespace {

std::vector<Letter> raw(const std::string& s) { return parse_letters(s); }

bool non_crossing(const CancellationTrace& tr) {
    for (auto [i, j] : tr.matching)
        for (auto [k, l] : tr.matching)
            if (i < k && k < j && j < l) return false;
    return true;
}

}  // namespace

TEST_CASE("reduce: forced cancellation") {
    auto [w, tr] = Word::reduce(raw("h1 h1^-1"));
    CHECK(w.empty());
    REQUIRE(tr.matching.size() == 1);
    CHECK(tr.matching[0] == std::pair<int32_t, int32_t>{0, 1});
}

TEST_CASE("reduce: running-example puncture product prefix") {
    auto [w, tr] = Word::reduce(raw("t2 h1 t1 h1^-1 t2^-1 t2"));
    CHECK(w.str() == "t2 h1 t1 h1^-1");
    CHECK(non_crossing(tr));
}

TEST_CASE("reduce: already reduced") {
    auto [w, tr] = Word::reduce(raw("h1 h2"));
    CHECK(w.str() == "h1 h2");
    CHECK(tr.matching.empty());
    CHECK(tr.survivors == std::vector<int32_t>{0, 1});
}

TEST_CASE("reduce properties (randomized)") {
    std::mt19937_64 rng(tfh::global_seed());
    std::vector<Gen> gens = {gen_h(1), gen_h(2), gen_t(1), gen_t(2)};
    std::uniform_int_distribution<int> len(0, 40);
    std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int iter = 0; iter < 300; ++iter) {
        std::vector<Letter> ls;
        int n = len(rng);
        for (int i = 0; i < n; ++i)
            ls.push_back({gens[pick(rng)], static_cast<int8_t>(coin(rng) ? 1 : -1)});
        auto [w, tr] = Word::reduce(ls);

        // Agreement with the scan-and-delete oracle.
        CHECK(w.letters() == naive_reduce(ls));
        // Idempotence and length monotonicity.
        CHECK(Word::reduce(w.letters()).first == w);
        CHECK(w.size() <= ls.size());
        if (w.size() == ls.size()) CHECK(tr.matching.empty());
        // Non-crossing matching; every index in exactly one pair or surviving.
        CHECK(non_crossing(tr));
        CHECK(tr.matching.size() * 2 + tr.survivors.size() == ls.size());

        // w * w^-1 reduces to the empty word.
        Word ww = Word::trusted(w.letters());
        CHECK((ww * ww.inverse()).empty());
    }
}

TEST_CASE("cyclic_reduce") {
    auto [c1, core1] = cyclic_reduce(Word::parse("t2 h1 t1 h1^-1 t2^-1"));
    CHECK(c1.str() == "t2 h1");
    CHECK(core1.str() == "t1");
    auto [c2, core2] = cyclic_reduce(Word::parse("h1 t1^-1 h1^-1"));
    CHECK(c2.str() == "h1");
    CHECK(core2.str() == "t1^-1");
    auto [c3, core3] = cyclic_reduce(Word::parse("h1"));
    CHECK(c3.empty());
    CHECK(core3.str() == "h1");
}

TEST_CASE("cyclic_reduce reassembles the input (randomized)") {
    std::mt19937_64 rng(tfh::global_seed() + 4);
    std::vector<Gen> gens = {gen_h(1), gen_h(2), gen_t(1)};
    for (int iter = 0; iter < 200; ++iter) {
        Word w = tfh::random_reduced_word(rng, gens, 14);
        auto [conj, core] = cyclic_reduce(w);
        CHECK(conj * core * conj.inverse() == w);
        const auto& c = core.letters();
        if (c.size() >= 2) CHECK(c.front() != c.back().inverse());
    }
}

TEST_CASE("exponent_sum") {
    Word w = Word::parse("h1 h2 h1 h2 h1 h2 h1 h2 h1 h2 h1^-2");
    CHECK(exponent_sum(w, gen_h(1)) == 3);
    CHECK(exponent_sum(w, gen_h(2)) == 5);
    CHECK(exponent_sum(Word{}, gen_h(1)) == 0);
}

TEST_CASE("exponent_sum is additive (randomized)") {
    std::mt19937_64 rng(tfh::global_seed() + 1);
    std::vector<Gen> gens = {gen_h(1), gen_t(1)};
    for (int iter = 0; iter < 100; ++iter) {
        Word u = tfh::random_reduced_word(rng, gens, 12);
        Word v = tfh::random_reduced_word(rng, gens, 12);
        for (Gen g : gens)
            CHECK(exponent_sum(u * v, g) == exponent_sum(u, g) + exponent_sum(v, g));
    }
}

TEST_CASE("delete_letters") {
    std::set<Gen> ts = {gen_t(1), gen_t(2)};
    CHECK(delete_letters(Word::parse("t2 h1"), ts).str() == "h1");
    CHECK(delete_letters(Word::parse("t2 h1 t1 h1^-1 t2^-1"), ts).empty());
    CHECK(delete_letters(Word::parse("h1 h2"), {}).str() == "h1 h2");
}

TEST_CASE("delete_letters agrees with substitution by the empty word") {
    std::mt19937_64 rng(tfh::global_seed() + 2);
    std::vector<Gen> gens = {gen_h(1), gen_h(2), gen_t(1), gen_t(2)};
    std::map<Gen, Word> images;
    for (Gen g : gens) images[g] = Word::trusted({{g, 1}});
    images[gen_t(1)] = Word{};
    images[gen_t(2)] = Word{};
    for (int iter = 0; iter < 100; ++iter) {
        Word w = tfh::random_reduced_word(rng, gens, 16);
        CHECK(delete_letters(w, {gen_t(1), gen_t(2)}) == substitute(w, images));
    }
}

TEST_CASE("substitute") {
    std::map<Gen, Word> id{{gen_h(1), Word::parse("h1")}};
    CHECK(substitute(Word::parse("h1"), id).str() == "h1");
    std::map<Gen, Word> swap{{gen_h(1), Word::parse("h2")}, {gen_h(2), Word::parse("h1")}};
    CHECK(substitute(Word::parse("h1 h2"), swap).str() == "h2 h1");
    CHECK(substitute(Word::from_letters(raw("h1 h1^-1")), swap).empty());
    CHECK_THROWS_WITH_AS(substitute(Word::parse("h1 t1"), id),
                         "substitute: no image for generator 't1'", Error);
}

TEST_CASE("is_conjugate") {
    CHECK(is_conjugate(Word::parse("h1 h2"), Word::parse("h2 h1")));
    CHECK_FALSE(is_conjugate(Word::parse("h1"), Word::parse("h2")));
    CHECK(is_conjugate(Word::parse("t2 h1 t1 h1^-1 t2^-1"), Word::parse("t1")));
}

TEST_CASE("is_conjugate is an equivalence relation (spot checks)") {
    std::mt19937_64 rng(tfh::global_seed() + 3);
    std::vector<Gen> gens = {gen_h(1), gen_t(1)};
    std::vector<Word> sample;
    for (int i = 0; i < 12; ++i) sample.push_back(tfh::random_reduced_word(rng, gens, 6));
    for (const auto& u : sample) CHECK(is_conjugate(u, u));
    for (const auto& u : sample)
        for (const auto& v : sample) CHECK(is_conjugate(u, v) == is_conjugate(v, u));
    for (const auto& u : sample)
        for (const auto& v : sample)
            for (const auto& w : sample)
                if (is_conjugate(u, v) && is_conjugate(v, w)) CHECK(is_conjugate(u, w));
}

TEST_CASE("word grammar") {
    CHECK(Word::parse("e").empty());
    CHECK(Word::parse("h1^3").str() == "h1^3");
    CHECK(Word::parse("h1^-2").size() == 2);
    CHECK(Word::parse("t2 h1 t1 h1^-1 t2^-1").str() == "t2 h1 t1 h1^-1 t2^-1");
    CHECK(Word::parse("h1^-1 h1^-1").str() == "h1^-2");
    CHECK_THROWS_AS(Word::parse("h0"), ParseError);
    CHECK_THROWS_AS(Word::parse("q1"), ParseError);
    CHECK_THROWS_AS(Word::parse("h1^0"), ParseError);
    CHECK_THROWS_AS(Word::parse(""), ParseError);
}

TEST_CASE("generator ordering is h < t < a < b < p, then index") {
    CHECK(gen_h(2) < gen_t(1));
    CHECK(gen_t(3) < gen_a(1));
    CHECK(gen_a(1) < gen_b(1));
    CHECK(gen_b(9) < gen_p(1));
    CHECK(gen_h(1) < gen_h(2));
}
