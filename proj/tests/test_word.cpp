#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mcg/word.hpp"
#include "testutil.hpp"

using namespace mcg;
using testutil::Rng;
using testutil::random_word;

static const Alphabet AB = Alphabet::of({"a1", "b1", "a2", "b2", "e"});

TEST_CASE("free reduction") {
    CHECK(Word::reduce({1, -1}).empty());
    CHECK(Word::reduce({1, 2, -2, 1}) == Word::reduce({1, 1}));
    // idempotence on random input
    Rng rng(42);
    for (int i = 0; i < 2000; ++i) {
        Word w = random_word(rng, 5, 1000);
        CHECK(Word::reduce(std::span<const int>(w.letters().data(), w.letters().size())) == w);
    }
}

TEST_CASE("multiply and invert") {
    Word a = parse_word(AB, "a1");
    Word b = parse_word(AB, "b1");
    CHECK((a * a.inverse()).empty());
    CHECK(parse_word(AB, "a1 b1") * parse_word(AB, "b1^-1 a2") == parse_word(AB, "a1 a2"));
    CHECK(parse_word(AB, "a1 b1").inverse() == parse_word(AB, "b1^-1 a1^-1"));
    CHECK(Word().inverse().empty());
    Rng rng(7);
    for (int i = 0; i < 2000; ++i) {
        Word u = random_word(rng, 5, 30), v = random_word(rng, 5, 30), w = random_word(rng, 5, 30);
        CHECK((u * v) * w == u * (v * w));
        CHECK((u * u.inverse()).empty());
        CHECK(u.inverse().inverse() == u);
        CHECK((Word() * u) == u);
    }
    CHECK(a * b == parse_word(AB, "a1 b1"));
}

TEST_CASE("parse and format round-trip") {
    Rng rng(99);
    for (int i = 0; i < 500; ++i) {
        Word w = random_word(rng, 5, 40);
        CHECK(parse_word(AB, format_word(AB, w)) == w);
    }
    CHECK_THROWS_AS(parse_word(AB, "nope"), error);
}

TEST_CASE("conjugacy decision") {
    CHECK(conjugate_equal(parse_word(AB, "a1 b1 a1^-1"), parse_word(AB, "b1")));
    CHECK_FALSE(conjugate_equal(parse_word(AB, "a1"), parse_word(AB, "b1")));
    // unoriented option compares with the inverse
    CHECK_FALSE(conjugate_equal(parse_word(AB, "a1 b1"), parse_word(AB, "b1^-1 a1^-1")));
    CHECK(conjugate_equal(parse_word(AB, "a1 b1"), parse_word(AB, "b1^-1 a1^-1"), true));
    CHECK(conjugate_equal(Word(), Word()));

    // brute-force oracle: u ~ v iff some conjugator c of length <= 6 works
    Rng rng(2024);
    auto brute = [](const Word& u, const Word& v, int rank) {
        std::vector<Word> conjs{Word()};
        std::vector<Word> frontier{Word()};
        for (int len = 0; len < 6; ++len) {
            std::vector<Word> next;
            for (const Word& c : frontier)
                for (int g = 1; g <= rank; ++g)
                    for (int s : {g, -g}) {
                        Word c2 = c * Word::letter(s);
                        if (c2.size() == c.size() + 1) {
                            next.push_back(c2);
                            conjs.push_back(c2);
                        }
                    }
            frontier = std::move(next);
        }
        for (const Word& c : conjs)
            if (c * u * c.inverse() == v) return true;
        return false;
    };
    int agreements = 0;
    for (int i = 0; i < 60; ++i) {
        Word u = random_word(rng, 2, rng.range(0, 5));
        Word v = random_word(rng, 2, rng.range(0, 5));
        bool fast = conjugate_equal(u, v);
        bool slow = brute(u, v, 2);
        // rotation matching is complete for short words when the conjugator
        // search is deep enough
        if (u.cyclic_reduced().size() <= 3 && v.cyclic_reduced().size() <= 3) {
            CHECK(fast == slow);
            ++agreements;
        } else if (fast) {
            CHECK(slow);
        }
    }
    CHECK(agreements > 10);

    // conjugacy is an equivalence relation within a conjugacy class
    for (int i = 0; i < 200; ++i) {
        Word u = random_word(rng, 5, 12);
        Word c1 = random_word(rng, 5, 6), c2 = random_word(rng, 5, 6);
        Word v = c1 * u * c1.inverse();
        Word w = c2 * v * c2.inverse();
        CHECK(conjugate_equal(u, u));
        CHECK(conjugate_equal(u, v));
        CHECK(conjugate_equal(v, u));
        CHECK((conjugate_equal(u, v) && conjugate_equal(v, w)) == conjugate_equal(u, w));
    }
}

TEST_CASE("automorphism application and composition") {
    FreeGroupAut id = FreeGroupAut::identity(5);
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        Word w = random_word(rng, 5, 25);
        CHECK(id.apply(w) == w);
    }

    // phi: a1 -> a1 b1, b1 -> b1 forces a1^-1 -> b1^-1 a1^-1
    FreeGroupAut phi = FreeGroupAut::identity(5);
    phi.images[0] = parse_word(AB, "a1 b1");
    CHECK(phi.apply(parse_word(AB, "a1^-1")) == parse_word(AB, "b1^-1 a1^-1"));

    // homomorphism property on random words
    for (int i = 0; i < 500; ++i) {
        Word u = random_word(rng, 5, 15), v = random_word(rng, 5, 15);
        CHECK(phi.apply(u * v) == phi.apply(u) * phi.apply(v));
        CHECK(phi.apply(u.inverse()) == phi.apply(u).inverse());
    }

    // composition: functional order, associative, abelianization multiplicative
    FreeGroupAut psi = FreeGroupAut::identity(5);
    psi.images[1] = parse_word(AB, "b1 a2");
    CHECK(compose(phi, id) == phi);
    CHECK(compose(id, phi) == phi);
    Word x = parse_word(AB, "a1");
    CHECK(compose(phi, psi).apply(x) == phi.apply(psi.apply(x)));
    FreeGroupAut rho = FreeGroupAut::identity(5);
    rho.images[2] = parse_word(AB, "a2^-1");
    CHECK(compose(compose(phi, psi), rho) == compose(phi, compose(psi, rho)));

    auto matmul5 = [](const std::vector<std::vector<long long>>& a,
                      const std::vector<std::vector<long long>>& b) {
        std::vector<std::vector<long long>> c(5, std::vector<long long>(5, 0));
        for (int i = 0; i < 5; ++i)
            for (int k = 0; k < 5; ++k)
                for (int j = 0; j < 5; ++j) c[i][j] += a[i][k] * b[k][j];
        return c;
    };
    CHECK(compose(phi, psi).abelianization() ==
          matmul5(phi.abelianization(), psi.abelianization()));
}
