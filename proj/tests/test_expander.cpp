#include <doctest.h>

#include "expander_golden.hpp"

using namespace mlex;

TEST_CASE("expander goldens") {
    for (auto& c : golden::cases()) {
        CAPTURE(c.name);
        CHECK(golden::compare(c) == "");
    }
}

TEST_CASE("golden comparison is not vacuous") {
    auto c = golden::cases()[2];
    c.rewrites.clear();
    CHECK(golden::compare(c) != "");
}

TEST_CASE("expansion soundness on random triples") { CHECK(golden::soundness(200, 7u) == ""); }

TEST_CASE("compatibility: symbolic and semidirect agree on F1") {
    Datum D = golden::sound_fixtures()[0].D;
    Variety V = largest_variety(D.Q.signature());
    Expander E(D.Q.signature(), D.modulus());
    std::mt19937 rng(11);
    int agree = 0;
    for (int t = 0; t < 200; ++t) {
        Cocycle T = golden::random_cocycle(rng, D);
        bool sym = E.compatible(D, T, V);
        bool sem = semidirect(D, T, &V).valid;
        agree += sym == sem;
    }
    CHECK(agree == 200);
}
