#include <doctest.h>

#include "fixtures.hpp"
#include "mlex/decompose.hpp"

using namespace mlex;

TEST_CASE("decompositions reassemble") {
    auto d = decompose(fx::f2(), SeriesKind::Nilpotent);
    REQUIRE(d.steps.size() == 1);
    CHECK(d.steps[0].action_trivial);
    CHECK(d.steps[0].T.tf[0][3] == 1);
    CHECK(d.isomorphic);
    auto s = decompose(fx::solvable3(), SeriesKind::Solvable);
    CHECK(s.steps.size() == 2);
    for (auto& st : s.steps) CHECK(st.linear);
    CHECK(s.isomorphic);
    auto n = decompose(fx::solvable3(), SeriesKind::Nilpotent);
    CHECK(n.isomorphic);
    for (auto& st : n.steps) CHECK(st.action_trivial);
    auto a = decompose(fx::z2_zero(), SeriesKind::Solvable);
    CHECK(a.steps.empty());
    CHECK(!a.empty);
    auto z = decompose(zero_algebra(2, {{"f", 2}}), SeriesKind::Solvable);
    CHECK(z.empty);
}
