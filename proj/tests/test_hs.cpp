#include <doctest.h>

#include "fixtures.hpp"
#include "mlex/hs.hpp"

using namespace mlex;

TEST_CASE("Hochschild-Serre fixtures") {
    for (auto& F : fx::hs_fixtures()) {
        CAPTURE(F.name);
        HSData H = make_hs(F.M, F.I, F.A, F.act, largest_variety(F.M.signature()));
        Report R = verify_hs(H);
        for (auto& l : R.lines) MESSAGE(F.name << ": " << l);
        CHECK(R.ok);
    }
}
