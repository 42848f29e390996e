#pragma once

#include <string>
#include <vector>

#include "mlex/derlie.hpp"

namespace mlex {

// Affine datum (M, A, *) together with an ideal I of M and everything
// derived from it: Q = M/I, the null submodule A^I and the induced actions.
struct HSData {
    Algebra M, A;
    Ideal I;
    Action act;  // M on A
    Variety V;

    Extension ext;               // M -> Q with kernel I
    Cocycle T;                   // extracted from ext (datum Q, I)
    std::vector<Elem> null_sub;  // A^I as elements of A
    SubResult AI;
    std::vector<Elem> to_AI;     // A -> A^I, -1 outside
    Datum DQ, DM, DI;            // (Q, A^I), (M, A^I), (I, A^I)
    Action ahat, actM, actI;
};

std::vector<Elem> null_submodule(const Algebra& M, const Ideal& I, const Algebra& A, const Action& act);
// Reachability over (value, carries-an-ideal-entry) states.
std::vector<Elem> null_submodule_oracle(const Algebra& M, const Ideal& I, const Algebra& A, const Action& act);

HSData make_hs(const Algebra& M, const Ideal& I, const Algebra& A, const Action& act, const Variety& V);

Map inflation1(const HSData& H, const Map& d);         // Q -> A^I  to  M -> A^I
Cocycle inflation2(const HSData& H, const Cocycle& U);  // over DQ  to  over DM
Map restriction1(const HSData& H, const Map& d);       // M -> A^I  to  I -> A^I
bool square_condition(const HSData& H, const Map& d);  // d : I -> A^I
Cocycle transgression(const HSData& H, const Map& d);  // d o T over DQ
// Same, for any cocycle T of the datum (Q, I) in place of the extracted one.
Cocycle transgression(const HSData& H, const Map& d, const Cocycle& T);

Report verify_hs(const HSData& H, int depth = 3);

}  // namespace mlex
