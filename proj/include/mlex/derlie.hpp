#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mlex/cohomology.hpp"

namespace mlex {

bool is_derivation(const Algebra& A, const Map& h);
Map lie_bracket(const Algebra& A, const Map& a, const Map& b);

// All derivations, by solving the Leibniz constraints on generator images.
std::vector<Map> algebra_derivations(const Algebra& A);

struct DerLie {
    std::vector<Map> elements;             // sorted
    std::vector<Map> basis;                // generators of the solution module
    std::vector<std::vector<int>> bracket; // basis x basis -> index into elements
    int index_of(const Map& h) const;
};
DerLie der_lie(const Algebra& A);

std::vector<Map> ideal_preserving(const std::vector<Map>& ders, const std::vector<Elem>& ideal_elems);

struct DerPair {
    Map alpha;  // on I
    Map beta;   // on Q
    bool operator==(const DerPair& o) const = default;
    auto operator<=>(const DerPair& o) const = default;
};

bool satisfies_c2(const Datum& D, const Action& act, const DerPair& p);
std::vector<DerPair> compatible_pairs(const Datum& D, const Action& act);
DerPair pair_add(const Datum& D, const DerPair& p, const DerPair& q);
DerPair pair_scale(const Datum& D, int r, const DerPair& p);
DerPair pair_bracket(const Datum& D, const DerPair& p, const DerPair& q);

struct LiftResult {
    std::optional<Map> phi;  // derivation of I x_T Q
    std::string obstruction;
};
LiftResult lift_pair(const Datum& D, const Cocycle& T, const DerPair& p);

// psi(phi) = (phi restricted to I, pi . phi . l)
DerPair psi_pair(const Extension& E, const Map& phi);

// Factor sets f^(a,b)(x) = a(f(x)) - sum_i f(.., b(x_i), ..); actions kept.
Cocycle twist(const Datum& D, const Cocycle& T, const DerPair& p);
// Witness that W(p,[T]) = 0; lexicographically first when `lexfirst`.
std::optional<Map> wells_witness(const Datum& D, const Cocycle& T, const DerPair& p, bool lexfirst = false);

struct Report {
    bool ok = true;
    std::vector<std::string> lines;
    void check(bool cond, const std::string& what);
};

// Chooses a lifting with T_+ = 0 when one exists.
std::optional<Extension> group_trivial_lifting(const Extension& E);

Report verify_wells(const Extension& E);

}  // namespace mlex
