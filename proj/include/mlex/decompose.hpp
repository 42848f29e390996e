#pragma once

#include <string>
#include <vector>

#include "mlex/cocycle.hpp"

namespace mlex {

enum class SeriesKind { Solvable, Nilpotent };

// M_k = I_k x_{T_k} Q_k with I_k the last nonzero term of the series of M_k
// and Q_k = M_{k+1}; the chain ends with an abelian top quotient.
struct DecompStep {
    Algebra I, Q;
    Cocycle T;
    bool linear = false, action_trivial = false;
};

struct Decomposition {
    std::vector<DecompStep> steps;  // outermost first
    Algebra top;                    // abelian; empty chain for the zero algebra
    bool empty = false;
    Algebra rebuilt;
    bool isomorphic = false;
};

// T transported along an isomorphism phi : R -> Q.
Cocycle transport_cocycle(const Datum& DR, const Cocycle& T, const std::vector<Elem>& phi);

Decomposition decompose(const Algebra& M, SeriesKind kind);

}  // namespace mlex
