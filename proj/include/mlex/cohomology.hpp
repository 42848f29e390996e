#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mlex/cocycle.hpp"
#include "mlex/expander.hpp"

namespace mlex {

using Map = std::vector<Elem>;

bool is_affine(const Datum& D, const Action& act);
// Group law of Z^2 over an affine datum: factor sets add, the action is kept.
Cocycle affine_add(const Datum& D, const Cocycle& T, const Cocycle& U);

// Brute force over every T satisfying T1-T4 (optionally with a fixed
// action), filtered by compatibility and partitioned by equivalence.
struct H2Enumeration {
    long long candidates = 0;
    std::vector<Cocycle> compatible;   // in enumeration order
    std::vector<int> class_of;         // per compatible cocycle
    std::vector<Cocycle> reps;         // lexicographically least member per class
};

long long h2_candidate_count(const Datum& D, const Action* fixed);
H2Enumeration enumerate_h2(const Datum& D, const Variety& V, const Action* fixed = nullptr,
                           long long budget = 1LL << 20);

// Z^2 / B^2 for an affine datum, computed by linear algebra over Z_m.
class H2Affine {
public:
    H2Affine(const Datum& D, const Action& act, const Variety& V);

    int order() const { return static_cast<int>(reps_.size()); }
    const std::vector<Cocycle>& reps() const { return reps_; }
    int class_of(const Cocycle& T) const;  // -1 if T is not a cocycle here
    int add(int i, int j) const;
    bool is_cocycle(const Cocycle& T) const;
    std::vector<int> vectorize(const Cocycle& T) const;
    Cocycle devectorize(const std::vector<int>& v) const;
    const std::vector<std::vector<int>>& cocycle_generators() const { return zgens_; }
    const std::vector<std::vector<int>>& coboundary_generators() const { return bgens_; }
    bool in_coboundaries(const std::vector<int>& v) const;

private:
    Datum D_;
    Action act_;
    struct Cell {
        int table;  // 0 tplus, 1 tr, 2 tf
        int k, idx;
    };
    std::vector<Cell> cells_;
    std::vector<int> colmod_;
    std::vector<std::vector<int>> rows_;
    std::vector<int> rowmod_;
    std::vector<std::vector<int>> zgens_, bgens_;
    std::vector<Cocycle> reps_;
    std::vector<std::vector<int>> repvec_;
};

// h with coboundary(h) = G (w.r.t. act), if any.
std::optional<Map> coboundary_witness(const Datum& D, const Action& act, const Cocycle& G,
                                      long long budget = 1LL << 22);

std::vector<Map> derivations(const Datum& D, const Action& act);

struct PDerResult {
    std::vector<Map> elements;
    bool caveat = false;  // search bounded by depth or datum outside the affine case
};
PDerResult principal_derivations(const Datum& D, const Action& act, int depth = 3);

struct H1Result {
    std::vector<Map> der, pder, reps;
    bool caveat = false;
    int order() const { return static_cast<int>(reps.size()); }
};
H1Result h1(const Datum& D, const Action& act, int depth = 3);

// Automorphisms of M fixing iota(I) pointwise and commuting with pi.
std::vector<Map> stab_automorphisms(const Extension& E);
Map stab_to_derivation(const Extension& E, const Map& gamma);

Map map_add(const Algebra& B, const Map& f, const Map& g);
Map map_sub(const Algebra& B, const Map& f, const Map& g);
Map compose(const Map& f, const Map& g);  // f after g
std::vector<Map> span_maps(const Algebra& B, const std::vector<Map>& gens, std::size_t limit = 1u << 20);

}  // namespace mlex
