#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mlex/modcore.hpp"

namespace mlex {

using Signature = std::vector<std::pair<std::string, int>>;

// An operation stored as its full value table; argument tuples are encoded
// in base |A| with the first argument most significant.
struct Operation {
    std::string name;
    int arity = 0;
    std::vector<Elem> table;
};

// Structure constants: generator index tuple (0-based) -> element.
struct MultilinearOp {
    std::string name;
    int arity = 0;
    std::map<std::vector<int>, Elem> constants;
};

// A finite Z_m-algebra given by tables.  When `module` is set the element
// indices are the lexicographic coordinate indices of that module and the
// algebra is said to be presented.
class Algebra {
public:
    std::string name;
    int modulus = 2;
    std::vector<Elem> add_t, neg_t;
    std::vector<std::vector<Elem>> scal_t;  // scal_t[r][x]
    std::vector<Operation> ops;
    std::optional<ZmModule> module;

    int size() const { return static_cast<int>(neg_t.size()); }
    Elem add(Elem a, Elem b) const { return add_t[static_cast<std::size_t>(a) * size() + b]; }
    Elem neg(Elem a) const { return neg_t[a]; }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem scale(long long r, Elem a) const { return scal_t[mod_norm(r, modulus)][a]; }
    Elem apply(int k, const std::vector<Elem>& args) const;
    Elem apply(int k, const Elem* args) const;
    int op_index(const std::string& f) const;  // -1 if absent
    Signature signature() const;
    std::string format(Elem e) const;
    std::optional<Elem> parse_elem(const std::string& s) const;
    int additive_order(Elem e) const;
};

std::size_t tuple_code(const Elem* args, int arity, int n);
// Iterates all tuples of length `arity` over [0,n) in lexicographic order.
bool next_tuple(std::vector<Elem>& t, int n);

Algebra make_algebra(const std::string& name, const ZmModule& M, const std::vector<MultilinearOp>& ops);
Algebra zero_algebra(int m, const Signature& sig);
// Structure constants read back from a presented algebra.
std::vector<MultilinearOp> structure_constants(const Algebra& A);
// Reorders operations to match `sig`; throws if an operation is missing.
Algebra with_signature(const Algebra& A, const Signature& sig);

std::optional<std::string> module_violation(const Algebra& A);
std::optional<std::string> multilinearity_violation(const Algebra& A);

struct Ideal {
    std::vector<char> in;
    std::vector<Elem> elems;
    bool contains(Elem e) const { return in[e] != 0; }
    int size() const { return static_cast<int>(elems.size()); }
    bool operator==(const Ideal& o) const { return in == o.in; }
};

Ideal ideal_from_mask(std::vector<char> mask);
Ideal zero_ideal(const Algebra& A);
Ideal full_ideal(const Algebra& A);
Ideal ideal_generated(const Algebra& A, const std::vector<Elem>& gens);
bool is_ideal(const Algebra& A, const std::vector<char>& mask);

// [I,J]: generated by f(a) with a in J^n and some a_i in I, or a in I^n and
// some a_i in J.
Ideal commutator(const Algebra& A, const Ideal& I, const Ideal& J);
// Generated by f(a) with entries from I and J in two distinct positions and
// arbitrary entries elsewhere, together with unary f applied to I ∩ J.
Ideal positional_commutator(const Algebra& A, const Ideal& I, const Ideal& J);

std::vector<Ideal> derived_series(const Algebra& A, int max_len = 64);
std::vector<Ideal> lower_central_series(const Algebra& A, int max_len = 64);

struct Presented {
    Algebra alg;
    std::vector<Elem> to;    // original index -> presented index
    std::vector<Elem> from;  // presented index -> original index
};

// Re-expresses a table algebra on a canonical Z_{d1} x ... x Z_{dk} carrier.
Presented present(const Algebra& A);
Algebra relabel(const Algebra& A, const std::vector<Elem>& from, const std::optional<ZmModule>& module);

struct QuotientResult {
    Algebra alg;
    std::vector<Elem> proj;     // A -> A/I
    std::vector<Elem> section;  // A/I -> A, lexicographically least representative
};
QuotientResult quotient(const Algebra& A, const Ideal& I);

struct SubResult {
    Algebra alg;
    std::vector<Elem> embed;  // sub -> A
};
SubResult subalgebra(const Algebra& A, const std::vector<Elem>& elems);

bool is_homomorphism(const Algebra& A, const Algebra& B, const std::vector<Elem>& map);
bool is_bijection(const std::vector<Elem>& map, int target_size);
std::optional<std::vector<Elem>> find_isomorphism(const Algebra& A, const Algebra& B);

// Greedy additive generating set; coeffs[e] expresses e in the generators.
struct GenSet {
    std::vector<Elem> gens;
    std::vector<std::vector<int>> coeffs;
};
GenSet generating_set(const Algebra& A);
Elem combine(const Algebra& B, const std::vector<int>& coeffs, const std::vector<Elem>& imgs);

// All R-module homomorphisms A -> B as element maps.
std::vector<std::vector<Elem>> module_homs(const Algebra& A, const Algebra& B);

}  // namespace mlex
