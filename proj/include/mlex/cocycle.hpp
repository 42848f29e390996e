#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mlex/algebra.hpp"
#include "mlex/termlang.hpp"

namespace mlex {

// Q acts on I; both carry the same signature in the same order.
struct Datum {
    Algebra Q, I;
    int modulus() const { return Q.modulus; }
    int arity(int k) const { return Q.ops[k].arity; }
    int nops() const { return static_cast<int>(Q.ops.size()); }
};

Datum make_datum(const Algebra& Q, const Algebra& I);

// Subsets of [n] are bitmasks; s ranges over nonempty proper subsets.
inline unsigned full_mask(int n) { return (1u << n) - 1u; }
inline int popcount(unsigned s) { return __builtin_popcount(s); }
std::string mask_string(unsigned s, int n);  // "1" or "{1,2}"

// Action terms a(f,s): Q^n x I^n -> I.  Tables only store the coordinates
// the term may depend on: q_i for i outside s and a_i for i in s.
struct Action {
    int qn = 0, in = 0;
    std::vector<int> arity;
    std::vector<std::vector<std::vector<Elem>>> tab;  // tab[k][s]

    std::size_t code(int k, unsigned s, const Elem* q, const Elem* a) const;
    Elem eval(int k, unsigned s, const Elem* q, const Elem* a) const { return tab[k][s][code(k, s, q, a)]; }
    // Decodes a table index into full tuples (unused positions set to 0).
    void decode(int k, unsigned s, std::size_t c, Elem* q, Elem* a) const;
    bool operator==(const Action& o) const { return tab == o.tab; }
};

Action trivial_action(const Datum& D);
// Tabulates fn(k, s, q, a) over every stored cell.
Action make_action(const Datum& D, const std::function<Elem(int, unsigned, const Elem*, const Elem*)>& fn);
bool is_trivial(const Action& act);
bool is_unary(const Action& act);  // a(f,s) = 0 whenever |s| > 1

struct Cocycle {
    Action act;
    std::vector<Elem> tplus;            // |Q|^2
    std::vector<std::vector<Elem>> tr;  // tr[r][x]
    std::vector<std::vector<Elem>> tf;  // tf[k][tuple code]

    std::vector<Elem> flatten() const;
    bool operator==(const Cocycle& o) const { return flatten() == o.flatten(); }
    bool operator<(const Cocycle& o) const { return flatten() < o.flatten(); }
};

Cocycle zero_cocycle(const Datum& D, const Action& act);
bool is_group_trivial(const Cocycle& T);

std::optional<std::string> validate_action(const Datum& D, const Action& act);
// T1-T4; messages name the violated clause.
std::optional<std::string> validate_cocycle(const Datum& D, const Cocycle& T);

struct SemidirectResult {
    Algebra M;
    bool valid = false;
    std::string reason;
};

inline Elem pair_code(Elem a, Elem x, int qn) { return a * qn + x; }

// Carrier I x Q, element <a,x> at index a*|Q| + x.  Validity covers the
// module axioms, multilinearity and (when V is given) the identities of V.
SemidirectResult semidirect(const Datum& D, const Cocycle& T, const Variety* V = nullptr);
bool is_compatible(const Datum& D, const Cocycle& T, const Variety& V);

struct Extension {
    Algebra M, Q, I;
    std::vector<Elem> pi;    // M -> Q
    std::vector<Elem> iota;  // I -> M
    std::vector<Elem> lift;  // Q -> M with lift[0] = 0

    std::vector<Elem> iota_inverse() const;  // -1 outside the kernel
};

Extension extension_from_ideal(const Algebra& M, const Ideal& I);
Extension semidirect_extension(const Datum& D, const Cocycle& T);
std::optional<std::string> validate_extension(const Extension& E);
Datum extension_datum(const Extension& E);

std::optional<std::string> realizes_violation(const Extension& E, const Cocycle& T);
inline bool realizes(const Extension& E, const Cocycle& T) { return !realizes_violation(E, T); }
Cocycle extract_cocycle(const Extension& E);
// psi(m) = <m - l(pi m), pi m> : M -> I x_T Q
std::vector<Elem> psi_map(const Extension& E);

// Coboundary of h : Q -> I (h(0) = 0) with respect to the reference action.
Cocycle coboundary(const Datum& D, const Action& act, const std::vector<Elem>& h);
Cocycle cocycle_sub(const Datum& D, const Cocycle& A, const Cocycle& B);
Cocycle cocycle_add(const Datum& D, const Cocycle& A, const Cocycle& B);
Cocycle cocycle_scale(const Datum& D, int r, const Cocycle& A);
bool is_null(const Cocycle& T);

// Lexicographically first h with <a,x> -> <a - h(x), x> an isomorphism.
std::optional<std::vector<Elem>> equivalence_witness(const Datum& D, const Cocycle& T, const Cocycle& U,
                                                     long long budget = 1LL << 22);
inline bool equivalent(const Datum& D, const Cocycle& T, const Cocycle& U) {
    return equivalence_witness(D, T, U).has_value();
}

// (alpha, h, beta) : T -> U checked against (E1)-(E3).  The literal (E3)
// applies alpha to the Q-arguments; `emend` reads beta there.  The f-term
// is evaluated in J either way.
struct MorphismCheck {
    bool ok = true;
    std::string failure;
};
MorphismCheck is_h2_morphism(const Datum& D1, const Cocycle& T, const Datum& D2, const Cocycle& U,
                             const std::vector<Elem>& alpha, const std::vector<Elem>& h,
                             const std::vector<Elem>& beta, bool emend);

struct KernelKind {
    bool abelian = false, central = false;
};
KernelKind kernel_kind(const Datum& D, const Cocycle& T);
KernelKind kernel_kind_oracle(const Datum& D, const Cocycle& T);
bool is_abelian_algebra(const Algebra& A);

// T_r recomputed from T_+: T_r(x) = sum_{j=1}^{r-1} T_+(jx, x).
std::vector<std::vector<Elem>> tr_from_tplus(const Datum& D, const Cocycle& T);

// Iterates every assignment h : Q -> I with h(0) = 0 in lexicographic order.
bool next_map(std::vector<Elem>& h, int target_size);

}  // namespace mlex
