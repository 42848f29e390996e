#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mlex/cocycle.hpp"
#include "mlex/termlang.hpp"

namespace mlex {

// I-sort monomials appearing in the first coordinate of a term evaluated in
// I x_T Q.  Q-sort subterms are kept as plain terms over the Q variables.
struct Mono;
using MonoP = std::shared_ptr<const Mono>;

struct Mono {
    enum Kind { IVar, IApply, Act, TPlus, TScal, TOp };
    Kind kind = IVar;
    std::string op;  // operation name for IApply / Act / TOp
    int var = -1;    // IVar
    int r = 0;       // TScal
    unsigned s = 0;  // Act
    std::vector<TermP> q;  // Q arguments (null where unused)
    std::vector<MonoP> a;  // I arguments (null where unused)
    std::string key;       // canonical generic print
    int symbols = 0;
    bool factor_set = false, action = false;
};

struct Summand {
    int coef = 1;
    MonoP mono;
};
using Poly = std::vector<Summand>;

struct SplitTerm {
    TermP q;
    Poly pure, star, del;  // t^I, t^{*,T}, t^{d,T}
};

enum class Emit { General, Action, Strict };

struct ExpandedIdentity {
    Emit kind = Emit::General;
    Poly lhs, rhs;
};

class Expander {
public:
    Expander(const Signature& sig, int modulus, std::string bracket = "");

    SplitTerm expand(const TermP& t, const std::vector<std::string>& vars) const;
    ExpandedIdentity expand_identity(const Identity& id, Emit kind, bool cancel = true) const;

    std::string print(const ExpandedIdentity& e, const std::vector<std::string>& vars) const;
    std::string sexpr(const ExpandedIdentity& e, const std::vector<std::string>& vars) const;
    std::string print_mono(const MonoP& m, const std::vector<std::string>& vars) const;
    std::string print_poly(const Poly& p, const std::vector<std::string>& vars) const;

    // Name used for the I-coordinate of variable i.
    std::string iname(int i, const std::vector<std::string>& vars) const;
    bool infix_actions() const { return !infix_op_.empty(); }

    // Symbolic compatibility: every general identity of V holds under
    // evaluation in (Q, I, T).
    bool compatible(const Datum& D, const Cocycle& T, const Variety& V) const;

private:
    Signature sig_;
    int m_;
    std::string bracket_;
    std::string infix_op_;  // the single binary operation, if unique

    Poly combine(const Poly& a, const Poly& b) const;
    Poly scaled(const Poly& a, int r) const;
    Poly normalize(Poly p) const;
    std::string print_q(const TermP& t) const;
    std::string print_sum(Poly p, const std::vector<std::string>& vars) const;
    std::string sexpr_mono(const MonoP& m, const std::vector<std::string>& vars) const;
};

// Axioms of the class of all multilinear expansions of Z_m-modules as
// identities: module laws for every scalar and multilinearity of each f.
std::vector<Identity> module_axioms(int m, const Signature& sig);

Elem eval_mono(const Datum& D, const Cocycle& T, const MonoP& mono, const std::vector<std::string>& vars,
               const std::vector<Elem>& as, const std::vector<Elem>& xs);
Elem eval_poly(const Datum& D, const Cocycle& T, const Poly& p, const std::vector<std::string>& vars,
               const std::vector<Elem>& as, const std::vector<Elem>& xs);

}  // namespace mlex
