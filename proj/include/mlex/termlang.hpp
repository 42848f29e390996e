#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mlex/algebra.hpp"

namespace mlex {

struct Term;
using TermP = std::shared_ptr<const Term>;

struct Term {
    enum Kind { Var, Zero, Neg, Plus, Scalar, Apply };
    Kind kind = Zero;
    std::string name;  // variable or operation name
    int r = 0;         // scalar coefficient
    std::vector<TermP> args;
};

TermP t_var(const std::string& x);
TermP t_zero();
TermP t_neg(TermP t);
TermP t_plus(TermP a, TermP b);
TermP t_scalar(int r, TermP t);
TermP t_apply(const std::string& f, std::vector<TermP> args);

// Printing uses `bracket` (if nonempty) as [u,v] sugar for that binary op.
std::string print_term(const TermP& t, const std::string& bracket = "");
void collect_vars(const TermP& t, std::vector<std::string>& out);
int term_depth(const TermP& t);
int symbol_count(const TermP& t);

struct ParseError : MlexError {
    using MlexError::MlexError;
};

// Grammar:
//   term := sum ; sum := prod (('+'|'-') prod)* ; prod := [nat '*'] atom
//   atom := '0' | ident | ident '(' term (',' term)* ')' | '[' term ',' term ']'
//         | '(' term ')' | '-' atom
TermP parse_term(const std::string& text, const Signature& sig, const std::string& bracket = "");

struct Identity {
    TermP lhs, rhs;
    std::vector<std::string> vars;  // in order of first appearance
    std::string text;
};

Identity make_identity(TermP lhs, TermP rhs);
Identity parse_identity(const std::string& text, const Signature& sig, const std::string& bracket = "");

struct Variety {
    std::string name;
    Signature sig;
    std::string bracket;
    std::vector<Identity> identities;
};

// Variety with no identities over `sig` (the class of all multilinear expansions).
Variety largest_variety(const Signature& sig);

// Compiled evaluation of a term over a fixed algebra.
class TermEval {
public:
    TermEval(const Algebra& A, const TermP& t, const std::vector<std::string>& vars);
    Elem operator()(const std::vector<Elem>& env) const;

private:
    struct Node {
        Term::Kind kind;
        int var = -1, op = -1, r = 0;
        std::vector<int> kids;
    };
    const Algebra* A_;
    std::vector<Node> nodes_;
    int build(const TermP& t, const std::vector<std::string>& vars);
    mutable std::vector<Elem> buf_;
};

Elem eval_term(const Algebra& A, const TermP& t, const std::vector<std::string>& vars,
               const std::vector<Elem>& env);

// Lexicographically first counterexample assignment, if any.
std::optional<std::vector<Elem>> holds(const Algebra& A, const Identity& id);

struct VarietyFailure {
    int identity = -1;
    std::vector<Elem> env;
};
std::optional<VarietyFailure> in_variety(const Algebra& A, const Variety& V);

}  // namespace mlex
