#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "mlex/expander.hpp"

namespace golden {

using namespace mlex;

struct Case {
    std::string name;
    int modulus;
    Signature sig;
    std::string bracket, identity;
    Emit emit;
    std::string expected;
    // Applied to the expected text before comparison.
    std::vector<std::pair<std::string, std::string>> rewrites;
};

inline void replace_all(std::string& s, const std::string& from, const std::string& to) {
    for (std::size_t p = 0; (p = s.find(from, p)) != std::string::npos; p += to.size()) s.replace(p, from.size(), to);
}

// Summands of one side, split at top-level '+', spaces removed and factor
// sets written uniformly as T.
inline std::vector<std::string> summands(std::string side) {
    replace_all(side, " ", "");
    replace_all(side, "T_+", "T");
    for (std::size_t p = 0; (p = side.find("T_", p)) != std::string::npos;) {
        std::size_t q = side.find('(', p);
        side.erase(p + 1, q - p - 1);
        ++p;
    }
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : side) {
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (c == '+' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    std::sort(out.begin(), out.end());
    return out;
}

inline std::pair<std::vector<std::string>, std::vector<std::string>> sides(const std::string& s) {
    auto eq = s.find('=');
    return {summands(s.substr(0, eq)), summands(s.substr(eq + 1))};
}

inline std::string emitted(const Case& c) {
    Expander E(c.sig, c.modulus, c.bracket);
    Identity id = parse_identity(c.identity, c.sig, c.bracket);
    return E.print(E.expand_identity(id, c.emit), id.vars);
}

// Empty when the emitted identity matches the expected one up to summand order.
inline std::string compare(const Case& c) {
    std::string want = c.expected;
    for (auto& [a, b] : c.rewrites) replace_all(want, a, b);
    std::string got = emitted(c);
    if (sides(got) == sides(want)) return "";
    return "emitted " + got;
}

inline std::vector<Case> cases() {
    Signature rb = {{"mul", 2}, {"P", 1}}, lb = {{"br", 2}};
    std::string leib = "[x,[y,z]] = [[x,y],z] + [y,[x,z]]";
    return {
        {"rota-baxter action", 7, rb, "", "mul(P(x),P(y)) = P(mul(P(x),y)) + P(mul(x,P(y))) + 3*P(mul(x,y))",
         Emit::Action,
         "P(x) ∗ P(b) + P(a) ∘ P(y) = P(P(x) ∗ b) + P(P(a) ∘ y) + P(x ∗ P(b)) + P(a ∘ P(y)) + λ P(a ∘ y) + "
         "λ P(x ∗ b)",
         {{"λ ", "3*"}}},
        {"leibniz action", 2, lb, "br", leib, Emit::Action,
         "[a, b ∘ z] + [a, y ∗ z] + a ∘ [y,z] + x ∗ [b,c] + x ∗ (b ∘ z) + x ∗ (y ∗ c) = [x ∗ b,c] + [a ∘ y,c] + "
         "[x,y] ∗ c + [a,b] ∘ z + (x ∗ b) ∘ z + (a ∘ y) ∘ z + [b,a ∘ z] + [b,x ∗ c] + b ∘ [x,z] + y ∗ [a,c] + "
         "y ∗ (a ∘ z) + y ∗ (x ∗ c)",
         // the expected text pairs y with the Q-variable z; corrected here
         {{"[a, y ∗ z]", "[a, y ∗ c]"}}},
        {"leibniz strict", 2, lb, "br", leib, Emit::Strict,
         "[a,T(x,z)] + x ∗ T(y,z) + T(x,[y,z]) = [T(x,y),c] + T(x,y) ∘ z + T([x,y],z) + [b,T(y,z)] + "
         "y ∗ T(x,z) + T(y,[x,z]) + T([[x,y],z],[y,[x,z]])",
         // the expected text transposes the arguments of both bracket terms; corrected here
         {{"[a,T(x,z)]", "[a,T(y,z)]"}, {"[b,T(y,z)]", "[b,T(x,z)]"}}},
    };
}

// Random terms, cocycle tables and assignments: the first coordinate of a
// term evaluated in I x_T Q must equal the expanded polynomial.
struct SoundFixture {
    Datum D;
    Variety V;
};

inline std::vector<SoundFixture> sound_fixtures() {
    std::vector<SoundFixture> out;
    Algebra z2 = make_algebra("Z2", ZmModule(2, {2}), {MultilinearOp{"f", 2, {}}});
    ZmModule m22(2, {2, 2});
    Algebra f2 = make_algebra("F2", m22, {MultilinearOp{"f", 2, {{{1, 1}, m22.generator(0)}}}});
    ZmModule z3(3, {3});
    Algebra q3 = make_algebra("Q3", z3, {MultilinearOp{"mul", 2, {{{0, 0}, 1}}}, MultilinearOp{"P", 1, {{{0}, 2}}}});
    Algebra i3 = make_algebra("I3", z3, {MultilinearOp{"mul", 2, {}}, MultilinearOp{"P", 1, {{{0}, 1}}}});
    Algebra a4 = make_algebra("A4", ZmModule(4, {2}), {});
    Algebra b4 = make_algebra("B4", ZmModule(4, {4}), {});
    for (auto D : {make_datum(z2, z2), make_datum(f2, z2), make_datum(q3, i3), make_datum(a4, b4)})
        out.push_back({D, largest_variety(D.Q.signature())});
    return out;
}

inline TermP random_term(std::mt19937& rng, const Signature& sig, const std::vector<std::string>& vars, int depth) {
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
    if (depth == 0 || pick(4) == 0) return pick(8) == 0 ? t_zero() : t_var(vars[pick(static_cast<int>(vars.size()))]);
    int choice = pick(sig.empty() ? 3 : 5);
    switch (choice) {
        case 0: return t_neg(random_term(rng, sig, vars, depth - 1));
        case 1: return t_plus(random_term(rng, sig, vars, depth - 1), random_term(rng, sig, vars, depth - 1));
        case 2: return t_scalar(pick(5), random_term(rng, sig, vars, depth - 1));
        default: {
            auto& [f, n] = sig[pick(static_cast<int>(sig.size()))];
            std::vector<TermP> args;
            for (int i = 0; i < n; ++i) args.push_back(random_term(rng, sig, vars, depth - 1));
            return t_apply(f, args);
        }
    }
}

// Factor sets are arbitrary; each action term is c(q) * a_1 ... a_k, which is
// multilinear in the I-arguments (every fixture has a cyclic I).
inline Cocycle random_cocycle(std::mt19937& rng, const Datum& D) {
    int in = D.I.size();
    auto r = [&]() { return static_cast<Elem>(rng() % static_cast<unsigned>(in)); };
    std::map<std::vector<int>, Elem> coef;
    Action act = make_action(D, [&](int k, unsigned s, const Elem* q, const Elem* a) {
        std::vector<int> key = {k, static_cast<int>(s)};
        long long prod = 1;
        for (int i = 0; i < D.arity(k); ++i) {
            if (s & (1u << i))
                prod *= a[i];
            else
                key.push_back(q[i]);
        }
        auto it = coef.find(key);
        if (it == coef.end()) it = coef.emplace(key, r()).first;
        return D.I.scale(prod, it->second);
    });
    Cocycle T = zero_cocycle(D, act);
    for (auto& v : T.tplus) v = r();
    for (auto& row : T.tr)
        for (auto& v : row) v = r();
    for (auto& row : T.tf)
        for (auto& v : row) v = r();
    return T;
}

// Empty on success, else a description of the first failing triple.
inline std::string soundness(int trials, unsigned seed) {
    std::mt19937 rng(seed);
    auto fixtures = sound_fixtures();
    std::vector<std::string> vars = {"x", "y", "z"};
    for (int t = 0; t < trials; ++t) {
        auto& F = fixtures[rng() % fixtures.size()];
        const Datum& D = F.D;
        Cocycle T = random_cocycle(rng, D);
        Algebra M = semidirect(D, T).M;
        TermP term = random_term(rng, D.Q.signature(), vars, 3);
        std::vector<Elem> as(3), xs(3), env(3);
        for (int i = 0; i < 3; ++i) {
            as[i] = static_cast<Elem>(rng() % static_cast<unsigned>(D.I.size()));
            xs[i] = static_cast<Elem>(rng() % static_cast<unsigned>(D.Q.size()));
            env[i] = pair_code(as[i], xs[i], D.Q.size());
        }
        Expander E(D.Q.signature(), D.modulus());
        SplitTerm st = E.expand(term, vars);
        Elem direct = eval_term(M, term, vars, env);
        Elem first = D.I.add(eval_poly(D, T, st.pure, vars, as, xs),
                             D.I.add(eval_poly(D, T, st.star, vars, as, xs), eval_poly(D, T, st.del, vars, as, xs)));
        Elem second = eval_term(D.Q, st.q, vars, xs);
        if (direct != pair_code(first, second, D.Q.size()) || second != eval_term(D.Q, term, vars, xs))
            return "trial " + std::to_string(t) + ": " + print_term(term) + " over " + D.Q.name;
    }
    return "";
}

}  // namespace golden
