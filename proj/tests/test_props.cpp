#include <doctest.h>

#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "mlex/io.hpp"

using namespace mlex;

namespace {

constexpr unsigned kSeed = 20240611u;

int rnd(std::mt19937& rng, int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); }

using Mat = std::vector<std::vector<int>>;

Mat random_matrix(std::mt19937& rng, int r, int c, int m) {
    Mat A(r, std::vector<int>(c));
    for (auto& row : A)
        for (auto& v : row) v = rnd(rng, m);
    return A;
}

Mat mul(const Mat& A, const Mat& B, int m) {
    std::size_t inner = B.size(), cols = B.empty() ? 0 : B[0].size();
    Mat C(A.size(), std::vector<int>(cols, 0));
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k)
            for (std::size_t j = 0; j < cols; ++j) C[i][j] = (C[i][j] + A[i][k] * B[k][j]) % m;
    return C;
}

bool next_vec(std::vector<int>& v, int m) {
    for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i) {
        if (++v[i] < m) return true;
        v[i] = 0;
    }
    return false;
}

std::set<std::vector<int>> brute_solutions(const Mat& A, const std::vector<int>& b, int n, int m) {
    std::set<std::vector<int>> out;
    std::vector<int> x(n, 0);
    do {
        bool ok = true;
        for (std::size_t i = 0; i < A.size() && ok; ++i) {
            long long s = 0;
            for (int j = 0; j < n; ++j) s += static_cast<long long>(A[i][j]) * x[j];
            ok = mod_norm(s - b[i], m) == 0;
        }
        if (ok) out.insert(x);
    } while (next_vec(x, m));
    return out;
}

// Square matrix invertible over Z_m: injective on Z_m^n.
bool invertible(const Mat& U, int m) {
    int n = static_cast<int>(U.size());
    std::set<std::vector<int>> images;
    std::vector<int> x(n, 0);
    do {
        Mat col(n, std::vector<int>(1));
        for (int i = 0; i < n; ++i) col[i][0] = x[i];
        auto y = mul(U, col, m);
        std::vector<int> v;
        for (auto& r : y) v.push_back(r[0]);
        images.insert(v);
    } while (next_vec(x, m));
    long long total = 1;
    for (int i = 0; i < n; ++i) total *= m;
    return static_cast<long long>(images.size()) == total;
}

Algebra random_algebra(std::mt19937& rng, int m, const std::vector<int>& factors, bool unary) {
    ZmModule M(m, factors);
    std::vector<MultilinearOp> ops;
    MultilinearOp f{"f", 2, {}};
    for (int i = 0; i < M.rank(); ++i)
        for (int j = 0; j < M.rank(); ++j)
            if (rnd(rng, 2)) f.constants[{i, j}] = rnd(rng, M.size());
    ops.push_back(f);
    if (unary) {
        MultilinearOp g{"g", 1, {}};
        for (int i = 0; i < M.rank(); ++i) g.constants[{i}] = rnd(rng, M.size());
        ops.push_back(g);
    }
    return make_algebra("R", M, ops);
}

// Smallest mask containing gens closed under +, scalars and absorption.
std::vector<char> closure_oracle(const Algebra& A, const std::vector<Elem>& gens) {
    std::vector<char> in(A.size(), 0);
    in[0] = 1;
    for (Elem g : gens) in[g] = 1;
    bool grew = true;
    while (grew) {
        grew = false;
        auto add = [&](Elem e) {
            if (!in[e]) in[e] = grew = true;
        };
        for (Elem a = 0; a < A.size(); ++a) {
            if (!in[a]) continue;
            for (Elem b = 0; b < A.size(); ++b)
                if (in[b]) add(A.add(a, b));
            for (int r = 0; r < A.modulus; ++r) add(A.scale(r, a));
        }
        for (int k = 0; k < static_cast<int>(A.ops.size()); ++k) {
            int n = A.ops[k].arity;
            std::vector<Elem> t(n, 0);
            do {
                bool hit = false;
                for (Elem e : t) hit |= in[e] != 0;
                if (hit) add(A.apply(k, t));
            } while (next_tuple(t, A.size()));
        }
    }
    return in;
}

Elem eval_rec(const Algebra& A, const TermP& t, const std::vector<std::string>& vars, const std::vector<Elem>& env) {
    switch (t->kind) {
        case Term::Var:
            for (std::size_t i = 0; i < vars.size(); ++i)
                if (vars[i] == t->name) return env[i];
            return -1;
        case Term::Zero: return 0;
        case Term::Neg: return A.neg(eval_rec(A, t->args[0], vars, env));
        case Term::Plus: return A.add(eval_rec(A, t->args[0], vars, env), eval_rec(A, t->args[1], vars, env));
        case Term::Scalar: return A.scale(t->r, eval_rec(A, t->args[0], vars, env));
        case Term::Apply: {
            std::vector<Elem> a;
            for (auto& s : t->args) a.push_back(eval_rec(A, s, vars, env));
            return A.apply(A.op_index(t->name), a);
        }
    }
    return -1;
}

}  // namespace

TEST_CASE("solve_linear agrees with brute force") {
    std::mt19937 rng(kSeed);
    for (int trial = 0; trial < 300; ++trial) {
        int m = std::vector<int>{2, 3, 4, 6, 8}[rnd(rng, 5)];
        int r = 1 + rnd(rng, 3), n = 1 + rnd(rng, 3);
        Mat A = random_matrix(rng, r, n, m);
        std::vector<int> b(r);
        for (auto& v : b) v = rnd(rng, m);
        auto brute = brute_solutions(A, b, n, m);
        auto sol = solve_linear(A, b, n, m);
        CAPTURE(trial);
        REQUIRE(sol.has_value() == !brute.empty());
        if (!sol) continue;
        std::set<std::vector<int>> got;
        for (auto& k : span_vectors(sol->kernel, std::vector<int>(n, m))) {
            std::vector<int> x(n);
            for (int j = 0; j < n; ++j) x[j] = mod_norm(sol->particular[j] + k[j], m);
            got.insert(x);
        }
        CHECK(got == brute);
    }
}

TEST_CASE("Smith form recomposes") {
    std::mt19937 rng(kSeed + 1);
    for (int trial = 0; trial < 200; ++trial) {
        int m = std::vector<int>{2, 4, 6, 9, 12}[rnd(rng, 5)];
        int r = 1 + rnd(rng, 3), n = 1 + rnd(rng, 3);
        Mat A = random_matrix(rng, r, n, m);
        Smith S = smith_form(A, n, m);
        CAPTURE(trial);
        CHECK(mul(mul(S.U, A, m), S.V, m) == S.D);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) CHECK(S.D[i][j] == 0);
        CHECK(invertible(S.U, m));
        CHECK(invertible(S.V, m));
    }
}

TEST_CASE("ideal closure and commutator symmetry") {
    std::mt19937 rng(kSeed + 2);
    for (int trial = 0; trial < 60; ++trial) {
        int m = rnd(rng, 2) ? 2 : 3;
        std::vector<int> fs(1 + rnd(rng, m == 2 ? 3 : 2), m);
        Algebra A = random_algebra(rng, m, fs, rnd(rng, 2) == 1);
        CAPTURE(trial);
        std::vector<Elem> g1 = {rnd(rng, A.size())}, g2 = {rnd(rng, A.size()), rnd(rng, A.size())};
        Ideal I = ideal_generated(A, g1), J = ideal_generated(A, g2);
        CHECK(I.in == closure_oracle(A, g1));
        CHECK(J.in == closure_oracle(A, g2));
        CHECK(is_ideal(A, I.in));
        Ideal IJ = commutator(A, I, J);
        CHECK(IJ == commutator(A, J, I));
        for (Elem e : IJ.elems) CHECK((I.contains(e) && J.contains(e)));
    }
}

TEST_CASE("holds agrees with a recursive evaluator") {
    std::mt19937 rng(kSeed + 3);
    Signature sig = {{"f", 2}, {"g", 1}};
    const char* texts[] = {"f(x,y) = f(y,x)",         "f(x,f(y,z)) = f(f(x,y),z)", "g(f(x,y)) = f(g(x),y)",
                           "f(x,x) = 0",              "g(g(x)) = 2*x - x",         "[x,[y,z]] = [[x,y],z] + [y,[x,z]]",
                           "f(x + y, z) = f(x,z) + f(y,z)"};
    for (int trial = 0; trial < 40; ++trial) {
        int m = rnd(rng, 2) ? 2 : 3;
        Algebra A = random_algebra(rng, m, std::vector<int>(1 + rnd(rng, 2), m), true);
        for (auto* text : texts) {
            Identity id = parse_identity(text, sig, "f");
            std::optional<std::vector<Elem>> first;
            std::vector<Elem> env(id.vars.size(), 0);
            do {
                if (eval_rec(A, id.lhs, id.vars, env) != eval_rec(A, id.rhs, id.vars, env)) {
                    first = env;
                    break;
                }
            } while (next_tuple(env, A.size()));
            CAPTURE(text);
            CHECK(holds(A, id) == first);
        }
    }
}

TEST_CASE("coboundaries are compatible cocycles and T_r follows from T_+") {
    std::vector<std::pair<Datum, Action>> cases;
    Datum f1 = fx::f1();
    cases.push_back({f1, trivial_action(f1)});
    Datum c = make_datum(fx::z2_zero("Q"), make_algebra("I", ZmModule(2, {2, 2}), {MultilinearOp{"f", 2, {}}}));
    cases.push_back({c, trivial_action(c)});
    Datum p = make_datum(make_algebra("Q", ZmModule(4, {2}), {}), make_algebra("I", ZmModule(4, {4}), {}));
    cases.push_back({p, trivial_action(p)});
    for (auto& [D, act] : cases) {
        Variety V = largest_variety(D.Q.signature());
        std::vector<Elem> h(D.Q.size(), 0);
        do {
            Cocycle B = coboundary(D, act, h);
            CHECK(!validate_cocycle(D, B));
            CHECK(is_compatible(D, B, V));
        } while (next_map(h, D.I.size()));
        for (auto& T : enumerate_h2(D, V, &act).compatible) CHECK(tr_from_tplus(D, T) == T.tr);
    }
}

TEST_CASE("derivations form a Lie algebra") {
    std::mt19937 rng(kSeed + 4);
    for (int trial = 0; trial < 25; ++trial) {
        Algebra A = random_algebra(rng, 2, std::vector<int>(2 + rnd(rng, 2), 2), rnd(rng, 2) == 1);
        auto ders = algebra_derivations(A);
        std::set<Map> S(ders.begin(), ders.end());
        CAPTURE(trial);
        int brute = 0;
        for (auto& h : module_homs(A, A)) brute += is_derivation(A, h);
        CHECK(static_cast<int>(S.size()) == brute);
        for (auto& a : ders)
            for (auto& b : ders) {
                CHECK(S.count(map_add(A, a, b)));
                CHECK(S.count(lie_bracket(A, a, b)));
            }
        for (std::size_t i = 0; i < ders.size() && i < 6; ++i)
            for (std::size_t j = 0; j < ders.size() && j < 6; ++j)
                for (std::size_t k = 0; k < ders.size() && k < 6; ++k) {
                    auto &a = ders[i], &b = ders[j], &c = ders[k];
                    Map s = map_add(A, lie_bracket(A, a, lie_bracket(A, b, c)),
                                    map_add(A, lie_bracket(A, b, lie_bracket(A, c, a)), lie_bracket(A, c, lie_bracket(A, a, b))));
                    CHECK(s == Map(A.size(), 0));
                }
    }
}

TEST_CASE("MLEX round trip") {
    for (const char* f : {"f1", "f2", "hs1", "leibniz", "module4", "rota-baxter", "solvable3"}) {
        CAPTURE(f);
        Workspace W = load_workspace(std::string(MLEX_FIXTURE_DIR) + "/" + f + ".mlex");
        std::string once = save_workspace(W);
        std::string twice = save_workspace(parse_workspace(once));
        CHECK(once == twice);
    }
}

TEST_CASE("load errors carry positions") {
    std::string text =
        "[ring]\nmodulus = 2\n[module Z2]\nfactors = 2\n[algebra A]\nmodule = Z2\nop f/2\n"
        "[cocycle T]\nQ = A\nI = A\nTplus: (0,1) -> 1\n";
    try {
        parse_workspace(text, "bad.mlex");
        FAIL("expected a load error");
    } catch (const LoadError& e) {
        std::string msg = e.what();
        CHECK(msg.find("bad.mlex:") == 0);
        CHECK(msg.find("T1 violated at (0,1)") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_workspace("[ring]\nmodulus = x\n"), LoadError);
    CHECK_THROWS_AS(parse_workspace("[algebra A]\nmodule = Nope\n"), LoadError);
}
