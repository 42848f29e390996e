// One PASS/FAIL line per acceptance criterion.  Usage: mlex_acceptance MLEX_BINARY FIXTURE_DIR
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "expander_golden.hpp"
#include "fixtures.hpp"
#include "mlex/decompose.hpp"
#include "mlex/hs.hpp"
#include "mlex/io.hpp"

using namespace mlex;

namespace {

struct Verdict {
    bool ok = true;
    std::string detail;
    void fail(const std::string& why) {
        if (ok) detail = why;
        ok = false;
    }
};

std::string g_mlex, g_fixtures;

Variety mlf(const Datum& D) { return largest_variety(D.Q.signature()); }

H2Enumeration all_f1() {
    Datum D = fx::f1();
    return enumerate_h2(D, mlf(D));
}

// All liftings Q -> M with l(0) = 0 and pi . l = id.
std::vector<std::vector<Elem>> liftings(const Extension& E) {
    std::vector<std::vector<Elem>> fibre(E.Q.size());
    for (Elem m = 0; m < E.M.size(); ++m) fibre[E.pi[m]].push_back(m);
    std::vector<std::vector<Elem>> out;
    std::vector<std::size_t> idx(E.Q.size(), 0);
    while (true) {
        std::vector<Elem> l(E.Q.size(), 0);
        for (Elem x = 1; x < E.Q.size(); ++x) l[x] = fibre[x][idx[x]];
        out.push_back(l);
        Elem x = E.Q.size() - 1;
        for (; x >= 1; --x) {
            if (++idx[x] < fibre[x].size()) break;
            idx[x] = 0;
        }
        if (x < 1) break;
    }
    return out;
}

// Isomorphism M_T -> M_U fixing the kernel pointwise and commuting with the
// projections, by exhaustion over fibre-preserving maps.
bool stabilizing_iso_exists(const Extension& A, const Extension& B) {
    int n = A.M.size();
    auto ia = A.iota_inverse();
    std::vector<std::vector<Elem>> choices(n);
    for (Elem m = 0; m < n; ++m) {
        if (ia[m] >= 0) {
            choices[m] = {B.iota[ia[m]]};
            continue;
        }
        for (Elem v = 0; v < B.M.size(); ++v)
            if (B.pi[v] == A.pi[m]) choices[m].push_back(v);
    }
    std::vector<std::size_t> idx(n, 0);
    while (true) {
        std::vector<Elem> phi(n);
        for (Elem m = 0; m < n; ++m) phi[m] = choices[m][idx[m]];
        if (is_bijection(phi, B.M.size()) && is_homomorphism(A.M, B.M, phi)) return true;
        int m = n - 1;
        for (; m >= 0; --m) {
            if (++idx[m] < choices[m].size()) break;
            idx[m] = 0;
        }
        if (m < 0) return false;
    }
}

Verdict c1_realization() {
    Verdict v;
    Datum D = fx::f1();
    auto H = all_f1();
    if (H.compatible.empty()) v.fail("no cocycles enumerated");
    for (auto& T : H.compatible) {
        Extension E = semidirect_extension(D, T);
        if (auto e = validate_extension(E)) v.fail("invalid extension: " + *e);
        if (auto r = realizes_violation(E, T)) v.fail(*r);
    }
    v.detail = v.ok ? std::to_string(H.compatible.size()) + " cocycles realized" : v.detail;
    return v;
}

Verdict c2_round_trip() {
    Verdict v;
    std::vector<Datum> data = {fx::f1(), make_datum(fx::z2_zero("Q"), fx::f2())};
    int count = 0;
    for (auto& D : data) {
        auto H = enumerate_h2(D, mlf(D));
        for (auto& T : H.compatible) {
            Extension E = semidirect_extension(D, T);
            Cocycle U = extract_cocycle(E);
            auto S = semidirect(D, U);
            auto psi = psi_map(E);
            bool iso = S.valid && is_bijection(psi, S.M.size()) && is_homomorphism(E.M, S.M, psi);
            for (Elem a = 0; a < D.I.size() && iso; ++a) iso &= psi[E.iota[a]] == pair_code(a, 0, D.Q.size());
            for (Elem m = 0; m < E.M.size() && iso; ++m) iso &= psi[m] % D.Q.size() == E.pi[m];
            if (!iso) v.fail("psi is not an isomorphism of extensions");
            ++count;
        }
    }
    if (v.ok) v.detail = std::to_string(count) + " extensions over F1 and over Q = Z2, I = F2";
    return v;
}

Verdict c3_equivalence() {
    Verdict v;
    Datum D = fx::f1();
    auto H = all_f1();
    std::vector<Extension> exts;
    int pairs = 0, checked = 0;
    for (auto& T : H.compatible) {
        Extension E = semidirect_extension(D, T);
        auto ls = liftings(E);
        std::vector<Cocycle> ex;
        for (auto& l : ls) {
            Extension F = E;
            F.lift = l;
            ex.push_back(extract_cocycle(F));
        }
        for (auto& a : ex)
            for (auto& b : ex) {
                ++pairs;
                if (!equivalent(D, a, b)) v.fail("liftings of one extension give inequivalent cocycles");
            }
        exts.push_back(E);
    }
    for (std::size_t i = 0; i < H.compatible.size(); ++i)
        for (std::size_t j = 0; j < H.compatible.size(); ++j) {
            bool eq = equivalent(D, H.compatible[i], H.compatible[j]);
            bool iso = stabilizing_iso_exists(exts[i], exts[j]);
            ++checked;
            if (eq != iso) v.fail("equivalence and stabilizing isomorphism disagree");
        }
    if (v.ok) v.detail = std::to_string(pairs) + " lifting pairs, " + std::to_string(checked) + " cocycle pairs";
    return v;
}

Verdict c4_expander() {
    Verdict v;
    for (auto& g : golden::cases()) {
        auto r = golden::compare(g);
        if (!r.empty()) v.fail(g.name + ": " + r);
    }
    std::string s = golden::soundness(200, 20240611u);
    if (!s.empty()) v.fail(s);
    if (v.ok) v.detail = "goldens match; 200 soundness triples";
    return v;
}

Verdict c5_kernel_kinds() {
    Verdict v;
    std::vector<Datum> data = {fx::f1(), make_datum(fx::z2_zero("Q"), make_algebra("I", ZmModule(2, {2}), {MultilinearOp{"f", 2, {{{0, 0}, 1}}}}))};
    int n = 0;
    for (auto& D : data) {
        auto H = enumerate_h2(D, mlf(D));
        for (auto& T : H.compatible) {
            auto a = kernel_kind(D, T), b = kernel_kind_oracle(D, T);
            ++n;
            if (a.abelian != b.abelian || a.central != b.central) v.fail("predicate and commutator oracle disagree");
        }
    }
    if (v.ok) v.detail = std::to_string(n) + " cocycles, 0 disagreements";
    return v;
}

std::vector<std::pair<Datum, Action>> affine_fixtures() {
    std::vector<std::pair<Datum, Action>> out;
    Datum f1 = fx::f1();
    out.push_back({f1, trivial_action(f1)});
    Datum pure = make_datum(make_algebra("Q", ZmModule(4, {2}), {}), make_algebra("I", ZmModule(4, {2}), {}));
    out.push_back({pure, trivial_action(pure)});
    // F1 with a(f,1)(a, y) = a y and a(f,2)(x, b) = x b
    out.push_back({f1, make_action(f1, [](int, unsigned s, const Elem* q, const Elem* a) -> Elem {
                       if (s == 1u) return a[0] & q[1];
                       return q[0] & a[1];
                   })});
    Datum wide = make_datum(fx::z2_zero("Q"), make_algebra("I", ZmModule(2, {2, 2}), {MultilinearOp{"f", 2, {}}}));
    out.push_back({wide, trivial_action(wide)});
    return out;
}

Verdict c6_affine() {
    Verdict v;
    int fixtures = 0, pairs = 0;
    for (auto& [D, act] : affine_fixtures()) {
        if (!is_affine(D, act)) {
            v.fail("fixture is not affine");
            continue;
        }
        Variety V = mlf(D);
        H2Affine A(D, act, V);
        auto E = enumerate_h2(D, V, &act);
        ++fixtures;
        if (A.order() != static_cast<int>(E.reps.size())) v.fail("class counts differ");
        std::set<int> hit;
        for (auto& R : E.reps) hit.insert(A.class_of(R));
        if (hit.count(-1) || static_cast<int>(hit.size()) != A.order()) v.fail("representatives do not match");
        for (int c = 0; c < A.order(); ++c) {
            int found = 0;
            for (auto& R : E.reps) found += equivalent(D, A.reps()[c], R);
            if (found != 1) v.fail("affine representative matches no enumerated class");
        }
        for (auto& T : E.compatible)
            for (auto& U : E.compatible) {
                ++pairs;
                Cocycle S = affine_add(D, T, U);
                if (!is_compatible(D, S, V) || A.class_of(S) != A.add(A.class_of(T), A.class_of(U)))
                    v.fail("group law fails");
            }
    }
    if (v.ok) v.detail = std::to_string(fixtures) + " fixtures, " + std::to_string(pairs) + " sums";
    return v;
}

Verdict c7_pure_module() {
    Verdict v;
    Datum D = make_datum(make_algebra("Q", ZmModule(4, {2}), {}), make_algebra("I", ZmModule(4, {2}), {}));
    Action triv = trivial_action(D);
    auto E = enumerate_h2(D, mlf(D), &triv);
    if (E.reps.size() != 2) v.fail(std::to_string(E.reps.size()) + " classes");
    std::set<int> exps;
    for (auto& R : E.reps) {
        auto S = semidirect(D, R);
        int e = 1;
        for (Elem m = 0; m < S.M.size(); ++m) e = std::max(e, S.M.additive_order(m));
        exps.insert(e);
    }
    if (exps != std::set<int>{2, 4}) v.fail("reducts are not Z2xZ2 and Z4");
    if (v.ok) v.detail = "2 classes: Z2xZ2 and Z4";
    return v;
}

Verdict c8_central_h1() {
    Verdict v;
    std::vector<Datum> data = {fx::f1(), make_datum(fx::f2(), fx::z2_zero("I")), make_datum(fx::solvable3(), fx::z2_zero("I"))};
    for (auto& D : data) {
        auto ders = derivations(D, trivial_action(D));
        Ideal QQ = commutator(D.Q, full_ideal(D.Q), full_ideal(D.Q));
        std::set<Map> expect;
        for (auto& h : module_homs(D.Q, D.I)) {
            bool kills = true;
            for (Elem e : QQ.elems) kills &= h[e] == 0;
            if (kills) expect.insert(h);
        }
        if (std::set<Map>(ders.begin(), ders.end()) != expect) v.fail("Der differs from Hom killing [Q,Q] on " + D.Q.name);
    }
    std::vector<Extension> exts;
    Algebra F2 = fx::f2(), S3 = fx::solvable3();
    exts.push_back(extension_from_ideal(F2, ideal_generated(F2, {2})));
    exts.push_back(extension_from_ideal(S3, ideal_generated(S3, {4})));
    for (auto& E : exts) {
        Datum D = extension_datum(E);
        Cocycle T = extract_cocycle(E);
        if (!kernel_kind(D, T).central) {
            v.fail("extension is not central");
            continue;
        }
        auto der = derivations(D, T.act);
        auto stab = stab_automorphisms(E);
        std::map<Map, Map> img;
        for (auto& g : stab) img[g] = stab_to_derivation(E, g);
        std::set<Map> vals;
        for (auto& [g, d] : img) vals.insert(d);
        if (vals != std::set<Map>(der.begin(), der.end()) || vals.size() != stab.size())
            v.fail("Stab -> Der is not a bijection");
        for (auto& g : stab)
            for (auto& h : stab) {
                Map gh = compose(g, h);
                if (!img.count(gh) || img[gh] != map_add(D.I, img[g], img[h])) v.fail("Stab -> Der is not additive");
            }
    }
    if (v.ok) v.detail = "3 central data; Stab = Der on 2 extensions";
    return v;
}

Verdict c9_wells() {
    Verdict v;
    Algebra F2 = fx::f2(), S3 = fx::solvable3();
    Datum f1 = fx::f1();
    std::vector<std::pair<std::string, Extension>> exts = {
        {"F2", extension_from_ideal(F2, ideal_generated(F2, {2}))},
        {"S3/e1", extension_from_ideal(S3, ideal_generated(S3, {4}))},
        {"F1 split", semidirect_extension(f1, zero_cocycle(f1, trivial_action(f1)))},
        {"F1 acted", semidirect_extension(f1, zero_cocycle(f1, affine_fixtures()[2].second))},
    };
    for (auto& [name, E] : exts) {
        Report R = verify_wells(E);
        if (!R.ok) {
            std::string bad;
            for (auto& l : R.lines)
                if (l.rfind("FAIL", 0) == 0) bad = l;
            v.fail(name + ": " + bad);
        }
    }
    if (v.ok) v.detail = std::to_string(exts.size()) + " group-trivial extensions";
    return v;
}

Verdict c10_hs() {
    Verdict v;
    bool proper = false, transgressive = false;
    int n = 0;
    for (auto& F : fx::hs_fixtures()) {
        HSData H = make_hs(F.M, F.I, F.A, F.act, largest_variety(F.M.signature()));
        Report R = verify_hs(H);
        ++n;
        if (!R.ok) v.fail(F.name + " fails");
        if (!H.null_sub.empty() && static_cast<int>(H.null_sub.size()) > 1 &&
            static_cast<int>(H.null_sub.size()) < F.A.size())
            proper = true;
        for (auto& l : R.lines) {
            int k = 0;
            if (std::sscanf(l.c_str(), "info transgression image has %d classes", &k) == 1 && k > 1) transgressive = true;
        }
    }
    if (!proper) v.fail("no fixture with 0 < A^I < A");
    if (!transgressive) v.fail("no fixture with nontrivial transgression");
    if (v.ok) v.detail = std::to_string(n) + " fixtures, proper A^I and nonzero transgression covered";
    return v;
}

Verdict c11_decompose() {
    Verdict v;
    if (!decompose(fx::f2(), SeriesKind::Nilpotent).isomorphic) v.fail("F2 nilpotent");
    auto s = decompose(fx::solvable3(), SeriesKind::Solvable);
    if (!s.isomorphic || s.steps.size() != 2) v.fail("solvable3");
    if (!decompose(fx::solvable3(), SeriesKind::Nilpotent).isomorphic) v.fail("solvable3 nilpotent");
    if (v.ok) v.detail = "F2 and the 3-step solvable fixture rebuilt";
    return v;
}

std::string run(const std::string& cmd) {
    std::string out;
    FILE* p = popen((cmd + " 2>&1").c_str(), "r");
    if (!p) return "<popen failed>";
    char buf[4096];
    std::size_t k;
    while ((k = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, k);
    int rc = pclose(p);
    return out + "\n<exit " + std::to_string(rc) + ">";
}

Verdict c12_determinism() {
    Verdict v;
    if (g_mlex.empty()) {
        v.fail("no mlex binary given");
        return v;
    }
    std::string f = g_fixtures + "/";
    std::vector<std::string> cmds = {
        "check " + f + "f2.mlex",
        "semidirect " + f + "f1.mlex --name Tf",
        "extract " + f + "f2.mlex",
        "equivalent " + f + "f1.mlex --a T0 --b Tf",
        "h2 --datum " + f + "f2.mlex --variety mlf",
        "h2 " + f + "f1.mlex --all-actions",
        "h2 " + f + "module4.mlex",
        "h1 " + f + "f2.mlex",
        "derivations " + f + "f2.mlex --name F2",
        "wells " + f + "f2.mlex",
        "hs " + f + "hs1.mlex",
        "expand " + f + "leibniz.mlex --emit strict",
        "expand " + f + "rota-baxter.mlex --emit action --sexpr",
        "decompose " + f + "solvable3.mlex --kind solvable",
        "series " + f + "solvable3.mlex",
        "h2 " + f + "f1.mlex --json",
    };
    for (auto& c : cmds) {
        std::string full = g_mlex + " " + c;
        std::string a = run(full), b = run(full);
        if (a != b) v.fail("output differs: " + c);
        if (a.find("<exit 0>") == std::string::npos) v.fail("nonzero exit: " + c);
    }
    if (v.ok) v.detail = std::to_string(cmds.size()) + " commands byte-identical";
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) g_mlex = argv[1];
    g_fixtures = argc > 2 ? argv[2] : "fixtures";
    std::vector<std::pair<std::string, std::function<Verdict()>>> crits = {
        {"realization", c1_realization},       {"round trip", c2_round_trip},
        {"equivalence", c3_equivalence},       {"expander", c4_expander},
        {"kernel kinds", c5_kernel_kinds},     {"affine H2", c6_affine},
        {"pure module", c7_pure_module},       {"central H1", c8_central_h1},
        {"Wells", c9_wells},                   {"Hochschild-Serre", c10_hs},
        {"decompositions", c11_decompose},     {"determinism", c12_determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < crits.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = crits[i].second();
        } catch (const std::exception& e) {
            v.fail(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs >= 10.0) v.fail("took " + std::to_string(secs) + " s");
        char tbuf[32];
        std::snprintf(tbuf, sizeof tbuf, "%.2fs", secs);
        std::cout << (v.ok ? "PASS" : "FAIL") << " " << (i + 1) << " " << crits[i].first << " (" << tbuf
                  << "): " << v.detail << "\n";
        failed += !v.ok;
    }
    return failed ? 1 : 0;
}
