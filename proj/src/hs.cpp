#include "mlex/hs.hpp"

#include <algorithm>
#include <set>

namespace mlex {

// Calls fn(k, i, m, value) for every unary action value with a(i) = x.
template <class Fn>
static void for_unary(const Algebra& M, const Action& act, Elem x, Fn fn) {
    for (std::size_t k = 0; k < act.tab.size(); ++k) {
        int n = act.arity[k];
        for (int i = 0; i < n && n > 1; ++i) {
            unsigned s = 1u << i;
            std::vector<Elem> m(n, 0), a(n, 0);
            a[i] = x;
            std::vector<Elem> others(n - 1, 0);
            do {
                for (int j = 0, o = 0; j < n; ++j)
                    if (j != i) m[j] = others[o++];
                fn(m, i, act.eval(static_cast<int>(k), s, m.data(), a.data()));
            } while (next_tuple(others, M.size()));
        }
    }
}

static bool has_ideal_entry(const Ideal& I, const std::vector<Elem>& m, int skip) {
    for (std::size_t j = 0; j < m.size(); ++j)
        if (static_cast<int>(j) != skip && m[j] != 0 && I.contains(m[j])) return true;
    return false;
}

std::vector<Elem> null_submodule(const Algebra& M, const Ideal& I, const Algebra& A, const Action& act) {
    std::vector<char> in(A.size(), 1);
    for (Elem x = 0; x < A.size(); ++x)
        for_unary(M, act, x, [&](const std::vector<Elem>& m, int i, Elem v) {
            if (v != 0 && has_ideal_entry(I, m, i)) in[x] = 0;
        });
    for (bool changed = true; changed;) {
        changed = false;
        for (Elem x = 0; x < A.size(); ++x) {
            if (!in[x]) continue;
            bool keep = true;
            for_unary(M, act, x, [&](const std::vector<Elem>&, int, Elem v) { keep &= in[v] != 0; });
            if (!keep) {
                in[x] = 0;
                changed = true;
            }
        }
    }
    std::vector<Elem> out;
    for (Elem x = 0; x < A.size(); ++x)
        if (in[x]) out.push_back(x);
    return out;
}

std::vector<Elem> null_submodule_oracle(const Algebra& M, const Ideal& I, const Algebra& A, const Action& act) {
    int n = A.size();
    std::vector<std::vector<std::pair<Elem, bool>>> succ(n);
    for (Elem x = 0; x < n; ++x)
        for_unary(M, act, x, [&](const std::vector<Elem>& m, int i, Elem v) {
            succ[x].push_back({v, has_ideal_entry(I, m, i)});
        });
    std::vector<Elem> out;
    for (Elem x = 0; x < n; ++x) {
        std::set<std::pair<Elem, bool>> seen;
        std::vector<std::pair<Elem, bool>> stack;
        for (auto& [v, f] : succ[x]) stack.push_back({v, f});
        bool bad = false;
        while (!stack.empty() && !bad) {
            auto st = stack.back();
            stack.pop_back();
            if (!seen.insert(st).second) continue;
            if (st.second && st.first != 0) bad = true;
            for (auto& [v, f] : succ[st.first]) stack.push_back({v, f || st.second});
        }
        if (!bad) out.push_back(x);
    }
    return out;
}

HSData make_hs(const Algebra& M, const Ideal& I, const Algebra& A, const Action& act, const Variety& V) {
    HSData H{M, A, I, act, V, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}};
    Datum D0 = make_datum(M, A);
    if (!is_abelian_algebra(A)) throw MlexError("coefficient algebra is not abelian");
    if (!is_unary(act)) throw MlexError("action is not unary");
    if (auto v = validate_action(D0, act)) throw MlexError(*v);
    H.ext = extension_from_ideal(M, I);
    H.T = extract_cocycle(H.ext);
    H.null_sub = null_submodule(M, I, A, act);
    H.AI = subalgebra(A, H.null_sub);
    H.to_AI.assign(A.size(), -1);
    for (Elem b = 0; b < H.AI.alg.size(); ++b) H.to_AI[H.AI.embed[b]] = b;
    H.DQ = make_datum(H.ext.Q, H.AI.alg);
    H.DM = make_datum(M, H.AI.alg);
    H.DI = make_datum(H.ext.I, H.AI.alg);
    auto back = [&](Elem v) {
        if (H.to_AI[v] < 0) throw MlexError("null submodule is not closed under the action");
        return H.to_AI[v];
    };
    auto lifted = [&](const std::vector<Elem>& map, int k, unsigned s, const Elem* q, const Elem* a) {
        int n = act.arity[k];
        std::vector<Elem> mq(n), ma(n);
        for (int i = 0; i < n; ++i) {
            mq[i] = (s >> i & 1u) ? 0 : map[q[i]];
            ma[i] = (s >> i & 1u) ? H.AI.embed[a[i]] : 0;
        }
        return back(act.eval(k, s, mq.data(), ma.data()));
    };
    std::vector<Elem> idM(M.size());
    for (Elem x = 0; x < M.size(); ++x) idM[x] = x;
    H.actM = make_action(H.DM, [&](int k, unsigned s, const Elem* q, const Elem* a) { return lifted(idM, k, s, q, a); });
    H.actI = make_action(H.DI, [&](int k, unsigned s, const Elem* q, const Elem* a) {
        return lifted(H.ext.iota, k, s, q, a);
    });
    H.ahat = make_action(H.DQ, [&](int k, unsigned s, const Elem* q, const Elem* a) {
        return lifted(H.ext.lift, k, s, q, a);
    });
    // independence of coset representatives
    for (int k = 0; k < H.DM.nops(); ++k) {
        int n = H.DM.arity(k);
        std::vector<Elem> q(n), a(n), pq(n);
        for (unsigned s = 1; n > 0 && s < full_mask(n); ++s)
            for (std::size_t c = 0; c < H.actM.tab[k][s].size(); ++c) {
                H.actM.decode(k, s, c, q.data(), a.data());
                for (int i = 0; i < n; ++i) pq[i] = H.ext.pi[q[i]];
                if (H.actM.tab[k][s][c] != H.ahat.eval(k, s, pq.data(), a.data()))
                    throw MlexError("induced action depends on coset representatives");
            }
    }
    return H;
}

Map inflation1(const HSData& H, const Map& d) {
    Map out(H.M.size());
    for (Elem m = 0; m < H.M.size(); ++m) out[m] = d[H.ext.pi[m]];
    return out;
}

Cocycle inflation2(const HSData& H, const Cocycle& U) {
    const Algebra& M = H.M;
    int mn = M.size(), qn = H.ext.Q.size();
    const auto& pi = H.ext.pi;
    Cocycle R = zero_cocycle(H.DM, H.actM);
    for (Elem x = 0; x < mn; ++x)
        for (Elem y = 0; y < mn; ++y) R.tplus[x * mn + y] = U.tplus[pi[x] * qn + pi[y]];
    for (int r = 0; r < H.DM.modulus(); ++r)
        for (Elem x = 0; x < mn; ++x) R.tr[r][x] = U.tr[r][pi[x]];
    for (int k = 0; k < H.DM.nops(); ++k) {
        int n = H.DM.arity(k);
        std::vector<Elem> t(n, 0), p(n);
        std::size_t c = 0;
        do {
            for (int i = 0; i < n; ++i) p[i] = pi[t[i]];
            R.tf[k][c++] = U.tf[k][tuple_code(p.data(), n, qn)];
        } while (next_tuple(t, mn));
    }
    return R;
}

Map restriction1(const HSData& H, const Map& d) {
    Map out(H.ext.I.size());
    for (Elem a = 0; a < H.ext.I.size(); ++a) out[a] = d[H.ext.iota[a]];
    return out;
}

bool square_condition(const HSData& H, const Map& d) {
    const Action& b = H.T.act;
    const Algebra& AI = H.AI.alg;
    Datum DQI = extension_datum(H.ext);
    for (int k = 0; k < DQI.nops(); ++k) {
        int n = DQI.arity(k);
        std::vector<Elem> q(n), a(n), da(n);
        for (unsigned s = 1; n > 0 && s < full_mask(n); ++s)
            for (std::size_t c = 0; c < b.tab[k][s].size(); ++c) {
                b.decode(k, s, c, q.data(), a.data());
                Elem lhs = d[b.tab[k][s][c]];
                Elem rhs = 0;
                if (popcount(s) == 1) {
                    for (int i = 0; i < n; ++i) da[i] = d[a[i]];
                    rhs = H.ahat.eval(k, s, q.data(), da.data());
                }
                if (lhs != rhs) return false;
            }
    }
    (void)AI;
    return true;
}

Cocycle transgression(const HSData& H, const Map& d, const Cocycle& T) {
    Cocycle R = zero_cocycle(H.DQ, H.ahat);
    for (std::size_t i = 0; i < R.tplus.size(); ++i) R.tplus[i] = d[T.tplus[i]];
    for (std::size_t r = 0; r < R.tr.size(); ++r)
        for (std::size_t x = 0; x < R.tr[r].size(); ++x) R.tr[r][x] = d[T.tr[r][x]];
    for (std::size_t k = 0; k < R.tf.size(); ++k)
        for (std::size_t c = 0; c < R.tf[k].size(); ++c) R.tf[k][c] = d[T.tf[k][c]];
    return R;
}

Cocycle transgression(const HSData& H, const Map& d) { return transgression(H, d, H.T); }

static int h1_class(const Algebra& B, const H1Result& R, const Map& d) {
    std::set<Map> p(R.pder.begin(), R.pder.end());
    for (std::size_t i = 0; i < R.reps.size(); ++i)
        if (p.count(map_sub(B, d, R.reps[i]))) return static_cast<int>(i);
    return -1;
}

static std::string sz(std::size_t n) { return std::to_string(n); }

Report verify_hs(const HSData& H, int depth) {
    Report R;
    const Algebra& AI = H.AI.alg;
    R.check(H.null_sub == null_submodule_oracle(H.M, H.I, H.A, H.act),
            "A^I agrees with the reachability oracle (|A^I| = " + sz(H.null_sub.size()) + ", |A| = " +
                sz(H.A.size()) + ")");

    H1Result hQ = h1(H.DQ, H.ahat, depth);
    H1Result hM = h1(H.DM, H.actM, depth);
    auto derI = derivations(H.DI, H.actI);
    std::vector<Map> sq;
    for (auto& d : derI)
        if (square_condition(H, d)) sq.push_back(d);
    H2Affine h2Q(H.DQ, H.ahat, H.V);
    R.lines.push_back("info H1(Q) = " + sz(hQ.order()) + ", H1(M) = " + sz(hM.order()) + ", H1(I)^sq = " +
                      sz(sq.size()) + " of " + sz(derI.size()) + ", H2(Q) = " + sz(h2Q.order()));

    // square-derivations form a subgroup
    std::set<Map> sqset(sq.begin(), sq.end());
    bool sub = true;
    for (auto& a : sq)
        for (auto& b : sq) sub &= sqset.count(map_add(AI, a, b)) > 0;
    R.check(sub, "square-condition derivations are closed under +");

    // node 1: inflation on H1 is well defined and injective
    std::set<Map> derM(hM.der.begin(), hM.der.end()), pderM(hM.pder.begin(), hM.pder.end());
    bool wd = true;
    for (auto& d : hQ.der) wd &= derM.count(inflation1(H, d)) > 0;
    for (auto& d : hQ.pder) wd &= pderM.count(inflation1(H, d)) > 0;
    std::set<int> infl_classes;
    for (auto& d : hQ.reps) infl_classes.insert(h1_class(AI, hM, inflation1(H, d)));
    R.check(wd && infl_classes.size() == hQ.reps.size() && !infl_classes.count(-1),
            "inflation H1(Q,A^I) -> H1(M,A^I) is injective");

    // node 2: im inflation = ker restriction
    bool res_wd = true;
    for (auto& d : hM.pder) res_wd &= restriction1(H, d) == Map(H.ext.I.size(), 0);
    std::set<int> ker_res;
    std::set<Map> im_res;
    bool into_sq = true;
    for (std::size_t i = 0; i < hM.reps.size(); ++i) {
        Map r = restriction1(H, hM.reps[i]);
        into_sq &= sqset.count(r) > 0;
        im_res.insert(r);
        if (r == Map(H.ext.I.size(), 0)) ker_res.insert(static_cast<int>(i));
    }
    R.check(res_wd && into_sq, "restriction is well defined with values in H1(I,A^I)^sq");
    R.check(ker_res == infl_classes, "im inflation = ker restriction at H1(M,A^I)");

    // node 3: im restriction = ker transgression
    std::set<Map> ker_tr;
    std::set<int> im_tr;
    bool tr_ok = true;
    for (auto& d : sq) {
        Cocycle dT = transgression(H, d);
        tr_ok &= !validate_cocycle(H.DQ, dT) && is_compatible(H.DQ, dT, H.V);
        int c = h2Q.class_of(dT);
        tr_ok &= c >= 0;
        im_tr.insert(c);
        if (coboundary_witness(H.DQ, H.ahat, cocycle_sub(H.DQ, dT, zero_cocycle(H.DQ, H.ahat))))
            ker_tr.insert(d);
    }
    R.check(tr_ok, "transgression values are compatible cocycles");
    R.check(im_res == ker_tr, "im restriction = ker transgression at H1(I,A^I)^sq");
    R.lines.push_back("info transgression image has " + sz(im_tr.size()) + " classes");

    // node 4: im transgression = ker inflation on H2
    std::set<int> ker_infl;
    for (int c = 0; c < h2Q.order(); ++c) {
        Cocycle U = inflation2(H, h2Q.reps()[c]);
        if (coboundary_witness(H.DM, H.actM, cocycle_sub(H.DM, U, zero_cocycle(H.DM, H.actM)))) ker_infl.insert(c);
    }
    R.check(im_tr == ker_infl, "im transgression = ker inflation at H2(Q,A^I)");
    if (hQ.caveat || hM.caveat) R.lines.push_back("note principal derivations searched to depth " + sz(depth));
    return R;
}

}  // namespace mlex
