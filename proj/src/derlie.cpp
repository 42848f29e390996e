#include "mlex/derlie.hpp"

#include <algorithm>
#include <set>

namespace mlex {

void Report::check(bool cond, const std::string& what) {
    lines.push_back(std::string(cond ? "ok   " : "FAIL ") + what);
    ok = ok && cond;
}

bool is_derivation(const Algebra& A, const Map& h) {
    int n = A.size();
    for (Elem x = 0; x < n; ++x) {
        for (Elem y = 0; y < n; ++y)
            if (h[A.add(x, y)] != A.add(h[x], h[y])) return false;
        for (int r = 0; r < A.modulus; ++r)
            if (h[A.scale(r, x)] != A.scale(r, h[x])) return false;
    }
    for (std::size_t k = 0; k < A.ops.size(); ++k) {
        int ar = A.ops[k].arity;
        std::vector<Elem> t(ar, 0), u(ar);
        do {
            Elem rhs = 0;
            for (int i = 0; i < ar; ++i) {
                u = t;
                u[i] = h[t[i]];
                rhs = A.add(rhs, A.apply(static_cast<int>(k), u));
            }
            if (h[A.apply(static_cast<int>(k), t)] != rhs) return false;
        } while (next_tuple(t, n));
    }
    return true;
}

Map lie_bracket(const Algebra& A, const Map& a, const Map& b) {
    return map_sub(A, compose(a, b), compose(b, a));
}

std::vector<Map> algebra_derivations(const Algebra& A) {
    Presented P = present(A);
    const Algebra& B = P.alg;
    const ZmModule& M = *B.module;
    int r = M.rank(), m = A.modulus, n = B.size();
    if (r == 0) return {Map(A.size(), 0)};
    auto col = [&](int g, int j) { return g * r + j; };
    int ncols = r * r;
    std::vector<int> colmod(ncols);
    for (int g = 0; g < r; ++g)
        for (int j = 0; j < r; ++j) colmod[col(g, j)] = M.factors[j];
    std::vector<std::vector<int>> rows;
    std::vector<int> rowmod;
    for (int g = 0; g < r; ++g)
        for (int j = 0; j < r; ++j) {
            std::vector<int> row(ncols, 0);
            row[col(g, j)] = M.factors[g] % m;
            rows.push_back(row);
            rowmod.push_back(M.factors[j]);
        }
    for (std::size_t k = 0; k < B.ops.size(); ++k) {
        int ar = B.ops[k].arity;
        std::vector<int> gt(ar, 0);
        do {
            std::vector<Elem> args(ar);
            for (int i = 0; i < ar; ++i) args[i] = M.generator(gt[i]);
            Coords fv = M.coords(B.apply(static_cast<int>(k), args));
            std::vector<std::vector<int>> block(r, std::vector<int>(ncols, 0));
            for (int jp = 0; jp < r; ++jp)
                for (int t = 0; t < r; ++t) block[jp][col(t, jp)] += fv[t];
            for (int i = 0; i < ar; ++i)
                for (int j = 0; j < r; ++j) {
                    std::vector<Elem> u = args;
                    u[i] = M.generator(j);
                    Coords w = M.coords(B.apply(static_cast<int>(k), u));
                    for (int jp = 0; jp < r; ++jp) block[jp][col(gt[i], j)] -= w[jp];
                }
            for (int jp = 0; jp < r; ++jp) {
                rows.push_back(block[jp]);
                rowmod.push_back(M.factors[jp]);
            }
        } while (next_tuple(gt, r));
    }
    auto sol = solve_mixed(rows, std::vector<int>(rows.size(), 0), rowmod, colmod, m);
    auto vecs = span_vectors(sol->kernel, colmod);
    std::vector<Coords> cs = mod_elements(M);
    std::vector<Map> out;
    for (auto& v : vecs) {
        std::vector<Elem> imgs(r);
        for (int g = 0; g < r; ++g) {
            Coords c(v.begin() + g * r, v.begin() + (g + 1) * r);
            imgs[g] = M.index(c);
        }
        Map hp(n);
        for (Elem x = 0; x < n; ++x) hp[x] = combine(B, cs[x], imgs);
        Map h(A.size());
        for (Elem x = 0; x < A.size(); ++x) h[x] = P.from[hp[P.to[x]]];
        out.push_back(h);
    }
    std::sort(out.begin(), out.end());
    return out;
}

int DerLie::index_of(const Map& h) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), h);
    if (it == elements.end() || *it != h) return -1;
    return static_cast<int>(it - elements.begin());
}

DerLie der_lie(const Algebra& A) {
    DerLie L;
    L.elements = algebra_derivations(A);
    // minimal generating subset, greedily in sorted order
    std::set<Map> span{Map(A.size(), 0)};
    for (auto& d : L.elements) {
        if (span.count(d)) continue;
        L.basis.push_back(d);
        span.clear();
        for (auto& v : span_maps(A, L.basis)) span.insert(v);
    }
    for (auto& a : L.basis) {
        std::vector<int> row;
        for (auto& b : L.basis) row.push_back(L.index_of(lie_bracket(A, a, b)));
        L.bracket.push_back(row);
    }
    return L;
}

std::vector<Map> ideal_preserving(const std::vector<Map>& ders, const std::vector<Elem>& ideal_elems) {
    std::set<Elem> I(ideal_elems.begin(), ideal_elems.end());
    std::vector<Map> out;
    for (auto& d : ders) {
        bool ok = true;
        for (Elem a : ideal_elems) ok &= I.count(d[a]) > 0;
        if (ok) out.push_back(d);
    }
    return out;
}

bool satisfies_c2(const Datum& D, const Action& act, const DerPair& p) {
    const Algebra& I = D.I;
    for (int k = 0; k < D.nops(); ++k) {
        int n = D.arity(k);
        for (unsigned s = 1; n > 0 && s < full_mask(n); ++s) {
            std::vector<Elem> q(n), a(n);
            for (std::size_t c = 0; c < act.tab[k][s].size(); ++c) {
                act.decode(k, s, c, q.data(), a.data());
                Elem lhs = p.alpha[act.tab[k][s][c]];
                Elem rhs = 0;
                for (int i = 0; i < n; ++i) {
                    std::vector<Elem> q2 = q, a2 = a;
                    q2[i] = p.beta[q[i]];
                    a2[i] = p.alpha[a[i]];
                    rhs = I.add(rhs, act.eval(k, s, q2.data(), a2.data()));
                }
                if (lhs != rhs) return false;
            }
        }
    }
    return true;
}

std::vector<DerPair> compatible_pairs(const Datum& D, const Action& act) {
    auto dI = algebra_derivations(D.I);
    auto dQ = algebra_derivations(D.Q);
    std::vector<DerPair> out;
    for (auto& a : dI)
        for (auto& b : dQ) {
            DerPair p{a, b};
            if (satisfies_c2(D, act, p)) out.push_back(p);
        }
    std::sort(out.begin(), out.end());
    return out;
}

DerPair pair_add(const Datum& D, const DerPair& p, const DerPair& q) {
    return {map_add(D.I, p.alpha, q.alpha), map_add(D.Q, p.beta, q.beta)};
}

DerPair pair_scale(const Datum& D, int r, const DerPair& p) {
    DerPair o = p;
    for (auto& v : o.alpha) v = D.I.scale(r, v);
    for (auto& v : o.beta) v = D.Q.scale(r, v);
    return o;
}

DerPair pair_bracket(const Datum& D, const DerPair& p, const DerPair& q) {
    return {lie_bracket(D.I, p.alpha, q.alpha), lie_bracket(D.Q, p.beta, q.beta)};
}

static Elem twisted(const Algebra& Q, const Algebra& I, const DerPair& p, const std::vector<Elem>& x,
                    const std::function<Elem(const std::vector<Elem>&)>& g) {
    Elem acc = p.alpha[g(x)];
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::vector<Elem> y = x;
        y[i] = p.beta[x[i]];
        acc = I.sub(acc, g(y));
    }
    (void)Q;
    return acc;
}

Cocycle twist(const Datum& D, const Cocycle& T, const DerPair& p) {
    const Algebra &Q = D.Q, &I = D.I;
    int qn = Q.size();
    Cocycle R = T;
    for (Elem x = 0; x < qn; ++x)
        for (Elem y = 0; y < qn; ++y)
            R.tplus[x * qn + y] = twisted(Q, I, p, {x, y}, [&](const std::vector<Elem>& v) { return T.tplus[v[0] * qn + v[1]]; });
    for (int r = 0; r < D.modulus(); ++r)
        for (Elem x = 0; x < qn; ++x)
            R.tr[r][x] = twisted(Q, I, p, {x}, [&](const std::vector<Elem>& v) { return T.tr[r][v[0]]; });
    for (int k = 0; k < D.nops(); ++k) {
        int n = D.arity(k);
        std::vector<Elem> t(n, 0);
        std::size_t c = 0;
        do {
            R.tf[k][c++] = twisted(Q, I, p, t, [&](const std::vector<Elem>& v) {
                return T.tf[k][tuple_code(v.data(), n, qn)];
            });
        } while (next_tuple(t, qn));
    }
    return R;
}

std::optional<Map> wells_witness(const Datum& D, const Cocycle& T, const DerPair& p, bool lexfirst) {
    Cocycle W = twist(D, T, p);
    Cocycle G = cocycle_sub(D, W, zero_cocycle(D, T.act));
    if (!lexfirst) return coboundary_witness(D, T.act, G);
    int qn = D.Q.size(), in = D.I.size();
    Map h(qn, 0);
    do {
        if (coboundary(D, T.act, h) == G) return h;
    } while (next_map(h, in));
    return std::nullopt;
}

LiftResult lift_pair(const Datum& D, const Cocycle& T, const DerPair& p) {
    LiftResult R;
    const Algebra &Q = D.Q, &I = D.I;
    int qn = Q.size();
    if (!is_group_trivial(T)) {
        R.obstruction = "cocycle is not group-trivial";
        return R;
    }
    if (!satisfies_c2(D, T.act, p)) {
        R.obstruction = "C2 fails";
        return R;
    }
    for (int r = 0; r < D.modulus(); ++r)
        for (Elem x = 0; x < qn; ++x)
            if (p.alpha[T.tr[r][x]] != T.tr[r][p.beta[x]]) {
                R.obstruction = "C1 fails at r=" + std::to_string(r) + ", x=" + Q.format(x);
                return R;
            }
    for (int k = 0; k < D.nops(); ++k) {
        int n = D.arity(k);
        std::vector<Elem> t(n, 0);
        std::size_t c = 0;
        do {
            Elem rhs = 0;
            for (int i = 0; i < n; ++i) {
                std::vector<Elem> u = t;
                u[i] = p.beta[t[i]];
                rhs = I.add(rhs, T.tf[k][tuple_code(u.data(), n, qn)]);
            }
            if (p.alpha[T.tf[k][c]] != rhs) {
                R.obstruction = "C3 fails for " + Q.ops[k].name;
                return R;
            }
            ++c;
        } while (next_tuple(t, qn));
    }
    Algebra M = semidirect(D, T).M;
    Map phi(M.size());
    for (Elem u = 0; u < M.size(); ++u) phi[u] = pair_code(p.alpha[u / qn], p.beta[u % qn], qn);
    if (!is_derivation(M, phi)) {
        R.obstruction = "lift is not a derivation";
        return R;
    }
    R.phi = phi;
    return R;
}

DerPair psi_pair(const Extension& E, const Map& phi) {
    auto inv = E.iota_inverse();
    DerPair p;
    for (Elem a = 0; a < E.I.size(); ++a) {
        Elem v = inv[phi[E.iota[a]]];
        if (v < 0) throw MlexError("derivation does not preserve the kernel");
        p.alpha.push_back(v);
    }
    for (Elem x = 0; x < E.Q.size(); ++x) p.beta.push_back(E.pi[phi[E.lift[x]]]);
    return p;
}

std::optional<Extension> group_trivial_lifting(const Extension& E) {
    Datum D = extension_datum(E);
    Cocycle T = extract_cocycle(E);
    int qn = D.Q.size(), in = D.I.size();
    Map h(qn, 0);
    do {
        bool ok = true;
        for (Elem x = 0; x < qn && ok; ++x)
            for (Elem y = 0; y < qn && ok; ++y)
                ok = T.tplus[x * qn + y] == D.I.sub(D.I.add(h[x], h[y]), h[D.Q.add(x, y)]);
        if (ok) {
            Extension F = E;
            for (Elem x = 0; x < qn; ++x) F.lift[x] = E.M.sub(E.lift[x], E.iota[h[x]]);
            return F;
        }
    } while (next_map(h, in));
    return std::nullopt;
}

Report verify_wells(const Extension& E0) {
    Report R;
    if (auto v = validate_extension(E0)) {
        R.check(false, "extension valid: " + *v);
        return R;
    }
    Datum D = extension_datum(E0);
    Cocycle T0 = extract_cocycle(E0);
    if (!is_affine(D, T0.act)) {
        R.check(false, "datum is affine");
        return R;
    }
    auto Eg = group_trivial_lifting(E0);
    if (!Eg) {
        R.check(false, "extension is group-trivial");
        return R;
    }
    const Extension& E = *Eg;
    Cocycle T = extract_cocycle(E);
    R.check(is_group_trivial(T), "lifting with T_+ = 0 found");
    const Algebra& M = E.M;
    std::vector<Elem> kernel(E.iota.begin(), E.iota.end());
    std::sort(kernel.begin(), kernel.end());
    auto derM = ideal_preserving(algebra_derivations(M), kernel);
    auto pairs = compatible_pairs(D, T.act);
    auto derQI = derivations(D, T.act);
    std::set<DerPair> pairset(pairs.begin(), pairs.end());

    std::set<DerPair> image;
    std::vector<Map> ker_psi;
    bool into_c = true;
    DerPair zero{Map(D.I.size(), 0), Map(D.Q.size(), 0)};
    for (auto& phi : derM) {
        DerPair p = psi_pair(E, phi);
        into_c &= pairset.count(p) > 0;
        image.insert(p);
        if (p == zero) ker_psi.push_back(phi);
    }
    R.check(into_c, "psi maps Der_I M into c(I,Q,*) (" + std::to_string(derM.size()) + " derivations, " +
                        std::to_string(pairs.size()) + " compatible pairs)");

    // psi is a Lie homomorphism
    bool lie_ok = true;
    std::size_t lim = std::min<std::size_t>(derM.size(), 48);
    for (std::size_t i = 0; i < lim && lie_ok; ++i)
        for (std::size_t j = 0; j < lim && lie_ok; ++j)
            lie_ok = psi_pair(E, lie_bracket(M, derM[i], derM[j])) ==
                     pair_bracket(D, psi_pair(E, derM[i]), psi_pair(E, derM[j]));
    R.check(lie_ok, "psi respects brackets");

    // kernel of W
    std::set<DerPair> kerW;
    std::map<DerPair, Map> witness;
    for (auto& p : pairs)
        if (auto h = wells_witness(D, T, p, true)) {
            kerW.insert(p);
            witness[p] = *h;
        }
    R.check(image == kerW, "im psi = ker W (" + std::to_string(image.size()) + " pairs)");

    // ker psi corresponds to Der(Q,I,*)
    auto inv = E.iota_inverse();
    std::set<Map> delta;
    bool into_fibre = true;
    for (auto& phi : ker_psi) {
        Map d(D.Q.size());
        for (Elem x = 0; x < D.Q.size(); ++x) {
            d[x] = inv[phi[E.lift[x]]];
            into_fibre &= d[x] >= 0;
        }
        if (into_fibre) delta.insert(d);
    }
    std::set<Map> derset(derQI.begin(), derQI.end());
    R.check(into_fibre && delta == derset && delta.size() == ker_psi.size(),
            "ker psi = Der(Q,I,*) (" + std::to_string(derQI.size()) + " elements)");

    // first arrow: sigma -> iota . sigma . pi is injective into Der_I M with psi = 0
    std::set<Map> derMset(derM.begin(), derM.end());
    std::set<Map> first;
    bool first_ok = true;
    for (auto& s : derQI) {
        Map phi(M.size());
        for (Elem m = 0; m < M.size(); ++m) phi[m] = E.iota[s[E.pi[m]]];
        first_ok &= derMset.count(phi) > 0 && psi_pair(E, phi) == zero;
        first.insert(phi);
    }
    R.check(first_ok && first.size() == derQI.size(), "Der(Q,I,*) -> Der_I M injective with image ker psi");

    // section over ker W and the induced Lie cocycle
    std::map<DerPair, Map> sect;
    bool sect_ok = true;
    auto H = [&](const DerPair& p) {
        Map out(M.size());
        const Map& h = witness.at(p);
        for (Elem m = 0; m < M.size(); ++m) out[m] = E.iota[h[E.pi[m]]];
        return out;
    };
    for (auto& p : kerW) {
        const Map& h = witness[p];
        Map phi(M.size());
        for (Elem m = 0; m < M.size(); ++m) {
            Elem x = E.pi[m];
            Elem a = inv[M.sub(m, E.lift[x])];
            phi[m] = M.add(E.iota[D.I.add(p.alpha[a], h[x])], E.lift[p.beta[x]]);
        }
        sect_ok &= derMset.count(phi) > 0 && psi_pair(E, phi) == p;
        sect[p] = phi;
    }
    R.check(sect_ok, "section l_T lands in Der_I M and splits psi");

    bool s_ok = sect_ok;
    std::vector<DerPair> kv(kerW.begin(), kerW.end());
    for (std::size_t i = 0; i < kv.size() && s_ok; ++i) {
        const DerPair& p = kv[i];
        for (int r = 0; r < D.modulus() && s_ok; ++r) {
            DerPair rp = pair_scale(D, r, p);
            if (!kerW.count(rp)) {
                s_ok = false;
                break;
            }
            Map lhs(M.size()), rhs(M.size());
            for (Elem m = 0; m < M.size(); ++m) {
                lhs[m] = M.sub(M.scale(r, sect[p][m]), sect[rp][m]);
                rhs[m] = M.sub(M.scale(r, H(p)[m]), H(rp)[m]);
            }
            s_ok &= lhs == rhs;
        }
        for (std::size_t j = 0; j < kv.size() && s_ok; ++j) {
            const DerPair& q = kv[j];
            DerPair pq = pair_add(D, p, q), br = pair_bracket(D, p, q);
            if (!kerW.count(pq) || !kerW.count(br)) {
                s_ok = false;
                break;
            }
            Map Sp = map_sub(M, map_add(M, sect[p], sect[q]), sect[pq]);
            Map Gp = map_sub(M, map_add(M, H(p), H(q)), H(pq));
            Map Sb = map_sub(M, lie_bracket(M, sect[p], sect[q]), sect[br]);
            Map Gb = map_sub(M, map_add(M, lie_bracket(M, H(p), sect[q]), lie_bracket(M, sect[p], H(q))),
                             map_add(M, lie_bracket(M, H(p), H(q)), H(br)));
            s_ok &= Sp == Gp && Sb == Gb;
        }
    }
    R.check(s_ok, "Lie cocycle S of the section is the coboundary of h");
    return R;
}

}  // namespace mlex
