#include "mlex/cohomology.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace mlex {

bool is_affine(const Datum& D, const Action& act) { return is_abelian_algebra(D.I) && is_unary(act); }

Map map_add(const Algebra& B, const Map& f, const Map& g) {
    Map h(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) h[i] = B.add(f[i], g[i]);
    return h;
}

Map map_sub(const Algebra& B, const Map& f, const Map& g) {
    Map h(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) h[i] = B.sub(f[i], g[i]);
    return h;
}

Map compose(const Map& f, const Map& g) {
    Map h(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) h[i] = f[g[i]];
    return h;
}

std::vector<Map> span_maps(const Algebra& B, const std::vector<Map>& gens, std::size_t limit) {
    if (gens.empty()) return {};
    std::set<Map> seen;
    Map zero(gens[0].size(), 0);
    std::vector<Map> frontier{zero};
    seen.insert(zero);
    while (!frontier.empty()) {
        std::vector<Map> next;
        for (auto& v : frontier)
            for (auto& g : gens) {
                Map w = map_add(B, v, g);
                if (seen.insert(w).second) {
                    if (seen.size() > limit) throw MlexError("span of maps exceeds limit");
                    next.push_back(std::move(w));
                }
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

namespace {

// Multilinear maps I^n -> I as full tables, in order of generator values.
std::vector<std::vector<Elem>> multilinear_maps(const Algebra& I, int n) {
    if (!I.module) throw MlexError("coefficient algebra must be presented");
    const ZmModule& M = *I.module;
    int r = M.rank(), sz = I.size();
    std::vector<std::vector<int>> gtuples;
    if (r > 0) {
        std::vector<int> t(n, 0);
        do gtuples.push_back(t);
        while (next_tuple(t, r));
    }
    std::vector<std::vector<Elem>> allowed;
    for (auto& gt : gtuples) {
        std::vector<Elem> ok;
        for (Elem v = 0; v < sz; ++v) {
            bool good = true;
            for (int g : gt) good &= M.scale(M.factors[g], v) == 0;
            if (good) ok.push_back(v);
        }
        allowed.push_back(ok);
    }
    std::vector<Coords> cs = mod_elements(M);
    std::vector<std::vector<Elem>> out;
    std::vector<std::size_t> idx(gtuples.size(), 0);
    std::size_t total = 1;
    for (int i = 0; i < n; ++i) total *= sz;
    while (true) {
        std::vector<Elem> tab(total, 0);
        std::vector<Elem> t(n, 0);
        std::size_t c = 0;
        do {
            Elem acc = 0;
            for (std::size_t g = 0; g < gtuples.size(); ++g) {
                long long coef = 1;
                for (int i = 0; i < n && coef; ++i) coef *= cs[t[i]][gtuples[g][i]];
                if (coef) acc = M.add(acc, M.scale(coef, allowed[g][idx[g]]));
            }
            tab[c++] = acc;
        } while (next_tuple(t, sz));
        out.push_back(std::move(tab));
        int k = static_cast<int>(gtuples.size()) - 1;
        while (k >= 0 && ++idx[k] == allowed[k].size()) idx[k--] = 0;
        if (k < 0) break;
    }
    return out;
}

struct Slot {
    int kind;  // 0 tplus, 1 tr, 2 tf, 3 action
    int k = 0, r = 0;
    std::size_t idx = 0;
    unsigned s = 0;
    std::vector<Elem> q;  // action: Q tuple (positions in s unused)
    const std::vector<std::vector<Elem>>* maps = nullptr;
    int options = 0;
};

std::vector<Slot> candidate_slots(const Datum& D, const Action* fixed,
                                  std::map<int, std::vector<std::vector<Elem>>>& mapcache) {
    std::vector<Slot> slots;
    int qn = D.Q.size(), in = D.I.size();
    for (Elem x = 1; x < qn; ++x)
        for (Elem y = 1; y < qn; ++y) slots.push_back({0, 0, 0, static_cast<std::size_t>(x * qn + y), 0, {}, nullptr, in});
    for (int r = 0; r < D.modulus(); ++r)
        for (Elem x = 1; x < qn; ++x) slots.push_back({1, 0, r, static_cast<std::size_t>(x), 0, {}, nullptr, in});
    for (int k = 0; k < D.nops(); ++k) {
        int n = D.arity(k);
        std::vector<Elem> t(n, 0);
        std::size_t c = 0;
        do {
            bool nz = std::all_of(t.begin(), t.end(), [](Elem v) { return v != 0; });
            if (nz) slots.push_back({2, k, 0, c, 0, {}, nullptr, in});
            ++c;
        } while (next_tuple(t, qn));
    }
    if (!fixed) {
        for (int k = 0; k < D.nops(); ++k) {
            int n = D.arity(k);
            for (unsigned s = 1; n > 0 && s < full_mask(n); ++s) {
                int ss = popcount(s);
                if (!mapcache.count(ss)) mapcache[ss] = multilinear_maps(D.I, ss);
                std::vector<Elem> q(n, 0);
                do {
                    bool ok = true;
                    for (int i = 0; i < n; ++i) {
                        if (s & (1u << i)) ok &= q[i] == 0;
                        else ok &= q[i] != 0;
                    }
                    if (!ok) continue;
                    Slot sl{3, k, 0, 0, s, q, &mapcache[ss], static_cast<int>(mapcache[ss].size())};
                    slots.push_back(sl);
                } while (next_tuple(q, qn));
            }
        }
    }
    return slots;
}

void apply_slot(const Datum& D, Cocycle& T, const Slot& sl, int choice) {
    switch (sl.kind) {
        case 0: T.tplus[sl.idx] = choice; break;
        case 1: T.tr[sl.r][sl.idx] = choice; break;
        case 2: T.tf[sl.k][sl.idx] = choice; break;
        default: {
            const auto& tab = (*sl.maps)[choice];
            int n = D.arity(sl.k), ss = popcount(sl.s), in = D.I.size();
            std::vector<Elem> sub(ss, 0), a(n, 0);
            std::size_t c = 0;
            do {
                for (int i = 0, j = 0; i < n; ++i)
                    if (sl.s & (1u << i)) a[i] = sub[j++];
                T.act.tab[sl.k][sl.s][T.act.code(sl.k, sl.s, sl.q.data(), a.data())] = tab[c++];
            } while (next_tuple(sub, in));
        }
    }
}

}  // namespace

long long h2_candidate_count(const Datum& D, const Action* fixed) {
    std::map<int, std::vector<std::vector<Elem>>> cache;
    long double c = 1;
    for (auto& s : candidate_slots(D, fixed, cache)) {
        c *= s.options;
        if (c > 9e18L) return -1;
    }
    return static_cast<long long>(c);
}

H2Enumeration enumerate_h2(const Datum& D, const Variety& V, const Action* fixed, long long budget) {
    if (in_variety(D.Q, V) || in_variety(D.I, V)) throw MlexError("datum not in V");
    std::map<int, std::vector<std::vector<Elem>>> cache;
    auto slots = candidate_slots(D, fixed, cache);
    long double total = 1;
    for (auto& s : slots) total *= s.options;
    if (total > budget)
        throw MlexError("H2 enumeration needs " + std::to_string(static_cast<long long>(total)) +
                        " candidates, above budget " + std::to_string(budget));
    H2Enumeration R;
    R.candidates = static_cast<long long>(total);
    Cocycle T = zero_cocycle(D, fixed ? *fixed : trivial_action(D));
    std::vector<int> choice(slots.size(), 0);
    std::vector<std::vector<int>> members;
    while (true) {
        for (std::size_t i = 0; i < slots.size(); ++i) apply_slot(D, T, slots[i], choice[i]);
        if (is_compatible(D, T, V)) {
            int cls = -1;
            for (std::size_t c = 0; c < members.size() && cls < 0; ++c)
                if (equivalent(D, R.compatible[members[c][0]], T)) cls = static_cast<int>(c);
            if (cls < 0) {
                cls = static_cast<int>(members.size());
                members.emplace_back();
            }
            members[cls].push_back(static_cast<int>(R.compatible.size()));
            R.compatible.push_back(T);
            R.class_of.push_back(cls);
        }
        int k = static_cast<int>(slots.size()) - 1;
        while (k >= 0 && ++choice[k] == slots[k].options) choice[k--] = 0;
        if (k < 0) break;
    }
    for (auto& mem : members) {
        const Cocycle* best = &R.compatible[mem[0]];
        for (int i : mem)
            if (R.compatible[i] < *best) best = &R.compatible[i];
        R.reps.push_back(*best);
    }
    return R;
}

// ---------------------------------------------------------------- affine H^2

namespace {

std::vector<int> elem_coords(const Algebra& I, Elem e) { return I.module->coords(e); }

}  // namespace

H2Affine::H2Affine(const Datum& D, const Action& act, const Variety& V) : D_(D), act_(act) {
    if (!is_affine(D, act)) throw MlexError("h2_affine needs an affine datum");
    if (!D.I.module) throw MlexError("coefficient algebra must be presented");
    if (in_variety(D.Q, V) || in_variety(D.I, V)) throw MlexError("datum not in V");
    if (!semidirect(D, zero_cocycle(D, act), &V).valid) throw MlexError("action not compatible with V");
    const Algebra &Q = D.Q, &I = D.I;
    const ZmModule& IM = *I.module;
    int qn = Q.size(), m = D.modulus();
    for (Elem x = 1; x < qn; ++x)
        for (Elem y = 1; y < qn; ++y) cells_.push_back({0, 0, x * qn + y});
    for (int r = 0; r < m; ++r)
        for (Elem x = 1; x < qn; ++x) cells_.push_back({1, r, x});
    for (int k = 0; k < D.nops(); ++k) {
        int n = D.arity(k);
        std::vector<Elem> t(n, 0);
        int c = 0;
        do {
            if (std::all_of(t.begin(), t.end(), [](Elem v) { return v != 0; })) cells_.push_back({2, k, c});
            ++c;
        } while (next_tuple(t, qn));
    }
    int rk = IM.rank();
    for (std::size_t c = 0; c < cells_.size(); ++c)
        for (int j = 0; j < rk; ++j) colmod_.push_back(IM.factors[j]);
    int ncols = static_cast<int>(colmod_.size());

    // unit cocycles, one per column
    std::vector<Cocycle> units;
    Cocycle Z = zero_cocycle(D, act);
    for (std::size_t c = 0; c < cells_.size(); ++c)
        for (int j = 0; j < rk; ++j) {
            std::vector<int> v(ncols, 0);
            v[c * rk + j] = 1;
            units.push_back(devectorize(v));
        }

    Expander X(D.Q.signature(), m);
    std::vector<Identity> ids = module_axioms(m, Q.signature());
    ids.insert(ids.end(), V.identities.begin(), V.identities.end());
    std::set<std::pair<std::vector<int>, int>> seen_rows;
    for (auto& id : ids) {
        ExpandedIdentity e = X.expand_identity(id, Emit::Strict, false);
        std::size_t nv = id.vars.size();
        std::vector<Elem> xs(nv, 0), as(nv, 0);
        do {
            std::vector<std::vector<int>> block(rk, std::vector<int>(ncols, 0));
            for (int col = 0; col < ncols; ++col) {
                Elem d = I.sub(eval_poly(D, units[col], e.lhs, id.vars, as, xs),
                               eval_poly(D, units[col], e.rhs, id.vars, as, xs));
                auto cd = elem_coords(I, d);
                for (int j = 0; j < rk; ++j) block[j][col] = cd[j];
            }
            for (int j = 0; j < rk; ++j) {
                bool nz = std::any_of(block[j].begin(), block[j].end(), [](int v) { return v != 0; });
                if (nz && seen_rows.insert({block[j], IM.factors[j]}).second) {
                    rows_.push_back(block[j]);
                    rowmod_.push_back(IM.factors[j]);
                }
            }
        } while (next_tuple(xs, qn));
    }
    auto sol = solve_mixed(rows_, std::vector<int>(rows_.size(), 0), rowmod_, colmod_, m);
    if (!sol) throw MlexError("homogeneous system unexpectedly unsolvable");
    zgens_ = sol->kernel;

    for (Elem q = 1; q < qn; ++q)
        for (int j = 0; j < rk; ++j) {
            Map h(qn, 0);
            h[q] = IM.generator(j);
            Cocycle G = coboundary(D, act, h);
            G.act = act;
            bgens_.push_back(vectorize(G));
        }

    // classes by closure under the cocycle generators
    repvec_.push_back(std::vector<int>(ncols, 0));
    for (std::size_t i = 0; i < repvec_.size(); ++i)
        for (auto& z : zgens_) {
            std::vector<int> w(ncols);
            for (int c = 0; c < ncols; ++c) w[c] = (repvec_[i][c] + z[c]) % colmod_[c];
            bool known = false;
            for (auto& r : repvec_) {
                std::vector<int> d(ncols);
                for (int c = 0; c < ncols; ++c) d[c] = mod_norm(w[c] - r[c], colmod_[c]);
                if (in_coboundaries(d)) {
                    known = true;
                    break;
                }
            }
            if (!known) repvec_.push_back(w);
        }
    for (auto& v : repvec_) reps_.push_back(devectorize(v));
}

std::vector<int> H2Affine::vectorize(const Cocycle& T) const {
    std::vector<int> v;
    for (auto& c : cells_) {
        Elem e = c.table == 0 ? T.tplus[c.idx] : c.table == 1 ? T.tr[c.k][c.idx] : T.tf[c.k][c.idx];
        auto cd = elem_coords(D_.I, e);
        v.insert(v.end(), cd.begin(), cd.end());
    }
    return v;
}

Cocycle H2Affine::devectorize(const std::vector<int>& v) const {
    Cocycle T = zero_cocycle(D_, act_);
    int rk = D_.I.module->rank();
    for (std::size_t c = 0; c < cells_.size(); ++c) {
        Coords cd(v.begin() + c * rk, v.begin() + (c + 1) * rk);
        Elem e = D_.I.module->index(cd);
        const Cell& cl = cells_[c];
        if (cl.table == 0) T.tplus[cl.idx] = e;
        else if (cl.table == 1) T.tr[cl.k][cl.idx] = e;
        else T.tf[cl.k][cl.idx] = e;
    }
    return T;
}

bool H2Affine::in_coboundaries(const std::vector<int>& v) const {
    int ncols = static_cast<int>(colmod_.size());
    std::vector<std::vector<int>> A(ncols, std::vector<int>(bgens_.size(), 0));
    for (std::size_t b = 0; b < bgens_.size(); ++b)
        for (int c = 0; c < ncols; ++c) A[c][b] = bgens_[b][c];
    std::vector<int> cm(bgens_.size(), D_.modulus());
    if (bgens_.empty()) return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
    return solve_mixed(A, v, colmod_, cm, D_.modulus()).has_value();
}

bool H2Affine::is_cocycle(const Cocycle& T) const {
    if (validate_cocycle(D_, T) || !(T.act == act_)) return false;
    if (devectorize(vectorize(T)) != T) return false;
    std::vector<int> v = vectorize(T);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        long long s = 0;
        for (std::size_t c = 0; c < v.size(); ++c) s += static_cast<long long>(rows_[r][c]) * v[c];
        if (mod_norm(s, rowmod_[r]) != 0) return false;
    }
    return true;
}

int H2Affine::class_of(const Cocycle& T) const {
    if (!is_cocycle(T)) return -1;
    std::vector<int> v = vectorize(T);
    for (std::size_t i = 0; i < repvec_.size(); ++i) {
        std::vector<int> d(v.size());
        for (std::size_t c = 0; c < v.size(); ++c) d[c] = mod_norm(v[c] - repvec_[i][c], colmod_[c]);
        if (in_coboundaries(d)) return static_cast<int>(i);
    }
    return -1;
}

Cocycle affine_add(const Datum& D, const Cocycle& T, const Cocycle& U) {
    Cocycle S = cocycle_add(D, T, U);
    S.act = T.act;
    return S;
}

int H2Affine::add(int i, int j) const {
    std::vector<int> w(colmod_.size());
    for (std::size_t c = 0; c < w.size(); ++c) w[c] = (repvec_[i][c] + repvec_[j][c]) % colmod_[c];
    return class_of(devectorize(w));
}

// ---------------------------------------------------------------- coboundaries

std::optional<Map> coboundary_witness(const Datum& D, const Action& act, const Cocycle& G, long long budget) {
    const Algebra &Q = D.Q, &I = D.I;
    int qn = Q.size(), in = I.size();
    if (is_affine(D, act) && I.module) {
        if (!is_trivial(G.act)) return std::nullopt;
        const ZmModule& IM = *I.module;
        int rk = IM.rank();
        if (rk == 0) return Map(qn, 0);
        auto flat_full = [&](const Cocycle& C) {
            std::vector<int> v;
            auto push = [&](Elem e) {
                auto cd = IM.coords(e);
                v.insert(v.end(), cd.begin(), cd.end());
            };
            for (Elem e : C.tplus) push(e);
            for (auto& t : C.tr)
                for (Elem e : t) push(e);
            for (auto& t : C.tf)
                for (Elem e : t) push(e);
            return v;
        };
        std::vector<int> target = flat_full(G);
        int nrows = static_cast<int>(target.size());
        std::vector<int> rowmod;
        for (int r = 0; r < nrows; ++r) rowmod.push_back(IM.factors[r % rk]);
        std::vector<int> colmod;
        std::vector<std::vector<int>> cols;
        for (Elem q = 1; q < qn; ++q)
            for (int j = 0; j < rk; ++j) {
                Map h(qn, 0);
                h[q] = IM.generator(j);
                cols.push_back(flat_full(coboundary(D, act, h)));
                colmod.push_back(IM.factors[j]);
            }
        std::vector<std::vector<int>> A(nrows, std::vector<int>(cols.size(), 0));
        for (std::size_t c = 0; c < cols.size(); ++c)
            for (int r = 0; r < nrows; ++r) A[r][c] = cols[c][r];
        auto sol = solve_mixed(A, target, rowmod, colmod, D.modulus());
        if (!sol) return std::nullopt;
        Map h(qn, 0);
        for (Elem q = 1; q < qn; ++q) {
            Coords cd(sol->particular.begin() + (q - 1) * rk, sol->particular.begin() + q * rk);
            h[q] = IM.index(cd);
        }
        if (!(coboundary(D, act, h) == G)) throw MlexError("coboundary solve inconsistent");
        return h;
    }
    long double cnt = 1;
    for (int i = 1; i < qn; ++i) cnt *= in;
    if (cnt > budget) throw MlexError("coboundary search exceeds budget");
    Map h(qn, 0);
    do {
        if (coboundary(D, act, h) == G) return h;
    } while (next_map(h, in));
    return std::nullopt;
}

// ---------------------------------------------------------------- derivations

std::vector<Map> derivations(const Datum& D, const Action& act) {
    std::vector<Map> out;
    for (auto& h : module_homs(D.Q, D.I))
        if (is_null(coboundary(D, act, h))) out.push_back(h);
    std::sort(out.begin(), out.end());
    return out;
}

PDerResult principal_derivations(const Datum& D, const Action& act, int depth) {
    const Algebra &Q = D.Q, &I = D.I;
    int qn = Q.size();
    PDerResult R;
    std::vector<Map> der = derivations(D, act);
    if (is_trivial(act)) {
        R.elements = {Map(qn, 0)};
        R.caveat = !is_abelian_algebra(I);
        return R;
    }
    R.caveat = !is_affine(D, act);
    const std::size_t cap = 4096;
    // unary Q-term functions of x
    std::set<Map> qt;
    {
        Map id(qn), zero(qn, 0);
        for (Elem x = 0; x < qn; ++x) id[x] = x;
        qt = {id, zero};
        for (int d = 0; d < depth; ++d) {
            std::set<Map> next = qt;
            std::vector<Map> cur(qt.begin(), qt.end());
            for (auto& u : cur) {
                for (int r = 0; r < D.modulus(); ++r) {
                    Map w(qn);
                    for (Elem x = 0; x < qn; ++x) w[x] = Q.scale(r, u[x]);
                    next.insert(w);
                }
                for (auto& v : cur) next.insert(map_add(Q, u, v));
            }
            for (int k = 0; k < D.nops(); ++k) {
                int n = D.arity(k);
                std::vector<int> pick(n, 0);
                do {
                    Map w(qn);
                    std::vector<Elem> args(n);
                    for (Elem x = 0; x < qn; ++x) {
                        for (int i = 0; i < n; ++i) args[i] = cur[pick[i]][x];
                        w[x] = Q.apply(k, args);
                    }
                    next.insert(w);
                } while (next_tuple(pick, static_cast<int>(cur.size())));
            }
            bool grew = next.size() != qt.size();
            qt = std::move(next);
            if (qt.size() > cap) {
                R.caveat = true;
                break;
            }
            if (!grew) break;
            if (d == depth - 1) R.caveat = true;
        }
    }
    std::vector<Map> qfun(qt.begin(), qt.end());
    // leaves: constant functions with values in I
    std::vector<Map> leaves;
    for (Elem c = 0; c < I.size(); ++c) leaves.push_back(Map(qn, c));
    std::set<Map> cand;
    std::vector<Map> level = leaves;
    for (int d = 0; d < depth; ++d) {
        std::set<Map> fresh;
        for (int k = 0; k < D.nops(); ++k) {
            int n = D.arity(k);
            for (unsigned s = 1; n > 0 && s < full_mask(n); ++s) {
                int ss = popcount(s);
                std::vector<int> ipick(ss, 0), qpick(n - ss, 0);
                do {
                    do {
                        Map w(qn);
                        std::vector<Elem> q(n, 0), a(n, 0);
                        for (Elem x = 0; x < qn; ++x) {
                            for (int i = 0, ii = 0, qi = 0; i < n; ++i) {
                                if (s & (1u << i)) a[i] = level[ipick[ii++]][x];
                                else q[i] = qfun[qpick[qi++]][x];
                            }
                            w[x] = act.eval(k, s, q.data(), a.data());
                        }
                        if (!cand.count(w)) fresh.insert(w);
                    } while (next_tuple(qpick, static_cast<int>(qfun.size())));
                } while (next_tuple(ipick, static_cast<int>(level.size())));
            }
        }
        if (fresh.empty()) break;
        cand.insert(fresh.begin(), fresh.end());
        if (d == depth - 1) R.caveat = true;
        level.assign(fresh.begin(), fresh.end());
        level.insert(level.end(), leaves.begin(), leaves.end());
        if (cand.size() > cap) {
            R.caveat = true;
            break;
        }
    }
    std::vector<Map> gens(cand.begin(), cand.end());
    std::vector<Map> span = gens.empty() ? std::vector<Map>{Map(qn, 0)} : span_maps(I, gens);
    std::set<Map> derset(der.begin(), der.end());
    for (auto& d : span)
        if (derset.count(d)) R.elements.push_back(d);
    std::sort(R.elements.begin(), R.elements.end());
    return R;
}

H1Result h1(const Datum& D, const Action& act, int depth) {
    H1Result R;
    R.der = derivations(D, act);
    PDerResult P = principal_derivations(D, act, depth);
    R.pder = P.elements;
    R.caveat = P.caveat;
    std::set<Map> pset(R.pder.begin(), R.pder.end());
    for (auto& d : R.der) {
        bool found = false;
        for (auto& r : R.reps)
            if (pset.count(map_sub(D.I, d, r))) {
                found = true;
                break;
            }
        if (!found) R.reps.push_back(d);
    }
    return R;
}

std::vector<Map> stab_automorphisms(const Extension& E) {
    const Algebra& M = E.M;
    GenSet G = generating_set(M);
    int k = static_cast<int>(G.gens.size()), in = E.I.size();
    std::vector<Map> out;
    std::vector<int> pick(k, 0);
    std::vector<char> in_image(M.size(), 0);
    for (Elem v : E.iota) in_image[v] = 1;
    do {
        std::vector<Elem> imgs(k);
        for (int i = 0; i < k; ++i) imgs[i] = M.add(G.gens[i], E.iota[pick[i]]);
        Map g(M.size());
        for (Elem x = 0; x < M.size(); ++x) g[x] = combine(M, G.coeffs[x], imgs);
        bool ok = true;
        for (Elem a = 0; a < in && ok; ++a) ok = g[E.iota[a]] == E.iota[a];
        for (Elem x = 0; x < M.size() && ok; ++x) ok = E.pi[g[x]] == E.pi[x];
        if (ok && is_bijection(g, M.size()) && is_homomorphism(M, M, g)) out.push_back(g);
    } while (next_tuple(pick, in));
    std::sort(out.begin(), out.end());
    return out;
}

Map stab_to_derivation(const Extension& E, const Map& gamma) {
    auto inv = E.iota_inverse();
    Map d(E.Q.size());
    for (Elem x = 0; x < E.Q.size(); ++x) {
        Elem v = inv[E.M.sub(E.lift[x], gamma[E.lift[x]])];
        if (v < 0) throw MlexError("stabilizing map leaves the fibre");
        d[x] = v;
    }
    return d;
}

}  // namespace mlex
