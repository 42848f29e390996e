#include "mlex/cocycle.hpp"

#include <sstream>

#include "mlex/format.hpp"

namespace mlex {

Datum make_datum(const Algebra& Q, const Algebra& I) {
    if (Q.modulus != I.modulus) throw MlexError("datum: modulus mismatch");
    if (Q.signature() != I.signature()) throw MlexError("datum: Q and I have different signatures");
    return Datum{Q, I};
}

std::string mask_string(unsigned s, int n) {
    if (popcount(s) == 1) {
        for (int i = 0; i < n; ++i)
            if (s == (1u << i)) return std::to_string(i + 1);
    }
    std::string out = "{";
    bool first = true;
    for (int i = 0; i < n; ++i)
        if (s & (1u << i)) {
            out += (first ? "" : ",") + std::to_string(i + 1);
            first = false;
        }
    return out + "}";
}

std::size_t Action::code(int k, unsigned s, const Elem* q, const Elem* a) const {
    std::size_t c = 0;
    for (int i = 0; i < arity[k]; ++i) c = (s & (1u << i)) ? c * in + a[i] : c * qn + q[i];
    return c;
}

void Action::decode(int k, unsigned s, std::size_t c, Elem* q, Elem* a) const {
    for (int i = arity[k] - 1; i >= 0; --i) {
        if (s & (1u << i)) {
            a[i] = static_cast<Elem>(c % in);
            c /= in;
            q[i] = 0;
        } else {
            q[i] = static_cast<Elem>(c % qn);
            c /= qn;
            a[i] = 0;
        }
    }
}

Action trivial_action(const Datum& D) {
    Action act;
    act.qn = D.Q.size();
    act.in = D.I.size();
    for (int k = 0; k < D.nops(); ++k) {
        int n = D.arity(k);
        act.arity.push_back(n);
        std::vector<std::vector<Elem>> per(n > 0 ? (1u << n) : 1);
        for (unsigned s = 1; n > 0 && s < full_mask(n); ++s) {
            std::size_t sz = 1;
            for (int i = 0; i < n; ++i) sz *= (s & (1u << i)) ? act.in : act.qn;
            per[s].assign(sz, 0);
        }
        act.tab.push_back(std::move(per));
    }
    return act;
}

Action make_action(const Datum& D, const std::function<Elem(int, unsigned, const Elem*, const Elem*)>& fn) {
    Action act = trivial_action(D);
    for (int k = 0; k < D.nops(); ++k) {
        int n = D.arity(k);
        std::vector<Elem> q(n), a(n);
        for (unsigned s = 1; n > 0 && s < full_mask(n); ++s)
            for (std::size_t c = 0; c < act.tab[k][s].size(); ++c) {
                act.decode(k, s, c, q.data(), a.data());
                act.tab[k][s][c] = fn(k, s, q.data(), a.data());
            }
    }
    return act;
}

bool is_trivial(const Action& act) {
    for (auto& per : act.tab)
        for (auto& t : per)
            for (Elem v : t)
                if (v) return false;
    return true;
}

bool is_unary(const Action& act) {
    for (std::size_t k = 0; k < act.tab.size(); ++k)
        for (unsigned s = 1; s < act.tab[k].size(); ++s)
            if (popcount(s) > 1)
                for (Elem v : act.tab[k][s])
                    if (v) return false;
    return true;
}

std::vector<Elem> Cocycle::flatten() const {
    std::vector<Elem> out = tplus;
    for (auto& t : tr) out.insert(out.end(), t.begin(), t.end());
    for (auto& t : tf) out.insert(out.end(), t.begin(), t.end());
    for (auto& per : act.tab)
        for (auto& t : per) out.insert(out.end(), t.begin(), t.end());
    return out;
}

Cocycle zero_cocycle(const Datum& D, const Action& act) {
    Cocycle T;
    T.act = act;
    int qn = D.Q.size();
    T.tplus.assign(static_cast<std::size_t>(qn) * qn, 0);
    T.tr.assign(D.modulus(), std::vector<Elem>(qn, 0));
    for (int k = 0; k < D.nops(); ++k) {
        std::size_t sz = 1;
        for (int i = 0; i < D.arity(k); ++i) sz *= qn;
        T.tf.emplace_back(sz, 0);
    }
    return T;
}

bool is_group_trivial(const Cocycle& T) {
    for (Elem v : T.tplus)
        if (v) return false;
    return true;
}

std::optional<std::string> validate_action(const Datum& D, const Action& act) {
    const Algebra& I = D.I;
    for (int k = 0; k < D.nops(); ++k) {
        int n = D.arity(k);
        const std::string& f = D.Q.ops[k].name;
        for (unsigned s = 1; n > 0 && s < full_mask(n); ++s) {
            const auto& tab = act.tab[k][s];
            std::vector<Elem> q(n), a(n), a2(n);
            for (std::size_t c = 0; c < tab.size(); ++c) {
                act.decode(k, s, c, q.data(), a.data());
                std::string where = "a(" + f + "," + mask_string(s, n) + ")";
                if (tab[c] < 0 || tab[c] >= I.size()) return "T4 violated: " + where + " value out of range";
                for (int i = 0; i < n; ++i)
                    if (!(s & (1u << i)) && q[i] == 0 && tab[c] != 0)
                        return "T4 violated: " + where + " nonzero with Q-argument " + std::to_string(i + 1) + " zero";
                for (int i = 0; i < n; ++i) {
                    if (!(s & (1u << i))) continue;
                    a2 = a;
                    for (Elem y = 0; y < I.size(); ++y) {
                        a2[i] = I.add(a[i], y);
                        Elem lhs = act.eval(k, s, q.data(), a2.data());
                        a2[i] = y;
                        Elem rhs = I.add(tab[c], act.eval(k, s, q.data(), a2.data()));
                        if (lhs != rhs)
                            return "T4 violated: " + where + " not additive in I-argument " + std::to_string(i + 1);
                    }
                    for (int r = 0; r < D.modulus(); ++r) {
                        a2 = a;
                        a2[i] = I.scale(r, a[i]);
                        if (act.eval(k, s, q.data(), a2.data()) != I.scale(r, tab[c]))
                            return "T4 violated: " + where + " not homogeneous in I-argument " + std::to_string(i + 1);
                    }
                }
            }
        }
    }
    return std::nullopt;
}

std::optional<std::string> validate_cocycle(const Datum& D, const Cocycle& T) {
    const Algebra &Q = D.Q, &I = D.I;
    int qn = Q.size();
    if (T.tplus.size() != static_cast<std::size_t>(qn) * qn) return "Tplus table has wrong size";
    if (static_cast<int>(T.tr.size()) != D.modulus()) return "Tr tables have wrong count";
    if (static_cast<int>(T.tf.size()) != D.nops()) return "Tf tables have wrong count";
    for (Elem v : T.flatten())
        if (v < 0 || v >= I.size()) return "cocycle value out of range";
    for (Elem x = 0; x < qn; ++x) {
        if (T.tplus[x * qn] != 0) return "T1 violated at " + format_tuple(Q, {x, 0});
        if (T.tplus[x] != 0) return "T1 violated at " + format_tuple(Q, {0, x});
    }
    for (int r = 0; r < D.modulus(); ++r)
        if (T.tr[r][0] != 0) return "T2 violated at r=" + std::to_string(r);
    for (int k = 0; k < D.nops(); ++k) {
        int n = D.arity(k);
        std::vector<Elem> t(n, 0);
        std::size_t c = 0;
        do {
            bool has_zero = false;
            for (Elem v : t) has_zero |= v == 0;
            if (has_zero && T.tf[k][c] != 0)
                return "T3 violated for " + Q.ops[k].name + " at " + format_tuple(Q, t);
            ++c;
        } while (next_tuple(t, qn));
    }
    return validate_action(D, T.act);
}

namespace {

Algebra semidirect_tables(const Datum& D, const Cocycle& T) {
    const Algebra &Q = D.Q, &I = D.I;
    int qn = Q.size(), in = I.size(), N = qn * in;
    Algebra M;
    M.name = I.name + " x_T " + Q.name;
    M.modulus = D.modulus();
    M.add_t.resize(static_cast<std::size_t>(N) * N);
    M.neg_t.resize(N);
    M.scal_t.assign(M.modulus, std::vector<Elem>(N));
    for (Elem u = 0; u < N; ++u) {
        Elem a = u / qn, x = u % qn;
        for (Elem v = 0; v < N; ++v) {
            Elem b = v / qn, y = v % qn;
            M.add_t[static_cast<std::size_t>(u) * N + v] =
                pair_code(I.add(I.add(a, b), T.tplus[x * qn + y]), Q.add(x, y), qn);
        }
        Elem nx = Q.neg(x);
        M.neg_t[u] = pair_code(I.sub(I.neg(a), T.tplus[x * qn + nx]), nx, qn);
        for (int r = 0; r < M.modulus; ++r)
            M.scal_t[r][u] = pair_code(I.add(I.scale(r, a), T.tr[r][x]), Q.scale(r, x), qn);
    }
    for (int k = 0; k < D.nops(); ++k) {
        int n = D.arity(k);
        std::size_t total = 1;
        for (int i = 0; i < n; ++i) total *= N;
        Operation op{Q.ops[k].name, n, std::vector<Elem>(total)};
        std::vector<Elem> t(n, 0), q(n), a(n);
        std::size_t c = 0;
        do {
            for (int i = 0; i < n; ++i) {
                a[i] = t[i] / qn;
                q[i] = t[i] % qn;
            }
            Elem first = I.apply(k, a);
            for (unsigned s = 1; n > 0 && s < full_mask(n); ++s) first = I.add(first, T.act.eval(k, s, q.data(), a.data()));
            first = I.add(first, T.tf[k][tuple_code(q.data(), n, qn)]);
            op.table[c++] = pair_code(first, Q.apply(k, q), qn);
        } while (next_tuple(t, N));
        M.ops.push_back(std::move(op));
    }
    bool trivial_group = is_group_trivial(T);
    for (auto& t : T.tr)
        for (Elem v : t) trivial_group &= v == 0;
    if (trivial_group && Q.module && I.module) M.module = direct_sum(*I.module, *Q.module);
    return M;
}

}  // namespace

SemidirectResult semidirect(const Datum& D, const Cocycle& T, const Variety* V) {
    Algebra M = semidirect_tables(D, T);
    SemidirectResult R;
    if (auto v = module_violation(M)) {
        R.reason = "module axioms: " + *v;
    } else if (auto v2 = multilinearity_violation(M)) {
        R.reason = "multilinearity: " + *v2;
    } else if (V) {
        if (auto f = in_variety(M, *V)) {
            R.reason = "identity " + V->identities[f->identity].text + " fails";
        } else {
            R.valid = true;
        }
    } else {
        R.valid = true;
    }
    R.M = std::move(M);
    return R;
}

bool is_compatible(const Datum& D, const Cocycle& T, const Variety& V) {
    if (validate_cocycle(D, T)) return false;
    return semidirect(D, T, &V).valid;
}

std::vector<Elem> Extension::iota_inverse() const {
    std::vector<Elem> inv(M.size(), -1);
    for (Elem a = 0; a < static_cast<Elem>(iota.size()); ++a) inv[iota[a]] = a;
    return inv;
}

Extension extension_from_ideal(const Algebra& M, const Ideal& I) {
    QuotientResult Qr = quotient(M, I);
    SubResult Ir = subalgebra(M, I.elems);
    Extension E;
    E.M = M;
    E.Q = Qr.alg;
    E.Q.name = M.name + "/" + "I";
    E.I = Ir.alg;
    E.I.name = "I";
    E.pi = Qr.proj;
    E.iota = Ir.embed;
    E.lift = Qr.section;
    return E;
}

Extension semidirect_extension(const Datum& D, const Cocycle& T) {
    Extension E;
    E.M = semidirect(D, T).M;
    E.Q = D.Q;
    E.I = D.I;
    int qn = D.Q.size();
    E.pi.resize(E.M.size());
    for (Elem u = 0; u < E.M.size(); ++u) E.pi[u] = u % qn;
    for (Elem a = 0; a < D.I.size(); ++a) E.iota.push_back(pair_code(a, 0, qn));
    for (Elem x = 0; x < qn; ++x) E.lift.push_back(pair_code(0, x, qn));
    return E;
}

std::optional<std::string> validate_extension(const Extension& E) {
    if (!is_homomorphism(E.M, E.Q, E.pi)) return "pi is not a homomorphism";
    std::vector<char> hit(E.Q.size(), 0);
    for (Elem v : E.pi) hit[v] = 1;
    for (char h : hit)
        if (!h) return "pi is not surjective";
    if (!is_homomorphism(E.I, E.M, E.iota)) return "iota is not a homomorphism";
    std::vector<char> img(E.M.size(), 0);
    for (Elem v : E.iota) {
        if (img[v]) return "iota is not injective";
        img[v] = 1;
    }
    for (Elem m = 0; m < E.M.size(); ++m)
        if ((E.pi[m] == 0) != (img[m] != 0)) return "image of iota differs from kernel of pi";
    if (static_cast<int>(E.lift.size()) != E.Q.size() || E.lift[0] != 0) return "lifting must send 0 to 0";
    for (Elem x = 0; x < E.Q.size(); ++x)
        if (E.pi[E.lift[x]] != x) return "lifting is not a section of pi";
    return std::nullopt;
}

Datum extension_datum(const Extension& E) { return make_datum(E.Q, E.I); }

std::optional<std::string> realizes_violation(const Extension& E, const Cocycle& T) {
    const Algebra &M = E.M, &Q = E.Q;
    int qn = Q.size();
    const auto& l = E.lift;
    const auto& io = E.iota;
    for (Elem x = 0; x < qn; ++x)
        for (Elem y = 0; y < qn; ++y)
            if (io[T.tplus[x * qn + y]] != M.sub(M.add(l[x], l[y]), l[Q.add(x, y)]))
                return "R1 violated at " + format_tuple(Q, {x, y});
    for (int r = 0; r < M.modulus; ++r)
        for (Elem x = 0; x < qn; ++x)
            if (io[T.tr[r][x]] != M.sub(M.scale(r, l[x]), l[Q.scale(r, x)]))
                return "R2 violated at r=" + std::to_string(r) + ", x=" + Q.format(x);
    for (std::size_t k = 0; k < M.ops.size(); ++k) {
        int n = M.ops[k].arity;
        std::vector<Elem> t(n, 0), lt(n);
        std::size_t c = 0;
        do {
            for (int i = 0; i < n; ++i) lt[i] = l[t[i]];
            if (io[T.tf[k][c]] != M.sub(M.apply(static_cast<int>(k), lt), l[Q.apply(static_cast<int>(k), t)]))
                return "R3 violated for " + M.ops[k].name + " at " + format_tuple(Q, t);
            ++c;
        } while (next_tuple(t, qn));
        for (unsigned s = 1; n > 0 && s < full_mask(n); ++s) {
            std::vector<Elem> q(n, 0), a(n, 0), args(n);
            do {
                std::fill(a.begin(), a.end(), 0);
                do {
                    for (int i = 0; i < n; ++i) args[i] = (s & (1u << i)) ? io[a[i]] : l[q[i]];
                    if (io[T.act.eval(static_cast<int>(k), s, q.data(), a.data())] != M.apply(static_cast<int>(k), args))
                        return "R4 violated for a(" + M.ops[k].name + "," + mask_string(s, n) + ") at " +
                               format_tuple(Q, q) + "|" + format_tuple(E.I, a);
                } while (next_tuple(a, E.I.size()));
            } while (next_tuple(q, qn));
        }
    }
    return std::nullopt;
}

Cocycle extract_cocycle(const Extension& E) {
    Datum D = extension_datum(E);
    const Algebra &M = E.M, &Q = E.Q;
    int qn = Q.size();
    auto inv = E.iota_inverse();
    const auto& l = E.lift;
    auto back = [&](Elem m) {
        if (inv[m] < 0) throw MlexError("extract_cocycle: value outside the kernel");
        return inv[m];
    };
    Cocycle T = zero_cocycle(D, trivial_action(D));
    for (Elem x = 0; x < qn; ++x)
        for (Elem y = 0; y < qn; ++y) T.tplus[x * qn + y] = back(M.sub(M.add(l[x], l[y]), l[Q.add(x, y)]));
    for (int r = 0; r < M.modulus; ++r)
        for (Elem x = 0; x < qn; ++x) T.tr[r][x] = back(M.sub(M.scale(r, l[x]), l[Q.scale(r, x)]));
    for (int k = 0; k < D.nops(); ++k) {
        int n = D.arity(k);
        std::vector<Elem> t(n, 0), lt(n);
        std::size_t c = 0;
        do {
            for (int i = 0; i < n; ++i) lt[i] = l[t[i]];
            T.tf[k][c++] = back(M.sub(M.apply(k, lt), l[Q.apply(k, t)]));
        } while (next_tuple(t, qn));
        for (unsigned s = 1; n > 0 && s < full_mask(n); ++s) {
            auto& tab = T.act.tab[k][s];
            std::vector<Elem> q(n), a(n), args(n);
            for (std::size_t cc = 0; cc < tab.size(); ++cc) {
                T.act.decode(k, s, cc, q.data(), a.data());
                for (int i = 0; i < n; ++i) args[i] = (s & (1u << i)) ? E.iota[a[i]] : l[q[i]];
                tab[cc] = back(M.apply(k, args));
            }
        }
    }
    return T;
}

std::vector<Elem> psi_map(const Extension& E) {
    auto inv = E.iota_inverse();
    int qn = E.Q.size();
    std::vector<Elem> psi(E.M.size());
    for (Elem m = 0; m < E.M.size(); ++m) {
        Elem x = E.pi[m];
        Elem k = inv[E.M.sub(m, E.lift[x])];
        if (k < 0) throw MlexError("psi: m - l(pi m) not in the kernel");
        psi[m] = pair_code(k, x, qn);
    }
    return psi;
}

static int sign_of(int e) { return (e % 2 == 0) ? 1 : -1; }

Cocycle coboundary(const Datum& D, const Action& act, const std::vector<Elem>& h) {
    const Algebra &Q = D.Q, &I = D.I;
    int qn = Q.size();
    Cocycle G = zero_cocycle(D, trivial_action(D));
    for (Elem x = 0; x < qn; ++x)
        for (Elem y = 0; y < qn; ++y) G.tplus[x * qn + y] = I.sub(I.add(h[x], h[y]), h[Q.add(x, y)]);
    for (int r = 0; r < D.modulus(); ++r)
        for (Elem x = 0; x < qn; ++x) G.tr[r][x] = I.sub(I.scale(r, h[x]), h[Q.scale(r, x)]);
    for (int k = 0; k < D.nops(); ++k) {
        int n = D.arity(k);
        std::vector<Elem> t(n, 0), hx(n);
        std::size_t c = 0;
        do {
            for (int i = 0; i < n; ++i) hx[i] = h[t[i]];
            Elem acc = 0;
            for (unsigned s = 1; n > 0 && s < full_mask(n); ++s) {
                Elem v = act.eval(k, s, t.data(), hx.data());
                acc = I.add(acc, I.scale(sign_of(1 + popcount(s)), v));
            }
            acc = I.add(acc, I.scale(sign_of(1 + n), I.apply(k, hx)));
            acc = I.sub(acc, h[Q.apply(k, t)]);
            G.tf[k][c++] = acc;
        } while (next_tuple(t, qn));
        for (unsigned s = 1; n > 0 && s < full_mask(n); ++s) {
            auto& tab = G.act.tab[k][s];
            std::vector<Elem> q(n), a(n), mixed(n);
            for (std::size_t cc = 0; cc < tab.size(); ++cc) {
                G.act.decode(k, s, cc, q.data(), a.data());
                for (int i = 0; i < n; ++i) mixed[i] = (s & (1u << i)) ? a[i] : h[q[i]];
                Elem acc = 0;
                for (unsigned r = s + 1; r < full_mask(n); ++r) {
                    if ((r & s) != s || r == s) continue;
                    Elem v = act.eval(k, r, q.data(), mixed.data());
                    acc = I.add(acc, I.scale(sign_of(1 + popcount(r) - popcount(s)), v));
                }
                acc = I.add(acc, I.scale(sign_of(1 + n - popcount(s)), I.apply(k, mixed)));
                tab[cc] = acc;
            }
        }
    }
    return G;
}

template <class F>
static Cocycle combine_cocycles(const Datum& D, const Cocycle& A, const Cocycle& B, F f) {
    (void)D;
    Cocycle C = A;
    for (std::size_t i = 0; i < C.tplus.size(); ++i) C.tplus[i] = f(A.tplus[i], B.tplus[i]);
    for (std::size_t r = 0; r < C.tr.size(); ++r)
        for (std::size_t i = 0; i < C.tr[r].size(); ++i) C.tr[r][i] = f(A.tr[r][i], B.tr[r][i]);
    for (std::size_t k = 0; k < C.tf.size(); ++k)
        for (std::size_t i = 0; i < C.tf[k].size(); ++i) C.tf[k][i] = f(A.tf[k][i], B.tf[k][i]);
    for (std::size_t k = 0; k < C.act.tab.size(); ++k)
        for (std::size_t s = 0; s < C.act.tab[k].size(); ++s)
            for (std::size_t i = 0; i < C.act.tab[k][s].size(); ++i)
                C.act.tab[k][s][i] = f(A.act.tab[k][s][i], B.act.tab[k][s][i]);
    return C;
}

Cocycle cocycle_sub(const Datum& D, const Cocycle& A, const Cocycle& B) {
    return combine_cocycles(D, A, B, [&](Elem x, Elem y) { return D.I.sub(x, y); });
}

Cocycle cocycle_add(const Datum& D, const Cocycle& A, const Cocycle& B) {
    return combine_cocycles(D, A, B, [&](Elem x, Elem y) { return D.I.add(x, y); });
}

Cocycle cocycle_scale(const Datum& D, int r, const Cocycle& A) {
    return combine_cocycles(D, A, A, [&](Elem x, Elem) { return D.I.scale(r, x); });
}

bool is_null(const Cocycle& T) {
    for (Elem v : T.flatten())
        if (v) return false;
    return true;
}

bool next_map(std::vector<Elem>& h, int target_size) {
    for (int k = static_cast<int>(h.size()) - 1; k >= 1; --k) {
        if (++h[k] < target_size) return true;
        h[k] = 0;
    }
    return false;
}

std::optional<std::vector<Elem>> equivalence_witness(const Datum& D, const Cocycle& T, const Cocycle& U,
                                                     long long budget) {
    int qn = D.Q.size(), in = D.I.size();
    long double cnt = 1;
    for (int i = 1; i < qn; ++i) cnt *= in;
    if (cnt > budget) throw MlexError("equivalence search exceeds budget");
    Algebra A = semidirect_tables(D, T), B = semidirect_tables(D, U);
    std::vector<Elem> h(qn, 0), g(A.size());
    do {
        // quick necessary condition on the additive factor sets
        bool ok = true;
        for (Elem x = 0; x < qn && ok; ++x)
            for (Elem y = 0; y < qn && ok; ++y)
                ok = D.I.sub(T.tplus[x * qn + y], U.tplus[x * qn + y]) ==
                     D.I.sub(D.I.add(h[x], h[y]), h[D.Q.add(x, y)]);
        if (!ok) continue;
        for (Elem u = 0; u < A.size(); ++u) g[u] = pair_code(D.I.sub(u / qn, h[u % qn]), u % qn, qn);
        if (is_homomorphism(A, B, g)) return h;
    } while (next_map(h, in));
    return std::nullopt;
}

bool is_abelian_algebra(const Algebra& A) {
    Ideal F = full_ideal(A);
    return commutator(A, F, F).size() == 1;
}

KernelKind kernel_kind(const Datum& D, const Cocycle& T) {
    KernelKind K;
    bool ab = is_abelian_algebra(D.I);
    K.abelian = ab && is_unary(T.act);
    K.central = ab && is_trivial(T.act);
    return K;
}

KernelKind kernel_kind_oracle(const Datum& D, const Cocycle& T) {
    Algebra M = semidirect(D, T).M;
    int qn = D.Q.size();
    std::vector<char> mask(M.size(), 0);
    for (Elem a = 0; a < D.I.size(); ++a) mask[pair_code(a, 0, qn)] = 1;
    Ideal Ip = ideal_from_mask(mask);
    KernelKind K;
    K.abelian = positional_commutator(M, Ip, Ip).size() == 1;
    K.central = commutator(M, full_ideal(M), Ip).size() == 1;
    return K;
}

std::vector<std::vector<Elem>> tr_from_tplus(const Datum& D, const Cocycle& T) {
    int qn = D.Q.size();
    std::vector<std::vector<Elem>> tr(D.modulus(), std::vector<Elem>(qn, 0));
    for (int r = 0; r < D.modulus(); ++r)
        for (Elem x = 0; x < qn; ++x) {
            Elem acc = 0;
            for (int j = 1; j < r; ++j) acc = D.I.add(acc, T.tplus[D.Q.scale(j, x) * qn + x]);
            tr[r][x] = acc;
        }
    return tr;
}

}  // namespace mlex

namespace mlex {

MorphismCheck is_h2_morphism(const Datum& D1, const Cocycle& T, const Datum& D2, const Cocycle& U,
                             const std::vector<Elem>& alpha, const std::vector<Elem>& h,
                             const std::vector<Elem>& beta, bool emend) {
    MorphismCheck R;
    const Algebra &Q = D1.Q, &J = D2.I;
    int qn = Q.size(), pn = D2.Q.size();
    auto fail = [&](const std::string& w) {
        R.ok = false;
        R.failure = w;
        return R;
    };
    for (Elem x = 0; x < qn; ++x)
        for (Elem y = 0; y < qn; ++y) {
            Elem rhs = J.add(U.tplus[beta[x] * pn + beta[y]], J.sub(J.add(h[x], h[y]), h[Q.add(x, y)]));
            if (alpha[T.tplus[x * qn + y]] != rhs)
                return fail("E1 fails at (" + Q.format(x) + "," + Q.format(y) + ")");
        }
    for (int r = 0; r < D1.modulus(); ++r)
        for (Elem x = 0; x < qn; ++x) {
            Elem rhs = J.add(U.tr[r][beta[x]], J.sub(J.scale(r, h[x]), h[Q.scale(r, x)]));
            if (alpha[T.tr[r][x]] != rhs) return fail("E2 fails at r=" + std::to_string(r) + ", x=" + Q.format(x));
        }
    for (int k = 0; k < D1.nops(); ++k) {
        int n = D1.arity(k);
        std::vector<Elem> x(n, 0), a(n), ax(n), aa(n), hx(n), v(n);
        for (unsigned s = 1; n > 0 && s < full_mask(n); ++s) {
            do {
                std::vector<Elem> ai(n, 0);
                do {
                    Elem lhs = alpha[T.act.eval(k, s, x.data(), ai.data())];
                    for (int i = 0; i < n; ++i) {
                        aa[i] = alpha[ai[i]];
                        hx[i] = h[x[i]];
                        if (emend) {
                            ax[i] = beta[x[i]];
                        } else {
                            if (x[i] >= static_cast<Elem>(alpha.size()))
                                return fail("E3 literal reading is ill-typed: alpha applied to a Q-argument");
                            ax[i] = alpha[x[i]];
                        }
                    }
                    Elem rhs = U.act.eval(k, s, ax.data(), aa.data());
                    std::vector<Elem> bx(n);
                    for (int i = 0; i < n; ++i) bx[i] = beta[x[i]];
                    for (unsigned r = 1; r < full_mask(n); ++r) {
                        if ((r & s) != s || r == s) continue;
                        for (int i = 0; i < n; ++i) v[i] = (s >> i & 1u) ? aa[i] : hx[i];
                        rhs = J.add(rhs, U.act.eval(k, r, bx.data(), v.data()));
                    }
                    for (int i = 0; i < n; ++i) v[i] = (s >> i & 1u) ? aa[i] : hx[i];
                    rhs = J.add(rhs, J.apply(k, v));
                    if (lhs != rhs) return fail("E3 fails for " + Q.ops[k].name + " at s=" + mask_string(s, n));
                } while (next_tuple(ai, D1.I.size()));
            } while (next_tuple(x, qn));
        }
    }
    return R;
}

}  // namespace mlex
