#include "mlex/algebra.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace mlex {

std::size_t tuple_code(const Elem* args, int arity, int n) {
    std::size_t c = 0;
    for (int i = 0; i < arity; ++i) c = c * n + args[i];
    return c;
}

bool next_tuple(std::vector<Elem>& t, int n) {
    for (int k = static_cast<int>(t.size()) - 1; k >= 0; --k) {
        if (++t[k] < n) return true;
        t[k] = 0;
    }
    return false;
}

Elem Algebra::apply(int k, const Elem* args) const {
    const Operation& op = ops[k];
    return op.table[tuple_code(args, op.arity, size())];
}

Elem Algebra::apply(int k, const std::vector<Elem>& args) const { return apply(k, args.data()); }

int Algebra::op_index(const std::string& f) const {
    for (std::size_t k = 0; k < ops.size(); ++k)
        if (ops[k].name == f) return static_cast<int>(k);
    return -1;
}

Signature Algebra::signature() const {
    Signature s;
    for (auto& op : ops) s.emplace_back(op.name, op.arity);
    return s;
}

std::string Algebra::format(Elem e) const {
    if (module) return module->format(e);
    return "#" + std::to_string(e);
}

std::optional<Elem> Algebra::parse_elem(const std::string& s0) const {
    std::string s;
    for (char c : s0)
        if (!isspace(static_cast<unsigned char>(c))) s += c;
    if (!s.empty() && s[0] == '#') {
        try {
            int e = std::stoi(s.substr(1));
            if (e >= 0 && e < size()) return e;
        } catch (...) {
        }
        return std::nullopt;
    }
    if (!module || s.size() < 2 || s.front() != '(' || s.back() != ')') return std::nullopt;
    std::string body = s.substr(1, s.size() - 2);
    Coords c;
    if (!body.empty()) {
        std::stringstream ss(body);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                std::size_t pos;
                c.push_back(std::stoi(tok, &pos));
                if (pos != tok.size()) return std::nullopt;
            } catch (...) {
                return std::nullopt;
            }
        }
    }
    if (static_cast<int>(c.size()) != module->rank()) return std::nullopt;
    for (int i = 0; i < module->rank(); ++i)
        if (c[i] < 0 || c[i] >= module->factors[i]) return std::nullopt;
    return module->index(c);
}

int Algebra::additive_order(Elem e) const {
    Elem x = e;
    int k = 1;
    while (x != 0) {
        x = add(x, e);
        ++k;
        if (k > size() + 1) throw MlexError("additive order undefined");
    }
    return k;
}

static void fill_module_tables(Algebra& A, const ZmModule& M) {
    int n = M.size();
    A.modulus = M.modulus;
    A.add_t.resize(static_cast<std::size_t>(n) * n);
    A.neg_t.resize(n);
    A.scal_t.assign(M.modulus, std::vector<Elem>(n));
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) A.add_t[static_cast<std::size_t>(a) * n + b] = M.add(a, b);
        A.neg_t[a] = M.neg(a);
        for (int r = 0; r < M.modulus; ++r) A.scal_t[r][a] = M.scale(r, a);
    }
    A.module = M;
}

Algebra make_algebra(const std::string& name, const ZmModule& M, const std::vector<MultilinearOp>& mops) {
    Algebra A;
    A.name = name;
    fill_module_tables(A, M);
    int n = M.size();
    std::vector<Coords> cs = mod_elements(M);
    for (auto& mop : mops) {
        for (auto& [tup, val] : mop.constants) {
            if (static_cast<int>(tup.size()) != mop.arity)
                throw MlexError("op " + mop.name + ": wrong tuple length");
            for (int g : tup) {
                if (g < 0 || g >= M.rank()) throw MlexError("op " + mop.name + ": generator index out of range");
                if (M.scale(M.factors[g], val) != 0)
                    throw MlexError("op " + mop.name + ": structure constant violates order compatibility");
            }
        }
        Operation op{mop.name, mop.arity, {}};
        std::size_t total = 1;
        for (int i = 0; i < mop.arity; ++i) total *= n;
        op.table.assign(total, 0);
        std::vector<Elem> t(mop.arity, 0);
        std::size_t code = 0;
        do {
            Elem acc = 0;
            for (auto& [tup, val] : mop.constants) {
                long long coef = 1;
                for (int i = 0; i < mop.arity && coef; ++i) coef *= cs[t[i]][tup[i]];
                if (coef) acc = M.add(acc, M.scale(coef, val));
            }
            op.table[code++] = acc;
        } while (next_tuple(t, n));
        A.ops.push_back(std::move(op));
    }
    return A;
}

Algebra zero_algebra(int m, const Signature& sig) {
    std::vector<MultilinearOp> ops;
    for (auto& [f, n] : sig) ops.push_back({f, n, {}});
    return make_algebra("0", ZmModule(m, {}), ops);
}

std::vector<MultilinearOp> structure_constants(const Algebra& A) {
    if (!A.module) throw MlexError("structure constants need a presented algebra");
    const ZmModule& M = *A.module;
    std::vector<MultilinearOp> out;
    for (auto& op : A.ops) {
        MultilinearOp mop{op.name, op.arity, {}};
        std::vector<int> gi(op.arity, 0);
        if (M.rank() > 0) {
            do {
                std::vector<Elem> args(op.arity);
                for (int i = 0; i < op.arity; ++i) args[i] = M.generator(gi[i]);
                Elem v = op.table[tuple_code(args.data(), op.arity, A.size())];
                if (v != 0) mop.constants[gi] = v;
            } while (next_tuple(gi, M.rank()));
        }
        out.push_back(std::move(mop));
    }
    return out;
}

Algebra with_signature(const Algebra& A, const Signature& sig) {
    Algebra B = A;
    B.ops.clear();
    for (auto& [f, n] : sig) {
        int k = A.op_index(f);
        if (k < 0) throw MlexError("algebra " + A.name + " lacks operation " + f);
        if (A.ops[k].arity != n) throw MlexError("arity mismatch for " + f + " in " + A.name);
        B.ops.push_back(A.ops[k]);
    }
    if (B.ops.size() != A.ops.size()) throw MlexError("algebra " + A.name + " has operations outside the signature");
    return B;
}

std::optional<std::string> module_violation(const Algebra& A) {
    int n = A.size();
    if (n == 0) return "empty carrier";
    for (int x = 0; x < n; ++x) {
        if (A.add(x, 0) != x || A.add(0, x) != x) return "x+0=x fails at x=" + A.format(x);
        if (A.add(x, A.neg(x)) != 0) return "x+(-x)=0 fails at x=" + A.format(x);
        for (int y = 0; y < n; ++y) {
            if (A.add(x, y) != A.add(y, x)) return "x+y=y+x fails at (" + A.format(x) + "," + A.format(y) + ")";
            for (int z = 0; z < n; ++z)
                if (A.add(A.add(x, y), z) != A.add(x, A.add(y, z)))
                    return "associativity fails at (" + A.format(x) + "," + A.format(y) + "," + A.format(z) + ")";
        }
    }
    int m = A.modulus;
    for (int x = 0; x < n; ++x) {
        if (A.scale(1, x) != x) return "1*x=x fails at x=" + A.format(x);
        if (A.scale(0, x) != 0) return "0*x=0 fails at x=" + A.format(x);
        for (int r = 0; r < m; ++r) {
            for (int s = 0; s < m; ++s) {
                if (A.scale(r + s, x) != A.add(A.scale(r, x), A.scale(s, x)))
                    return "(r+s)x=rx+sx fails at r=" + std::to_string(r) + ",s=" + std::to_string(s) + ",x=" + A.format(x);
                if (A.scale(static_cast<long long>(r) * s, x) != A.scale(r, A.scale(s, x)))
                    return "(rs)x=r(sx) fails at r=" + std::to_string(r) + ",s=" + std::to_string(s) + ",x=" + A.format(x);
            }
            for (int y = 0; y < n; ++y)
                if (A.scale(r, A.add(x, y)) != A.add(A.scale(r, x), A.scale(r, y)))
                    return "r(x+y)=rx+ry fails at r=" + std::to_string(r) + ",x=" + A.format(x) + ",y=" + A.format(y);
        }
    }
    return std::nullopt;
}

std::optional<std::string> multilinearity_violation(const Algebra& A) {
    int n = A.size();
    for (std::size_t k = 0; k < A.ops.size(); ++k) {
        const Operation& op = A.ops[k];
        if (op.arity == 0) continue;
        std::vector<Elem> t(op.arity, 0);
        do {
            Elem base = A.apply(static_cast<int>(k), t);
            for (int i = 0; i < op.arity; ++i) {
                std::vector<Elem> u = t;
                for (int y = 0; y < n; ++y) {
                    u[i] = A.add(t[i], y);
                    Elem lhs = A.apply(static_cast<int>(k), u);
                    u[i] = y;
                    Elem rhs = A.add(base, A.apply(static_cast<int>(k), u));
                    if (lhs != rhs)
                        return op.name + " not additive in argument " + std::to_string(i + 1);
                }
                for (int r = 0; r < A.modulus; ++r) {
                    u[i] = A.scale(r, t[i]);
                    if (A.apply(static_cast<int>(k), u) != A.scale(r, base))
                        return op.name + " not homogeneous in argument " + std::to_string(i + 1);
                }
                u[i] = t[i];
            }
        } while (next_tuple(t, n));
    }
    return std::nullopt;
}

Ideal ideal_from_mask(std::vector<char> mask) {
    Ideal I;
    I.in = std::move(mask);
    for (std::size_t e = 0; e < I.in.size(); ++e)
        if (I.in[e]) I.elems.push_back(static_cast<Elem>(e));
    return I;
}

Ideal zero_ideal(const Algebra& A) {
    std::vector<char> m(A.size(), 0);
    m[0] = 1;
    return ideal_from_mask(m);
}

Ideal full_ideal(const Algebra& A) { return ideal_from_mask(std::vector<char>(A.size(), 1)); }

// Applies f to every tuple with an entry of `mask` in some position and
// collects the values that fall outside it.
static void absorb_pass(const Algebra& A, std::vector<char>& mask, std::vector<Elem>& added) {
    int n = A.size();
    std::vector<Elem> members;
    for (int e = 0; e < n; ++e)
        if (mask[e]) members.push_back(e);
    for (std::size_t k = 0; k < A.ops.size(); ++k) {
        int ar = A.ops[k].arity;
        for (int pos = 0; pos < ar; ++pos) {
            std::vector<Elem> rest(ar - 1, 0);
            do {
                for (Elem a : members) {
                    std::vector<Elem> args;
                    args.reserve(ar);
                    for (int i = 0, r = 0; i < ar; ++i) args.push_back(i == pos ? a : rest[r++]);
                    Elem v = A.apply(static_cast<int>(k), args);
                    if (!mask[v]) {
                        mask[v] = 1;
                        added.push_back(v);
                    }
                }
            } while (next_tuple(rest, n));
        }
    }
}

static void submodule_close(const Algebra& A, std::vector<char>& mask) {
    std::deque<Elem> work;
    for (int e = 0; e < A.size(); ++e)
        if (mask[e]) work.push_back(e);
    mask[0] = 1;
    std::vector<Elem> members;
    for (int e = 0; e < A.size(); ++e)
        if (mask[e]) members.push_back(e);
    while (!work.empty()) {
        Elem g = work.front();
        work.pop_front();
        std::size_t cnt = members.size();
        for (std::size_t i = 0; i < cnt; ++i) {
            Elem v = A.add(members[i], g);
            if (!mask[v]) {
                mask[v] = 1;
                members.push_back(v);
                work.push_back(v);
            }
        }
        for (int r = 0; r < A.modulus; ++r) {
            Elem v = A.scale(r, g);
            if (!mask[v]) {
                mask[v] = 1;
                members.push_back(v);
                work.push_back(v);
            }
        }
    }
}

Ideal ideal_generated(const Algebra& A, const std::vector<Elem>& gens) {
    std::vector<char> mask(A.size(), 0);
    mask[0] = 1;
    for (Elem g : gens) mask[g] = 1;
    while (true) {
        submodule_close(A, mask);
        std::vector<Elem> added;
        absorb_pass(A, mask, added);
        if (added.empty()) break;
    }
    return ideal_from_mask(mask);
}

bool is_ideal(const Algebra& A, const std::vector<char>& mask) {
    if (!mask[0]) return false;
    for (int a = 0; a < A.size(); ++a) {
        if (!mask[a]) continue;
        if (!mask[A.neg(a)]) return false;
        for (int r = 0; r < A.modulus; ++r)
            if (!mask[A.scale(r, a)]) return false;
        for (int b = 0; b < A.size(); ++b)
            if (mask[b] && !mask[A.add(a, b)]) return false;
    }
    std::vector<char> copy = mask;
    std::vector<Elem> added;
    absorb_pass(A, copy, added);
    return added.empty();
}

// Tuples in S^n with at least one entry in T.
static void collect_mixed(const Algebra& A, int k, const Ideal& S, const Ideal& T, std::vector<Elem>& out) {
    int ar = A.ops[k].arity;
    if (ar == 0 || S.elems.empty()) return;
    std::vector<int> idx(ar, 0);
    int ns = S.size();
    do {
        std::vector<Elem> args(ar);
        bool hit = false;
        for (int i = 0; i < ar; ++i) {
            args[i] = S.elems[idx[i]];
            hit |= T.contains(args[i]) != 0;
        }
        if (hit) out.push_back(A.apply(k, args));
    } while (next_tuple(idx, ns));
}

Ideal commutator(const Algebra& A, const Ideal& I, const Ideal& J) {
    std::vector<Elem> gens;
    for (std::size_t k = 0; k < A.ops.size(); ++k) {
        collect_mixed(A, static_cast<int>(k), J, I, gens);
        collect_mixed(A, static_cast<int>(k), I, J, gens);
    }
    return ideal_generated(A, gens);
}

Ideal positional_commutator(const Algebra& A, const Ideal& I, const Ideal& J) {
    std::vector<Elem> gens;
    int n = A.size();
    for (std::size_t k = 0; k < A.ops.size(); ++k) {
        int ar = A.ops[k].arity;
        if (ar == 1) {
            for (Elem a : I.elems)
                if (J.contains(a)) gens.push_back(A.apply(static_cast<int>(k), &a));
            continue;
        }
        std::vector<Elem> t(ar, 0);
        do {
            bool hit = false;
            for (int i = 0; i < ar && !hit; ++i)
                for (int j = 0; j < ar && !hit; ++j)
                    if (i != j && I.contains(t[i]) && J.contains(t[j])) hit = true;
            if (hit) gens.push_back(A.apply(static_cast<int>(k), t));
        } while (next_tuple(t, n));
    }
    return ideal_generated(A, gens);
}

std::vector<Ideal> derived_series(const Algebra& A, int max_len) {
    std::vector<Ideal> s{full_ideal(A)};
    while (static_cast<int>(s.size()) < max_len) {
        Ideal nx = commutator(A, s.back(), s.back());
        if (nx == s.back()) break;
        s.push_back(nx);
    }
    return s;
}

std::vector<Ideal> lower_central_series(const Algebra& A, int max_len) {
    Ideal M = full_ideal(A);
    std::vector<Ideal> s{M};
    while (static_cast<int>(s.size()) < max_len) {
        Ideal nx = commutator(A, M, s.back());
        if (nx == s.back()) break;
        s.push_back(nx);
    }
    return s;
}

GenSet generating_set(const Algebra& A) {
    int n = A.size();
    GenSet G;
    std::vector<char> in(n, 0);
    in[0] = 1;
    G.coeffs.assign(n, {});
    G.coeffs[0] = {};
    std::vector<Elem> members{0};
    for (Elem e = 1; e < n; ++e) {
        if (in[e]) continue;
        std::size_t gi = G.gens.size();
        G.gens.push_back(e);
        for (Elem x : members) G.coeffs[x].push_back(0);
        // extend the span by multiples of e
        std::vector<Elem> base = members;
        Elem mult = e;
        int c = 1;
        while (!in[mult]) {
            for (Elem x : base) {
                Elem v = A.add(x, mult);
                if (in[v]) continue;
                in[v] = 1;
                std::vector<int> cf = G.coeffs[x];
                cf[gi] = c;
                G.coeffs[v] = cf;
                members.push_back(v);
            }
            mult = A.add(mult, e);
            ++c;
        }
    }
    return G;
}

Elem combine(const Algebra& B, const std::vector<int>& coeffs, const std::vector<Elem>& imgs) {
    Elem acc = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) acc = B.add(acc, B.scale(coeffs[i], imgs[i]));
    return acc;
}

Algebra relabel(const Algebra& A, const std::vector<Elem>& from, const std::optional<ZmModule>& module) {
    int n = A.size();
    std::vector<Elem> to(n);
    for (int i = 0; i < n; ++i) to[from[i]] = i;
    Algebra B;
    B.name = A.name;
    B.modulus = A.modulus;
    B.module = module;
    B.add_t.resize(static_cast<std::size_t>(n) * n);
    B.neg_t.resize(n);
    B.scal_t.assign(A.modulus, std::vector<Elem>(n));
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) B.add_t[static_cast<std::size_t>(a) * n + b] = to[A.add(from[a], from[b])];
        B.neg_t[a] = to[A.neg(from[a])];
        for (int r = 0; r < A.modulus; ++r) B.scal_t[r][a] = to[A.scale(r, from[a])];
    }
    for (auto& op : A.ops) {
        Operation o{op.name, op.arity, std::vector<Elem>(op.table.size())};
        std::vector<Elem> t(op.arity, 0);
        std::size_t code = 0;
        do {
            std::vector<Elem> src(op.arity);
            for (int i = 0; i < op.arity; ++i) src[i] = from[t[i]];
            o.table[code++] = to[op.table[tuple_code(src.data(), op.arity, n)]];
        } while (next_tuple(t, n));
        B.ops.push_back(std::move(o));
    }
    return B;
}

static std::vector<std::vector<int>> invert_unimodular(const std::vector<std::vector<int>>& V, int m) {
    int n = static_cast<int>(V.size());
    std::vector<std::vector<int>> inv(n, std::vector<int>(n, 0));
    for (int j = 0; j < n; ++j) {
        std::vector<int> e(n, 0);
        e[j] = 1;
        auto sol = solve_linear(V, e, n, m);
        if (!sol) throw MlexError("matrix not invertible");
        for (int i = 0; i < n; ++i) inv[i][j] = sol->particular[i];
    }
    return inv;
}

Presented present(const Algebra& A) {
    int n = A.size();
    if (A.module) {
        std::vector<Elem> id(n);
        std::iota(id.begin(), id.end(), 0);
        return Presented{A, id, id};
    }
    if (auto v = module_violation(A)) throw MlexError("cannot present: " + *v);
    int m = A.modulus;
    GenSet G = generating_set(A);
    int k = static_cast<int>(G.gens.size());
    // relation rows: c_i e_i - coeffs(c_i s_i) in terms of earlier generators
    std::vector<std::vector<int>> R;
    {
        std::vector<char> in(n, 0);
        in[0] = 1;
        std::vector<Elem> span{0};
        for (int i = 0; i < k; ++i) {
            Elem s = G.gens[i];
            Elem mult = s;
            int c = 1;
            while (!in[mult]) {
                mult = A.add(mult, s);
                ++c;
            }
            std::vector<int> row(k, 0);
            row[i] = c % m;
            const auto& cf = G.coeffs[mult];
            for (int j = 0; j < i; ++j) row[j] = mod_norm(-static_cast<long long>(cf[j]), m);
            R.push_back(row);
            // extend span by multiples of s
            std::vector<Elem> base = span;
            Elem t = s;
            while (!in[t]) {
                for (Elem x : base) {
                    Elem v = A.add(x, t);
                    if (!in[v]) {
                        in[v] = 1;
                        span.push_back(v);
                    }
                }
                t = A.add(t, s);
            }
        }
    }
    std::vector<int> orders;
    std::vector<Elem> newgens;
    if (k > 0) {
        Smith S = smith_form(R, k, m);
        auto Vinv = invert_unimodular(S.V, m);
        for (int i = 0; i < k; ++i) {
            long long d = S.D[i][i];
            int ord = d == 0 ? m : static_cast<int>(gcd_ll(d, m));
            if (ord == 1) continue;
            Elem g = 0;
            for (int j = 0; j < k; ++j) g = A.add(g, A.scale(Vinv[i][j], G.gens[j]));
            orders.push_back(ord);
            newgens.push_back(g);
        }
    }
    ZmModule M(m, orders);
    if (M.size() != n) throw MlexError("presentation failed: size mismatch");
    std::vector<Elem> from(n), to(n, -1);
    for (int e = 0; e < n; ++e) {
        Coords c = M.coords(e);
        Elem v = 0;
        for (int i = 0; i < M.rank(); ++i) v = A.add(v, A.scale(c[i], newgens[i]));
        if (to[v] != -1) throw MlexError("presentation failed: not injective");
        from[e] = v;
        to[v] = e;
    }
    return Presented{relabel(A, from, M), to, from};
}

QuotientResult quotient(const Algebra& A, const Ideal& I) {
    int n = A.size();
    std::vector<Elem> rep(n, -1);
    std::vector<Elem> reps;
    for (Elem x = 0; x < n; ++x) {
        if (rep[x] != -1) continue;
        for (Elem a : I.elems) rep[A.add(x, a)] = static_cast<Elem>(reps.size());
        reps.push_back(x);
    }
    int q = static_cast<int>(reps.size());
    Algebra B;
    B.name = A.name + "/I";
    B.modulus = A.modulus;
    B.add_t.resize(static_cast<std::size_t>(q) * q);
    B.neg_t.resize(q);
    B.scal_t.assign(A.modulus, std::vector<Elem>(q));
    for (int a = 0; a < q; ++a) {
        for (int b = 0; b < q; ++b) B.add_t[static_cast<std::size_t>(a) * q + b] = rep[A.add(reps[a], reps[b])];
        B.neg_t[a] = rep[A.neg(reps[a])];
        for (int r = 0; r < A.modulus; ++r) B.scal_t[r][a] = rep[A.scale(r, reps[a])];
    }
    for (auto& op : A.ops) {
        std::size_t total = 1;
        for (int i = 0; i < op.arity; ++i) total *= q;
        Operation o{op.name, op.arity, std::vector<Elem>(total)};
        std::vector<Elem> t(op.arity, 0);
        std::size_t code = 0;
        do {
            std::vector<Elem> src(op.arity);
            for (int i = 0; i < op.arity; ++i) src[i] = reps[t[i]];
            o.table[code++] = rep[A.apply(A.op_index(op.name), src)];
        } while (next_tuple(t, q));
        B.ops.push_back(std::move(o));
    }
    Presented P = present(B);
    QuotientResult R;
    R.alg = P.alg;
    R.proj.resize(n);
    for (Elem x = 0; x < n; ++x) R.proj[x] = P.to[rep[x]];
    R.section.resize(q);
    for (int c = 0; c < q; ++c) R.section[P.to[c]] = reps[c];
    // least representative of each class
    for (Elem x = n - 1; x >= 0; --x) R.section[R.proj[x]] = x;
    return R;
}

SubResult subalgebra(const Algebra& A, const std::vector<Elem>& elems) {
    int n = A.size();
    int s = static_cast<int>(elems.size());
    std::vector<Elem> pos(n, -1);
    for (int i = 0; i < s; ++i) pos[elems[i]] = i;
    auto at = [&](Elem v) {
        if (pos[v] < 0) throw MlexError("subset not closed");
        return pos[v];
    };
    Algebra B;
    B.name = A.name + "|sub";
    B.modulus = A.modulus;
    B.add_t.resize(static_cast<std::size_t>(s) * s);
    B.neg_t.resize(s);
    B.scal_t.assign(A.modulus, std::vector<Elem>(s));
    for (int a = 0; a < s; ++a) {
        for (int b = 0; b < s; ++b) B.add_t[static_cast<std::size_t>(a) * s + b] = at(A.add(elems[a], elems[b]));
        B.neg_t[a] = at(A.neg(elems[a]));
        for (int r = 0; r < A.modulus; ++r) B.scal_t[r][a] = at(A.scale(r, elems[a]));
    }
    for (std::size_t k = 0; k < A.ops.size(); ++k) {
        const Operation& op = A.ops[k];
        std::size_t total = 1;
        for (int i = 0; i < op.arity; ++i) total *= s;
        Operation o{op.name, op.arity, std::vector<Elem>(total)};
        std::vector<Elem> t(op.arity, 0);
        std::size_t code = 0;
        do {
            std::vector<Elem> src(op.arity);
            for (int i = 0; i < op.arity; ++i) src[i] = elems[t[i]];
            o.table[code++] = at(A.apply(static_cast<int>(k), src));
        } while (next_tuple(t, s));
        B.ops.push_back(std::move(o));
    }
    Presented P = present(B);
    SubResult R{P.alg, std::vector<Elem>(s)};
    for (int i = 0; i < s; ++i) R.embed[P.to[i]] = elems[i];
    return R;
}

bool is_homomorphism(const Algebra& A, const Algebra& B, const std::vector<Elem>& f) {
    int n = A.size();
    if (static_cast<int>(f.size()) != n || A.ops.size() != B.ops.size()) return false;
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y)
            if (f[A.add(x, y)] != B.add(f[x], f[y])) return false;
        for (int r = 0; r < A.modulus; ++r)
            if (f[A.scale(r, x)] != B.scale(r, f[x])) return false;
    }
    for (std::size_t k = 0; k < A.ops.size(); ++k) {
        int ar = A.ops[k].arity;
        if (B.ops[k].arity != ar || B.ops[k].name != A.ops[k].name) return false;
        std::vector<Elem> t(ar, 0), u(ar);
        do {
            for (int i = 0; i < ar; ++i) u[i] = f[t[i]];
            if (f[A.apply(static_cast<int>(k), t)] != B.apply(static_cast<int>(k), u)) return false;
        } while (next_tuple(t, n));
    }
    return true;
}

bool is_bijection(const std::vector<Elem>& map, int target_size) {
    if (static_cast<int>(map.size()) != target_size) return false;
    std::vector<char> hit(target_size, 0);
    for (Elem v : map) {
        if (v < 0 || v >= target_size || hit[v]) return false;
        hit[v] = 1;
    }
    return true;
}

std::optional<std::vector<Elem>> find_isomorphism(const Algebra& A, const Algebra& B) {
    if (A.size() != B.size() || A.ops.size() != B.ops.size()) return std::nullopt;
    for (std::size_t k = 0; k < A.ops.size(); ++k)
        if (A.ops[k].name != B.ops[k].name || A.ops[k].arity != B.ops[k].arity) return std::nullopt;
    GenSet G = generating_set(A);
    int k = static_cast<int>(G.gens.size());
    std::vector<std::vector<Elem>> cands(k);
    for (int i = 0; i < k; ++i) {
        int ord = A.additive_order(G.gens[i]);
        for (Elem b = 0; b < B.size(); ++b)
            if (B.additive_order(b) == ord) cands[i].push_back(b);
        if (cands[i].empty()) return std::nullopt;
    }
    std::vector<std::size_t> idx(k, 0);
    while (true) {
        std::vector<Elem> imgs(k);
        for (int i = 0; i < k; ++i) imgs[i] = cands[i][idx[i]];
        std::vector<Elem> f(A.size());
        for (Elem x = 0; x < A.size(); ++x) f[x] = combine(B, G.coeffs[x], imgs);
        if (is_bijection(f, B.size()) && is_homomorphism(A, B, f)) return f;
        int j = k - 1;
        while (j >= 0 && ++idx[j] == cands[j].size()) idx[j--] = 0;
        if (j < 0) break;
    }
    return std::nullopt;
}

std::vector<std::vector<Elem>> module_homs(const Algebra& A, const Algebra& B) {
    Presented PA = present(A);
    const ZmModule& M = *PA.alg.module;
    std::vector<std::vector<Elem>> adm(M.rank());
    for (int i = 0; i < M.rank(); ++i)
        for (Elem y = 0; y < B.size(); ++y)
            if (B.scale(M.factors[i], y) == 0) adm[i].push_back(y);
    std::vector<std::vector<Elem>> out;
    std::vector<std::size_t> idx(M.rank(), 0);
    std::vector<Coords> cs = mod_elements(M);
    while (true) {
        std::vector<Elem> imgs(M.rank());
        for (int i = 0; i < M.rank(); ++i) imgs[i] = adm[i][idx[i]];
        std::vector<Elem> f(A.size());
        for (Elem x = 0; x < A.size(); ++x) f[x] = combine(B, cs[PA.to[x]], imgs);
        out.push_back(std::move(f));
        int j = M.rank() - 1;
        while (j >= 0 && ++idx[j] == adm[j].size()) idx[j--] = 0;
        if (j < 0) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace mlex
