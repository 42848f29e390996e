#include "mlex/expander.hpp"

#include <algorithm>
#include <map>

namespace mlex {

namespace {

MonoP finish(Mono m) {
    std::string k;
    int sym = 0;
    bool fs = false, act = false;
    auto qkey = [](const TermP& t) { return "Q:" + print_term(t); };
    switch (m.kind) {
        case Mono::IVar:
            k = "v" + std::to_string(m.var);
            break;
        case Mono::IApply:
            k = m.op + "(";
            sym = 1;
            for (std::size_t i = 0; i < m.a.size(); ++i) {
                k += (i ? "," : "") + m.a[i]->key;
                sym += m.a[i]->symbols;
                fs |= m.a[i]->factor_set;
                act |= m.a[i]->action;
            }
            k += ")";
            break;
        case Mono::Act:
            act = true;
            sym = 1;
            k = "act[" + m.op + "," + std::to_string(m.s) + "](";
            for (std::size_t i = 0; i < m.a.size(); ++i) {
                k += i ? "," : "";
                if (m.s & (1u << i)) {
                    k += m.a[i]->key;
                    sym += m.a[i]->symbols;
                    fs |= m.a[i]->factor_set;
                } else {
                    k += qkey(m.q[i]);
                    sym += symbol_count(m.q[i]);
                }
            }
            k += ")";
            break;
        case Mono::TPlus:
        case Mono::TScal:
        case Mono::TOp:
            fs = true;
            sym = 1;
            k = m.kind == Mono::TPlus ? "T+(" : m.kind == Mono::TScal ? "Tr" + std::to_string(m.r) + "(" : "T" + m.op + "(";
            for (std::size_t i = 0; i < m.q.size(); ++i) {
                k += (i ? "," : "") + qkey(m.q[i]);
                sym += symbol_count(m.q[i]);
            }
            k += ")";
            break;
    }
    m.key = std::move(k);
    m.symbols = sym;
    m.factor_set = fs;
    m.action = act;
    return std::make_shared<const Mono>(std::move(m));
}

bool atomic_q(const TermP& t) { return t->kind == Term::Var || t->kind == Term::Zero || t->kind == Term::Apply; }

}  // namespace

Expander::Expander(const Signature& sig, int modulus, std::string bracket)
    : sig_(sig), m_(modulus), bracket_(std::move(bracket)) {
    int binary = 0;
    for (auto& [f, n] : sig_)
        if (n == 2) {
            ++binary;
            infix_op_ = f;
        }
    if (binary != 1) infix_op_.clear();
}

Poly Expander::normalize(Poly p) const {
    std::map<std::string, Summand> acc;
    for (auto& s : p) {
        auto it = acc.find(s.mono->key);
        if (it == acc.end())
            acc.emplace(s.mono->key, Summand{mod_norm(s.coef, m_), s.mono});
        else
            it->second.coef = mod_norm(it->second.coef + s.coef, m_);
    }
    Poly out;
    for (auto& [k, s] : acc)
        if (s.coef != 0) out.push_back(s);
    return out;
}

Poly Expander::combine(const Poly& a, const Poly& b) const {
    Poly c = a;
    c.insert(c.end(), b.begin(), b.end());
    return normalize(std::move(c));
}

Poly Expander::scaled(const Poly& a, int r) const {
    Poly c = a;
    for (auto& s : c) s.coef = mod_norm(static_cast<long long>(s.coef) * r, m_);
    return normalize(std::move(c));
}

SplitTerm Expander::expand(const TermP& t, const std::vector<std::string>& vars) const {
    // first coordinate as a single polynomial, then classify
    struct Rec {
        const Expander& E;
        const std::vector<std::string>& vars;
        std::pair<TermP, Poly> go(const TermP& t) {
            switch (t->kind) {
                case Term::Var: {
                    auto it = std::find(vars.begin(), vars.end(), t->name);
                    if (it == vars.end()) throw MlexError("unbound variable " + t->name);
                    Mono m;
                    m.kind = Mono::IVar;
                    m.var = static_cast<int>(it - vars.begin());
                    return {t, Poly{{1, finish(m)}}};
                }
                case Term::Zero:
                    return {t, {}};
                case Term::Plus: {
                    auto [q1, p1] = go(t->args[0]);
                    auto [q2, p2] = go(t->args[1]);
                    Mono m;
                    m.kind = Mono::TPlus;
                    m.q = {q1, q2};
                    Poly p = E.combine(p1, p2);
                    p = E.combine(p, Poly{{1, finish(m)}});
                    return {t_plus(q1, q2), p};
                }
                case Term::Neg: {
                    auto [q1, p1] = go(t->args[0]);
                    TermP nq = t_neg(q1);
                    Mono m;
                    m.kind = Mono::TPlus;
                    m.q = {q1, nq};
                    Poly p = E.scaled(p1, -1);
                    p = E.combine(p, Poly{{E.m_ - 1, finish(m)}});
                    return {nq, p};
                }
                case Term::Scalar: {
                    int r = mod_norm(t->r, E.m_);
                    auto [q1, p1] = go(t->args[0]);
                    Mono m;
                    m.kind = Mono::TScal;
                    m.r = r;
                    m.q = {q1};
                    Poly p = E.combine(E.scaled(p1, r), Poly{{1, finish(m)}});
                    return {t_scalar(r, q1), p};
                }
                case Term::Apply: {
                    int n = static_cast<int>(t->args.size());
                    std::vector<TermP> qs;
                    std::vector<Poly> ps;
                    for (auto& a : t->args) {
                        auto [q, p] = go(a);
                        qs.push_back(q);
                        ps.push_back(p);
                    }
                    Poly out;
                    // f^I and the action terms: expand multilinearly over chosen slots
                    auto expand_slots = [&](unsigned slots, auto make) {
                        std::vector<std::size_t> idx(n, 0);
                        for (int i = 0; i < n; ++i)
                            if ((slots & (1u << i)) && ps[i].empty()) return;
                        while (true) {
                            long long coef = 1;
                            std::vector<MonoP> ms(n);
                            for (int i = 0; i < n; ++i)
                                if (slots & (1u << i)) {
                                    coef = coef * ps[i][idx[i]].coef % E.m_;
                                    ms[i] = ps[i][idx[i]].mono;
                                }
                            out.push_back({static_cast<int>(coef), make(ms)});
                            int k = n - 1;
                            for (; k >= 0; --k) {
                                if (!(slots & (1u << k))) continue;
                                if (++idx[k] < ps[k].size()) break;
                                idx[k] = 0;
                            }
                            if (k < 0) break;
                        }
                    };
                    expand_slots(full_mask(n), [&](const std::vector<MonoP>& ms) {
                        Mono m;
                        m.kind = Mono::IApply;
                        m.op = t->name;
                        m.a = ms;
                        return finish(m);
                    });
                    for (unsigned s = 1; n > 0 && s < full_mask(n); ++s)
                        expand_slots(s, [&](const std::vector<MonoP>& ms) {
                            Mono m;
                            m.kind = Mono::Act;
                            m.op = t->name;
                            m.s = s;
                            m.a = ms;
                            m.q.resize(n);
                            for (int i = 0; i < n; ++i)
                                if (!(s & (1u << i))) m.q[i] = qs[i];
                            return finish(m);
                        });
                    Mono m;
                    m.kind = Mono::TOp;
                    m.op = t->name;
                    m.q = qs;
                    out.push_back({1, finish(m)});
                    return {t_apply(t->name, qs), E.normalize(out)};
                }
            }
            throw MlexError("bad term");
        }
    };
    Rec rec{*this, vars};
    auto [q, p] = rec.go(t);
    SplitTerm st;
    st.q = q;
    for (auto& s : p) {
        if (s.mono->factor_set)
            st.del.push_back(s);
        else if (s.mono->action)
            st.star.push_back(s);
        else
            st.pure.push_back(s);
    }
    return st;
}

ExpandedIdentity Expander::expand_identity(const Identity& id, Emit kind, bool cancel) const {
    SplitTerm L = expand(id.lhs, id.vars), R = expand(id.rhs, id.vars);
    ExpandedIdentity e;
    e.kind = kind;
    auto pick = [&](const SplitTerm& s) {
        if (kind == Emit::Action) return s.star;
        if (kind == Emit::Strict) return s.del;
        return combine(s.star, s.del);
    };
    e.lhs = pick(L);
    e.rhs = pick(R);
    if (cancel) {
        std::map<std::string, int> rc;
        for (auto& s : e.rhs) rc[s.mono->key] = s.coef;
        std::map<std::string, bool> drop;
        for (auto& s : e.lhs) {
            auto it = rc.find(s.mono->key);
            if (it != rc.end() && it->second == s.coef) drop[s.mono->key] = true;
        }
        auto keep = [&](const Summand& s) { return drop.count(s.mono->key) == 0; };
        Poly l2, r2;
        std::copy_if(e.lhs.begin(), e.lhs.end(), std::back_inserter(l2), keep);
        std::copy_if(e.rhs.begin(), e.rhs.end(), std::back_inserter(r2), keep);
        e.lhs = l2;
        e.rhs = r2;
    }
    return e;
}

std::string Expander::iname(int i, const std::vector<std::string>& vars) const {
    bool letters = vars.size() <= 20;
    for (auto& v : vars) letters &= v.size() == 1 && v[0] >= 'n' && v[0] <= 'z';
    if (letters) return std::string(1, static_cast<char>('a' + i));
    return "a_" + vars[i];
}

std::string Expander::print_q(const TermP& t) const { return print_term(t, bracket_); }

std::string Expander::print_mono(const MonoP& m, const std::vector<std::string>& vars) const {
    auto operand_i = [&](const MonoP& x) {
        std::string s = print_mono(x, vars);
        bool infix = x->kind == Mono::Act && x->op == infix_op_ && !infix_op_.empty();
        return infix ? "(" + s + ")" : s;
    };
    auto operand_q = [&](const TermP& t) {
        std::string s = print_q(t);
        return atomic_q(t) ? s : "(" + s + ")";
    };
    switch (m->kind) {
        case Mono::IVar:
            return iname(m->var, vars);
        case Mono::IApply: {
            if (!bracket_.empty() && m->op == bracket_ && m->a.size() == 2)
                return "[" + print_mono(m->a[0], vars) + "," + print_mono(m->a[1], vars) + "]";
            std::string s = m->op + "(";
            for (std::size_t i = 0; i < m->a.size(); ++i) s += (i ? "," : "") + print_mono(m->a[i], vars);
            return s + ")";
        }
        case Mono::Act: {
            int n = static_cast<int>(m->a.size());
            if (!infix_op_.empty() && m->op == infix_op_ && n == 2) {
                if (m->s == 1u) return operand_i(m->a[0]) + " ∘ " + operand_q(m->q[1]);
                return operand_q(m->q[0]) + " ∗ " + operand_i(m->a[1]);
            }
            std::string s = "a(" + m->op + "," + mask_string(m->s, n) + ")(";
            for (int i = 0; i < n; ++i) {
                s += i ? "," : "";
                s += (m->s & (1u << i)) ? print_mono(m->a[i], vars) : print_q(m->q[i]);
            }
            return s + ")";
        }
        case Mono::TPlus:
            return "T_+(" + print_q(m->q[0]) + "," + print_q(m->q[1]) + ")";
        case Mono::TScal:
            return "T_{" + std::to_string(m->r) + "}(" + print_q(m->q[0]) + ")";
        case Mono::TOp: {
            std::string s = "T_" + m->op + "(";
            for (std::size_t i = 0; i < m->q.size(); ++i) s += (i ? "," : "") + print_q(m->q[i]);
            return s + ")";
        }
    }
    return "?";
}

std::string Expander::print_sum(Poly p, const std::vector<std::string>& vars) const {
    if (p.empty()) return "0";
    std::vector<std::pair<std::pair<int, std::string>, int>> items;
    for (auto& s : p) items.push_back({{s.mono->symbols, print_mono(s.mono, vars)}, s.coef});
    std::sort(items.begin(), items.end());
    std::string out;
    bool first = true;
    for (auto& [k, c] : items) {
        const std::string& body = k.second;
        if (c == 1) {
            out += first ? body : " + " + body;
        } else if (c == m_ - 1 && m_ > 2) {
            out += first ? "-" + body : " - " + body;
        } else {
            out += (first ? "" : " + ") + std::to_string(c) + "*" + body;
        }
        first = false;
    }
    return out;
}

std::string Expander::print_poly(const Poly& p, const std::vector<std::string>& vars) const {
    return print_sum(p, vars);
}

std::string Expander::print(const ExpandedIdentity& e, const std::vector<std::string>& vars) const {
    return print_sum(e.lhs, vars) + " = " + print_sum(e.rhs, vars);
}

static std::string sexpr_q(const TermP& t) {
    switch (t->kind) {
        case Term::Var: return t->name;
        case Term::Zero: return "0";
        case Term::Neg: return "(- " + sexpr_q(t->args[0]) + ")";
        case Term::Plus: return "(+ " + sexpr_q(t->args[0]) + " " + sexpr_q(t->args[1]) + ")";
        case Term::Scalar: return "(* " + std::to_string(t->r) + " " + sexpr_q(t->args[0]) + ")";
        case Term::Apply: {
            std::string s = "(" + t->name;
            for (auto& a : t->args) s += " " + sexpr_q(a);
            return s + ")";
        }
    }
    return "?";
}

std::string Expander::sexpr_mono(const MonoP& m, const std::vector<std::string>& vars) const {
    switch (m->kind) {
        case Mono::IVar: return iname(m->var, vars);
        case Mono::IApply: {
            std::string s = "(" + m->op;
            for (auto& a : m->a) s += " " + sexpr_mono(a, vars);
            return s + ")";
        }
        case Mono::Act: {
            int n = static_cast<int>(m->a.size());
            std::string s = "(act " + m->op + " (";
            bool first = true;
            for (int i = 0; i < n; ++i)
                if (m->s & (1u << i)) {
                    s += (first ? "" : " ") + std::to_string(i + 1);
                    first = false;
                }
            s += ")";
            for (int i = 0; i < n; ++i) s += " " + ((m->s & (1u << i)) ? sexpr_mono(m->a[i], vars) : sexpr_q(m->q[i]));
            return s + ")";
        }
        case Mono::TPlus: return "(T+ " + sexpr_q(m->q[0]) + " " + sexpr_q(m->q[1]) + ")";
        case Mono::TScal: return "(Tr " + std::to_string(m->r) + " " + sexpr_q(m->q[0]) + ")";
        case Mono::TOp: {
            std::string s = "(T " + m->op;
            for (auto& q : m->q) s += " " + sexpr_q(q);
            return s + ")";
        }
    }
    return "?";
}

std::string Expander::sexpr(const ExpandedIdentity& e, const std::vector<std::string>& vars) const {
    auto side = [&](const Poly& p) {
        std::vector<std::pair<std::pair<int, std::string>, int>> items;
        for (auto& s : p) items.push_back({{s.mono->symbols, sexpr_mono(s.mono, vars)}, s.coef});
        std::sort(items.begin(), items.end());
        std::string out = "(+";
        for (auto& [k, c] : items) out += c == 1 ? " " + k.second : " (* " + std::to_string(c) + " " + k.second + ")";
        return out + ")";
    };
    return "(= " + side(e.lhs) + " " + side(e.rhs) + ")";
}

Elem eval_mono(const Datum& D, const Cocycle& T, const MonoP& m, const std::vector<std::string>& vars,
               const std::vector<Elem>& as, const std::vector<Elem>& xs) {
    const Algebra &Q = D.Q, &I = D.I;
    auto qv = [&](const TermP& t) { return eval_term(Q, t, vars, xs); };
    int qn = Q.size();
    switch (m->kind) {
        case Mono::IVar: return as[m->var];
        case Mono::IApply: {
            std::vector<Elem> a;
            for (auto& x : m->a) a.push_back(eval_mono(D, T, x, vars, as, xs));
            return I.apply(I.op_index(m->op), a);
        }
        case Mono::Act: {
            int n = static_cast<int>(m->a.size());
            std::vector<Elem> q(n, 0), a(n, 0);
            for (int i = 0; i < n; ++i) {
                if (m->s & (1u << i))
                    a[i] = eval_mono(D, T, m->a[i], vars, as, xs);
                else
                    q[i] = qv(m->q[i]);
            }
            return T.act.eval(Q.op_index(m->op), m->s, q.data(), a.data());
        }
        case Mono::TPlus: return T.tplus[qv(m->q[0]) * qn + qv(m->q[1])];
        case Mono::TScal: return T.tr[m->r][qv(m->q[0])];
        case Mono::TOp: {
            std::vector<Elem> q;
            for (auto& t : m->q) q.push_back(qv(t));
            int k = Q.op_index(m->op);
            return T.tf[k][tuple_code(q.data(), static_cast<int>(q.size()), qn)];
        }
    }
    return 0;
}

Elem eval_poly(const Datum& D, const Cocycle& T, const Poly& p, const std::vector<std::string>& vars,
               const std::vector<Elem>& as, const std::vector<Elem>& xs) {
    Elem acc = 0;
    for (auto& s : p) acc = D.I.add(acc, D.I.scale(s.coef, eval_mono(D, T, s.mono, vars, as, xs)));
    return acc;
}

bool Expander::compatible(const Datum& D, const Cocycle& T, const Variety& V) const {
    std::vector<Identity> ids = module_axioms(m_, sig_);
    ids.insert(ids.end(), V.identities.begin(), V.identities.end());
    for (auto& id : ids) {
        if (holds(D.I, id)) return false;
        ExpandedIdentity e = expand_identity(id, Emit::General, false);
        std::size_t nv = id.vars.size();
        std::vector<Elem> as(nv, 0), xs(nv, 0);
        do {
            std::fill(as.begin(), as.end(), 0);
            do {
                if (eval_poly(D, T, e.lhs, id.vars, as, xs) != eval_poly(D, T, e.rhs, id.vars, as, xs)) return false;
            } while (next_tuple(as, D.I.size()));
        } while (next_tuple(xs, D.Q.size()));
    }
    return true;
}

std::vector<Identity> module_axioms(int m, const Signature& sig) {
    std::vector<Identity> out;
    auto x = t_var("x"), y = t_var("y"), z = t_var("z");
    out.push_back(make_identity(t_plus(x, t_plus(y, z)), t_plus(t_plus(x, y), z)));
    out.push_back(make_identity(t_plus(x, y), t_plus(y, x)));
    out.push_back(make_identity(t_plus(x, t_zero()), x));
    out.push_back(make_identity(t_plus(x, t_neg(x)), t_zero()));
    out.push_back(make_identity(t_scalar(1, x), x));
    for (int r = 0; r < m; ++r) {
        for (int s = 0; s < m; ++s) {
            out.push_back(make_identity(t_scalar((r + s) % m, x), t_plus(t_scalar(r, x), t_scalar(s, x))));
            out.push_back(make_identity(t_scalar((r * s) % m, x), t_scalar(r, t_scalar(s, x))));
        }
        out.push_back(make_identity(t_scalar(r, t_plus(x, y)), t_plus(t_scalar(r, x), t_scalar(r, y))));
    }
    for (auto& [f, n] : sig) {
        for (int pos = 0; pos < n; ++pos) {
            for (int r = 1; r < m || (m == 1 && r == 1); ++r) {
                std::vector<TermP> lhs, ru, rv;
                for (int i = 0; i < n; ++i) {
                    if (i == pos) {
                        lhs.push_back(t_plus(t_scalar(r, t_var("u")), t_var("v")));
                        ru.push_back(t_var("u"));
                        rv.push_back(t_var("v"));
                    } else {
                        auto w = t_var("w" + std::to_string(i + 1));
                        lhs.push_back(w);
                        ru.push_back(w);
                        rv.push_back(w);
                    }
                }
                out.push_back(make_identity(t_apply(f, lhs), t_plus(t_scalar(r, t_apply(f, ru)), t_apply(f, rv))));
            }
        }
    }
    return out;
}

}  // namespace mlex
