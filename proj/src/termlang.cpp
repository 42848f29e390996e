#include "mlex/termlang.hpp"

#include <algorithm>
#include <cctype>

namespace mlex {

static TermP mk(Term t) { return std::make_shared<const Term>(std::move(t)); }

TermP t_var(const std::string& x) { return mk(Term{Term::Var, x, 0, {}}); }
TermP t_zero() { return mk(Term{Term::Zero, "", 0, {}}); }
TermP t_neg(TermP t) { return mk(Term{Term::Neg, "", 0, {std::move(t)}}); }
TermP t_plus(TermP a, TermP b) { return mk(Term{Term::Plus, "", 0, {std::move(a), std::move(b)}}); }
TermP t_scalar(int r, TermP t) { return mk(Term{Term::Scalar, "", r, {std::move(t)}}); }
TermP t_apply(const std::string& f, std::vector<TermP> args) {
    return mk(Term{Term::Apply, f, 0, std::move(args)});
}

static bool is_atom(const TermP& t) {
    return t->kind == Term::Var || t->kind == Term::Zero || t->kind == Term::Apply;
}

std::string print_term(const TermP& t, const std::string& bracket) {
    switch (t->kind) {
        case Term::Var: return t->name;
        case Term::Zero: return "0";
        case Term::Neg: {
            std::string s = print_term(t->args[0], bracket);
            return is_atom(t->args[0]) || t->args[0]->kind == Term::Neg ? "-" + s : "-(" + s + ")";
        }
        case Term::Plus: {
            std::string a = print_term(t->args[0], bracket);
            const TermP& b = t->args[1];
            if (b->kind == Term::Neg) {
                std::string s = print_term(b->args[0], bracket);
                if (b->args[0]->kind == Term::Plus) s = "(" + s + ")";
                return a + " - " + s;
            }
            std::string s = print_term(b, bracket);
            if (b->kind == Term::Plus) s = "(" + s + ")";
            return a + " + " + s;
        }
        case Term::Scalar: {
            std::string s = print_term(t->args[0], bracket);
            if (!is_atom(t->args[0])) s = "(" + s + ")";
            return std::to_string(t->r) + "*" + s;
        }
        case Term::Apply: {
            if (!bracket.empty() && t->name == bracket && t->args.size() == 2)
                return "[" + print_term(t->args[0], bracket) + "," + print_term(t->args[1], bracket) + "]";
            std::string s = t->name + "(";
            for (std::size_t i = 0; i < t->args.size(); ++i)
                s += (i ? "," : "") + print_term(t->args[i], bracket);
            return s + ")";
        }
    }
    return "?";
}

void collect_vars(const TermP& t, std::vector<std::string>& out) {
    if (t->kind == Term::Var) {
        if (std::find(out.begin(), out.end(), t->name) == out.end()) out.push_back(t->name);
        return;
    }
    for (auto& a : t->args) collect_vars(a, out);
}

int term_depth(const TermP& t) {
    int d = 0;
    for (auto& a : t->args) d = std::max(d, term_depth(a));
    return t->args.empty() ? 0 : d + 1;
}

int symbol_count(const TermP& t) {
    int c = t->kind == Term::Apply ? 1 : 0;
    for (auto& a : t->args) c += symbol_count(a);
    return c;
}

namespace {

struct Parser {
    std::string s;
    std::size_t p = 0;
    const Signature& sig;
    std::string bracket;

    void ws() {
        while (p < s.size() && isspace(static_cast<unsigned char>(s[p]))) ++p;
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError("parse error at column " + std::to_string(p + 1) + ": " + msg);
    }
    bool peek(char c) {
        ws();
        return p < s.size() && s[p] == c;
    }
    void expect(char c) {
        if (!peek(c)) fail(std::string("expected '") + c + "'");
        ++p;
    }
    bool ident_start(char c) { return isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    std::string ident() {
        ws();
        std::size_t b = p;
        while (p < s.size() && (isalnum(static_cast<unsigned char>(s[p])) || s[p] == '_' || s[p] == '\'')) ++p;
        return s.substr(b, p - b);
    }
    int arity_of(const std::string& f) {
        for (auto& [g, n] : sig)
            if (g == f) return n;
        return -1;
    }

    TermP term() { return sum(); }
    TermP sum() {
        TermP acc = prod();
        while (true) {
            if (peek('+')) {
                ++p;
                acc = t_plus(acc, prod());
            } else if (peek('-')) {
                ++p;
                acc = t_plus(acc, t_neg(prod()));
            } else {
                return acc;
            }
        }
    }
    TermP prod() {
        ws();
        if (p < s.size() && isdigit(static_cast<unsigned char>(s[p]))) {
            std::size_t b = p;
            while (p < s.size() && isdigit(static_cast<unsigned char>(s[p]))) ++p;
            std::string num = s.substr(b, p - b);
            if (peek('*')) {
                ++p;
                return t_scalar(std::stoi(num), atom());
            }
            if (num == "0") return t_zero();
            fail("numeral must be followed by '*'");
        }
        return atom();
    }
    TermP atom() {
        ws();
        if (p >= s.size()) fail("unexpected end of input");
        char c = s[p];
        if (c == '0') {
            ++p;
            return t_zero();
        }
        if (c == '-') {
            ++p;
            return t_neg(atom());
        }
        if (c == '(') {
            ++p;
            TermP t = term();
            expect(')');
            return t;
        }
        if (c == '[') {
            ++p;
            if (bracket.empty()) fail("bracket notation used but no bracket operation declared");
            TermP a = term();
            expect(',');
            TermP b = term();
            expect(']');
            return t_apply(bracket, {a, b});
        }
        if (ident_start(c)) {
            std::string id = ident();
            if (peek('(')) {
                ++p;
                int ar = arity_of(id);
                if (ar < 0) fail("unknown operation '" + id + "'");
                std::vector<TermP> args{term()};
                while (peek(',')) {
                    ++p;
                    args.push_back(term());
                }
                expect(')');
                if (static_cast<int>(args.size()) != ar)
                    fail("operation '" + id + "' expects " + std::to_string(ar) + " arguments");
                return t_apply(id, args);
            }
            if (arity_of(id) >= 0) fail("operation '" + id + "' used as a variable");
            return t_var(id);
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

}  // namespace

TermP parse_term(const std::string& text, const Signature& sig, const std::string& bracket) {
    Parser P{text, 0, sig, bracket};
    TermP t = P.term();
    P.ws();
    if (P.p != text.size()) P.fail("trailing input");
    return t;
}

Identity make_identity(TermP lhs, TermP rhs) {
    Identity id;
    collect_vars(lhs, id.vars);
    collect_vars(rhs, id.vars);
    id.lhs = std::move(lhs);
    id.rhs = std::move(rhs);
    id.text = print_term(id.lhs) + " = " + print_term(id.rhs);
    return id;
}

Identity parse_identity(const std::string& text, const Signature& sig, const std::string& bracket) {
    auto eq = text.find('=');
    if (eq == std::string::npos || text.find('=', eq + 1) != std::string::npos)
        throw ParseError("identity must contain exactly one '='");
    Identity id = make_identity(parse_term(text.substr(0, eq), sig, bracket),
                                parse_term(text.substr(eq + 1), sig, bracket));
    id.text = print_term(id.lhs, bracket) + " = " + print_term(id.rhs, bracket);
    return id;
}

Variety largest_variety(const Signature& sig) { return Variety{"mlf", sig, "", {}}; }

TermEval::TermEval(const Algebra& A, const TermP& t, const std::vector<std::string>& vars) : A_(&A) {
    build(t, vars);
    buf_.resize(nodes_.size());
}

int TermEval::build(const TermP& t, const std::vector<std::string>& vars) {
    Node n{t->kind, -1, -1, t->r, {}};
    for (auto& a : t->args) n.kids.push_back(build(a, vars));
    if (t->kind == Term::Var) {
        auto it = std::find(vars.begin(), vars.end(), t->name);
        if (it == vars.end()) throw MlexError("unbound variable " + t->name);
        n.var = static_cast<int>(it - vars.begin());
    }
    if (t->kind == Term::Apply) {
        n.op = A_->op_index(t->name);
        if (n.op < 0) throw MlexError("algebra lacks operation " + t->name);
        if (A_->ops[n.op].arity != static_cast<int>(t->args.size()))
            throw MlexError("arity mismatch for " + t->name);
    }
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
}

Elem TermEval::operator()(const std::vector<Elem>& env) const {
    Elem args[16];
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Node& n = nodes_[i];
        Elem v = 0;
        switch (n.kind) {
            case Term::Var: v = env[n.var]; break;
            case Term::Zero: v = 0; break;
            case Term::Neg: v = A_->neg(buf_[n.kids[0]]); break;
            case Term::Plus: v = A_->add(buf_[n.kids[0]], buf_[n.kids[1]]); break;
            case Term::Scalar: v = A_->scale(n.r, buf_[n.kids[0]]); break;
            case Term::Apply:
                for (std::size_t k = 0; k < n.kids.size(); ++k) args[k] = buf_[n.kids[k]];
                v = A_->apply(n.op, args);
                break;
        }
        buf_[i] = v;
    }
    return buf_.back();
}

Elem eval_term(const Algebra& A, const TermP& t, const std::vector<std::string>& vars,
               const std::vector<Elem>& env) {
    return TermEval(A, t, vars)(env);
}

std::optional<std::vector<Elem>> holds(const Algebra& A, const Identity& id) {
    TermEval L(A, id.lhs, id.vars), R(A, id.rhs, id.vars);
    std::vector<Elem> env(id.vars.size(), 0);
    do {
        if (L(env) != R(env)) return env;
    } while (next_tuple(env, A.size()));
    return std::nullopt;
}

std::optional<VarietyFailure> in_variety(const Algebra& A, const Variety& V) {
    for (std::size_t i = 0; i < V.identities.size(); ++i)
        if (auto ce = holds(A, V.identities[i])) return VarietyFailure{static_cast<int>(i), *ce};
    return std::nullopt;
}

}  // namespace mlex
