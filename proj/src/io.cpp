#include "mlex/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace mlex {

LoadError::LoadError(const std::string& src, int l, int c, const std::string& msg)
    : MlexError(src + ":" + std::to_string(l) + ":" + std::to_string(c) + ": " + msg), line(l), col(c) {}

const Algebra& Workspace::algebra(const std::string& name) const {
    auto it = algebras.find(name);
    if (it == algebras.end()) throw MlexError("unknown algebra '" + name + "'");
    return it->second;
}

Datum Workspace::datum(const std::string& Q, const std::string& I) const { return make_datum(algebra(Q), algebra(I)); }

Action Workspace::action_or_trivial(const std::string& name, const Datum& D) const {
    if (name.empty()) return trivial_action(D);
    auto it = actions.find(name);
    if (it == actions.end()) throw MlexError("unknown action '" + name + "'");
    return it->second.act;
}

Extension Workspace::extension(const std::string& name) const {
    auto it = extensions.find(name);
    if (it == extensions.end()) throw MlexError("unknown extension '" + name + "'");
    return extension_from_ideal(algebra(it->second.algebra), ideals.at(it->second.ideal).ideal);
}

void Workspace::add_algebra(const std::string& name, const Algebra& A) {
    Algebra B = A.module ? A : present(A).alg;
    B.name = name;
    std::string fs;
    for (int d : B.module->factors) fs += (fs.empty() ? "" : ",") + std::to_string(d);
    algebras[name] = B;
    algebra_module[name] = fs;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

struct Line {
    int no = 0;
    std::string text;
};

struct Section {
    std::string kind, name;
    int line = 0;
    std::vector<Line> body;
};

class Parser {
public:
    Parser(const std::string& text, std::string src) : src_(std::move(src)) {
        std::istringstream in(text);
        std::string raw;
        int no = 0;
        Section* cur = nullptr;
        while (std::getline(in, raw)) {
            ++no;
            std::string t = trim(strip_comment(raw));
            if (t.empty()) continue;
            if (t.front() == '[') {
                if (t.back() != ']') fail(no, 1, "unterminated section header");
                std::istringstream hs(t.substr(1, t.size() - 2));
                Section s;
                s.line = no;
                hs >> s.kind >> s.name;
                if (s.kind.empty()) fail(no, 2, "empty section header");
                if (s.kind != "ring" && s.name.empty()) fail(no, 2, "section '" + s.kind + "' needs a name");
                sections_.push_back(s);
                cur = &sections_.back();
                continue;
            }
            if (!cur) fail(no, 1, "content outside a section");
            cur->body.push_back({no, t});
        }
    }

    Workspace run() {
        static const std::vector<std::string> order = {"ring",   "module",   "algebra",  "ideal",    "variety",
                                                       "action", "datum",    "cocycle",  "extension", "hs"};
        for (auto& s : sections_)
            if (std::find(order.begin(), order.end(), s.kind) == order.end())
                fail(s.line, 2, "unknown section kind '" + s.kind + "'");
        for (auto& kind : order)
            for (auto& s : sections_)
                if (s.kind == kind) handle(s);
        return W_;
    }

private:
    std::string src_;
    std::vector<Section> sections_;
    Workspace W_;

    [[noreturn]] void fail(int line, int col, const std::string& msg) const { throw LoadError(src_, line, col, msg); }

    static std::string strip_comment(const std::string& s) {
        bool q = false;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '"') q = !q;
            if (s[i] == '#' && !q && (i == 0 || isspace(static_cast<unsigned char>(s[i - 1])))) return s.substr(0, i);
        }
        return s;
    }

    static bool key_value(const std::string& t, std::string& k, std::string& v) {
        auto eq = t.find('=');
        if (eq == std::string::npos) return false;
        k = trim(t.substr(0, eq));
        if (k.empty() || k.find_first_of(" :(\"") != std::string::npos) return false;
        v = trim(t.substr(eq + 1));
        return true;
    }

    static int col_of(const Line& l, const std::string& tok) {
        auto p = l.text.find(tok);
        return p == std::string::npos ? 1 : static_cast<int>(p) + 1;
    }

    static std::vector<std::string> split_top(const std::string& s, char sep) {
        std::vector<std::string> out;
        int depth = 0;
        std::string cur;
        for (char c : s) {
            if (c == '(' || c == '{' || c == '[') ++depth;
            if (c == ')' || c == '}' || c == ']') --depth;
            if (c == sep && depth == 0) {
                out.push_back(trim(cur));
                cur.clear();
            } else {
                cur += c;
            }
        }
        if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
        return out;
    }

    Elem elem(const Algebra& A, const std::string& tok0, const Line& l, bool allow_blank = false) const {
        std::string tok = trim(tok0);
        if (allow_blank && tok == "_") return 0;
        std::optional<Elem> e;
        if (!tok.empty() && (tok[0] == '(' || tok[0] == '#'))
            e = A.parse_elem(tok);
        else if (A.module && A.module->rank() == 1)
            e = A.parse_elem("(" + tok + ")");
        if (!e) fail(l.no, col_of(l, tok), "bad element '" + tok + "' of " + A.name);
        return *e;
    }

    std::vector<std::string> tuple_items(const std::string& t0, const Line& l) const {
        std::string t = trim(t0);
        if (t.size() < 2 || t.front() != '(' || t.back() != ')') fail(l.no, col_of(l, t), "expected a tuple");
        return split_top(t.substr(1, t.size() - 2), ',');
    }

    // "<head>: (<args>) -> <value>"
    void entry(const Line& l, std::string& head, std::string& args, std::string& value) const {
        auto arrow = l.text.rfind("->");
        auto colon = l.text.find(':');
        if (arrow == std::string::npos || colon == std::string::npos || colon > arrow)
            fail(l.no, 1, "expected '<head>: (<args>) -> <value>'");
        head = trim(l.text.substr(0, colon));
        args = trim(l.text.substr(colon + 1, arrow - colon - 1));
        value = trim(l.text.substr(arrow + 2));
    }

    const Algebra& alg_ref(const std::string& name, const Line& l) const {
        auto it = W_.algebras.find(name);
        if (it == W_.algebras.end()) fail(l.no, col_of(l, name), "unknown algebra '" + name + "'");
        return it->second;
    }

    std::map<std::string, std::pair<std::string, Line>> keys(const Section& s, const std::vector<std::string>& allowed,
                                                             std::vector<Line>* rest) const {
        std::map<std::string, std::pair<std::string, Line>> out;
        for (auto& l : s.body) {
            std::string k, v;
            if (key_value(l.text, k, v) && std::find(allowed.begin(), allowed.end(), k) != allowed.end()) {
                if (out.count(k)) fail(l.no, 1, "duplicate key '" + k + "'");
                out[k] = {v, l};
            } else if (rest) {
                rest->push_back(l);
            } else {
                fail(l.no, 1, "unexpected line in [" + s.kind + "]");
            }
        }
        return out;
    }

    std::string need(const std::map<std::string, std::pair<std::string, Line>>& kv, const std::string& k,
                     const Section& s) const {
        auto it = kv.find(k);
        if (it == kv.end()) fail(s.line, 1, "[" + s.kind + " " + s.name + "] is missing '" + k + "'");
        return it->second.first;
    }

    void unique(const Section& s, bool exists) const {
        if (exists) fail(s.line, 1, "duplicate " + s.kind + " '" + s.name + "'");
    }

    static std::vector<int> int_list(const std::string& v) {
        std::vector<int> out;
        for (auto& t : split_top(v, ',')) {
            std::size_t pos = 0;
            int x = std::stoi(t, &pos);
            if (pos != t.size()) throw std::invalid_argument(t);
            out.push_back(x);
        }
        return out;
    }

    void handle(const Section& s) {
        if (s.kind == "ring") {
            auto kv = keys(s, {"modulus"}, nullptr);
            try {
                W_.modulus = std::stoi(need(kv, "modulus", s));
            } catch (const std::logic_error&) {
                fail(s.line, 1, "bad modulus");
            }
            if (W_.modulus < 1) fail(s.line, 1, "modulus must be positive");
        } else if (s.kind == "module") {
            unique(s, W_.modules.count(s.name));
            auto kv = keys(s, {"factors"}, nullptr);
            try {
                W_.modules[s.name] = ZmModule(W_.modulus, int_list(need(kv, "factors", s)));
            } catch (const LoadError&) {
                throw;
            } catch (const std::exception& e) {
                fail(s.line, 1, std::string("bad module: ") + e.what());
            }
        } else if (s.kind == "algebra") {
            algebra(s);
        } else if (s.kind == "ideal") {
            unique(s, W_.ideals.count(s.name));
            auto kv = keys(s, {"algebra", "generators"}, nullptr);
            IdealDef d;
            d.algebra = need(kv, "algebra", s);
            const Algebra& A = alg_ref(d.algebra, kv.at("algebra").second);
            if (kv.count("generators"))
                for (auto& t : split_top(kv.at("generators").first, ','))
                    if (!t.empty()) d.generators.push_back(elem(A, t, kv.at("generators").second));
            d.ideal = ideal_generated(A, d.generators);
            W_.ideals[s.name] = d;
        } else if (s.kind == "variety") {
            variety(s);
        } else if (s.kind == "action") {
            action(s);
        } else if (s.kind == "datum") {
            unique(s, W_.data.count(s.name));
            auto kv = keys(s, {"Q", "I", "action"}, nullptr);
            DatumDef d{need(kv, "Q", s), need(kv, "I", s), kv.count("action") ? kv.at("action").first : ""};
            datum_check(s, d.Q, d.I, d.action);
            W_.data[s.name] = d;
        } else if (s.kind == "cocycle") {
            cocycle(s);
        } else if (s.kind == "extension") {
            unique(s, W_.extensions.count(s.name));
            auto kv = keys(s, {"algebra", "ideal"}, nullptr);
            ExtensionDef d{need(kv, "algebra", s), need(kv, "ideal", s)};
            alg_ref(d.algebra, kv.at("algebra").second);
            auto it = W_.ideals.find(d.ideal);
            if (it == W_.ideals.end() || it->second.algebra != d.algebra)
                fail(kv.at("ideal").second.no, 1, "ideal '" + d.ideal + "' is not an ideal of '" + d.algebra + "'");
            W_.extensions[s.name] = d;
        } else if (s.kind == "hs") {
            unique(s, W_.hs.count(s.name));
            auto kv = keys(s, {"algebra", "ideal", "coeff", "action"}, nullptr);
            HSDef d{need(kv, "algebra", s), need(kv, "ideal", s), need(kv, "coeff", s),
                    kv.count("action") ? kv.at("action").first : ""};
            auto it = W_.ideals.find(d.ideal);
            if (it == W_.ideals.end() || it->second.algebra != d.algebra)
                fail(s.line, 1, "ideal '" + d.ideal + "' is not an ideal of '" + d.algebra + "'");
            datum_check(s, d.algebra, d.coeff, d.action);
            W_.hs[s.name] = d;
        }
    }

    void datum_check(const Section& s, const std::string& Q, const std::string& I, const std::string& act) const {
        if (!W_.algebras.count(Q)) fail(s.line, 1, "unknown algebra '" + Q + "'");
        if (!W_.algebras.count(I)) fail(s.line, 1, "unknown algebra '" + I + "'");
        try {
            make_datum(W_.algebras.at(Q), W_.algebras.at(I));
        } catch (const MlexError& e) {
            fail(s.line, 1, e.what());
        }
        if (act.empty()) return;
        auto it = W_.actions.find(act);
        if (it == W_.actions.end()) fail(s.line, 1, "unknown action '" + act + "'");
        if (it->second.Q != Q || it->second.I != I)
            fail(s.line, 1, "action '" + act + "' belongs to (" + it->second.Q + ", " + it->second.I + ")");
    }

    void algebra(const Section& s) {
        unique(s, W_.algebras.count(s.name));
        std::vector<Line> rest;
        auto kv = keys(s, {"module"}, &rest);
        std::string modname = need(kv, "module", s);
        ZmModule M;
        if (W_.modules.count(modname)) {
            M = W_.modules.at(modname);
        } else {
            try {
                M = ZmModule(W_.modulus, int_list(modname));
            } catch (const std::exception&) {
                fail(kv.at("module").second.no, 1, "unknown module '" + modname + "'");
            }
        }
        Algebra tmp = make_algebra(s.name, M, {});
        std::vector<MultilinearOp> ops;
        for (auto& l : rest) {
            if (l.text.rfind("op ", 0) != 0) fail(l.no, 1, "expected 'op <f>/<arity>'");
            std::string decl = l.text.substr(3), args, value;
            bool has_entry = l.text.find("->") != std::string::npos;
            if (has_entry) {
                std::string head;
                entry(l, head, args, value);
                decl = trim(head.substr(3));
            }
            auto slash = decl.find('/');
            if (slash == std::string::npos) fail(l.no, 4, "expected '<f>/<arity>'");
            std::string f = trim(decl.substr(0, slash));
            int ar = 0;
            try {
                ar = std::stoi(decl.substr(slash + 1));
            } catch (const std::exception&) {
                fail(l.no, col_of(l, "/") + 1, "bad arity");
            }
            if (ar < 1) fail(l.no, col_of(l, "/") + 1, "arity must be at least 1");
            auto it = std::find_if(ops.begin(), ops.end(), [&](const MultilinearOp& o) { return o.name == f; });
            if (it == ops.end()) {
                ops.push_back(MultilinearOp{f, ar, {}});
                it = ops.end() - 1;
            } else if (it->arity != ar) {
                fail(l.no, 4, "arity of '" + f + "' redeclared");
            }
            if (!has_entry) continue;
            auto items = tuple_items(args, l);
            if (static_cast<int>(items.size()) != ar) fail(l.no, col_of(l, args), "wrong number of generator indices");
            std::vector<int> g;
            for (auto& t : items) {
                int i = 0;
                try {
                    i = std::stoi(t);
                } catch (const std::exception&) {
                    fail(l.no, col_of(l, args), "bad generator index '" + t + "'");
                }
                if (i < 1 || i > M.rank()) fail(l.no, col_of(l, args), "generator index out of range");
                g.push_back(i - 1);
            }
            it->constants[g] = elem(tmp, value, l);
        }
        Algebra A = make_algebra(s.name, M, ops);
        if (auto v = module_violation(A)) fail(s.line, 1, "algebra " + s.name + ": " + *v);
        if (auto v = multilinearity_violation(A)) fail(s.line, 1, "algebra " + s.name + ": " + *v);
        W_.algebras[s.name] = A;
        W_.algebra_module[s.name] = modname;
    }

    void variety(const Section& s) {
        unique(s, W_.varieties.count(s.name));
        std::vector<Line> rest;
        auto kv = keys(s, {"signature", "bracket"}, &rest);
        Variety V;
        V.name = s.name;
        if (kv.count("signature"))
            for (auto& t : split_top(kv.at("signature").first, ',')) {
                auto slash = t.find('/');
                const Line& l = kv.at("signature").second;
                if (slash == std::string::npos) fail(l.no, col_of(l, t), "expected '<f>/<arity>'");
                try {
                    V.sig.emplace_back(trim(t.substr(0, slash)), std::stoi(t.substr(slash + 1)));
                } catch (const std::exception&) {
                    fail(l.no, col_of(l, t), "bad arity");
                }
            }
        if (kv.count("bracket")) V.bracket = kv.at("bracket").first;
        for (auto& l : rest) {
            if (l.text.rfind("identity", 0) != 0) fail(l.no, 1, "expected 'identity \"<lhs> = <rhs>\"'");
            auto a = l.text.find('"'), b = l.text.rfind('"');
            if (a == std::string::npos || b == a) fail(l.no, 10, "identity text must be quoted");
            try {
                V.identities.push_back(parse_identity(l.text.substr(a + 1, b - a - 1), V.sig, V.bracket));
            } catch (const MlexError& e) {
                fail(l.no, static_cast<int>(a) + 2, e.what());
            }
        }
        W_.varieties[s.name] = V;
    }

    std::pair<int, unsigned> action_head(const std::string& head, const Line& l, const Datum& D) const {
        if (head.rfind("a(", 0) != 0 || head.back() != ')') fail(l.no, 1, "expected 'a(<f>,<s>)'");
        std::string inner = head.substr(2, head.size() - 3);
        auto comma = inner.find(',');
        if (comma == std::string::npos) fail(l.no, 1, "expected 'a(<f>,<s>)'");
        std::string f = trim(inner.substr(0, comma)), ss = trim(inner.substr(comma + 1));
        int k = D.Q.op_index(f);
        if (k < 0) fail(l.no, 3, "unknown operation '" + f + "'");
        if (!ss.empty() && ss.front() == '{') ss = ss.substr(1, ss.size() - 2);
        unsigned s = 0;
        int n = D.arity(k);
        for (auto& t : split_top(ss, ',')) {
            int i = 0;
            try {
                i = std::stoi(t);
            } catch (const std::exception&) {
                fail(l.no, col_of(l, ss), "bad position '" + t + "'");
            }
            if (i < 1 || i > n) fail(l.no, col_of(l, ss), "position out of range");
            s |= 1u << (i - 1);
        }
        if (s == 0 || s == full_mask(n)) fail(l.no, col_of(l, ss), "s must be a nonempty proper subset");
        return {k, s};
    }

    void action(const Section& s) {
        unique(s, W_.actions.count(s.name));
        std::vector<Line> rest;
        auto kv = keys(s, {"Q", "I"}, &rest);
        ActionDef d{need(kv, "Q", s), need(kv, "I", s), {}};
        datum_check(s, d.Q, d.I, "");
        Datum D = W_.datum(d.Q, d.I);
        d.act = trivial_action(D);
        for (auto& l : rest) {
            std::string head, args, value;
            entry(l, head, args, value);
            auto [k, sm] = action_head(head, l, D);
            int n = D.arity(k);
            std::string inner = trim(args);
            if (inner.size() < 2 || inner.front() != '(' || inner.back() != ')') fail(l.no, col_of(l, args), "expected '(<q> | <a>)'");
            auto bar = split_top(inner.substr(1, inner.size() - 2), '|');
            if (bar.size() != 2) fail(l.no, col_of(l, args), "expected '(<q> | <a>)'");
            auto qs = split_top(bar[0], ','), as = split_top(bar[1], ',');
            if (static_cast<int>(qs.size()) != n || static_cast<int>(as.size()) != n)
                fail(l.no, col_of(l, args), "tuples must have length " + std::to_string(n));
            std::vector<Elem> q(n), a(n);
            for (int i = 0; i < n; ++i) {
                q[i] = (sm >> i & 1u) ? 0 : elem(D.Q, qs[i], l, true);
                a[i] = (sm >> i & 1u) ? elem(D.I, as[i], l, true) : 0;
            }
            d.act.tab[k][sm][d.act.code(k, sm, q.data(), a.data())] = elem(D.I, value, l);
        }
        if (auto v = validate_action(D, d.act)) fail(s.line, 1, "action " + s.name + ": " + *v);
        W_.actions[s.name] = d;
    }

    void cocycle(const Section& s) {
        unique(s, W_.cocycles.count(s.name));
        std::vector<Line> rest;
        auto kv = keys(s, {"Q", "I", "action"}, &rest);
        CocycleDef d{need(kv, "Q", s), need(kv, "I", s), kv.count("action") ? kv.at("action").first : "", {}};
        datum_check(s, d.Q, d.I, d.action);
        Datum D = W_.datum(d.Q, d.I);
        d.T = zero_cocycle(D, W_.action_or_trivial(d.action, D));
        int qn = D.Q.size();
        for (auto& l : rest) {
            std::string head, args, value;
            entry(l, head, args, value);
            auto items = tuple_items(args, l);
            std::vector<Elem> x;
            for (auto& t : items) x.push_back(elem(D.Q, t, l));
            Elem v = elem(D.I, value, l);
            if (head == "Tplus") {
                if (x.size() != 2) fail(l.no, col_of(l, args), "Tplus takes two arguments");
                d.T.tplus[x[0] * qn + x[1]] = v;
            } else if (head.rfind("Tr ", 0) == 0) {
                int r = 0;
                try {
                    r = std::stoi(head.substr(3));
                } catch (const std::exception&) {
                    fail(l.no, 4, "bad scalar");
                }
                if (r < 0 || r >= W_.modulus) fail(l.no, 4, "scalar out of range");
                if (x.size() != 1) fail(l.no, col_of(l, args), "Tr takes one argument");
                d.T.tr[r][x[0]] = v;
            } else if (head.size() > 1 && head[0] == 'T') {
                int k = D.Q.op_index(head.substr(1));
                if (k < 0) fail(l.no, 2, "unknown operation '" + head.substr(1) + "'");
                if (static_cast<int>(x.size()) != D.arity(k)) fail(l.no, col_of(l, args), "wrong arity");
                d.T.tf[k][tuple_code(x.data(), D.arity(k), qn)] = v;
            } else {
                fail(l.no, 1, "expected Tplus, Tr <r> or T<f>");
            }
        }
        if (auto v = validate_cocycle(D, d.T)) fail(s.line, 1, "cocycle " + s.name + ": " + *v);
        W_.cocycles[s.name] = d;
    }
};

std::string el(const Algebra& A, Elem e) {
    if (A.module && A.module->rank() == 1) return std::to_string(e);
    return A.format(e);
}

std::string tuple(const Algebra& A, const std::vector<Elem>& t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + el(A, t[i]);
    return s + ")";
}

}  // namespace

Workspace parse_workspace(const std::string& text, const std::string& source) {
    return Parser(text, source).run();
}

Workspace load_workspace(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MlexError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_workspace(ss.str(), path);
}

std::string format_action_entries(const Datum& D, const Action& act) {
    std::ostringstream os;
    for (int k = 0; k < D.nops(); ++k) {
        int n = D.arity(k);
        std::vector<Elem> q(n), a(n);
        for (unsigned s = 1; n > 0 && s < full_mask(n); ++s)
            for (std::size_t c = 0; c < act.tab[k][s].size(); ++c) {
                Elem v = act.tab[k][s][c];
                if (!v) continue;
                act.decode(k, s, c, q.data(), a.data());
                std::string qs, as;
                for (int i = 0; i < n; ++i) {
                    bool in = s >> i & 1u;
                    qs += (i ? "," : "") + (in ? std::string("_") : el(D.Q, q[i]));
                    as += (i ? "," : "") + (in ? el(D.I, a[i]) : std::string("_"));
                }
                os << "a(" << D.Q.ops[k].name << "," << mask_string(s, n) << "): (" << qs << " | " << as
                   << ") -> " << el(D.I, v) << "\n";
            }
    }
    return os.str();
}

std::string format_cocycle_entries(const Datum& D, const Cocycle& T) {
    std::ostringstream os;
    int qn = D.Q.size();
    for (Elem x = 0; x < qn; ++x)
        for (Elem y = 0; y < qn; ++y)
            if (Elem v = T.tplus[x * qn + y]) os << "Tplus: " << tuple(D.Q, {x, y}) << " -> " << el(D.I, v) << "\n";
    for (std::size_t r = 0; r < T.tr.size(); ++r)
        for (Elem x = 0; x < qn; ++x)
            if (Elem v = T.tr[r][x]) os << "Tr " << r << ": " << tuple(D.Q, {x}) << " -> " << el(D.I, v) << "\n";
    for (int k = 0; k < D.nops(); ++k) {
        int n = D.arity(k);
        std::vector<Elem> t(n, 0);
        std::size_t c = 0;
        do {
            if (Elem v = T.tf[k][c]) os << "T" << D.Q.ops[k].name << ": " << tuple(D.Q, t) << " -> " << el(D.I, v) << "\n";
            ++c;
        } while (next_tuple(t, qn));
    }
    return os.str();
}

std::string save_workspace(const Workspace& W) {
    std::ostringstream os;
    os << "[ring]\nmodulus = " << W.modulus << "\n";
    for (auto& [name, M] : W.modules) {
        os << "\n[module " << name << "]\nfactors = ";
        for (int i = 0; i < M.rank(); ++i) os << (i ? "," : "") << M.factors[i];
        os << "\n";
    }
    for (auto& [name, A] : W.algebras) {
        os << "\n[algebra " << name << "]\nmodule = " << W.algebra_module.at(name) << "\n";
        for (auto& op : structure_constants(A)) {
            bool any = false;
            for (auto& [g, v] : op.constants) {
                if (!v) continue;
                any = true;
                os << "op " << op.name << "/" << op.arity << ": (";
                for (std::size_t i = 0; i < g.size(); ++i) os << (i ? "," : "") << g[i] + 1;
                os << ") -> " << el(A, v) << "\n";
            }
            if (!any) os << "op " << op.name << "/" << op.arity << "\n";
        }
    }
    for (auto& [name, d] : W.ideals) {
        const Algebra& A = W.algebra(d.algebra);
        os << "\n[ideal " << name << "]\nalgebra = " << d.algebra << "\ngenerators = ";
        for (std::size_t i = 0; i < d.generators.size(); ++i) os << (i ? ", " : "") << el(A, d.generators[i]);
        os << "\n";
    }
    for (auto& [name, V] : W.varieties) {
        os << "\n[variety " << name << "]\nsignature = ";
        for (std::size_t i = 0; i < V.sig.size(); ++i) os << (i ? ", " : "") << V.sig[i].first << "/" << V.sig[i].second;
        os << "\n";
        if (!V.bracket.empty()) os << "bracket = " << V.bracket << "\n";
        for (auto& id : V.identities)
            os << "identity \"" << print_term(id.lhs, V.bracket) << " = " << print_term(id.rhs, V.bracket) << "\"\n";
    }
    for (auto& [name, d] : W.actions) {
        os << "\n[action " << name << "]\nQ = " << d.Q << "\nI = " << d.I << "\n";
        os << format_action_entries(W.datum(d.Q, d.I), d.act);
    }
    for (auto& [name, d] : W.data) {
        os << "\n[datum " << name << "]\nQ = " << d.Q << "\nI = " << d.I << "\n";
        if (!d.action.empty()) os << "action = " << d.action << "\n";
    }
    for (auto& [name, d] : W.cocycles) {
        os << "\n[cocycle " << name << "]\nQ = " << d.Q << "\nI = " << d.I << "\n";
        if (!d.action.empty()) os << "action = " << d.action << "\n";
        os << format_cocycle_entries(W.datum(d.Q, d.I), d.T);
    }
    for (auto& [name, d] : W.extensions)
        os << "\n[extension " << name << "]\nalgebra = " << d.algebra << "\nideal = " << d.ideal << "\n";
    for (auto& [name, d] : W.hs) {
        os << "\n[hs " << name << "]\nalgebra = " << d.algebra << "\nideal = " << d.ideal << "\ncoeff = " << d.coeff
           << "\n";
        if (!d.action.empty()) os << "action = " << d.action << "\n";
    }
    return os.str();
}

}  // namespace mlex
