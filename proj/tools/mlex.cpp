#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "mlex/decompose.hpp"
#include "mlex/derlie.hpp"
#include "mlex/expander.hpp"
#include "mlex/format.hpp"
#include "mlex/hs.hpp"
#include "mlex/io.hpp"

using namespace mlex;
using json = nlohmann::ordered_json;

namespace {

struct Options {
    std::string file, name, a, b, variety, kind = "solvable", emit = "general";
    long long budget = 1LL << 20;
    int depth = 3;
    unsigned seed = 1;
    bool emend = false, as_json = false, raw = false, sexpr = false, all_actions = false;
};

// Text report plus machine-readable mirror; exit code 1 marks a violated
// property and carries a reloadable counterexample.
struct Out {
    std::vector<std::string> lines;
    json data = json::object();
    int code = 0;
    std::string counterexample;

    void line(const std::string& s) { lines.push_back(s); }
    void violate(const std::string& s) {
        code = 1;
        line("FAIL " + s);
        data["violations"].push_back(s);
    }
};

struct UsageError : MlexError {
    using MlexError::MlexError;
};

Workspace load(const Options& o) {
    if (o.file.empty()) throw UsageError("an input file is required");
    return load_workspace(o.file);
}

template <class M>
std::string pick(const M& m, const std::string& want, const std::string& what) {
    if (!want.empty()) {
        if (!m.count(want)) throw UsageError("no " + what + " named '" + want + "'");
        return want;
    }
    if (m.empty()) throw UsageError("input has no " + what);
    return m.begin()->first;
}

// "mlf", a variety of the loaded workspace, or a file holding one variety.
Variety resolve_variety(const std::string& spec, const Workspace* W, const Signature& sig) {
    if (spec.empty() || spec == "mlf") {
        Variety V = largest_variety(sig);
        return V;
    }
    if (W && W->varieties.count(spec)) return W->varieties.at(spec);
    std::ifstream probe(spec);
    if (!probe) throw UsageError("unknown variety '" + spec + "'");
    Workspace F = load_workspace(spec);
    if (F.varieties.empty()) throw UsageError("'" + spec + "' holds no variety");
    return F.varieties.begin()->second;
}

std::string map_text(const Algebra& src, const Algebra& dst, const Map& f) { return format_map(src, dst, f); }

void cocycle_lines(Out& out, const Datum& D, const Cocycle& T, const std::string& indent) {
    std::string e = format_action_entries(D, T.act) + format_cocycle_entries(D, T);
    if (e.empty()) {
        out.line(indent + "(zero)");
        return;
    }
    std::istringstream in(e);
    for (std::string l; std::getline(in, l);) out.line(indent + l);
}

json cocycle_json(const Datum& D, const Cocycle& T) {
    json j = json::array();
    std::istringstream in(format_action_entries(D, T.act) + format_cocycle_entries(D, T));
    for (std::string l; std::getline(in, l);) j.push_back(l);
    return j;
}

// Workspace holding one cocycle and everything it references.
Workspace cocycle_workspace(const Workspace& W, const std::string& name) {
    Workspace S;
    S.modulus = W.modulus;
    const CocycleDef& d = W.cocycles.at(name);
    for (auto& a : {d.Q, d.I}) {
        S.algebras[a] = W.algebras.at(a);
        S.algebra_module[a] = W.algebra_module.at(a);
        if (W.modules.count(S.algebra_module[a])) S.modules[S.algebra_module[a]] = W.modules.at(S.algebra_module[a]);
    }
    if (!d.action.empty()) S.actions[d.action] = W.actions.at(d.action);
    S.cocycles[name] = d;
    return S;
}

std::string fmt_set(const Algebra& A, const std::vector<Elem>& xs) {
    std::string s = "{";
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + A.format(xs[i]);
    return s + "}";
}

// ------------------------------------------------------------------ commands

void cmd_check(const Options& o, Out& out) {
    Workspace W = load(o);
    out.line("modulus " + std::to_string(W.modulus));
    for (auto& [n, A] : W.algebras) {
        out.line("algebra " + n + ": " + std::to_string(A.size()) + " elements, multilinear");
        out.data["algebras"][n] = A.size();
        for (auto& [vn, V] : W.varieties) {
            if (V.sig != A.signature()) continue;
            auto f = in_variety(A, V);
            out.line("  in variety " + vn + ": " + (f ? "no (identity " + std::to_string(f->identity + 1) + ")" : "yes"));
        }
    }
    for (auto& [n, d] : W.ideals)
        out.line("ideal " + n + " of " + d.algebra + ": " + fmt_set(W.algebra(d.algebra), d.ideal.elems));
    for (auto& [n, d] : W.actions) out.line("action " + n + ": valid (T4)");
    for (auto& [n, d] : W.cocycles) {
        Datum D = W.datum(d.Q, d.I);
        auto sd = semidirect(D, d.T);
        out.line("cocycle " + n + ": T1-T4 hold; semidirect " + (sd.valid ? "is a multilinear expansion" : "invalid: " + sd.reason));
        for (auto& [vn, V] : W.varieties) {
            if (V.sig != D.Q.signature()) continue;
            if (in_variety(D.Q, V) || in_variety(D.I, V)) {
                out.line("  " + vn + ": datum not in variety");
                continue;
            }
            out.line("  compatible with " + vn + ": " + (is_compatible(D, d.T, V) ? "yes" : "no"));
        }
    }
    for (auto& [n, d] : W.extensions) {
        Extension E = W.extension(n);
        auto v = validate_extension(E);
        out.line("extension " + n + ": " + (v ? "invalid: " + *v : "valid, |Q| = " + std::to_string(E.Q.size()) +
                                                                    ", |I| = " + std::to_string(E.I.size())));
        if (v) out.violate("extension " + n + ": " + *v);
    }
    for (auto& [n, d] : W.data) out.line("datum " + n + ": Q = " + d.Q + ", I = " + d.I);
    for (auto& [n, d] : W.hs) out.line("hs " + n + ": " + d.algebra + " / " + d.ideal + " with coefficients " + d.coeff);
}

void cmd_semidirect(const Options& o, Out& out) {
    Workspace W = load(o);
    std::string name = pick(W.cocycles, o.name, "cocycle");
    const CocycleDef& d = W.cocycles.at(name);
    Datum D = W.datum(d.Q, d.I);
    Variety V = resolve_variety(o.variety, &W, D.Q.signature());
    auto sd = semidirect(D, d.T, &V);
    out.data["cocycle"] = name;
    out.data["valid"] = sd.valid;
    if (!sd.valid) {
        out.violate("semidirect product of " + name + " is not in " + (V.name.empty() ? "mlf" : V.name) + ": " + sd.reason);
        out.counterexample = save_workspace(cocycle_workspace(W, name));
        return;
    }
    out.line("semidirect product I x_T Q for " + name + ": " + std::to_string(sd.M.size()) + " elements");
    Workspace S;
    S.modulus = W.modulus;
    S.add_algebra(name + "_M", sd.M);
    std::istringstream in(save_workspace(S));
    for (std::string l; std::getline(in, l);) out.line(l);
}

void cmd_extract(const Options& o, Out& out) {
    Workspace W = load(o);
    std::string name = pick(W.extensions, o.name, "extension");
    Extension E = W.extension(name);
    Datum D = extension_datum(E);
    Cocycle T = extract_cocycle(E);
    bool real = realizes(E, T);
    auto psi = psi_map(E);
    Algebra S = semidirect(D, T).M;
    bool iso = is_homomorphism(E.M, S, psi) && is_bijection(psi, S.size());
    out.data["realizes"] = real;
    out.data["psi_isomorphism"] = iso;
    out.line("lifting: " + map_text(E.Q, E.M, E.lift));
    out.line(std::string("realizes (R1-R4): ") + (real ? "yes" : "no"));
    out.line(std::string("psi is an isomorphism onto I x_T Q: ") + (iso ? "yes" : "no"));
    if (!real || !iso) out.violate("representation of " + name);
    Workspace R;
    R.modulus = W.modulus;
    R.add_algebra(name + "_Q", E.Q);
    R.add_algebra(name + "_I", E.I);
    std::string act;
    if (!is_trivial(T.act)) {
        act = name + "_act";
        R.actions[act] = ActionDef{name + "_Q", name + "_I", T.act};
    }
    R.cocycles[name + "_T"] = CocycleDef{name + "_Q", name + "_I", act, T};
    out.data["cocycle"] = cocycle_json(D, T);
    std::istringstream in(save_workspace(R));
    for (std::string l; std::getline(in, l);) out.line(l);
}

void cmd_equivalent(const Options& o, Out& out) {
    Workspace W = load(o);
    if (W.cocycles.size() < 2 && (o.a.empty() || o.b.empty())) throw UsageError("need two cocycles (--a, --b)");
    std::string a = o.a.empty() ? W.cocycles.begin()->first : o.a;
    std::string b = o.b.empty() ? std::next(W.cocycles.begin())->first : o.b;
    if (!W.cocycles.count(a) || !W.cocycles.count(b)) throw UsageError("unknown cocycle");
    const CocycleDef &da = W.cocycles.at(a), &db = W.cocycles.at(b);
    if (da.Q != db.Q || da.I != db.I) throw UsageError("cocycles belong to different datum");
    Datum D = W.datum(da.Q, da.I);
    auto h = equivalence_witness(D, da.T, db.T, o.budget);
    out.data["equivalent"] = h.has_value();
    if (!h) {
        out.line(a + " and " + b + " are not equivalent");
        return;
    }
    out.line(a + " ~ " + b + " via h = " + map_text(D.Q, D.I, *h));
    Map neg(h->size()), idI(D.I.size()), idQ(D.Q.size());
    for (std::size_t i = 0; i < h->size(); ++i) neg[i] = D.I.neg((*h)[i]);
    for (Elem x = 0; x < D.I.size(); ++x) idI[x] = x;
    for (Elem x = 0; x < D.Q.size(); ++x) idQ[x] = x;
    auto mc = is_h2_morphism(D, da.T, D, db.T, idI, neg, idQ, o.emend);
    out.line(std::string("(id, -h, id) satisfies E1-E3") + (o.emend ? " (emended)" : " (literal)") + ": " +
             (mc.ok ? "yes" : "no, " + mc.failure));
    out.data["h"] = *h;
    out.data["h2_morphism"] = mc.ok;
}

void cmd_h2(const Options& o, Out& out) {
    Workspace W = load(o);
    std::string name = pick(W.data, o.name, "datum");
    const DatumDef& d = W.data.at(name);
    Datum D = W.datum(d.Q, d.I);
    Variety V = resolve_variety(o.variety, &W, D.Q.signature());
    std::optional<Action> fixed;
    if (!o.all_actions) fixed = W.action_or_trivial(d.action, D);
    std::string which = o.all_actions ? "all actions" : d.action.empty() ? "trivial action" : "action " + d.action;
    out.line("datum " + name + ": Q = " + d.Q + ", I = " + d.I + ", " + which);
    out.line("variety " + (o.variety.empty() ? std::string("mlf") : o.variety));
    auto E = enumerate_h2(D, V, fixed ? &*fixed : nullptr, o.budget);
    out.line("candidates " + std::to_string(E.candidates) + ", compatible " + std::to_string(E.compatible.size()));
    out.line(std::to_string(E.reps.size()) + " classes");
    out.data["classes"] = E.reps.size();
    for (std::size_t c = 0; c < E.reps.size(); ++c) {
        out.line("class " + std::to_string(c + 1) + ":");
        cocycle_lines(out, D, E.reps[c], "  ");
        out.data["representatives"].push_back(cocycle_json(D, E.reps[c]));
    }
    if (fixed && is_affine(D, *fixed)) {
        H2Affine A(D, *fixed, V);
        bool agree = A.order() == static_cast<int>(E.reps.size());
        out.line("affine group order " + std::to_string(A.order()) + (agree ? " (agrees)" : " (DISAGREES)"));
        if (!agree) out.violate("affine and enumerated H2 disagree");
    }
}

void cmd_h1(const Options& o, Out& out) {
    Workspace W = load(o);
    std::string name = pick(W.data, o.name, "datum");
    const DatumDef& d = W.data.at(name);
    Datum D = W.datum(d.Q, d.I);
    Action act = W.action_or_trivial(d.action, D);
    H1Result R = h1(D, act, o.depth);
    out.line("Der(Q,I,*) has " + std::to_string(R.der.size()) + " elements");
    out.line("PDer(Q,I,*) has " + std::to_string(R.pder.size()) + " elements" +
             (R.caveat ? " (search bounded by depth " + std::to_string(o.depth) + ")" : ""));
    out.line("H1 has order " + std::to_string(R.order()));
    for (auto& r : R.reps) out.line("  " + map_text(D.Q, D.I, r));
    out.data["der"] = R.der.size();
    out.data["pder"] = R.pder.size();
    out.data["h1"] = R.order();
    out.data["caveat"] = R.caveat;
}

void cmd_derivations(const Options& o, Out& out) {
    Workspace W = load(o);
    std::string name = pick(W.algebras, o.name, "algebra");
    const Algebra& A = W.algebra(name);
    DerLie L = der_lie(A);
    out.line("Der " + name + " has " + std::to_string(L.elements.size()) + " elements, " +
             std::to_string(L.basis.size()) + " generators");
    for (std::size_t i = 0; i < L.basis.size(); ++i) out.line("  d" + std::to_string(i + 1) + " = " + map_text(A, A, L.basis[i]));
    bool closed = true;
    for (std::size_t i = 0; i < L.basis.size(); ++i) {
        std::string row = "  [d" + std::to_string(i + 1) + ", -]:";
        for (std::size_t j = 0; j < L.basis.size(); ++j) {
            int k = L.bracket[i][j];
            closed &= k >= 0;
            row += " " + (k < 0 ? std::string("?") : k == 0 ? std::string("0") : "#" + std::to_string(k));
        }
        out.line(row);
    }
    out.data["elements"] = L.elements.size();
    out.data["generators"] = L.basis.size();
    if (!closed) out.violate("bracket of derivations is not a derivation");
}

void cmd_wells(const Options& o, Out& out) {
    Workspace W = load(o);
    std::string name = pick(W.extensions, o.name, "extension");
    Report R = verify_wells(W.extension(name));
    for (auto& l : R.lines) out.line(l);
    out.data["ok"] = R.ok;
    if (!R.ok) {
        out.violate("Wells sequence for " + name);
        out.counterexample = save_workspace(W);
    }
}

void cmd_hs(const Options& o, Out& out) {
    Workspace W = load(o);
    std::string name = pick(W.hs, o.name, "hs datum");
    const HSDef& d = W.hs.at(name);
    const Algebra& M = W.algebra(d.algebra);
    const Algebra& A = W.algebra(d.coeff);
    Datum D = make_datum(M, A);
    Variety V = resolve_variety(o.variety, &W, M.signature());
    HSData H = make_hs(M, W.ideals.at(d.ideal).ideal, A, W.action_or_trivial(d.action, D), V);
    Report R = verify_hs(H, o.depth);
    for (auto& l : R.lines) out.line(l);
    out.data["ok"] = R.ok;
    if (!R.ok) {
        out.violate("Hochschild-Serre sequence for " + name);
        out.counterexample = save_workspace(W);
    }
}

void cmd_expand(const Options& o, Out& out) {
    std::string spec = o.variety.empty() ? o.file : o.variety;
    if (spec.empty()) throw UsageError("expand needs --variety");
    Workspace F = load_workspace(spec);
    std::string name = pick(F.varieties, o.name, "variety");
    const Variety& V = F.varieties.at(name);
    Emit kind = o.emit == "action" ? Emit::Action : o.emit == "strict" ? Emit::Strict : Emit::General;
    if (o.emit != "general" && o.emit != "action" && o.emit != "strict") throw UsageError("bad --emit");
    Expander X(V.sig, F.modulus, V.bracket);
    for (auto& id : V.identities) {
        auto e = X.expand_identity(id, kind, !o.raw);
        std::string s = o.sexpr ? X.sexpr(e, id.vars) : X.print(e, id.vars);
        out.line(s);
        out.data["identities"].push_back(s);
    }
}

void cmd_decompose(const Options& o, Out& out) {
    Workspace W = load(o);
    std::string name = pick(W.algebras, o.name, "algebra");
    if (o.kind != "solvable" && o.kind != "nilpotent") throw UsageError("--kind must be solvable or nilpotent");
    SeriesKind k = o.kind == "solvable" ? SeriesKind::Solvable : SeriesKind::Nilpotent;
    const Algebra& M = W.algebra(name);
    Decomposition Dc = decompose(M, k);
    if (Dc.empty) {
        out.line("zero algebra: empty chain");
        out.data["steps"] = 0;
        return;
    }
    out.line("top quotient: " + std::to_string(Dc.top.size()) + " elements, abelian");
    int i = 0;
    for (auto& st : Dc.steps) {
        ++i;
        out.line("step " + std::to_string(i) + ": |I| = " + std::to_string(st.I.size()) + ", |Q| = " +
                 std::to_string(st.Q.size()) + ", T " + (st.linear ? "linear" : "not linear") + ", " +
                 (st.action_trivial ? "action-trivial" : "with action"));
        cocycle_lines(out, make_datum(st.Q, st.I), st.T, "  ");
        bool ok = k == SeriesKind::Solvable ? st.linear : st.action_trivial;
        if (!ok) out.violate("step " + std::to_string(i) + " has the wrong kernel kind");
    }
    out.line(std::string("reassembled algebra isomorphic to ") + name + ": " + (Dc.isomorphic ? "yes" : "no"));
    out.data["steps"] = Dc.steps.size();
    out.data["isomorphic"] = Dc.isomorphic;
    if (!Dc.isomorphic) out.violate("reassembly of " + name);
}

void cmd_series(const Options& o, Out& out) {
    Workspace W = load(o);
    std::string name = pick(W.algebras, o.name, "algebra");
    const Algebra& A = W.algebra(name);
    auto show = [&](const std::string& label, const std::vector<Ideal>& s) {
        out.line(label + ":");
        for (std::size_t i = 0; i < s.size(); ++i) out.line("  " + std::to_string(i) + ": " + fmt_set(A, s[i].elems));
        bool reaches = s.back().size() == 1;
        int steps = static_cast<int>(s.size()) - 1;
        out.line(reaches ? "  " + std::to_string(steps) + "-step" : "  does not reach 0");
        return reaches;
    };
    bool sol = show("derived series", derived_series(A));
    bool nil = show("lower central series", lower_central_series(A));
    out.line(std::string("solvable: ") + (sol ? "yes" : "no") + ", nilpotent: " + (nil ? "yes" : "no") +
             ", abelian: " + (is_abelian_algebra(A) ? "yes" : "no"));
    out.data["solvable"] = sol;
    out.data["nilpotent"] = nil;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mlex: extensions and cohomology of finite multilinear module expansions"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* s) {
        s->add_option("file,--file,--datum,--fixture,--extension-file", o.file, "MLEX input file");
        s->add_option("--name", o.name, "object to use (default: first by name)");
        s->add_option("--budget", o.budget, "candidate budget for exhaustive searches");
        s->add_option("--depth", o.depth, "depth bound for principal derivations");
        s->add_option("--seed", o.seed, "seed (all commands are deterministic)");
        s->add_option("--variety", o.variety, "mlf, a variety name, or a file");
        s->add_flag("--json", o.as_json, "machine-readable output");
    };
    using Fn = void (*)(const Options&, Out&);
    std::vector<std::pair<CLI::App*, Fn>> cmds;
    auto add = [&](const char* n, const char* help, Fn fn) {
        auto* s = app.add_subcommand(n, help);
        common(s);
        cmds.push_back({s, fn});
        return s;
    };
    add("check", "load and validate a file", cmd_check);
    add("semidirect", "build I x_T Q for a cocycle", cmd_semidirect);
    add("extract", "extract the cocycle of an extension", cmd_extract);
    auto* eq = add("equivalent", "search an equivalence between two cocycles", cmd_equivalent);
    eq->add_option("--a", o.a, "first cocycle");
    eq->add_option("--b", o.b, "second cocycle");
    eq->add_flag("--emend", o.emend, "read (E3) with beta on the Q-arguments");
    auto* h2c = add("h2", "enumerate second cohomology of a datum", cmd_h2);
    h2c->add_flag("--all-actions", o.all_actions, "range over every compatible action instead of the datum's");
    add("h1", "first cohomology of a datum", cmd_h1);
    add("derivations", "Lie algebra of derivations of an algebra", cmd_derivations);
    add("wells", "verify the Wells exact sequence of an extension", cmd_wells);
    add("hs", "verify the Hochschild-Serre five-term sequence", cmd_hs);
    auto* ex = add("expand", "derive 2-cocycle identities of a variety", cmd_expand);
    ex->add_option("--emit", o.emit, "general, action or strict")->check(CLI::IsMember({"general", "action", "strict"}));
    ex->add_flag("--raw", o.raw, "keep summands that cancel across sides");
    ex->add_flag("--sexpr", o.sexpr, "emit S-expressions");
    auto* dc = add("decompose", "split a solvable or nilpotent algebra into semidirect steps", cmd_decompose);
    dc->add_option("--kind", o.kind, "solvable or nilpotent");
    add("series", "derived and lower central series", cmd_series);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    Out out;
    std::string cmdname;
    try {
        for (auto& [s, fn] : cmds)
            if (s->parsed()) {
                cmdname = s->get_name();
                fn(o, out);
            }
    } catch (const MlexError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    if (o.as_json) {
        json j;
        j["command"] = cmdname;
        j["exit"] = out.code;
        j["report"] = out.lines;
        j["data"] = out.data;
        if (!out.counterexample.empty()) j["counterexample"] = out.counterexample;
        std::cout << j.dump(2) << "\n";
    } else {
        for (auto& l : out.lines) std::cout << l << "\n";
        if (!out.counterexample.empty()) std::cout << "\n# counterexample\n" << out.counterexample;
    }
    return out.code;
}
