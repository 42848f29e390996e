#pragma once

#include <map>
#include <string>
#include <vector>

#include "mlex/cocycle.hpp"
#include "mlex/termlang.hpp"

namespace mlex {

struct LoadError : MlexError {
    int line = 0, col = 0;
    LoadError(const std::string& src, int line, int col, const std::string& msg);
};

struct IdealDef {
    std::string algebra;
    std::vector<Elem> generators;
    Ideal ideal;
};
struct ActionDef {
    std::string Q, I;
    Action act;
};
struct DatumDef {
    std::string Q, I, action;  // empty action = trivial
};
struct CocycleDef {
    std::string Q, I, action;
    Cocycle T;
};
struct ExtensionDef {
    std::string algebra, ideal;
};
struct HSDef {
    std::string algebra, ideal, coeff, action;
};

// Named objects of one MLEX file.  Maps keep names sorted, which fixes the
// serialization order.
struct Workspace {
    int modulus = 2;
    std::map<std::string, ZmModule> modules;
    std::map<std::string, Algebra> algebras;
    std::map<std::string, std::string> algebra_module;  // module name or factor list
    std::map<std::string, IdealDef> ideals;
    std::map<std::string, Variety> varieties;
    std::map<std::string, ActionDef> actions;
    std::map<std::string, DatumDef> data;
    std::map<std::string, CocycleDef> cocycles;
    std::map<std::string, ExtensionDef> extensions;
    std::map<std::string, HSDef> hs;

    const Algebra& algebra(const std::string& name) const;
    Datum datum(const std::string& Q, const std::string& I) const;
    Action action_or_trivial(const std::string& name, const Datum& D) const;
    Extension extension(const std::string& name) const;
    // Registers an algebra under `name` (presenting it if needed).
    void add_algebra(const std::string& name, const Algebra& A);
};

Workspace parse_workspace(const std::string& text, const std::string& source = "<input>");
Workspace load_workspace(const std::string& path);
std::string save_workspace(const Workspace& W);

std::string format_action_entries(const Datum& D, const Action& act);
std::string format_cocycle_entries(const Datum& D, const Cocycle& T);

}  // namespace mlex
