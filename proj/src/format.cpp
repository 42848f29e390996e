#include "mlex/format.hpp"

namespace mlex {

std::string format_tuple(const Algebra& A, const std::vector<Elem>& t) {
    bool bare = A.module && A.module->rank() == 1;
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        s += i ? "," : "";
        s += bare ? std::to_string(t[i]) : A.format(t[i]);
    }
    return s + ")";
}

std::string format_map(const Algebra& src, const Algebra& dst, const std::vector<Elem>& f) {
    std::string s = "{";
    for (Elem x = 0; x < static_cast<Elem>(f.size()); ++x)
        s += (x ? ", " : "") + src.format(x) + " -> " + dst.format(f[x]);
    return s + "}";
}

}  // namespace mlex
