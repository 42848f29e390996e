#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mlex {

// Elements of a finite module are addressed by their index in lexicographic
// order of coordinates (zero first, first coordinate most significant).
using Elem = int;
using Coords = std::vector<int>;

struct MlexError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int mod_norm(long long a, int m);
int inv_mod(int a, int m);  // a must be a unit mod m
long long gcd_ll(long long a, long long b);

// Z_{d1} x ... x Z_{dk} with every d_i dividing the ring modulus m.
struct ZmModule {
    int modulus = 2;
    std::vector<int> factors;

    ZmModule() = default;
    ZmModule(int m, std::vector<int> fs);

    int rank() const { return static_cast<int>(factors.size()); }
    int size() const;
    Coords coords(Elem e) const;
    Elem index(const Coords& c) const;  // reduces coordinates
    Elem generator(int i) const;
    Elem add(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem scale(long long r, Elem a) const;
    std::string format(Elem e) const;
    bool operator==(const ZmModule& o) const = default;
};

std::vector<Coords> mod_elements(const ZmModule& M);
ZmModule direct_sum(const ZmModule& A, const ZmModule& B);

// R-linear map given by generator images.
struct LinMap {
    ZmModule src, dst;
    std::vector<Elem> images;

    Elem apply(Elem x) const;
    std::vector<Elem> table() const;
};

// Checks d_i * image_i = 0; throws MlexError otherwise.
LinMap make_linmap(const ZmModule& src, const ZmModule& dst, std::vector<Elem> images);
std::vector<LinMap> hom_enumerate(const ZmModule& src, const ZmModule& dst);
long long hom_count(const ZmModule& src, const ZmModule& dst);

// Linear systems over Z_m.  Solutions are vectors in Z_m^n.
struct LinearSolution {
    std::vector<int> particular;
    std::vector<std::vector<int>> kernel;
};

struct Smith {
    // U * A * V = D (mod m), D diagonal in the sense D[i][j] = 0 for i != j.
    std::vector<std::vector<int>> U, V, D;
};

Smith smith_form(const std::vector<std::vector<int>>& A, int ncols, int m);
std::optional<LinearSolution> solve_linear(const std::vector<std::vector<int>>& A,
                                           const std::vector<int>& b, int ncols, int m);

// Mixed-modulus system: row i is read modulo row_mod[i], unknown j lives in
// Z_{col_mod[j]}; all moduli divide m and each coefficient must be
// well-defined (A[i][j] * col_mod[j] == 0 mod row_mod[i]).  Solutions are
// reduced modulo the column moduli.
std::optional<LinearSolution> solve_mixed(const std::vector<std::vector<int>>& A,
                                          const std::vector<int>& b,
                                          const std::vector<int>& row_mod,
                                          const std::vector<int>& col_mod, int m);

// All elements of the subgroup of prod Z_{col_mod[j]} generated by gens
// (BFS closure, sorted lexicographically).
std::vector<std::vector<int>> span_vectors(const std::vector<std::vector<int>>& gens,
                                           const std::vector<int>& col_mod,
                                           std::size_t limit = 1u << 22);

}  // namespace mlex
