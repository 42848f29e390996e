#include "mlex/modcore.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace mlex {

int mod_norm(long long a, int m) {
    long long r = a % m;
    if (r < 0) r += m;
    return static_cast<int>(r);
}

long long gcd_ll(long long a, long long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

static long long ext_gcd(long long a, long long b, long long& x, long long& y) {
    if (b == 0) {
        x = 1;
        y = 0;
        return a;
    }
    long long x1, y1;
    long long g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

int inv_mod(int a, int m) {
    if (m == 1) return 0;
    long long x, y;
    long long g = ext_gcd(mod_norm(a, m), m, x, y);
    if (g != 1) throw MlexError("inv_mod: not a unit");
    return mod_norm(x, m);
}

ZmModule::ZmModule(int m, std::vector<int> fs) : modulus(m), factors(std::move(fs)) {
    if (m < 1) throw MlexError("modulus must be positive");
    for (int d : factors)
        if (d < 1 || m % d != 0)
            throw MlexError("factor " + std::to_string(d) + " does not divide modulus " +
                            std::to_string(m));
}

int ZmModule::size() const {
    long long s = 1;
    for (int d : factors) {
        s *= d;
        if (s > (1 << 24)) throw MlexError("module too large");
    }
    return static_cast<int>(s);
}

Coords ZmModule::coords(Elem e) const {
    Coords c(factors.size());
    for (int i = rank() - 1; i >= 0; --i) {
        c[i] = e % factors[i];
        e /= factors[i];
    }
    return c;
}

Elem ZmModule::index(const Coords& c) const {
    if (c.size() != factors.size()) throw MlexError("coordinate length mismatch");
    Elem e = 0;
    for (int i = 0; i < rank(); ++i) e = e * factors[i] + mod_norm(c[i], factors[i]);
    return e;
}

Elem ZmModule::generator(int i) const {
    Coords c(factors.size(), 0);
    c[i] = 1;
    return index(c);
}

Elem ZmModule::add(Elem a, Elem b) const {
    Coords x = coords(a), y = coords(b);
    for (int i = 0; i < rank(); ++i) x[i] += y[i];
    return index(x);
}

Elem ZmModule::neg(Elem a) const {
    Coords x = coords(a);
    for (auto& v : x) v = -v;
    return index(x);
}

Elem ZmModule::scale(long long r, Elem a) const {
    Coords x = coords(a);
    for (int i = 0; i < rank(); ++i) x[i] = mod_norm(static_cast<long long>(x[i]) * mod_norm(r, factors[i]), factors[i]);
    return index(x);
}

std::string ZmModule::format(Elem e) const {
    Coords c = coords(e);
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    os << ')';
    return os.str();
}

std::vector<Coords> mod_elements(const ZmModule& M) {
    std::vector<Coords> out;
    int n = M.size();
    out.reserve(n);
    for (int e = 0; e < n; ++e) out.push_back(M.coords(e));
    return out;
}

ZmModule direct_sum(const ZmModule& A, const ZmModule& B) {
    if (A.modulus != B.modulus) throw MlexError("direct_sum: modulus mismatch");
    std::vector<int> f = A.factors;
    f.insert(f.end(), B.factors.begin(), B.factors.end());
    return ZmModule(A.modulus, f);
}

Elem LinMap::apply(Elem x) const {
    Coords c = src.coords(x);
    Elem acc = 0;
    for (int i = 0; i < src.rank(); ++i) acc = dst.add(acc, dst.scale(c[i], images[i]));
    return acc;
}

std::vector<Elem> LinMap::table() const {
    std::vector<Elem> t(src.size());
    for (int x = 0; x < src.size(); ++x) t[x] = apply(x);
    return t;
}

LinMap make_linmap(const ZmModule& src, const ZmModule& dst, std::vector<Elem> images) {
    if (static_cast<int>(images.size()) != src.rank()) throw MlexError("image count mismatch");
    for (int i = 0; i < src.rank(); ++i)
        if (dst.scale(src.factors[i], images[i]) != 0)
            throw MlexError("image of generator " + std::to_string(i + 1) +
                            " violates order compatibility");
    return LinMap{src, dst, std::move(images)};
}

static std::vector<std::vector<Elem>> admissible_images(const ZmModule& src, const ZmModule& dst) {
    std::vector<std::vector<Elem>> adm(src.rank());
    for (int i = 0; i < src.rank(); ++i)
        for (Elem y = 0; y < dst.size(); ++y)
            if (dst.scale(src.factors[i], y) == 0) adm[i].push_back(y);
    return adm;
}

long long hom_count(const ZmModule& src, const ZmModule& dst) {
    long long c = 1;
    for (auto& a : admissible_images(src, dst)) c *= static_cast<long long>(a.size());
    return c;
}

std::vector<LinMap> hom_enumerate(const ZmModule& src, const ZmModule& dst) {
    auto adm = admissible_images(src, dst);
    std::vector<LinMap> out;
    std::vector<std::size_t> idx(src.rank(), 0);
    while (true) {
        std::vector<Elem> imgs(src.rank());
        for (int i = 0; i < src.rank(); ++i) imgs[i] = adm[i][idx[i]];
        out.push_back(LinMap{src, dst, imgs});
        int k = src.rank() - 1;
        while (k >= 0 && ++idx[k] == adm[k].size()) idx[k--] = 0;
        if (k < 0) break;
    }
    return out;
}

namespace {

using Mat = std::vector<std::vector<int>>;

Mat identity(int n) {
    Mat I(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

// rows (r1, r2) <- (p*r1 + q*r2, u*r1 + v*r2)
void row_combine(Mat& A, int r1, int r2, long long p, long long q, long long u, long long v, int m) {
    for (std::size_t j = 0; j < A[r1].size(); ++j) {
        long long a = A[r1][j], b = A[r2][j];
        A[r1][j] = mod_norm(p * a + q * b, m);
        A[r2][j] = mod_norm(u * a + v * b, m);
    }
}

void col_combine(Mat& A, int c1, int c2, long long p, long long q, long long u, long long v, int m) {
    for (auto& row : A) {
        long long a = row[c1], b = row[c2];
        row[c1] = mod_norm(p * a + q * b, m);
        row[c2] = mod_norm(u * a + v * b, m);
    }
}

}  // namespace

Smith smith_form(const std::vector<std::vector<int>>& A0, int ncols, int m) {
    int r = static_cast<int>(A0.size()), n = ncols;
    Mat A(r, std::vector<int>(n, 0));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < n; ++j) A[i][j] = mod_norm(A0[i][j], m);
    Mat U = identity(r), V = identity(n);
    int t = 0;
    while (t < r && t < n) {
        int pi = -1, pj = -1;
        for (int i = t; i < r && pi < 0; ++i)
            for (int j = t; j < n; ++j)
                if (A[i][j] != 0) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi < 0) break;
        if (pi != t) {
            std::swap(A[pi], A[t]);
            std::swap(U[pi], U[t]);
        }
        if (pj != t) {
            col_combine(A, t, pj, 0, 1, 1, 0, m);
            col_combine(V, t, pj, 0, 1, 1, 0, m);
        }
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (int i = t + 1; i < r; ++i) {
                if (A[i][t] == 0) continue;
                long long a = A[t][t], b = A[i][t], p, q;
                if (b % a == 0) {
                    row_combine(A, t, i, 1, 0, -(b / a), 1, m);
                    row_combine(U, t, i, 1, 0, -(b / a), 1, m);
                    continue;
                }
                long long g = ext_gcd(a, b, p, q);
                row_combine(A, t, i, p, q, -(b / g), a / g, m);
                row_combine(U, t, i, p, q, -(b / g), a / g, m);
            }
            for (int j = t + 1; j < n; ++j) {
                if (A[t][j] == 0) continue;
                long long a = A[t][t], b = A[t][j], p, q;
                if (b % a == 0) {
                    col_combine(A, t, j, 1, 0, -(b / a), 1, m);
                    col_combine(V, t, j, 1, 0, -(b / a), 1, m);
                    continue;
                }
                long long g = ext_gcd(a, b, p, q);
                col_combine(A, t, j, p, q, -(b / g), a / g, m);
                col_combine(V, t, j, p, q, -(b / g), a / g, m);
                dirty = true;
            }
            if (dirty) {
                dirty = false;
                for (int i = t + 1; i < r; ++i)
                    if (A[i][t] != 0) dirty = true;
            }
        }
        ++t;
    }
    return Smith{U, V, A};
}

std::optional<LinearSolution> solve_linear(const std::vector<std::vector<int>>& A,
                                           const std::vector<int>& b, int ncols, int m) {
    int r = static_cast<int>(A.size()), n = ncols;
    Smith S = smith_form(A, n, m);
    std::vector<long long> c(r, 0);
    for (int i = 0; i < r; ++i) {
        long long s = 0;
        for (int k = 0; k < r; ++k) s += static_cast<long long>(S.U[i][k]) * mod_norm(b[k], m) % m;
        c[i] = mod_norm(s, m);
    }
    std::vector<long long> y(n, 0);
    std::vector<std::vector<int>> kernel;
    auto vcol = [&](int j, long long mult) {
        std::vector<int> v(n);
        for (int i = 0; i < n; ++i) v[i] = mod_norm(static_cast<long long>(S.V[i][j]) * mult, m);
        return v;
    };
    for (int i = 0; i < std::max(r, n); ++i) {
        long long d = (i < r && i < n) ? S.D[i][i] : 0;
        if (d == 0) {
            if (i < r && c[i] != 0) return std::nullopt;
            if (i < n) kernel.push_back(vcol(i, 1));
            continue;
        }
        long long g = gcd_ll(d, m);
        if (c[i] % g != 0) return std::nullopt;
        long long mg = m / g;
        y[i] = mg == 1 ? 0 : mod_norm((c[i] / g) % mg * inv_mod(static_cast<int>((d / g) % mg), static_cast<int>(mg)), static_cast<int>(mg));
        if (mg != m) kernel.push_back(vcol(i, mg));
    }
    LinearSolution sol;
    sol.particular.assign(n, 0);
    for (int i = 0; i < n; ++i) {
        long long s = 0;
        for (int j = 0; j < n; ++j) s += static_cast<long long>(S.V[i][j]) * y[j] % m;
        sol.particular[i] = mod_norm(s, m);
    }
    std::erase_if(kernel, [](const std::vector<int>& v) {
        return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
    });
    sol.kernel = std::move(kernel);
    return sol;
}

std::optional<LinearSolution> solve_mixed(const std::vector<std::vector<int>>& A,
                                          const std::vector<int>& b,
                                          const std::vector<int>& row_mod,
                                          const std::vector<int>& col_mod, int m) {
    int n = static_cast<int>(col_mod.size());
    std::vector<std::vector<int>> B;
    std::vector<int> rhs;
    for (std::size_t i = 0; i < A.size(); ++i) {
        if (row_mod[i] == 1) continue;
        long long s = m / row_mod[i];
        std::vector<int> row(n);
        bool nz = false;
        for (int j = 0; j < n; ++j) {
            row[j] = mod_norm(s * mod_norm(A[i][j], m), m);
            nz |= row[j] != 0;
        }
        int bi = mod_norm(s * mod_norm(b[i], m), m);
        if (!nz && bi == 0) continue;
        B.push_back(row);
        rhs.push_back(bi);
    }
    auto sol = solve_linear(B, rhs, n, m);
    if (!sol) return std::nullopt;
    for (int j = 0; j < n; ++j) sol->particular[j] %= col_mod[j];
    std::vector<std::vector<int>> ker;
    for (auto& v : sol->kernel) {
        bool nz = false;
        for (int j = 0; j < n; ++j) {
            v[j] %= col_mod[j];
            nz |= v[j] != 0;
        }
        if (nz) ker.push_back(v);
    }
    sol->kernel = std::move(ker);
    return sol;
}

std::vector<std::vector<int>> span_vectors(const std::vector<std::vector<int>>& gens,
                                           const std::vector<int>& col_mod, std::size_t limit) {
    int n = static_cast<int>(col_mod.size());
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> frontier{std::vector<int>(n, 0)};
    seen.insert(frontier[0]);
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (auto& v : frontier)
            for (auto& g : gens) {
                std::vector<int> w(n);
                for (int j = 0; j < n; ++j) w[j] = (v[j] + g[j]) % col_mod[j];
                if (seen.insert(w).second) {
                    if (seen.size() > limit) throw MlexError("span exceeds enumeration limit");
                    next.push_back(std::move(w));
                }
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

}  // namespace mlex
