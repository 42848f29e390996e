#include "mlex/decompose.hpp"

namespace mlex {

Cocycle transport_cocycle(const Datum& DR, const Cocycle& T, const std::vector<Elem>& phi) {
    int rn = DR.Q.size(), qn = static_cast<int>(phi.size());
    Action act = make_action(DR, [&](int k, unsigned s, const Elem* q, const Elem* a) {
        int n = DR.arity(k);
        std::vector<Elem> pq(n);
        for (int i = 0; i < n; ++i) pq[i] = phi[q[i]];
        return T.act.eval(k, s, pq.data(), a);
    });
    Cocycle R = zero_cocycle(DR, act);
    for (Elem x = 0; x < rn; ++x)
        for (Elem y = 0; y < rn; ++y) R.tplus[x * rn + y] = T.tplus[phi[x] * qn + phi[y]];
    for (std::size_t r = 0; r < R.tr.size(); ++r)
        for (Elem x = 0; x < rn; ++x) R.tr[r][x] = T.tr[r][phi[x]];
    for (int k = 0; k < DR.nops(); ++k) {
        int n = DR.arity(k);
        std::vector<Elem> t(n, 0), p(n);
        std::size_t c = 0;
        do {
            for (int i = 0; i < n; ++i) p[i] = phi[t[i]];
            R.tf[k][c++] = T.tf[k][tuple_code(p.data(), n, qn)];
        } while (next_tuple(t, rn));
    }
    return R;
}

Decomposition decompose(const Algebra& M0, SeriesKind kind) {
    Decomposition out;
    auto series = kind == SeriesKind::Solvable ? derived_series(M0) : lower_central_series(M0);
    if (series.back().size() != 1)
        throw MlexError(kind == SeriesKind::Solvable ? "algebra is not solvable" : "algebra is not nilpotent");
    if (M0.size() == 1) {
        out.empty = true;
        out.top = M0;
        out.rebuilt = M0;
        out.isomorphic = true;
        return out;
    }
    Algebra cur = M0;
    while (true) {
        auto s = kind == SeriesKind::Solvable ? derived_series(cur) : lower_central_series(cur);
        if (s.size() <= 2) break;  // cur is abelian
        const Ideal& K = s[s.size() - 2];
        Extension E = extension_from_ideal(cur, K);
        DecompStep st;
        st.I = E.I;
        st.Q = E.Q;
        st.T = extract_cocycle(E);
        Datum D = extension_datum(E);
        KernelKind kk = kernel_kind(D, st.T);
        st.linear = kk.abelian;
        st.action_trivial = kk.central;
        out.steps.push_back(st);
        cur = E.Q;
    }
    out.top = cur;
    // reassemble from the innermost quotient outwards
    Algebra R = cur;
    for (auto it = out.steps.rbegin(); it != out.steps.rend(); ++it) {
        auto phi = find_isomorphism(R, it->Q);
        if (!phi) throw MlexError("reassembly lost track of a quotient");
        Datum DR = make_datum(R, it->I);
        Cocycle TR = transport_cocycle(DR, it->T, *phi);
        auto sd = semidirect(DR, TR);
        if (!sd.valid) throw MlexError("reassembly produced an invalid algebra: " + sd.reason);
        R = sd.M;
    }
    out.rebuilt = R;
    out.isomorphic = find_isomorphism(R, M0).has_value();
    return out;
}

}  // namespace mlex
