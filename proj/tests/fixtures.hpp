#pragma once

#include "mlex/derlie.hpp"

namespace fx {

using namespace mlex;

// Z_2^2 with f(e2,e2) = e1; e1 = (1,0), e2 = (0,1).
inline Algebra f2() {
    ZmModule M(2, {2, 2});
    MultilinearOp f{"f", 2, {{{1, 1}, M.generator(0)}}};
    return make_algebra("F2", M, {f});
}

inline Algebra z2_zero(const std::string& name = "Z2") {
    return make_algebra(name, ZmModule(2, {2}), {MultilinearOp{"f", 2, {}}});
}

// Q = I = Z_2 with f = 0.
inline Datum f1() { return make_datum(z2_zero("Q"), z2_zero("I")); }

// Z_2^3 with f(e3,e3) = e2, f(e2,e2) = e1.
inline Algebra solvable3() {
    ZmModule M(2, {2, 2, 2});
    MultilinearOp f{"f", 2, {{{2, 2}, M.generator(1)}, {{1, 1}, M.generator(0)}}};
    return make_algebra("S3", M, {f});
}

inline Variety leibniz() {
    Variety V;
    V.name = "leibniz";
    V.sig = {{"f", 2}};
    V.bracket = "f";
    V.identities.push_back(parse_identity("[x,[y,z]] = [[x,y],z] + [y,[x,z]]", V.sig, "f"));
    return V;
}

}  // namespace fx

namespace fx {

// Coefficients Z_2^2 (f = 0) acted on by M through a(f,2)(m, a) = lambda(m) N(a)
// with N(a1,a2) = (a2,0).
inline Action nilpotent_action(const Algebra& M, const Algebra& A, int lambda_bit) {
    Datum D = make_datum(M, A);
    return make_action(D, [&](int, unsigned s, const Elem* q, const Elem* a) -> Elem {
        if (s != 2u) return 0;
        int lam = (q[0] >> lambda_bit) & 1;
        return lam && (a[1] & 1) ? 2 : 0;
    });
}

struct HSFixture {
    std::string name;
    Algebra M, A;
    Ideal I;
    Action act;
};

inline std::vector<HSFixture> hs_fixtures() {
    Algebra M = f2();
    Ideal I = ideal_generated(M, {2});
    Algebra A1 = z2_zero("A");
    Algebra A2 = make_algebra("A", ZmModule(2, {2, 2}), {MultilinearOp{"f", 2, {}}});
    Algebra A0 = zero_algebra(2, {{"f", 2}});
    std::vector<HSFixture> out;
    out.push_back({"trivial", M, A1, I, trivial_action(make_datum(M, A1))});
    out.push_back({"kernel-entry", M, A2, I, nilpotent_action(M, A2, 1)});
    out.push_back({"quotient-entry", M, A2, I, nilpotent_action(M, A2, 0)});
    out.push_back({"zero", M, A0, I, trivial_action(make_datum(M, A0))});
    return out;
}

}  // namespace fx
