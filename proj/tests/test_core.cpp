#include <doctest.h>

#include "fixtures.hpp"

using namespace mlex;

TEST_CASE("module enumeration and homs") {
    ZmModule z22(2, {2, 2});
    auto els = mod_elements(z22);
    REQUIRE(els.size() == 4);
    CHECK(els[1] == Coords{0, 1});
    CHECK(mod_elements(ZmModule(2, {})).size() == 1);
    CHECK(hom_enumerate(ZmModule(4, {2}), ZmModule(4, {2})).size() == 2);
    CHECK(hom_enumerate(ZmModule(4, {2}), ZmModule(4, {4})).size() == 2);
    CHECK(hom_enumerate(ZmModule(4, {4}), ZmModule(4, {2})).size() == 2);
}

TEST_CASE("linear solver examples") {
    auto s = solve_linear({{2}}, {0}, 1, 4);
    REQUIRE(s);
    CHECK(span_vectors(s->kernel, {4}) == std::vector<std::vector<int>>{{0}, {2}});
    auto t = solve_linear({{1}}, {1}, 1, 2);
    REQUIRE(t);
    CHECK(t->particular == std::vector<int>{1});
    CHECK(!solve_linear({{0}}, {1}, 1, 2));
}

TEST_CASE("F2 algebra basics") {
    Algebra A = fx::f2();
    Elem e1 = 2, e2 = 1;
    CHECK(A.apply(0, {e2, e2}) == e1);
    CHECK(A.apply(0, {A.add(e1, e2), e2}) == e1);
    CHECK(ideal_generated(A, {e1}).elems == std::vector<Elem>{0, e1});
    Ideal MM = commutator(A, full_ideal(A), full_ideal(A));
    CHECK(MM.elems == std::vector<Elem>{0, e1});
    auto q = quotient(A, MM);
    CHECK(q.alg.size() == 2);
    CHECK(is_abelian_algebra(q.alg));
    CHECK(derived_series(A).size() == 3);
    CHECK(lower_central_series(A).size() == 3);
    CHECK(!is_homomorphism(A, A, {0, 2, 1, 3}));
    CHECK(!find_isomorphism(make_algebra("a", ZmModule(4, {4}), {}), make_algebra("b", ZmModule(4, {2, 2}), {})));
}

TEST_CASE("terms") {
    Algebra A = fx::f2();
    auto V = fx::leibniz();
    CHECK(!in_variety(A, V));
    auto id = parse_identity("f(x,y) = 0", A.signature());
    auto ce = holds(A, id);
    REQUIRE(ce);
    CHECK(*ce == std::vector<Elem>{1, 1});
    CHECK_THROWS_AS(parse_term("f(x)", A.signature()), ParseError);
    auto t = parse_term("2*x + -y", {}, "");
    CHECK(print_term(t) == "2*x - y");
    CHECK(print_term(parse_term(print_term(t), {})) == print_term(t));
}

TEST_CASE("F2 cocycle and extension") {
    Algebra A = fx::f2();
    Extension E = extension_from_ideal(A, ideal_generated(A, {2}));
    CHECK(!validate_extension(E));
    Cocycle T = extract_cocycle(E);
    CHECK(T.tf[0][3] == 1);
    CHECK(is_group_trivial(T));
    CHECK(realizes(E, T));
    Datum D = extension_datum(E);
    auto kk = kernel_kind(D, T);
    CHECK(kk.central);
    auto ko = kernel_kind_oracle(D, T);
    CHECK(ko.central);
    CHECK(!equivalent(D, T, zero_cocycle(D, T.act)));
    auto stab = stab_automorphisms(E);
    CHECK(stab.size() == 2);
}

TEST_CASE("derivations and Wells on F2") {
    Algebra A = fx::f2();
    auto ders = algebra_derivations(A);
    for (auto& d : ders) CHECK(is_derivation(A, d));
    int brute = 0;
    for (auto& h : module_homs(A, A)) brute += is_derivation(A, h);
    CHECK(static_cast<int>(ders.size()) == brute);
    Extension E = extension_from_ideal(A, ideal_generated(A, {2}));
    Report R = verify_wells(E);
    for (auto& l : R.lines) MESSAGE(l);
    CHECK(R.ok);
}
