#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sctk/cdga.hpp"

using namespace sctk;

namespace {

CdgaSpec s1_spec() {
    CdgaSpec spec;
    spec.base_vars = {{"x", 0, false, true}};
    spec.neg_vars = {{"y", -1, false, true}, {"z", -1, false, true}};
    return spec;
}

// k = -3 pair scheme: x1_1, x1_2 in degree -1, y1_1, y1_2 in degree -2
Cdga k3_algebra(PairingScheme& s) {
    CdgaSpec spec;
    spec.neg_vars = {{"x1_1", -1, false, true},
                     {"x1_2", -1, false, true},
                     {"y1_1", -2, false, true},
                     {"y1_2", -2, false, true}};
    Cdga A = build_tower(spec);
    s = PairingScheme{};
    s.k = -3;
    s.pairs = {{1, A.alg->id_of("x1_1"), A.alg->id_of("y1_1")},
               {1, A.alg->id_of("x1_2"), A.alg->id_of("y1_2")}};
    return A;
}

} // namespace

TEST_CASE("build_tower counts generators and validates") {
    Cdga A = build_tower(s1_spec());
    auto m = A.gen_counts();
    REQUIRE(m.size() == 2);
    CHECK(m[0] == 1);
    CHECK(m[1] == 2);
    CHECK(vdim(A) == -1);

    CdgaSpec empty;
    Cdga Q = build_tower(empty);
    CHECK(vdim(Q) == 0);
    CHECK(Q.max_depth() == 0);
}

TEST_CASE("build_tower rejects bad differentials") {
    // dy1 of degree -1 has no possible target: only degrees -2 and 0 exist
    CdgaSpec spec;
    spec.base_vars = {{"x1", 0, false, true}, {"x2", 0, false, true}};
    spec.neg_vars = {{"y1", -2, false, true}};
    Cdga A = build_tower(spec); // fine with d = 0
    // an image of the wrong degree is rejected
    CdgaSpec bad = spec;
    bad.differential_exprs.push_back({"y1", Poly::generator(A.alg, "x1")});
    CHECK_THROWS_AS(build_tower(bad), Error);

    CdgaSpec dup;
    dup.base_vars = {{"x", 0, false, true}, {"x", 0, false, true}};
    CHECK_THROWS_AS(build_tower(dup), Error);

    CdgaSpec pos;
    pos.neg_vars = {{"y", 0, false, true}};
    CHECK_THROWS_AS(build_tower(pos), Error);
}

TEST_CASE("check_d_squared on the pinned examples") {
    // d = 0 passes
    Cdga A = build_tower(s1_spec());
    CHECK(check_d_squared(A).ok());

    // |y| = -1, dy = x (degree 0), dx = 0: passes
    Cdga B = build_tower(s1_spec());
    B.d.set_image(B.alg->id_of("y"), Poly::generator(B.alg, "x"));
    CHECK(check_d_squared(B).ok());

    // |w| = -2, dw = y; |y| = -1, dy = x != 0: fails with residual d^2 w = x
    CdgaSpec spec2;
    spec2.base_vars = {{"x", 0, false, true}};
    spec2.neg_vars = {{"y", -1, false, true}, {"w", -2, false, true}};
    Cdga C = build_tower(spec2);
    C.d.set_image(C.alg->id_of("w"), Poly::generator(C.alg, "y"));
    C.d.set_image(C.alg->id_of("y"), Poly::generator(C.alg, "x"));
    Report r = check_d_squared(C);
    CHECK_FALSE(r.ok());
    CHECK(r.checks.front().detail.find("d^2(w) = x") != std::string::npos);
}

TEST_CASE("master equation: pinned residuals") {
    PairingScheme s;
    Cdga A = k3_algebra(s);
    Poly x1 = A.poly("x1_1"), x2 = A.poly("x1_2"), y1 = A.poly("y1_1");

    CHECK(check_master_equation(A, s, Poly::zero(A.alg)).ok());
    CHECK(check_master_equation(A, s, mul(x1, x2)).ok());

    Poly H = mul(x1, x2) + y1;
    Report r = check_master_equation(A, s, H);
    CHECK_FALSE(r.ok());
    // residual is exactly +x1_2 under the left-derivative convention
    CHECK(master_equation_residual(A, s, H) == x2);

    CHECK_THROWS_AS(check_master_equation(A, s, x1), Error); // wrong degree
}

TEST_CASE("differential_from_hamiltonian: pinned examples") {
    // k = -1: gens x (0), y (-1); H in A^0: dy = dH/dx, dx = 0
    CdgaSpec spec;
    spec.base_vars = {{"x", 0, false, true}};
    spec.neg_vars = {{"y", -1, false, true}};
    Cdga A = build_tower(spec);
    PairingScheme s;
    s.k = -1;
    s.pairs = {{0, A.alg->id_of("x"), A.alg->id_of("y")}};
    Poly H = mul(A.poly("x"), A.poly("x")); // x^2
    Derivation d = differential_from_hamiltonian(A, s, H);
    CHECK(d.image(A.alg->id_of("y")) == A.poly("x") * Rat(2));
    CHECK(d.image(A.alg->id_of("x")).is_zero());

    // zero Hamiltonian gives the zero derivation
    Derivation z = differential_from_hamiltonian(A, s, Poly::zero(A.alg));
    CHECK(z.images.empty());

    // k = -2 z-scheme: dz = (1/2) dH/dz
    CdgaSpec spec2;
    spec2.base_vars = {{"t", 0, false, true}};
    spec2.neg_vars = {{"z1", -1, false, true}, {"y0_1", -2, false, true}};
    Cdga B = build_tower(spec2);
    PairingScheme s2;
    s2.k = -2;
    s2.pairs = {{0, B.alg->id_of("t"), B.alg->id_of("y0_1")}};
    s2.z_vars = {B.alg->id_of("z1")};
    Poly H2 = mul(B.poly("t"), B.poly("z1")); // degree -1 = k+1
    Derivation d2 = differential_from_hamiltonian(B, s2, H2);
    CHECK(d2.image(B.alg->id_of("z1")) == B.poly("t") * Rat(1, 2));
}

TEST_CASE("CME-passing Hamiltonian on the k odd scheme yields d^2 = 0") {
    PairingScheme s;
    Cdga A = k3_algebra(s);
    Poly H = mul(A.poly("x1_1"), A.poly("x1_2"));
    REQUIRE(check_master_equation(A, s, H).ok());
    A.d = differential_from_hamiltonian(A, s, H);
    CHECK(check_d_squared(A).ok());
    CHECK(A.diff(H).is_zero()); // dH = 0 is the same condition
}

TEST_CASE("k even middle pairs need the antisymmetric sign") {
    // k = -4, l = 1: x1_1 (-1) ~ y1_1 (-3); middle x2_1, y2_1 (-2)
    CdgaSpec spec;
    spec.neg_vars = {{"x1_1", -1, false, true},
                     {"y1_1", -3, false, true},
                     {"x2_1", -2, false, true},
                     {"y2_1", -2, false, true}};
    Cdga A = build_tower(spec);
    PairingScheme s;
    s.k = -4;
    s.pairs = {{1, A.alg->id_of("x1_1"), A.alg->id_of("y1_1")},
               {2, A.alg->id_of("x2_1"), A.alg->id_of("y2_1")}};
    // H = x1 X + x1 Y passes the master equation
    Poly H = mul(A.poly("x1_1"), A.poly("x2_1")) + mul(A.poly("x1_1"), A.poly("y2_1"));
    REQUIRE(check_master_equation(A, s, H).ok());
    A.d = differential_from_hamiltonian(A, s, H);
    CHECK(check_d_squared(A).ok());
    CHECK(A.diff(H).is_zero());
}

TEST_CASE("vdim is invariant under localization") {
    Cdga A = build_tower(s1_spec());
    long long v = vdim(A);
    // invert the generator x in place
    Cdga L = localize(A, A.poly("x"));
    CHECK(vdim(L) == v);
    CHECK(L.alg->var(L.alg->id_of("x")).invertible);

    // invert a non-generator element: adjoins a unit symbol
    Poly g = A.poly("x") * Rat(2) + Poly::constant(A.alg, 1);
    Cdga L2 = localize(A, g);
    CHECK(vdim(L2) == v);
    CHECK(L2.alg->size() == A.alg->size() + 1);

    // localize at 1: isomorphic algebra with a unit symbol
    Cdga L3 = localize(A, Poly::constant(A.alg, 1));
    CHECK(vdim(L3) == v);

    // du = -u^2 dg = 0 since dg = 0 in degree 0
    CHECK(L2.d.image(L2.alg->id_of("u")).is_zero());

    CHECK_THROWS_AS(localize(A, A.poly("y")), Error);       // wrong degree
    CHECK_THROWS_AS(localize(A, Poly::zero(A.alg)), Error); // zero
}

TEST_CASE("localized generators admit integer exponents") {
    Cdga A = build_tower(s1_spec());
    Cdga L = localize(A, A.poly("x"));
    Poly xinv(L.alg);
    xinv.add_term({{L.alg->id_of("x"), -3}}, 1);
    Poly x = Poly::generator(L.alg, "x");
    CHECK(mul(xinv, x.pow(3)) == Poly::constant(L.alg, 1));
}

TEST_CASE("minimality at a point follows the value convention") {
    // dy = x: minimal exactly where x vanishes
    Cdga A = build_tower(s1_spec());
    A.d.set_image(A.alg->id_of("y"), A.poly("x"));
    Point p0, p1;
    p0.assignment["x"] = 0;
    p1.assignment["x"] = 1;
    CHECK(check_minimal_at(A, p0).ok());
    Report r = check_minimal_at(A, p1);
    CHECK_FALSE(r.ok());
    CHECK(r.checks.front().detail.find("y") != std::string::npos);

    // d = 0 is minimal everywhere
    Cdga B = build_tower(s1_spec());
    CHECK(check_minimal_at(B, p1).ok());

    // a linear negative term: dw = x*y is non-minimal where x != 0
    CdgaSpec spec;
    spec.base_vars = {{"x", 0, false, true}};
    spec.neg_vars = {{"y", -1, false, true}, {"w", -2, false, true}};
    Cdga C = build_tower(spec);
    C.d.set_image(C.alg->id_of("w"), mul(C.poly("x"), C.poly("y")));
    CHECK(check_minimal_at(C, p0).ok());
    CHECK_FALSE(check_minimal_at(C, p1).ok());
}

TEST_CASE("k odd symplectic pair schemes have vdim zero") {
    PairingScheme s;
    Cdga A = k3_algebra(s);
    CHECK(vdim(A) == 0);
}
