#include <doctest.h>

#include "ncgn/rational.hpp"
#include "ncgn/symbols.hpp"

using namespace ncgn;

TEST_CASE("rational arithmetic normalizes") {
    Rational a(2, 4), b(1, 3);
    CHECK(a == Rational(1, 2));
    CHECK((a + b) == Rational(5, 6));
    CHECK((a * b) == Rational(1, 6));
    CHECK((a - a).is_zero());
    CHECK((Rational(-3, -6)) == Rational(1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK(Rational(7, 3).str() == "7/3");
}

TEST_CASE("gaussian rational field operations") {
    GaussianRational i = GaussianRational::i();
    CHECK(i * i == GaussianRational(-1));
    GaussianRational z(Rational(1, 2), Rational(3));
    CHECK(z * z.conj() == GaussianRational(Rational(1, 4) + Rational(9)));
    CHECK((z / z) == GaussianRational(1));
}

TEST_CASE("omega polynomials") {
    OmegaPoly w = OmegaPoly::omega();
    OmegaPoly p = (OmegaPoly(1) + w) * (OmegaPoly(1) - w);
    CHECK(p.coeff(0) == Rational(1));
    CHECK(p.coeff(1) == Rational(0));
    CHECK(p.coeff(2) == Rational(-1));
    CHECK(p.eval(Rational(0)) == Rational(1));
    CHECK(p.eval(Rational(1)).is_zero());
    CHECK((w - w).is_zero());
    CHECK(OmegaPoly(Rational(1, 2)).str() == "1/2");
}

TEST_CASE("phase form wedge antisymmetry and substitution") {
    PhaseForm f;
    f.add_wedge(u_sym(0), v_sym(0), OmegaPoly(1));
    f.add_wedge(v_sym(0), u_sym(0), OmegaPoly(1));
    CHECK(f.wedge.empty());  // cancels

    f.add_wedge(pos_sym(1), pos_sym(2), OmegaPoly(1));
    std::map<Sym, LinearForm> sub;
    LinearForm s1;
    s1.add(u_sym(0), Rational(1, 2));
    s1.add(v_sym(0), Rational(1, 2));
    LinearForm s2;
    s2.add(u_sym(0), Rational(-1, 2));
    s2.add(v_sym(0), Rational(1, 2));
    sub[pos_sym(1)] = s1;
    sub[pos_sym(2)] = s2;
    PhaseForm g = f.substituted(sub);
    // (u+v)/2 ^ (v-u)/2 = (u^v - v^u)/4 = (u^v)/2
    CHECK(g.wedge_coeff(u_sym(0), v_sym(0)) == OmegaPoly(Rational(1, 2)));
}

TEST_CASE("constraint span reduces by largest symbols") {
    // constraints: u0 + u1 = 0 and w0 - u0 = 0 -> pivots w0 and u1
    LinearForm c1, c2;
    c1.add(u_sym(0), Rational(1));
    c1.add(u_sym(1), Rational(1));
    c2.add(w_sym(0), Rational(1));
    c2.add(u_sym(0), Rational(-1));
    ConstraintSpan span({c1, c2});
    CHECK(span.rank() == 2);

    LinearForm probe;
    probe.add(w_sym(0), Rational(2));
    probe.add(u_sym(1), Rational(2));
    CHECK(span.reduce(probe).is_zero());  // 2w0 + 2u1 = 2u0 - 2u0

    LinearForm probe2;
    probe2.add(u_sym(0), Rational(1));
    CHECK_FALSE(span.reduce(probe2).is_zero());
    CHECK(span.contains(c1));
    CHECK(span.contains(c2));
}
