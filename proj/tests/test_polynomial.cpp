#include "doctest.h"
#include "toric/polynomial.hpp"

using namespace toric;

namespace {

Polynomial x(int i, int n = 2) { return Polynomial::variable(i, n); }

} // namespace

TEST_CASE("polynomial arithmetic") {
    Polynomial p = x(0) + x(1);
    Polynomial q = x(0) - x(1);
    Polynomial prod = p * q;
    CHECK(prod == pow(x(0), 2) - pow(x(1), 2));
    CHECK(prod.total_degree() == 2);
    CHECK(prod.is_homogeneous());
    CHECK((p - p).is_zero());
    CHECK((p - p).total_degree() == -1);

    Polynomial mixed = prod + Polynomial::constant(Rat(3), 2) + x(1);
    CHECK(!mixed.is_homogeneous());
    CHECK(mixed.homogeneous_part(2) == prod);
    CHECK(mixed.homogeneous_part(1) == x(1));
    CHECK(mixed.truncated(1) == Polynomial::constant(Rat(3), 2) + x(1));

    CHECK(mixed.evaluate({Rat(2), Rat(5)}) == Rat(4 - 25 + 3 + 5));
    CHECK((Rat(1, 2) * p).evaluate({Rat(1), Rat(2)}) == Rat(3, 2));
}

TEST_CASE("exact division") {
    Polynomial p = pow(x(0), 2) - pow(x(1), 2);
    auto q = try_divide(p, x(0) + x(1));
    REQUIRE(q.has_value());
    CHECK(*q == x(0) - x(1));

    CHECK(!try_divide(p + Polynomial::constant(Rat(1), 2), x(0) + x(1)).has_value());
    CHECK(!try_divide(x(0), x(1)).has_value());
    // zero divided by anything is zero
    auto z = try_divide(Polynomial(2), x(0) + x(1));
    REQUIRE(z.has_value());
    CHECK(z->is_zero());
    CHECK_THROWS_AS(try_divide(p, Polynomial(2)), InputError);
}

TEST_CASE("parsing and printing") {
    Polynomial p = parse_polynomial("d1^2 + 3*d1*d2 - 1/2", "d", 2);
    CHECK(p == pow(x(0), 2) + Rat(3) * (x(0) * x(1)) - Polynomial::constant(Rat(1, 2), 2));
    CHECK(parse_polynomial(p.to_string("d"), "d", 2) == p);

    CHECK(parse_polynomial("(d1 + d2)^2", "d", 2) == pow(x(0) + x(1), 2));
    CHECK(parse_polynomial("-d1 + 2(d1 - d2)", "d", 2) == x(0) - Rat(2) * x(1));
    CHECK(parse_polynomial("0", "d", 3).is_zero());

    CHECK_THROWS_AS(parse_polynomial("d3", "d", 2), InputError);
    CHECK_THROWS_AS(parse_polynomial("d1 +", "d", 2), InputError);
    CHECK_THROWS_AS(parse_polynomial("(d1", "d", 2), InputError);
    CHECK_THROWS_AS(parse_polynomial("1/0", "d", 2), InputError);

    CHECK(Polynomial(2).to_string() == "0");
    CHECK((x(0) - x(1)).to_string("w") == "w1 - w2");
}

TEST_CASE("rational functions") {
    // (w1^2 - w2^2) / ((w1+w2)(w1*w2)) cancels to (w1 - w2)/(w1*w2)
    Polynomial num = pow(x(0), 2) - pow(x(1), 2);
    RationalFunction f(num, {x(0) + x(1), x(0) * x(1)});
    CHECK(f.numerator() == x(0) - x(1));
    CHECK(f.denominator() == x(0) * x(1));
    CHECK(f.evaluate({Rat(3), Rat(1)}) == Rat(2, 3));
    CHECK_THROWS_AS(f.evaluate({Rat(0), Rat(1)}), MathError);

    // equality is cross-multiplied, so unreduced forms still compare equal
    RationalFunction g(Rat(2) * num, {Rat(2) * (x(0) + x(1)), x(0) * x(1)});
    CHECK(f == g);

    // denominator made monic, scalar pushed into the numerator
    RationalFunction h(x(0), Rat(3) * x(1));
    CHECK(h.denominator() == x(1));
    CHECK(h.numerator() == Rat(1, 3) * x(0));

    RationalFunction z(Polynomial(2), {x(0)});
    CHECK(z.is_zero());
    CHECK(z.denominator() == Polynomial::constant(Rat(1), 2));

    CHECK_THROWS_AS(RationalFunction(x(0), Polynomial(2)), MathError);
    CHECK(f.to_string() == "(w1 - w2) / (w1*w2)");
}
