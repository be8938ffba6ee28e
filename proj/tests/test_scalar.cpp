#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "msx/rng.hpp"
#include "msx/scalar.hpp"

using namespace msx;

TEST_CASE("field arithmetic") {
    Scalar x = Scalar::variable("x");
    Scalar y = Scalar::variable("y");

    CHECK(x / y + (Scalar(1) - x / y) == Scalar(1));
    CHECK((x * x - Scalar(1)) / (x - Scalar(1)) == x + Scalar(1));
    CHECK(Scalar(Rational(2, 3)) * x * (Scalar(Rational(3, 2)) * x) == x * x);

    CHECK_THROWS_AS(x / Scalar(0), DivisionByZero);
}

TEST_CASE("partial derivatives") {
    Scalar x = Scalar::variable("x");
    Scalar y = Scalar::variable("y");

    CHECK((x * x * y).partial("x") == Scalar(2) * x * y);
    CHECK((Scalar(1) / x).partial("x") == -(Scalar(1) / (x * x)));
    CHECK(Scalar(7).partial("x") == Scalar(0));

    // mixed partials commute
    SplitMix64 rng(11);
    for (int t = 0; t < 30; ++t) {
        Scalar a = Scalar(rng.polynomial({"x", "y", "z"}, 3)) /
                   Scalar(Polynomial(rng.nonzero_rational()) + rng.polynomial({"x"}, 1) * rng.polynomial({"x"}, 1));
        CHECK(a.partial("x").partial("y") == a.partial("y").partial("x"));
    }
}

TEST_CASE("evaluation") {
    Scalar x = Scalar::variable("x");
    Scalar y = Scalar::variable("y");
    Scalar z = Scalar::variable("z");
    Scalar w = Scalar::variable("w");

    CHECK((x * x + y).evaluate({{"x", 2}, {"y", 1}}) == Rational(5));
    CHECK_THROWS_AS((Scalar(1) / x).evaluate({{"x", 0}}), PoleAtPoint);
    CHECK((x * w - y * z).evaluate({{"x", 1}, {"y", 0}, {"z", 0}, {"w", 1}}) == Rational(1));

    // ring homomorphism
    SplitMix64 rng(5);
    std::vector<std::string> vars = {"x", "y"};
    for (int t = 0; t < 30; ++t) {
        Scalar a{rng.polynomial(vars, 2)};
        Scalar b{rng.polynomial(vars, 2)};
        std::map<std::string, Rational> pt = {{"x", rng.rational()}, {"y", rng.rational()}};
        CHECK((a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt));
        CHECK((a + b).evaluate(pt) == a.evaluate(pt) + b.evaluate(pt));
    }
}

TEST_CASE("field axioms on random scalars") {
    SplitMix64 rng(23);
    std::vector<std::string> vars = {"x", "y", "z", "w"};
    for (int t = 0; t < 100; ++t) {
        Scalar a{rng.polynomial(vars, 3)};
        Scalar b{rng.polynomial(vars, 3)};
        Scalar c{rng.polynomial(vars, 3)};
        CHECK((a + b) + c == a + (b + c));
        CHECK(a + b == b + a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
    }
}
