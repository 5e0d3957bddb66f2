#include <doctest.h>

#include "chow/rational.hpp"

using chow::Rational;

TEST_CASE("rationals normalize on construction") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(6, 3).is_integer());
    CHECK(Rational(6, 3).as_integer() == 2);
}

TEST_CASE("rational field operations") {
    Rational a(1, 2), b(1, 3);
    CHECK(a + b == Rational(5, 6));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 6));
    CHECK(a / b == Rational(3, 2));
    CHECK(-a == Rational(-1, 2));
    CHECK(a < Rational(2, 3));
    CHECK(Rational(-5) < Rational(-4));
    CHECK_THROWS_AS(a / Rational(0), chow::Error);
    CHECK_THROWS_AS(Rational(1, 0), chow::Error);
    CHECK_THROWS_AS(Rational(1, 3).as_integer(), chow::Error);
}

TEST_CASE("rational arithmetic refuses to overflow silently") {
    Rational big(INT64_MAX / 2);
    CHECK_THROWS_AS(big * big, chow::OverflowError);
    CHECK_NOTHROW(big + Rational(1));
}

TEST_CASE("rational printing") {
    CHECK(Rational(-3, 6).str() == "-1/2");
    CHECK(Rational(7).str() == "7");
}
