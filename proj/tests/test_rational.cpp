#include "cylfloer/rational.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using cylfloer::Rational;

TEST_CASE("rational arithmetic stays reduced") {
    Rational a(1, 2), b(1, 3);
    CHECK((a + b) == Rational(5, 6));
    CHECK((a - b) == Rational(1, 6));
    CHECK((a * b) == Rational(1, 6));
    CHECK((a / b) == Rational(3, 2));
    CHECK(Rational(4, 8) == Rational(1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
}

TEST_CASE("rational ordering is exact") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(0));
    CHECK(Rational(7, 3) > Rational(2));
    CHECK(Rational(2, 3) <= Rational(2, 3));
}

TEST_CASE("rational parse and print") {
    CHECK(Rational::parse("3/4") == Rational(3, 4));
    CHECK(Rational::parse("-6/4") == Rational(-3, 2));
    CHECK(Rational::parse("17") == Rational(17));
    CHECK(Rational(5, 1).str() == "5");
    CHECK(Rational(-7, 2).str() == "-7/2");
    CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("a"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
}

TEST_CASE("overflow is loud") {
    Rational big(INT64_MAX, 1);
    CHECK_THROWS_AS(big * Rational(2), cylfloer::OverflowError);
    CHECK_THROWS_AS(big + big, cylfloer::OverflowError);
    CHECK_NOTHROW(big - big);
}

TEST_CASE("property: field axioms on random small rationals") {
    std::mt19937_64 rng(42);
    auto draw = [&] {
        std::int64_t n = static_cast<std::int64_t>(rng() % 2001) - 1000;
        std::int64_t d = 1 + static_cast<std::int64_t>(rng() % 40);
        return Rational(n, d);
    };
    for (int i = 0; i < 500; ++i) {
        Rational a = draw(), b = draw(), c = draw();
        CHECK((a + b) * c == a * c + b * c);
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        if (!c.is_zero()) CHECK(a * c / c == a);
    }
}
