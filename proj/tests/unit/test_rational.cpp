#include <doctest.h>

#include "largesol/rational.hpp"

using namespace largesol;

TEST_CASE("to_rational recovers short fractions") {
    CHECK(*to_rational(0.5) == Rational(1, 2));
    CHECK(*to_rational(1.0 / 3.0) == Rational(1, 3));
    CHECK(*to_rational(-7.0 / 3.0) == Rational(-7, 3));
    CHECK(*to_rational(8.0) == Rational(8));
    CHECK_FALSE(to_rational(std::sqrt(2.0)).has_value());
}

TEST_CASE("exact roots and powers") {
    CHECK(*exact_root(BigInt(216), 3) == 6);
    CHECK_FALSE(exact_root(BigInt(120), 2).has_value());
    CHECK(*exact_pow(Rational(216), Rational(1, 3)) == 6);
    CHECK(*exact_pow(Rational(4, 9), Rational(3, 2)) == Rational(8, 27));
    CHECK_FALSE(exact_pow(Rational(2), Rational(1, 2)).has_value());
    CHECK(pow_int(Rational(2, 3), -2) == Rational(9, 4));
}

TEST_CASE("string form") {
    CHECK(to_string(Rational(7, 3)) == "7/3");
    CHECK(to_string(Rational(4)) == "4");
}
