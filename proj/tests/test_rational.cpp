#include <doctest.h>

#include "oddwalks/errors.hpp"
#include "oddwalks/rational.hpp"

using oddwalks::Error;
using oddwalks::Rational;

TEST_CASE("rational reduces and normalizes signs") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(0, -7).den() == 1);
}

TEST_CASE("rational arithmetic is exact") {
    const Rational third(1, 3);
    CHECK(third + third + third == Rational(1));
    CHECK(Rational(1, 6) + Rational(1, 10) == Rational(4, 15));
    CHECK(Rational(3, 7) * Rational(7, 3) == Rational(1));
    CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
    CHECK(Rational(5, 8) / Rational(5, 2) == Rational(1, 4));
    CHECK(-Rational(3, 4) == Rational(-3, 4));
}

TEST_CASE("rational ordering") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(-1, 3));
    CHECK(Rational(7, 7) <= Rational(1));
    CHECK(Rational(2, 3).is_positive());
    CHECK(Rational(-2, 3).is_negative());
    CHECK(Rational(0, 9).is_zero());
}

TEST_CASE("rational text and real forms") {
    CHECK(Rational(1, 3).to_string() == "1/3");
    CHECK(Rational(4).to_string() == "4/1");
    CHECK(Rational(-1, 2).to_string() == "-1/2");
    CHECK(Rational(1, 2).to_double() == doctest::Approx(0.5));
    CHECK(Rational(1, 3).inverse() == Rational(3));
}

TEST_CASE("rational guards") {
    CHECK_THROWS_AS(Rational(1, 0), Error);
    CHECK_THROWS_AS(Rational(1) / Rational(0), Error);
    CHECK_THROWS_AS(Rational(0).inverse(), Error);
    // 2^62/1 + 2^62/1 still fits; (2^62/3) * (2^62/5) does not.
    const std::int64_t big = std::int64_t(1) << 62;
    CHECK_THROWS_AS(Rational(big, 3) * Rational(big, 5), Error);
}
