#include <catch2/catch_amalgamated.hpp>

#include "vbmps/half_int.hpp"

using namespace vbmps;

TEST_CASE("HalfInt stores exact twice-values") {
    HalfInt s = HalfInt::from_twice(3);
    CHECK(s.twice() == 3);
    CHECK(!s.is_integer());
    CHECK(s.value() == Catch::Approx(1.5));
    CHECK(s.multiplicity() == 4);
    CHECK(s.str() == "3/2");

    HalfInt two = HalfInt::from_int(2);
    CHECK(two.twice() == 4);
    CHECK(two.is_integer());
    CHECK(two.multiplicity() == 5);
    CHECK(two.str() == "2");

    CHECK(HalfInt::from_twice(-1).str() == "-1/2");
    CHECK(HalfInt::from_int(0).str() == "0");
}

TEST_CASE("HalfInt arithmetic and ordering") {
    HalfInt a = HalfInt::from_twice(3), b = HalfInt::from_twice(1);
    CHECK((a + b).twice() == 4);
    CHECK((a - b).twice() == 2);
    CHECK((-a).twice() == -3);
    CHECK(b < a);
    CHECK(a == HalfInt::from_twice(3));
    CHECK(a != b);
}

TEST_CASE("multiplicity rejects negative spins") {
    CHECK_THROWS_AS(HalfInt::from_twice(-1).multiplicity(), std::domain_error);
}

TEST_CASE("parity_sign on integers, rejected on half-odd values") {
    CHECK(parity_sign(HalfInt::from_int(0)) == 1);
    CHECK(parity_sign(HalfInt::from_int(1)) == -1);
    CHECK(parity_sign(HalfInt::from_int(2)) == 1);
    CHECK(parity_sign(HalfInt::from_int(-1)) == -1);
    CHECK(parity_sign(HalfInt::from_int(-2)) == 1);
    CHECK_THROWS_AS(parity_sign(HalfInt::from_twice(1)), std::domain_error);
}

TEST_CASE("parse_half_int accepts fraction, decimal and integer forms") {
    CHECK(parse_half_int("3/2").twice() == 3);
    CHECK(parse_half_int("-1/2").twice() == -1);
    CHECK(parse_half_int("1.5").twice() == 3);
    CHECK(parse_half_int("0.5").twice() == 1);
    CHECK(parse_half_int("2").twice() == 4);
    CHECK(parse_half_int("4/2").twice() == 4);
    CHECK(parse_half_int("3/1").twice() == 6);
}

TEST_CASE("parse_half_int rejects non-half-integers and junk") {
    CHECK_THROWS_AS(parse_half_int(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_half_int("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_half_int("0.3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_half_int("1.25"), std::invalid_argument);
    CHECK_THROWS_AS(parse_half_int("3/4"), std::invalid_argument);
    CHECK_THROWS_AS(parse_half_int("2x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_half_int("1/2x"), std::invalid_argument);
}
