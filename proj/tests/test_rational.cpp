#include "doctest.h"

#include <random>
#include <stdexcept>

#include "wordcount/int128.hpp"
#include "wordcount/rational.hpp"

using wordcount::Int128;
using wordcount::Rational;

TEST_CASE("int128 decimal round-trip") {
  CHECK(wordcount::to_string(Int128{0}) == "0");
  CHECK(wordcount::to_string(Int128{-7}) == "-7");
  CHECK(wordcount::parse_int128("497") == Int128{497});
  CHECK(wordcount::parse_int128("-497") == Int128{-497});
  CHECK(wordcount::parse_int128("+12") == Int128{12});

  // extremes of the type
  const Int128 max = static_cast<Int128>((~static_cast<unsigned __int128>(0)) >> 1);
  const Int128 min = -max - 1;
  CHECK(wordcount::parse_int128(wordcount::to_string(max)) == max);
  CHECK(wordcount::parse_int128(wordcount::to_string(min)) == min);
  CHECK(wordcount::to_string(max) == "170141183460469231731687303715884105727");
  CHECK(wordcount::to_string(min) == "-170141183460469231731687303715884105728");

  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    Int128 v = static_cast<Int128>(rng()) * static_cast<Int128>(rng());
    if (rng() & 1) v = -v;
    CHECK(wordcount::parse_int128(wordcount::to_string(v)) == v);
  }
}

TEST_CASE("int128 parse rejects junk and overflow") {
  CHECK_THROWS_AS(wordcount::parse_int128(""), std::invalid_argument);
  CHECK_THROWS_AS(wordcount::parse_int128("-"), std::invalid_argument);
  CHECK_THROWS_AS(wordcount::parse_int128("12x"), std::invalid_argument);
  CHECK_THROWS_AS(wordcount::parse_int128("1.5"), std::invalid_argument);
  // one past each end of the range
  CHECK_THROWS_AS(wordcount::parse_int128("170141183460469231731687303715884105728"),
                  std::out_of_range);
  CHECK_THROWS_AS(wordcount::parse_int128("-170141183460469231731687303715884105729"),
                  std::out_of_range);
  // far past the end must not wrap around into an accepted value
  CHECK_THROWS_AS(wordcount::parse_int128("999999999999999999999999999999999999999999"),
                  std::out_of_range);
}

TEST_CASE("rational normalization") {
  CHECK(Rational(4, 8) == Rational(1, 2));
  CHECK(Rational(-4, 8) == Rational(1, -2));
  CHECK(Rational(0, 5) == Rational(0, 9));
  CHECK(Rational(3, -6).denominator() == Int128{2});
  CHECK(Rational(3, -6).numerator() == Int128{-1});
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("rational arithmetic and ordering") {
  const Rational a(1, 3);
  const Rational b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(-a == Rational(-1, 3));
  CHECK_THROWS_AS(a / Rational(0), std::domain_error);

  CHECK(Rational(497, 15) > Rational(33));
  CHECK(Rational(497, 15) < Rational(34));
  CHECK(Rational(2, 4) <= Rational(1, 2));

  Rational acc;
  for (int i = 0; i < 15; ++i) acc += Rational(497, 225);
  CHECK(acc == Rational(497, 15));
}

TEST_CASE("rational text form round-trips") {
  CHECK(Rational(497, 15).str() == "497/15");
  CHECK(Rational(-1, 2).str() == "-1/2");
  CHECK(Rational(0).str() == "0/1");
  CHECK(Rational::parse("497/15") == Rational(497, 15));
  CHECK(Rational::parse("-3") == Rational(-3));
  CHECK(Rational::parse(Rational(123456789, 987654).str()) ==
        Rational(123456789, 987654));
  CHECK_THROWS(Rational::parse("1/"));
  CHECK_THROWS(Rational::parse("a/b"));
}

TEST_CASE("rational to floating point") {
  CHECK(Rational(1, 2).to_double() == doctest::Approx(0.5));
  CHECK(static_cast<double>(Rational(497, 15).to_long_double()) ==
        doctest::Approx(33.13333333333).epsilon(1e-10));
}
