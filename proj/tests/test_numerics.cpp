#include <random>
#include <string>

#include "doctest.h"

#include "boxseries/numerics.hpp"

using namespace boxseries;

TEST_SUITE("numerics") {

TEST_CASE("parse_rational reads integers, decimals, fractions and exponents exactly") {
  CHECK(parse_rational("7") == 7);
  CHECK(parse_rational("-3/4") == Rational(-3, 4));
  CHECK(parse_rational("0.125") == Rational(1, 8));
  CHECK(parse_rational("1e-3") == Rational(1, 1000));
  CHECK(parse_rational("2.5e2") == 250);
  CHECK(parse_rational("+6/4") == Rational(3, 2));
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-10/5")) == "-2");
}

TEST_CASE("parse_rational rejects malformed literals") {
  for (const char* bad : {"", "1/0", "abc", "1.2.3", "--1", "1/", "/2", "1e", "0x10"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_rational(bad), std::invalid_argument);
  }
}

TEST_CASE("make_context installs target + 10 working digits") {
  CHECK(make_context(36).working_digits == 46);
  CHECK(make_context(300).working_digits == 310);
  CHECK(make_context(1).working_digits == 11);
  CHECK_THROWS_AS(make_context(0), std::invalid_argument);
  CHECK_THROWS_AS(make_context(-5), std::invalid_argument);
}

TEST_CASE("escalate follows the guard policy and never lowers precision") {
  CHECK(escalate(make_context(36), 0).working_digits == 46);
  CHECK(escalate(make_context(36), 5).working_digits >= 51);
  CHECK(escalate(make_context(300), 2400).working_digits >= 2710);

  PrecisionContext wide = make_context(20);
  wide.working_digits = 500;
  CHECK(escalate(wide, 3).working_digits == 500);
  for (int c = 0; c < 200; c += 7) {
    const auto ctx = escalate(make_context(40), c);
    CHECK(ctx.working_digits >= ctx.target_digits + c + 10);
    CHECK(ctx.target_digits == 40);
  }
}

TEST_CASE("digits_to_bits holds the requested decimal digits") {
  for (int d : {1, 10, 36, 300, 2710}) {
    CHECK(static_cast<double>(digits_to_bits(d)) >= d * 3.3219280948873623);
  }
}

TEST_CASE("decimal rendering") {
  const long bits = digits_to_bits(60);
  CHECK(BigReal::pi(bits).to_decimal(20) == "3.1415926535897932385");
  CHECK(BigReal("123456789", bits).to_decimal(10) == "123456789.0");
  CHECK(BigReal("1000000000", bits).to_decimal(4) == "1.000e+09");
  CHECK(BigReal("0.000001", bits).to_decimal(3) == "0.00000100");
  CHECK(BigReal("0.0000001", bits).to_decimal(3) == "1.00e-07");
  CHECK(BigReal("-2.5e-300", bits).to_decimal(3) == "-2.50e-300");
  CHECK(BigReal(0L, bits).to_decimal(4) == "0.000");

  SUBCASE("ties round to even") {
    CHECK(BigReal("0.125", 64).to_decimal(2) == "0.12");
    CHECK(BigReal("0.375", 64).to_decimal(2) == "0.38");
    CHECK(BigReal("2.5", 64).to_decimal(1) == "2.0");
    CHECK(BigReal("3.5", 64).to_decimal(1) == "4.0");
  }
}

TEST_CASE("rendering at working digits round-trips at target digits") {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<long> num(-1000000000L, 1000000000L);
  std::uniform_int_distribution<long> den(1, 999999L);
  const PrecisionContext ctx = make_context(40);
  const long bits = ctx.working_bits();
  for (int i = 0; i < 200; ++i) {
    const BigReal x(Rational(num(rng), den(rng)), bits);
    const BigReal back(x.to_decimal(ctx.working_digits), bits);
    CHECK(back.to_decimal(ctx.target_digits) == x.to_decimal(ctx.target_digits));
  }
}

TEST_CASE("arithmetic, ordering and magnitude") {
  const long bits = digits_to_bits(50);
  const BigReal two(2L, bits);
  const BigReal r = sqrt(two);
  CHECK((r * r - two).log10_abs() < -48);
  CHECK(pow(two, 10).to_decimal(5) == "1024.0");
  CHECK(BigReal("1e-500", bits).log10_abs() == doctest::Approx(-500.0));
  CHECK(BigReal(-3L, bits) < BigReal(2L, bits));
  CHECK(max(BigReal(-3L, bits), BigReal(2L, bits)) == BigReal(2L, bits));
  CHECK(abs(BigReal(-3L, bits)) == BigReal(3L, bits));
  CHECK((BigReal(7L, bits) / 2L).to_decimal(3) == "3.50");
  CHECK_THROWS_AS(BigReal("not a number", bits), std::invalid_argument);
}

TEST_CASE("identical inputs give identical renderings") {
  const long bits = digits_to_bits(80);
  const BigReal a = BigReal::pi(bits) / BigReal(Rational(7, 3), bits);
  const BigReal b = BigReal::pi(bits) / BigReal(Rational(7, 3), bits);
  CHECK(a.to_decimal(80) == b.to_decimal(80));
}

}  // TEST_SUITE
