#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "cep/decimal.hpp"
#include "cep/errors.hpp"

using cep::Decimal;

TEST_CASE("parse and to_string round-trip canonical forms") {
    for (const char* text : {"0", "1", "-1", "0.5", "-0.25", "100000000", "2027777.777777777778",
                             "0.000000000001", "-0.000000000001", "999999999999999999999999"}) {
        Decimal d = Decimal::parse(text);
        CHECK(d.to_string() == text);
        CHECK(Decimal::parse(d.to_string()) == d);
    }
}

TEST_CASE("parse normalizes away redundant digits") {
    CHECK(Decimal::parse("1.50").to_string() == "1.5");
    CHECK(Decimal::parse("00.5").to_string() == "0.5");
    CHECK(Decimal::parse("1.000000000000").to_string() == "1");
    CHECK(Decimal::parse("-0").to_string() == "0");
    CHECK(Decimal::parse("+2.5").to_string() == "2.5");
}

TEST_CASE("parse rejects malformed input") {
    for (const char* text : {"", ".", "1.", ".5", "1e5", "1,000", "--1", "1.2.3", "abc",
                             "0.1234567890123", "1 "}) {
        CHECK_THROWS_AS(Decimal::parse(text), cep::ParseError);
    }
}

TEST_CASE("parse rejects magnitudes beyond 24 integer digits") {
    CHECK_THROWS_AS(Decimal::parse("1000000000000000000000000"), cep::OverflowError);
    CHECK_NOTHROW(Decimal::parse("999999999999999999999999.999999999999"));
}

TEST_CASE("addition is exact and associative") {
    std::mt19937 rng(7001);
    std::uniform_int_distribution<std::int64_t> raw(-1'000'000'000'000'000LL,
                                                    1'000'000'000'000'000LL);
    for (int i = 0; i < 1000; ++i) {
        Decimal a = Decimal::from_raw(raw(rng));
        Decimal b = Decimal::from_raw(raw(rng));
        Decimal c = Decimal::from_raw(raw(rng));
        CHECK((a + b) + c == a + (b + c));
        CHECK(a + b - b == a);
    }
}

TEST_CASE("multiplication rounds half away from zero at 12 places") {
    CHECK(Decimal::from_int(2).mul(Decimal::from_int(3)) == Decimal::from_int(6));
    CHECK(Decimal::parse("0.1").mul(Decimal::parse("0.1")).to_string() == "0.01");
    CHECK(Decimal::parse("0.000001").mul(Decimal::parse("0.0000005")).to_string() ==
          "0.000000000001");
    CHECK(Decimal::parse("-0.000001").mul(Decimal::parse("0.0000005")).to_string() ==
          "-0.000000000001");
    CHECK(Decimal::parse("0.000001").mul(Decimal::parse("0.0000004")).is_zero());
}

TEST_CASE("mul_ratio applies an exact rational with one rounding") {
    Decimal coupon_base = Decimal::from_int(2'000'000);
    CHECK(coupon_base.mul_ratio(365, 360).to_string() == "2027777.777777777778");
    CHECK(coupon_base.mul_ratio(360, 360) == coupon_base);
    CHECK(Decimal::from_int(1).mul_ratio(1, 3).to_string() == "0.333333333333");
    CHECK(Decimal::from_int(-1).mul_ratio(1, 3).to_string() == "-0.333333333333");
    CHECK_THROWS_AS(Decimal::from_int(1).mul_ratio(1, 0), cep::DomainError);
}

TEST_CASE("div rounds once") {
    CHECK(Decimal::from_int(2).div(Decimal::parse("1.15")).to_string() == "1.739130434783");
    CHECK(Decimal::from_int(1).div(Decimal::from_int(8)).to_string() == "0.125");
    CHECK_THROWS_AS(Decimal::from_int(1).div(Decimal()), cep::DomainError);
}

TEST_CASE("overflow in arithmetic raises instead of wrapping") {
    Decimal big = Decimal::parse("999999999999999999999999");
    CHECK_THROWS_AS(big.mul(big), cep::OverflowError);
    CHECK_THROWS_AS(big.mul_ratio(1'000'000, 1), cep::OverflowError);
}

TEST_CASE("from_double_rounded picks the nearest representable value") {
    CHECK(Decimal::from_double_rounded(0.5).to_string() == "0.5");
    CHECK(Decimal::from_double_rounded(-2.0) == Decimal::from_int(-2));
    CHECK(Decimal::from_double_rounded(1.5e-13).is_zero());
    double x = 81873.07530779819;
    CHECK(Decimal::from_double_rounded(x).to_double() == doctest::Approx(x).epsilon(1e-12));
}

TEST_CASE("to_double round-trips simple magnitudes") {
    CHECK(Decimal::parse("1.5").to_double() == doctest::Approx(1.5));
    CHECK(Decimal::from_int(100'000'000).to_double() == doctest::Approx(1e8));
}

TEST_CASE("ordering and sign helpers") {
    CHECK(Decimal::parse("-0.1") < Decimal());
    CHECK(Decimal::parse("0.1") > Decimal());
    CHECK(Decimal::parse("-3").abs() == Decimal::from_int(3));
    CHECK(Decimal::parse("-3").sign() == -1);
    CHECK(Decimal().sign() == 0);
    CHECK((-Decimal::parse("2.5")).to_string() == "-2.5");
}
