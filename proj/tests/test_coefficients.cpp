#include <doctest.h>

#include <random>

#include "pmod/coefficients.hpp"

using namespace pmod;

TEST_CASE("field parsing") {
    CHECK(Field::parse("Q").is_rational());
    CHECK(Field::parse("Zp:5").characteristic() == 5);
    CHECK(Field::parse("Zp:2") == Field::prime(2));
    CHECK_THROWS_AS(Field::parse("Zp:6"), std::invalid_argument);
    CHECK_THROWS_AS(Field::parse("Zp:1"), std::invalid_argument);
    CHECK_THROWS_AS(Field::parse("R"), std::invalid_argument);
    CHECK_THROWS_AS(Field::parse("Zp:"), std::invalid_argument);
    CHECK(Field::prime(7).name() == "Zp:7");
}

TEST_CASE("prime field arithmetic") {
    const Field f = Field::prime(5);
    const Scalar a(f, 3L), b(f, 4L);
    CHECK((a + b) == Scalar(f, 2L));
    CHECK((a * b) == Scalar(f, 2L));
    CHECK((a - b) == Scalar(f, 4L));
    CHECK((a / b) == Scalar(f, 2L));  // 4^-1 = 4, 3*4 = 12 = 2
    CHECK(Scalar(f, -1L) == Scalar(f, 4L));
    CHECK(a.inverse() * a == Scalar::one(f));
    CHECK_THROWS_AS(Scalar::zero(f).inverse(), std::domain_error);
}

TEST_CASE("large prime does not overflow") {
    const Field f = Field::prime(4294967291u);  // largest prime below 2^32
    const Scalar a(f, -1L);
    CHECK(a * a == Scalar::one(f));
    CHECK(a.inverse() == a);
}

TEST_CASE("rational arithmetic is exact") {
    const Field q = Field::rationals();
    const Scalar third = parse_scalar(q, "1/3");
    CHECK((third + third + third).is_one());
    CHECK(parse_scalar(q, "-6/4") == Scalar(q, mpq_class(-3, 2)));
    CHECK(parse_scalar(q, "+007").to_string() == "7");
}

TEST_CASE("parse_scalar into Z/p") {
    const Field f = Field::prime(7);
    CHECK(parse_scalar(f, "1/3") == Scalar(f, 5L));  // 3*5 = 15 = 1
    CHECK_THROWS_AS(parse_scalar(f, "1/7"), std::domain_error);
    CHECK_THROWS_AS(parse_scalar(f, "x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_scalar(f, ""), std::invalid_argument);
}

TEST_CASE("mixing fields throws") {
    CHECK_THROWS_AS(Scalar(Field::prime(3), 1L) + Scalar(Field::rationals(), 1L), std::invalid_argument);
}

TEST_CASE("field axioms on random samples") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> pick(-50, 50);
    for (const Field f : {Field::rationals(), Field::prime(5), Field::prime(101)}) {
        for (int trial = 0; trial < 300; ++trial) {
            const Scalar a(f, pick(rng)), b(f, pick(rng)), c(f, pick(rng));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK((a + b) + c == a + (b + c));
            CHECK(a - a == Scalar::zero(f));
            if (!b.is_zero()) CHECK(a / b * b == a);
        }
    }
}

TEST_CASE("monomials") {
    const Field q = Field::rationals();
    const Monomial a(Scalar(q, 2L), 3), b(Scalar(q, -1L), 1);
    CHECK((a * b) == Monomial(Scalar(q, -2L), 4));
    CHECK(b.divides(a));
    CHECK_FALSE(a.divides(b));
    CHECK(a.divides(Monomial::zero(q)));
    CHECK_FALSE(Monomial::zero(q).divides(a));
    CHECK_THROWS_AS(a + b, std::domain_error);
    CHECK((a + a) == Monomial(Scalar(q, 4L), 3));
    CHECK((a - a).is_zero());
    CHECK((a - a).exponent() == 0);
    CHECK_THROWS_AS(Monomial(Scalar(q, 1L), -1), std::invalid_argument);
    CHECK(a.to_string() == "2t^3");
}

TEST_CASE("monomial gcd is monic of minimal exponent") {
    const Field q = Field::rationals();
    const Monomial a(Scalar(q, 5L), 3), b(Scalar(q, -2L), 7);
    CHECK(monomial_gcd(a, b) == Monomial(Scalar::one(q), 3));
    CHECK(monomial_gcd(Monomial::zero(q), b) == Monomial(Scalar::one(q), 7));
    CHECK_THROWS_AS(monomial_gcd(Monomial::zero(q), Monomial::zero(q)), std::domain_error);
}
