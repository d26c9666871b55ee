#include <catch2/catch_amalgamated.hpp>

#include <gfkit.hpp>

using namespace gfkit;

TEST_CASE("rational constructor normalizes sign and gcd", "[scalars]") {
    CHECK(make_rat(2, -4) == Rat(-1) / 2);
    CHECK(make_rat(0, 7) == Rat(0));
    CHECK(make_rat(-6, -9) == Rat(2) / 3);
    CHECK_THROWS_AS(make_rat(1, 0), Error);
}

TEST_CASE("integer helpers", "[scalars]") {
    CHECK(pow10(0) == 1);
    CHECK(pow10(3) == 1000);
    CHECK(ipow(Int(2), 10) == 1024);
    CHECK(ipow(Int(-3), 3) == -27);
    CHECK(int_gcd(Int(12), Int(-18)) == 6);
    CHECK(int_lcm(Int(4), Int(6)) == 12);
    CHECK(factorial(0) == 1);
    CHECK(factorial(10) == 3628800);
    CHECK(is_integer(Rat(5)));
    CHECK_FALSE(is_integer(Rat(5) / 2));
}

TEST_CASE("digit counting", "[scalars]") {
    CHECK(digit_count(Int(0)) == 1);
    CHECK(digit_count(Int(-999)) == 3);
    CHECK(digit_count(Int(1000)) == 4);
    // A sign mark counts one extra unit of mass.
    CHECK(digit_mass(Int(7)) == 1);
    CHECK(digit_mass(Int(-7)) == 2);
    CHECK(digit_mass(Rat(-22) / 7) == 4);  // "22", "7", sign
}

TEST_CASE("round half even", "[scalars]") {
    CHECK(round_half_even(Rat(5) / 2) == 2);    // 2.5 -> 2
    CHECK(round_half_even(Rat(7) / 2) == 4);    // 3.5 -> 4
    CHECK(round_half_even(Rat(-5) / 2) == -2);  // -2.5 -> -2
    CHECK(round_half_even(Rat(1) / 3) == 0);
    CHECK(round_half_even(Rat(2) / 3) == 1);
}

TEST_CASE("exact square roots", "[scalars]") {
    CHECK(sqrt_exact(Int(49)).value() == 7);
    CHECK_FALSE(sqrt_exact(Int(48)).has_value());
    CHECK(sqrt_exact(make_rat(9, 16)).value() == make_rat(3, 4));
    CHECK_FALSE(sqrt_exact(make_rat(1, 2)).has_value());
}

TEST_CASE("floor log10", "[scalars]") {
    CHECK(floor_log10_abs(Rat(1)) == 0);
    CHECK(floor_log10_abs(Rat(999)) == 2);
    CHECK(floor_log10_abs(Rat(1000)) == 3);
    CHECK(floor_log10_abs(make_rat(1, 100)) == -2);
    CHECK(floor_log10_abs(make_rat(-3, 200)) == -2);  // 0.015
}

TEST_CASE("number theory tables", "[scalars]") {
    const auto mu = mobius_table(12);
    CHECK(mu[1] == 1);
    CHECK(mu[2] == -1);
    CHECK(mu[4] == 0);
    CHECK(mu[6] == 1);
    CHECK(mu[12] == 0);
    CHECK(divisors(12) == std::vector<std::size_t>{1, 2, 3, 4, 6, 12});
    CHECK(divisors(1) == std::vector<std::size_t>{1});
}

TEST_CASE("fixed decimal string round trip", "[scalars]") {
    for (const char* text : {"0.500", "-0.500", "3", "1234.000056", "0.000000"}) {
        const FixedDecimal d = FixedDecimal::parse(text);
        CHECK(d.to_string() == text);
    }
    CHECK(FixedDecimal::parse("+1.25").to_string() == "1.25");
    CHECK(FixedDecimal::parse("1.25").precision == 2);
    CHECK(FixedDecimal::parse(".5").mantissa == 5);
    CHECK_THROWS_AS(FixedDecimal::parse("1.2.3"), ParseError);
    CHECK_THROWS_AS(FixedDecimal::parse("abc"), ParseError);
    CHECK_THROWS_AS(FixedDecimal::parse(""), ParseError);
}

TEST_CASE("fixed decimal from rational", "[scalars]") {
    CHECK(FixedDecimal::from_rational(make_rat(1, 4), 3).to_string() == "0.250");
    CHECK(FixedDecimal::from_rational(make_rat(1, 3), 10).to_string() == "0.3333333333");
    CHECK(FixedDecimal::from_rational(make_rat(-2, 3), 5).to_string() == "-0.66667");
    const FixedDecimal d = FixedDecimal::from_rational(make_rat(1, 4), 2);
    CHECK(d.to_rational() == make_rat(1, 4));
    CHECK(d.scaled_power(2) == 6);  // round(100 * (1/4)^2) = 6.25 -> 6
}

TEST_CASE("polynomial arithmetic", "[scalars]") {
    const IntPoly p{1, 2, 3};  // 3x^2 + 2x + 1
    CHECK(p.degree() == 2);
    CHECK(p.coeff(1) == 2);
    CHECK(p.coeff(9) == 0);
    CHECK(p.leading() == 3);
    CHECK(IntPoly{}.degree() == -1);
    CHECK((IntPoly{0, 0}).is_zero());

    const IntPoly q{-1, 1};  // x - 1
    CHECK((p * q) == IntPoly{-1, -1, -1, 3});
    CHECK((p + q) == IntPoly{0, 3, 3});
    CHECK((p - p).is_zero());
    CHECK(IntPoly::monomial(Int(5), 3) == IntPoly{0, 0, 0, 5});
}

TEST_CASE("polynomial division and gcd", "[scalars]") {
    const RatPoly a{Rat(-1), Rat(0), Rat(1)};  // x^2 - 1
    const RatPoly b{Rat(-1), Rat(1)};          // x - 1
    const auto [quot, rem] = divmod(a, b);
    CHECK(quot == RatPoly{Rat(1), Rat(1)});
    CHECK(rem.is_zero());

    const RatPoly c{Rat(1), Rat(-2), Rat(1)};  // (x-1)^2
    const RatPoly g = poly_gcd(a, c);
    CHECK(g.degree() == 1);
    // The gcd vanishes at the shared root x = 1.
    Rat val(0);
    for (std::size_t i = 0; i < g.coeffs().size(); ++i) val += g.coeff(i);
    CHECK(val == 0);
}

TEST_CASE("rational polynomial to primitive integer polynomial", "[scalars]") {
    const RatPoly p{make_rat(3, 4), make_rat(3, 2)};  // (3/4) + (3/2) x
    CHECK(to_integer_primitive(p) == IntPoly{1, 2});
    CHECK(to_integer_primitive(RatPoly{Rat(-2), Rat(-4)}) == IntPoly{-1, -2});
}

TEST_CASE("row reduction and nullspace", "[scalars]") {
    RatMat m = {{Rat(1), Rat(2), Rat(3)}, {Rat(2), Rat(4), Rat(7)}};
    const auto pivots = rref(m);
    CHECK(pivots == std::vector<std::size_t>{0, 2});

    const auto basis = nullspace(RatMat{{Rat(1), Rat(1), Rat(1)}});
    REQUIRE(basis.size() == 2);
    for (const auto& v : basis) CHECK(v[0] + v[1] + v[2] == 0);
}

TEST_CASE("bareiss determinant", "[scalars]") {
    CHECK(det_bareiss({{Int(1), Int(2)}, {Int(3), Int(4)}}) == -2);
    CHECK(det_bareiss({{Int(2), Int(4)}, {Int(1), Int(2)}}) == 0);
    CHECK(det_bareiss({{Int(3)}}) == 3);
    CHECK(det_bareiss({{Int(0), Int(1), Int(0)},
                       {Int(0), Int(0), Int(1)},
                       {Int(1), Int(0), Int(0)}}) == 1);
}
