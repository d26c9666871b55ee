#include <catch2/catch_amalgamated.hpp>

#include <gfkit.hpp>

#include "test_support.hpp"

#include <random>

using namespace gfkit;
using namespace testsupport;

namespace {

/// Checks the standard reduction conditions plus determinant preservation.
void check_reduction_invariants(const LatticeBasis& before, const LatticeBasis& after,
                                const Rat& delta) {
    REQUIRE(after.size() == before.size());
    const auto gs = gram_schmidt(after);
    for (std::size_t i = 0; i < after.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            CHECK(abs(gs.mu[i][j]) <= make_rat(1, 2));
    for (std::size_t i = 1; i < after.size(); ++i) {
        const Rat mu = gs.mu[i][i - 1];
        CHECK(gs.norms[i] >= (delta - mu * mu) * gs.norms[i - 1]);
    }
    CHECK(abs(det_bareiss(before)) == abs(det_bareiss(after)));
}

LatticeBasis random_basis(std::mt19937& rng, std::size_t dim, long bound) {
    std::uniform_int_distribution<long> dist(-bound, bound);
    LatticeBasis b(dim, std::vector<Int>(dim));
    for (auto& row : b)
        for (auto& x : row) x = Int(dist(rng));
    return b;
}

}  // namespace

TEST_CASE("gram schmidt rejects dependent rows", "[algebraic]") {
    CHECK_THROWS_AS(gram_schmidt({{Int(1), Int(2)}, {Int(2), Int(4)}}), DependentRows);
}

TEST_CASE("lattice reduction invariants on random bases", "[algebraic]") {
    std::mt19937 rng(20210405);
    const Rat delta = make_rat(3, 4);
    int done = 0;
    while (done < 30) {
        const std::size_t dim = 2 + static_cast<std::size_t>(rng() % 7);  // 2..8
        LatticeBasis basis = random_basis(rng, dim, 1000000);
        if (det_bareiss(basis) == 0) continue;  // regenerate singular draws
        const LatticeBasis reduced = lll_reduce(basis, delta);
        check_reduction_invariants(basis, reduced, delta);
        ++done;
    }
}

TEST_CASE("a tiny known reduction", "[algebraic]") {
    // Rows (1, 0) and (k, 1) reduce to unit-size vectors.
    const LatticeBasis reduced = lll_reduce({{Int(1), Int(0)}, {Int(7), Int(1)}});
    for (const auto& row : reduced) {
        Int norm = 0;
        for (const Int& x : row) norm += x * x;
        CHECK(norm <= 2);
    }
}

namespace {

FixedDecimal golden_ratio(unsigned long digits) {
    // (1 + sqrt 5)/2 scaled to the requested precision.
    const Int mant = (pow10(digits) + sqrt(Int(5) * pow10(2 * digits))) / 2;
    return FixedDecimal(mant, digits);
}

FixedDecimal sqrt2(unsigned long digits) {
    return FixedDecimal(sqrt(Int(2) * pow10(2 * digits)), digits);
}

}  // namespace

TEST_CASE("minimal polynomial detection from fifty digits", "[algebraic]") {
    CHECK(algdep(golden_ratio(50), 2, 50).value() == IntPoly{-1, -1, 1});
    // A larger degree bound trims back down to the true minimal polynomial.
    CHECK(algdep(golden_ratio(50), 4, 50).value() == IntPoly{-1, -1, 1});
    CHECK(algdep(sqrt2(40), 2, 40).value() == IntPoly{-2, 0, 1});
    CHECK(algdep(FixedDecimal::from_rational(make_rat(22, 7), 30), 1, 30).value() ==
          IntPoly{-22, 7});
}

TEST_CASE("a patternless decimal yields no relation", "[algebraic]") {
    const FixedDecimal junk =
        FixedDecimal::parse("0.1234567891011121314151617181920212223242");
    CHECK_FALSE(algdep(junk, 3, 40).has_value());
}

TEST_CASE("equation normalization", "[algebraic]") {
    const auto eq = make_algebraic_equation({RatPoly{Rat(-2)}, RatPoly{Rat(2)}});
    REQUIRE(eq.has_value());
    CHECK(eq->cz == std::vector<IntPoly>{IntPoly{-1}, IntPoly{1}});
    CHECK(eq->x_degree() == 1);
    CHECK_FALSE(make_algebraic_equation({RatPoly{}, RatPoly{}}).has_value());
}

TEST_CASE("planar map series reconstructs its quadratic equation", "[algebraic]") {
    const auto eq = reconstruct_algebraic(planar_maps(8));
    REQUIRE(eq.has_value());
    CHECK(eq->cz == std::vector<IntPoly>{IntPoly{-1, 16}, IntPoly{1, -18}, IntPoly{0, 0, 27}});
    CHECK(eq->x_degree() == 2);
    CHECK(eq->z_degree() == 2);
    CHECK(format_algebraic(*eq) == "algebraic(27*x^2*z^2 - 18*x*z + x + 16*z - 1 = 0)");
}

TEST_CASE("the reconstruction matches a direct per-point detection", "[algebraic]") {
    // At the first evaluation point 1/100, the scaled minimal polynomial of
    // the series value is 27 x^2 + 8200 x - 8400 after denominator clearing.
    const Series s = Series::from_integers(planar_maps(200));
    const auto eval = series_eval_decimal(s, make_rat(1, 100), 118);
    CHECK(algdep(eval.value, 2, 118).value() == IntPoly{-8400, 8200, 27});
}

TEST_CASE("annihilation check distinguishes the true equation from a near miss",
          "[algebraic]") {
    const Series s = Series::from_integers(planar_maps(200));
    const AlgebraicEquation good{{IntPoly{-1, 16}, IntPoly{1, -18}, IntPoly{0, 0, 27}}};
    CHECK(verify_annihilation(good, s));
    // Same equation with the middle coefficient x replaced by x^2: plausible
    // to the eye, wrong in substance.
    const AlgebraicEquation off{{IntPoly{-1, 16}, IntPoly{0, -18}, IntPoly{1, 0, 27}}};
    CHECK_FALSE(verify_annihilation(off, s));
}

TEST_CASE("catalan equation and closed-form branch", "[algebraic]") {
    const auto eq = reconstruct_algebraic(catalan(18));
    REQUIRE(eq.has_value());
    CHECK(eq->cz == std::vector<IntPoly>{IntPoly{1}, IntPoly{-1}, IntPoly{0, 1}});
    CHECK(format_algebraic(*eq) == "algebraic(x^2*z - x + 1 = 0)");

    const Series s = Series::from_integers(catalan(50));
    const auto closed = solve_closed_form(*eq, s);
    REQUIRE(closed.has_value());
    CHECK(format_expression(*closed) == "radical((1 - (1 - 4*z)^(1/2))/(2*z))");
    CHECK(expression_expand(*closed, 50) == s);
}

TEST_CASE("planar map closed form reproduces fifty terms", "[algebraic]") {
    const auto eq = reconstruct_algebraic(planar_maps(8));
    REQUIRE(eq.has_value());
    const Series s = Series::from_integers(planar_maps(50));
    const auto closed = solve_closed_form(*eq, s);
    REQUIRE(closed.has_value());
    CHECK(format_expression(*closed).rfind("radical(", 0) == 0);
    CHECK(expression_expand(*closed, 50) == s);
}

TEST_CASE("algebraic strings round-trip through the parser", "[algebraic]") {
    const char* samples[] = {
        "algebraic(27*x^2*z^2 - 18*x*z + x + 16*z - 1 = 0)",
        "algebraic(x^2*z - x + 1 = 0)",
        "algebraic(x^2*z + x*z - x + 1 = 0)",
    };
    for (const char* text : samples) {
        const AlgebraicEquation eq = parse_algebraic(text);
        CHECK(format_algebraic(eq) == text);
    }
}
