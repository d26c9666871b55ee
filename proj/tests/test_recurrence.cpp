#include <catch2/catch_amalgamated.hpp>

#include <gfkit.hpp>

#include "test_support.hpp"

using namespace gfkit;
using namespace testsupport;

TEST_CASE("catalan numbers satisfy a first-order recurrence", "[recurrence]") {
    const auto rec = guess_precurrence(catalan(20));
    REQUIRE(rec.has_value());
    CHECK(rec->k == 1);
    CHECK(rec->d == 1);
    CHECK(rec->n0 == 2);
    CHECK(rec->p[0] == IntPoly{0, 1});
    CHECK(rec->p[1] == IntPoly{-6, 4});
    CHECK(format_recurrence(*rec) == "n*a(n) = (4*n-6)*a(n-1)");
}

TEST_CASE("the binomial-sum sequence needs twenty terms, not ten", "[recurrence]") {
    // With only ten terms the (order, degree) search window has no relation
    // with enough surplus; the guess honestly reports nothing.
    CHECK_FALSE(guess_precurrence(apery(10)).has_value());

    const auto rec = guess_precurrence(apery(20));
    REQUIRE(rec.has_value());
    CHECK(rec->k == 2);
    CHECK(rec->d == 3);
    CHECK(rec->n0 == 3);
    CHECK(rec->p[0] == IntPoly{-1, 3, -3, 1});          // (n-1)^3
    CHECK(rec->p[1] == IntPoly{-117, 231, -153, 34});
    CHECK(rec->p[2] == IntPoly{8, -12, 6, -1});          // -(n-2)^3
    CHECK(format_recurrence(*rec) ==
          "(n^3-3*n^2+3*n-1)*a(n) = (34*n^3-153*n^2+231*n-117)*a(n-1) + "
          "(-n^3+6*n^2-12*n+8)*a(n-2)");
}

TEST_CASE("recurrence verification accepts the data and rejects a perturbation",
          "[recurrence]") {
    const auto seq = apery(20);
    const auto rec = guess_precurrence(seq);
    REQUIRE(rec.has_value());
    CHECK(verify_precurrence(*rec, seq));

    auto broken = seq;
    broken[17] += 1;
    CHECK_FALSE(verify_precurrence(*rec, broken));
}

TEST_CASE("extension from a seed stays integral for a hundred terms", "[recurrence]") {
    const auto seed = apery(20);
    auto rec = *guess_precurrence(seed);
    rec.n0 = static_cast<long>(seed.size()) + 1;  // restart right past the seed
    // The count is the total length: seed plus one hundred fresh terms.
    // Any non-integral step would throw, so finishing is the integrality proof.
    const auto more = extend_precurrence(rec, seed, 120);
    REQUIRE(more.size() == 120);
    // Cross-check the first extended values against direct generation.
    const auto direct = apery(26);
    for (std::size_t i = 0; i < direct.size(); ++i) CHECK(more[i] == direct[i]);

    const auto cat_more = extend_precurrence(
        [] {
            auto r = *guess_precurrence(catalan(10));
            r.n0 = 11;
            return r;
        }(),
        catalan(10), 120);
    CHECK(cat_more == catalan(120));
}

TEST_CASE("recurrence strings round-trip through the parser", "[recurrence]") {
    const char* samples[] = {
        "n*a(n) = (4*n-6)*a(n-1)",
        "(n^3-3*n^2+3*n-1)*a(n) = (34*n^3-153*n^2+231*n-117)*a(n-1) + "
        "(-n^3+6*n^2-12*n+8)*a(n-2)",
        "1*a(n) = 1*a(n-1) + 1*a(n-2)",
    };
    for (const char* text : samples) {
        const PRecurrence rec = parse_recurrence(text);
        CHECK(format_recurrence(rec) == text);
        CHECK(parse_recurrence(format_recurrence(rec)) == rec);
    }
    // The unit-coefficient recurrence is the fibonacci relation.
    const PRecurrence fib_rec = parse_recurrence(samples[2]);
    CHECK(fib_rec.k == 2);
    CHECK(fib_rec.d == 0);
    CHECK(verify_precurrence(fib_rec, fibonacci(15)));
}

TEST_CASE("term ratio requires a first-order recurrence", "[recurrence]") {
    const auto rec = guess_precurrence(apery(20));
    REQUIRE(rec.has_value());
    CHECK_THROWS_AS(ratio_from_recurrence(*rec), PreconditionViolated);
}

namespace {

void check_hypergeometric(const std::vector<Int>& seq, const std::string& expect,
                          std::size_t verify_terms,
                          const std::vector<Int>& long_version) {
    const auto rec = guess_precurrence(seq);
    REQUIRE(rec.has_value());
    REQUIRE(rec->k == 1);
    const auto form = ratio_to_hypergeometric(ratio_from_recurrence(*rec), Rat(seq[0]));
    REQUIRE(form.has_value());
    CHECK(format_hypergeometric(*form) == expect);
    CHECK(matches_integer_prefix(hypergeometric_expand(*form, verify_terms), long_version));
}

}  // namespace

TEST_CASE("hypergeometric recognition with thirty-term re-expansion", "[recurrence]") {
    check_hypergeometric(planar_maps(8), "hypergeom([1/2; 1], [3]; 12*z; 1)", 30,
                         planar_maps(30));
    check_hypergeometric(catalan(8), "hypergeom([1/2; 1], [2]; 4*z; 1)", 30, catalan(30));
    check_hypergeometric(central_binomial(8), "hypergeom([1/2], []; 4*z; 1)", 30,
                         central_binomial(30));
    check_hypergeometric(nonseparable_maps(10),
                         "hypergeom([1; 4/3; 5/3], [5/2; 3]; 27/4*z; 1)", 30,
                         nonseparable_maps(30));
}

TEST_CASE("hypergeometric strings round-trip through the parser", "[recurrence]") {
    const char* samples[] = {
        "hypergeom([1/2; 1], [3]; 12*z; 1)",
        "hypergeom([1/2; 1], [2]; 4*z; 1)",
        "hypergeom([1/2], []; 4*z; 1)",
        "hypergeom([1; 4/3; 5/3], [5/2; 3]; 27/4*z; 1)",
    };
    for (const char* text : samples) {
        const HypergeometricForm f = parse_hypergeometric(text);
        CHECK(format_hypergeometric(f) == text);
    }
}

TEST_CASE("a geometric sequence is the empty-parameter series", "[recurrence]") {
    std::vector<Int> pow4;
    Int v = 1;
    for (int i = 0; i < 10; ++i) {
        pow4.push_back(v);
        v *= 4;
    }
    check_hypergeometric(pow4, "hypergeom([1], []; 4*z; 1)", 10, pow4);
}
