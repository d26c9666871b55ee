#include <catch2/catch_amalgamated.hpp>

#include <gfkit.hpp>

#include "test_support.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

using namespace gfkit;
using namespace testsupport;

TEST_CASE("partition counts have all-ones product exponents", "[euler]") {
    const auto ep = euler_guess(partitions(20));
    REQUIRE(ep.has_value());
    CHECK(ep->integral);
    CHECK(ep->exponents == std::vector<Rat>(19, Rat(1)));
    REQUIRE(ep->pattern.has_value());
    const auto& pat = std::get<PeriodicPattern>(*ep->pattern);
    CHECK(pat.prefix.empty());
    CHECK(pat.cycle == std::vector<Rat>{Rat(1)});
    CHECK(format_euler_product(*ep) ==
          "euler_product(c: 1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1; "
          "pattern: periodic([], [1]))");
}

TEST_CASE("distinct partitions alternate exponents one and zero", "[euler]") {
    const auto ep = euler_guess(distinct_partitions(20));
    REQUIRE(ep.has_value());
    const auto& pat = std::get<PeriodicPattern>(ep->pattern.value());
    CHECK(pat.prefix.empty());
    CHECK(pat.cycle == std::vector<Rat>{Rat(1), Rat(0)});
}

TEST_CASE("planar partitions have exponent n with a rational exponent series", "[euler]") {
    const auto ep = euler_guess(planar_partitions(15));
    REQUIRE(ep.has_value());
    REQUIRE(ep->exponents.size() == 14);
    for (std::size_t i = 0; i < 14; ++i) CHECK(ep->exponents[i] == Rat(static_cast<long>(i + 1)));
    REQUIRE(ep->pattern.has_value());
    CHECK(std::holds_alternative<RationalGF>(*ep->pattern));
    CHECK(format_euler_product(*ep) ==
          "euler_product(c: 1,2,3,4,5,6,7,8,9,10,11,12,13,14; "
          "pattern: gf((z)/(1 - 2*z + z^2)))");
}

TEST_CASE("circle lattice point counts have a period-four exponent cycle", "[euler]") {
    const auto ep = euler_guess(circle_lattice_points(18));
    REQUIRE(ep.has_value());
    const auto& pat = std::get<PeriodicPattern>(ep->pattern.value());
    CHECK(pat.prefix.empty());
    CHECK(pat.cycle == std::vector<Rat>{Rat(4), Rat(-6), Rat(4), Rat(-2)});
}

TEST_CASE("the discriminant-series coefficients have constant exponent", "[euler]") {
    const std::vector<Int> tau = {Int(1),     Int(-24),   Int(252),    Int(-1472),
                                  Int(4830),  Int(-6048), Int(-16744), Int(84480)};
    const auto ep = euler_guess(tau);
    REQUIRE(ep.has_value());
    CHECK(ep->integral);
    const auto& pat = std::get<PeriodicPattern>(ep->pattern.value());
    CHECK(pat.prefix.empty());
    CHECK(pat.cycle == std::vector<Rat>{Rat(-24)});
}

TEST_CASE("product expansion inverts exponent extraction on random sequences", "[euler]") {
    std::mt19937 rng(987654321);
    std::uniform_int_distribution<long> dist(-9, 9);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Int> seq{Int(1)};
        for (int i = 1; i < 24; ++i) seq.push_back(Int(dist(rng)));
        const EulerProduct ep = inverse_euler(seq);
        CHECK(ep.integral);  // integer sequences with a(0) = 1 always factor integrally
        const Series back = euler_expand(ep.exponents, 24);
        CHECK(matches_integer_prefix(back, seq));
    }
}

TEST_CASE("rational series can have fractional exponents", "[euler]") {
    const EulerProduct ep = inverse_euler(Series(std::vector<Rat>{Rat(1), make_rat(1, 2), Rat(0)}));
    CHECK_FALSE(ep.integral);
    CHECK(ep.exponents[0] == make_rat(1, 2));
}

TEST_CASE("product recognition requires a leading one", "[euler]") {
    CHECK_FALSE(euler_guess(primes(10)).has_value());
    CHECK_FALSE(euler_guess({Int(0), Int(1), Int(1)}).has_value());
}

TEST_CASE("euler product strings round-trip through the parser", "[euler]") {
    const char* samples[] = {
        "euler_product(c: 1,1,1,1,1,1,1; pattern: periodic([], [1]))",
        "euler_product(c: 0,1,1,1,1,1,1; pattern: periodic([0], [1]))",
        "euler_product(c: 1,2,3,4,5,6,7; pattern: gf((z)/(1 - 2*z + z^2)))",
        "euler_product(c: 4,-6,4,-2,4,-6,4; pattern: none)",
    };
    for (const char* text : samples) {
        const EulerProduct ep = parse_euler_product(text);
        CHECK(format_euler_product(ep) == text);
    }
}

// ---------------------------------------------------------------------------
// sequence database lookup
// ---------------------------------------------------------------------------

namespace {

const SequenceDB& mini_db() {
    static const SequenceDB db = load_db(std::string(GFKIT_DATA_DIR) + "/minidb.txt");
    return db;
}

std::filesystem::path write_temp_db(const std::string& name, const std::string& body) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << body;
    return path;
}

}  // namespace

TEST_CASE("the shipped database loads cleanly with names", "[lookup]") {
    const auto& db = mini_db();
    CHECK(db.records.size() == 45);
    CHECK(db.warnings.empty());
    bool found = false;
    for (const auto& r : db.records)
        if (r.id == "A000108") {
            found = true;
            CHECK(r.terms.size() >= 18);
            CHECK_FALSE(r.name.empty());
        }
    CHECK(found);
}

TEST_CASE("malformed database lines are skipped with warnings", "[lookup]") {
    const auto path = write_temp_db("gfkit_test_bad_db.txt",
                                    "A000001 ,1,2,x,4,\n"
                                    "# a comment\n"
                                    "A000002 ,1,2,4,8,16,32,64,128, ; doubling\n");
    const SequenceDB db = load_db(path.string());
    std::filesystem::remove(path);
    REQUIRE(db.records.size() == 1);
    CHECK(db.records[0].id == "A000002");
    CHECK(db.records[0].name == "doubling");
    CHECK_FALSE(db.warnings.empty());
}

TEST_CASE("short records are stored but never matched", "[lookup]") {
    const auto path = write_temp_db("gfkit_test_short_db.txt",
                                    "A000001 ,5,6,7,8,9,10,11,\n"          // 7 terms
                                    "A000002 ,5,6,7,8,9,10,11,12,\n");     // 8 terms
    const SequenceDB db = load_db(path.string());
    std::filesystem::remove(path);
    CHECK(db.records.size() == 2);
    const std::vector<Int> query = {Int(5), Int(6), Int(7), Int(8),
                                    Int(9), Int(10), Int(11), Int(12)};
    const auto hits = find(query, db);
    REQUIRE_FALSE(hits.empty());
    for (const auto& h : hits) CHECK(h.id == "A000002");
}

TEST_CASE("direct lookup finds the catalan record", "[lookup]") {
    const std::vector<Int> query = {Int(1),  Int(1),  Int(2),   Int(5),
                                    Int(14), Int(42), Int(132), Int(429)};
    const auto hits = find(query, mini_db());
    REQUIRE_FALSE(hits.empty());
    CHECK(hits.front().id == "A000108");
    CHECK(hits.front().chain.empty());
    for (const auto& h : hits) CHECK(verify_match(query, h, mini_db()));
}

TEST_CASE("a shifted query still matches through the alignment scan", "[lookup]") {
    // The catalan numbers with the first term missing.
    const std::vector<Int> query = {Int(1),   Int(2),   Int(5),    Int(14),  Int(42),
                                    Int(132), Int(429), Int(1430), Int(4862)};
    const auto hits = find(query, mini_db());
    REQUIRE_FALSE(hits.empty());
    const auto& h = hits.front();
    CHECK(h.id == "A000108");
    CHECK(h.record_shift - h.query_shift == 1);
}

TEST_CASE("transformed lookup reaches the catalan numbers by adding one", "[lookup]") {
    const std::vector<Int> query = {Int(0),  Int(0),  Int(1),   Int(4),
                                    Int(13), Int(41), Int(131), Int(428)};
    const auto hits = findhard(query, mini_db());
    REQUIRE_FALSE(hits.empty());
    CHECK(hits.front().id == "A000108");
    CHECK(hits.front().chain == std::vector<std::string>{"add_const_1"});
    for (const auto& h : hits) {
        CHECK(verify_match(query, h, mini_db()));
        // No reported chain undoes its own first step.
        if (h.chain.size() == 2) {
            const auto* first = find_transformation(h.chain[0]);
            REQUIRE(first != nullptr);
            CHECK(first->inverse_name != h.chain[1]);
        }
    }
}

TEST_CASE("chain replay application", "[lookup]") {
    const auto img = apply_chain({Int(0), Int(0), Int(1), Int(4)}, {"add_const_1"});
    REQUIRE(img.has_value());
    CHECK(*img == std::vector<Int>{Int(1), Int(1), Int(2), Int(5)});
    CHECK_FALSE(apply_chain({Int(1)}, {"no_such_transformation"}).has_value());
}

TEST_CASE("every declared inverse resolves and undoes its partner", "[lookup]") {
    std::mt19937 rng(55555);
    std::uniform_int_distribution<long> dist(-6, 6);
    const auto& catalog = transformation_catalog();
    for (const auto& spec : catalog) {
        if (spec.inverse_name.empty()) continue;
        const auto* inv = find_transformation(spec.inverse_name);
        REQUIRE(inv != nullptr);

        int exercised = 0;
        for (int trial = 0; trial < 60 && exercised < 10; ++trial) {
            std::vector<Int> seq{Int(1)};
            for (int i = 1; i < 12; ++i) seq.push_back(Int(dist(rng)));
            if (!spec.applies(seq)) continue;
            const auto mid = spec.forward(seq);
            if (!mid || !inv->applies(*mid)) continue;
            const auto back = inv->forward(*mid);
            if (!back) continue;
            CHECK(*back == seq);
            ++exercised;
        }
    }
}

TEST_CASE("database file that cannot be opened raises an io error", "[lookup]") {
    CHECK_THROWS_AS(load_db("/nonexistent/gfkit/db.txt"), IoError);
}
