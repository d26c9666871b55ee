#pragma once

/**
 * Exact integer and rational scalars (GMP-backed) plus the small number-theory
 * helpers shared across the fitting engines: decimal digit metrics, banker's
 * rounding, exact square roots, factorials, Mobius/divisor tables.
 */

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace gfkit {

using Int = mpz_class;
using Rat = mpq_class;

/** Exact rational num/den in canonical form (mpq_class construction alone does not canonicalize). */
inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw Error("rational with zero denominator");
    Rat q(num);
    q /= Rat(den);
    return q;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

/** 10^p as an exact integer. */
inline Int pow10(unsigned long p) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, p);
    return r;
}

inline Int ipow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Int int_gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int int_lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int factorial(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

/** Number of decimal digits of |x|; 0 counts as one digit. */
inline std::size_t digit_count(const Int& x) {
    if (x == 0) return 1;
    std::size_t d = mpz_sizeinbase(x.get_mpz_t(), 10);
    // mpz_sizeinbase may overestimate by one for base 10; correct exactly.
    if (d > 1) {
        Int abs_x;
        mpz_abs(abs_x.get_mpz_t(), x.get_mpz_t());
        if (abs_x < pow10(d - 1)) --d;
    }
    return d;
}

/** Decimal digits of |x| plus one for a minus sign. */
inline std::size_t digit_mass(const Int& x) {
    return digit_count(x) + (x < 0 ? 1 : 0);
}

/** Digit mass of a rational: numerator mass plus denominator digits when not 1. */
inline std::size_t digit_mass(const Rat& q) {
    std::size_t m = digit_mass(q.get_num());
    if (q.get_den() != 1) m += digit_count(q.get_den());
    return m;
}

/** Nearest integer to q, ties to even (banker's rounding). */
inline Int round_half_even(const Rat& q) {
    const Int& n = q.get_num();
    const Int& d = q.get_den();  // always > 0 in canonical form
    Int quot, rem;
    mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    Int twice = 2 * rem;
    if (twice > d || (twice == d && mpz_odd_p(quot.get_mpz_t()))) ++quot;
    return quot;
}

/** Exact integer square root when x is a perfect square. */
inline std::optional<Int> sqrt_exact(const Int& x) {
    if (x < 0) return std::nullopt;
    if (!mpz_perfect_square_p(x.get_mpz_t())) return std::nullopt;
    Int r;
    mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
    return r;
}

/** Exact rational square root when q is a square of a rational. */
inline std::optional<Rat> sqrt_exact(const Rat& q) {
    auto n = sqrt_exact(Int(q.get_num()));
    if (!n) return std::nullopt;
    auto d = sqrt_exact(Int(q.get_den()));
    if (!d) return std::nullopt;
    return make_rat(*n, *d);
}

/** floor(log10 |q|) for q != 0; exact integer comparison, no floating point. */
inline long floor_log10_abs(const Rat& q) {
    if (q == 0) throw Error("floor_log10_abs of zero");
    Int n, d;
    mpz_abs(n.get_mpz_t(), q.get_num().get_mpz_t());
    d = q.get_den();
    long e = static_cast<long>(digit_count(n)) - static_cast<long>(digit_count(d));
    // |q| is within a factor of 10 of 10^e; adjust to the exact floor.
    auto at_least = [&](long k) {  // is |q| >= 10^k ?
        if (k >= 0) return n >= d * pow10(static_cast<unsigned long>(k));
        return n * pow10(static_cast<unsigned long>(-k)) >= d;
    };
    while (!at_least(e)) --e;
    while (at_least(e + 1)) ++e;
    return e;
}

inline std::string to_string(const Int& x) { return x.get_str(); }

/** "3" for integers, "3/4" otherwise. */
inline std::string to_string(const Rat& q) {
    if (is_integer(q)) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/** Smallest-prime-factor sieve up to n inclusive; index 0 and 1 hold 0. */
inline std::vector<std::size_t> spf_sieve(std::size_t n) {
    std::vector<std::size_t> spf(n + 1, 0);
    for (std::size_t i = 2; i <= n; ++i) {
        if (spf[i] == 0)
            for (std::size_t j = i; j <= n; j += i)
                if (spf[j] == 0) spf[j] = i;
    }
    return spf;
}

/** Mobius function values mu(1..n) computed from a factor sieve. */
inline std::vector<int> mobius_table(std::size_t n) {
    auto spf = spf_sieve(n);
    std::vector<int> mu(n + 1, 0);
    if (n >= 1) mu[1] = 1;
    for (std::size_t i = 2; i <= n; ++i) {
        std::size_t p = spf[i], m = i / p;
        mu[i] = (m % p == 0) ? 0 : -mu[m];
    }
    return mu;
}

/** Divisors of n in ascending order. */
inline std::vector<std::size_t> divisors(std::size_t n) {
    std::vector<std::size_t> small, large;
    for (std::size_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d != n / d) large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

} // namespace gfkit
