#pragma once
// Euler products: writing a series with constant term one as
// prod_{n>=1} (1 - z^n)^{-c_n}, recovering the exponents c_n by Mobius
// inversion of the logarithmic derivative, expanding a given exponent
// sequence back into a series, and detecting patterns (eventual periodicity
// or a rational generating function) in the exponents.

#include "gfkit/errors.hpp"
#include "gfkit/expression.hpp"
#include "gfkit/fit.hpp"
#include "gfkit/numeric.hpp"
#include "gfkit/series.hpp"

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

namespace gfkit {

/// Eventually periodic exponents: a preperiod prefix followed by a cycle
/// repeated indefinitely.
struct PeriodicPattern {
    std::vector<Rat> prefix;
    std::vector<Rat> cycle;
    bool operator==(const PeriodicPattern&) const = default;
};

/// A detected regularity in the exponent sequence c_1, c_2, ...
using ExponentPattern = std::variant<PeriodicPattern, RationalGF>;

/// Exponents c_1..c_{T-1} of an Euler product, the flag telling whether all
/// of them are integers, and any detected pattern.
struct EulerProduct {
    std::vector<Rat> exponents;
    bool integral = false;
    std::optional<ExponentPattern> pattern;
    bool operator==(const EulerProduct&) const = default;
};

/// Recovers the Euler-product exponents of a series with s(0) = 1: the
/// coefficients d_n of z s'(z)/s(z) satisfy d_n = sum_{j|n} j c_j, inverted
/// by c_n = (1/n) sum_{e|n} mu(n/e) d_e.  Exact; non-integer exponents are
/// reported with integral = false rather than rejected.
inline EulerProduct inverse_euler(const Series& s) {
    if (s.order() == 0 || s.coeff(0) != 1) throw LeadingTermNotOne();
    const std::size_t T = s.order();
    std::vector<Rat> zsp(T, Rat(0));
    for (std::size_t n = 1; n < T; ++n) zsp[n] = Rat(Int(n)) * s.coeff(n);
    Series d = Series(std::move(zsp)) / s;

    auto mu = mobius_table(T == 0 ? 0 : T - 1);
    EulerProduct out;
    out.integral = true;
    out.exponents.reserve(T - 1);
    for (std::size_t n = 1; n < T; ++n) {
        Rat acc(0);
        for (std::size_t e : divisors(n)) acc += Rat(mu[n / e]) * d.coeff(e);
        acc /= Rat(Int(n));
        if (!is_integer(acc)) out.integral = false;
        out.exponents.push_back(std::move(acc));
    }
    return out;
}

inline EulerProduct inverse_euler(const std::vector<Int>& seq) {
    return inverse_euler(Series::from_integers(seq));
}

/// Expands prod_{n>=1} (1 - z^n)^{-c_n} to order T, one factor at a time;
/// rational exponents use the generalized binomial series.
inline Series euler_expand(const std::vector<Rat>& c, std::size_t T) {
    Series acc = Series::one(T);
    for (std::size_t n = 1; n <= c.size() && n < T; ++n) {
        if (c[n - 1] == 0) continue;
        std::vector<Rat> factor(T, Rat(0));
        factor[0] = 1;
        Rat b(1);
        for (std::size_t j = 1; j * n < T; ++j) {
            b *= c[n - 1] + Rat(Int(j)) - 1;
            b /= Rat(Int(j));
            factor[j * n] = b;
        }
        acc = acc * Series(std::move(factor));
    }
    return acc;
}

namespace detail {

/// Minimal eventual periodicity within the stated bounds (period at most 12,
/// preperiod at most 4, at least two full cycles visible), else a rational
/// generating function for sum c_n z^n, else nothing.
inline std::optional<ExponentPattern> exponent_pattern(const std::vector<Rat>& c) {
    const std::size_t len = c.size();
    for (std::size_t q = 1; q <= 12; ++q) {
        for (std::size_t r = 0; r <= 4; ++r) {
            if (len < r + 2 * q) continue;
            bool ok = true;
            for (std::size_t i = r; i + q < len; ++i)
                if (c[i] != c[i + q]) {
                    ok = false;
                    break;
                }
            if (ok)
                return ExponentPattern{PeriodicPattern{
                    std::vector<Rat>(c.begin(), c.begin() + static_cast<long>(r)),
                    std::vector<Rat>(c.begin() + static_cast<long>(r),
                                     c.begin() + static_cast<long>(r + q))}};
        }
    }
    if (len + 1 >= 6) {
        std::vector<Int> shifted{0};
        for (const auto& x : c) {
            if (!is_integer(x)) return std::nullopt;
            shifted.push_back(x.get_num());
        }
        auto report = ratpoly_guess(shifted);
        if (report && report->accepted())
            return ExponentPattern{std::get<RationalGF>(report->candidate.node)};
    }
    return std::nullopt;
}

}  // namespace detail

/// Euler-product recognition for an integer sequence starting at 1: returns
/// the exponents when they are all integers, annotated with any detected
/// pattern; none when a_0 != 1 or some exponent is fractional.
inline std::optional<EulerProduct> euler_guess(const std::vector<Int>& seq) {
    if (seq.empty() || seq[0] != 1) return std::nullopt;
    EulerProduct ep = inverse_euler(seq);
    if (!ep.integral) return std::nullopt;
    ep.pattern = detail::exponent_pattern(ep.exponents);
    return ep;
}

}  // namespace gfkit
