#pragma once

/**
 * Recognition of order-1 polynomial recurrences as generalized hypergeometric
 * series: the consecutive-term ratio is a rational function of the series
 * index, and when it factors into rational linear pieces the sequence is a
 * pFq with rational parameters, argument scale w and prefactor t_0.
 */

#include <algorithm>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "holonomic.hpp"
#include "numeric.hpp"
#include "polynomial.hpp"
#include "series.hpp"

namespace gfkit {

struct HypergeometricForm {
    std::vector<Rat> upper;  // a_1..a_m, ascending
    std::vector<Rat> lower;  // b_1..b_n, ascending; none is zero or a negative integer
    Rat w = 1;               // series argument is w*z
    Rat t0 = 1;              // value of the first term

    bool operator==(const HypergeometricForm& o) const {
        return upper == o.upper && lower == o.lower && w == o.w && t0 == o.t0;
    }
};

/** The term ratio t_{k+1}/t_k as a reduced rational function of k. */
struct KRatio {
    RatPoly num, den;
};

/**
 * For an order-1 recurrence on 1-based ranks, the series coefficients are
 * t_j = a(j+1), so the ratio at index k evaluates the recurrence at rank k+2.
 */
inline KRatio ratio_from_recurrence(const PRecurrence& rec) {
    if (rec.k != 1) throw PreconditionViolated("term ratio requires an order-1 recurrence");
    RatPoly num = poly_shift(to_rational(rec.p[1]), Rat(2));
    RatPoly den = poly_shift(to_rational(rec.p[0]), Rat(2));
    const RatPoly g = poly_gcd(num, den);
    if (g.degree() > 0) {
        num = divmod(num, g).first;
        den = divmod(den, g).first;
    }
    return {num, den};
}

namespace detail {

inline std::vector<Int> int_divisors(Int n) {
    n = abs(n);
    std::vector<Int> divs, high;
    for (Int i(1); i * i <= n; ++i) {
        if (n % i == 0) {
            divs.push_back(i);
            if (i * i != n) high.push_back(n / i);
        }
    }
    divs.insert(divs.end(), high.rbegin(), high.rend());
    return divs;
}

/** All roots with multiplicity when the polynomial splits into rational linear factors. */
inline std::optional<std::vector<Rat>> rational_roots_complete(const RatPoly& p_in) {
    if (p_in.is_zero()) return std::nullopt;
    RatPoly p = p_in;
    std::vector<Rat> roots;
    while (p.degree() > 0 && p.coeff(0) == 0) {  // factor k^v
        roots.emplace_back(0);
        std::vector<Rat> shifted(p.coeffs().begin() + 1, p.coeffs().end());
        p = RatPoly(std::move(shifted));
    }
    if (p.degree() > 0) {
        const IntPoly prim = to_integer_primitive(p);
        for (const auto& pc : int_divisors(prim.coeff(0)))
            for (const auto& qc : int_divisors(prim.leading())) {
                if (int_gcd(pc, qc) != 1) continue;
                for (int s = 0; s < 2; ++s) {
                    const Rat r = s == 0 ? make_rat(pc, qc) : make_rat(-pc, qc);
                    while (p.degree() > 0 && p.eval(r) == 0) {
                        roots.push_back(r);
                        p = divmod(p, RatPoly{-r, Rat(1)}).first;
                    }
                }
            }
    }
    if (p.degree() > 0) return std::nullopt;  // irreducible factor of degree >= 2 remains
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace detail

/**
 * Factor the ratio as w * prod(k + a_i) / (prod(k + b_j) * (k+1)).  The (k+1)
 * factor is taken from the denominator when present, otherwise balanced by an
 * extra a = 1 upstairs.  Returns none when a nonlinear irreducible factor
 * remains or a lower parameter is zero or a negative integer.
 */
inline std::optional<HypergeometricForm> ratio_to_hypergeometric(const KRatio& ratio,
                                                                 const Rat& t0) {
    if (ratio.num.is_zero() || ratio.den.is_zero()) return std::nullopt;
    const auto nroots = detail::rational_roots_complete(ratio.num);
    const auto droots = detail::rational_roots_complete(ratio.den);
    if (!nroots || !droots) return std::nullopt;
    HypergeometricForm f;
    f.w = ratio.num.leading() / ratio.den.leading();
    f.t0 = t0;
    for (const auto& r : *nroots) f.upper.push_back(-r);
    std::vector<Rat> lowers;
    for (const auto& r : *droots) lowers.push_back(-r);
    const auto unit = std::find(lowers.begin(), lowers.end(), Rat(1));
    if (unit != lowers.end()) {
        lowers.erase(unit);
    } else {
        f.upper.push_back(Rat(1));
    }
    for (const auto& b : lowers)
        if (is_integer(b) && b <= 0) return std::nullopt;
    f.lower = std::move(lowers);
    std::sort(f.upper.begin(), f.upper.end());
    std::sort(f.lower.begin(), f.lower.end());
    return f;
}

/** First T coefficients by iterating the term ratio from t_0. */
inline Series hypergeometric_expand(const HypergeometricForm& f, std::size_t T) {
    std::vector<Rat> t;
    t.reserve(T);
    if (T == 0) return Series();
    t.push_back(f.t0);
    for (std::size_t k = 0; k + 1 < T; ++k) {
        Rat next = t.back() * f.w;
        for (const auto& a : f.upper) next *= (Rat(static_cast<long>(k)) + a);
        next /= Rat(static_cast<long>(k + 1));
        for (const auto& b : f.lower) next /= (Rat(static_cast<long>(k)) + b);
        t.push_back(next);
    }
    return Series(std::move(t));
}

} // namespace gfkit
