#pragma once

/**
 * Rational (Pade) fitting of a truncated series, the acceptance gates that
 * separate plausible generating functions from numerology, and the reversible
 * pre-transformations (derivative, logarithmic derivative, functional
 * inverse) applied on both the ordinary and exponential views.
 */

#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "expression.hpp"
#include "linalg.hpp"
#include "numeric.hpp"
#include "series.hpp"

namespace gfkit {

/** Outcome of one rational fit attempt, gates included. */
struct FitReport {
    std::string method;      // "rational" or "transform"
    GFExpression candidate;
    long L = 0, M = 0;       // reduced numerator / denominator degrees
    bool degree_ok = false;
    bool size_ok = false;
    long surplus_verified = 0;

    bool accepted() const { return degree_ok && size_ok && surplus_verified >= 3; }
};

/**
 * Digit mass of the cleared fraction: digits plus sign marks over nonzero
 * coefficients.  A denominator that reduced to the constant 1 is invisible in
 * the rendered form (the fraction prints as a bare polynomial), so it
 * contributes nothing.
 */
inline long digit_mass_fraction(const RationalGF& f) {
    long mass = 0;
    for (const auto& c : f.num().coeffs())
        if (c != 0) mass += digit_mass(c);
    if (f.den().degree() != 0 || f.den().coeff(0) != 1)
        for (const auto& c : f.den().coeffs())
            if (c != 0) mass += digit_mass(c);
    return mass;
}

/** Digit mass of a coefficient list, nonzero entries only. */
inline long digit_mass_series(const Series& s) {
    long mass = 0;
    for (const auto& q : s.coeffs())
        if (q != 0) mass += digit_mass(q);
    return mass;
}

/**
 * Pade fit: the fraction num/den of degrees (<=L, <=M) matching s through
 * z^{L+M}.  Denominator unknowns v_0..v_M solve the homogeneous system that
 * identifies coefficients z^{L+1}..z^{L+M}; the first nullspace basis vector
 * with v_0 != 0 is kept, the numerator follows by direct product, and the
 * result is normalized and reduced.  Requires L + M + 1 <= order(s).
 */
inline RationalGF pade_fit(const Series& s, long L, long M) {
    if (L < 0 || M < 0 || static_cast<std::size_t>(L + M + 1) > s.order())
        throw PreconditionViolated("pade_fit requires L + M + 1 <= series order");
    std::vector<Rat> v;
    if (M == 0) {
        v.assign(1, Rat(1));
    } else {
        RatMat sys(static_cast<std::size_t>(M), std::vector<Rat>(static_cast<std::size_t>(M + 1)));
        for (long i = L + 1; i <= L + M; ++i)
            for (long j = 0; j <= M; ++j)
                sys[static_cast<std::size_t>(i - L - 1)][static_cast<std::size_t>(j)] =
                    i - j >= 0 ? s.coeff(static_cast<std::size_t>(i - j)) : Rat(0);
        for (const auto& basis_vec : nullspace(std::move(sys))) {
            if (basis_vec[0] != 0) {
                v = basis_vec;
                break;
            }
        }
        if (v.empty()) throw NoSolution("every Pade denominator vanishes at z = 0");
    }
    const RatPoly den(v);
    const Series prod = Series::from_poly(den, s.order()) * s;
    std::vector<Rat> nc;
    for (long i = 0; i <= L; ++i) nc.push_back(prod.coeff(static_cast<std::size_t>(i)));
    return make_rational_gf(RatPoly(std::move(nc)), den);
}

/** One rational fit attempt on a series, with every gate evaluated for reporting. */
struct RationalFitOutcome {
    std::optional<RationalGF> fraction;  // reduced fit, when the linear step succeeded
    long L = -1, M = -1;                 // reduced degrees
    bool terms_ok = false;
    bool degree_ok = false;
    bool size_ok = false;
    long surplus_verified = 0;

    bool accepted() const { return terms_ok && degree_ok && size_ok && surplus_verified >= 3; }
};

/**
 * Fit a series of N >= 6 known coefficients with L = M = floor((N-2)/2) and
 * apply the three gates: the reduced fraction must reproduce all N terms
 * (leaving at least 3 verified beyond those its degrees can encode), satisfy
 * deg(num) + deg(den) + 2 < N, and not outweigh the input in digit mass.
 */
inline RationalFitOutcome fit_rational_series(const Series& s) {
    if (s.order() < 6) throw PreconditionViolated("rational fitting requires at least 6 terms");
    const long N = static_cast<long>(s.order());
    const long half = (N - 2) / 2;
    RationalFitOutcome out;
    RationalGF frac;
    try {
        frac = pade_fit(s, half, half);
    } catch (const NoSolution&) {
        return out;
    }
    out.fraction = frac;
    out.L = frac.num().degree();
    out.M = frac.den().degree();
    out.terms_ok = frac.expand(s.order()) == s;
    out.surplus_verified = out.terms_ok ? N - (out.L + out.M + 1) : 0;
    out.degree_ok = out.L + out.M + 2 < N;
    out.size_ok = digit_mass_fraction(frac) <= digit_mass_series(s);
    return out;
}

/** Rational-fit guess on an integer sequence; none unless every gate passes. */
inline std::optional<FitReport> ratpoly_guess(const std::vector<Int>& seq) {
    const RationalFitOutcome out = fit_rational_series(Series::from_integers(seq));
    if (!out.accepted()) return std::nullopt;
    FitReport rep{"rational", expr_rational(*out.fraction), out.L, out.M,
                  out.degree_ok, out.size_ok, out.surplus_verified};
    return rep;
}

namespace detail {

/** Try one view (OGF or EGF) through identity, derivative, log-derivative, reversion. */
inline std::optional<FitReport> transform_view(const Series& view, bool egf,
                                               const Series& original) {
    const std::size_t N = original.order();

    auto finish = [&](const RationalFitOutcome& out,
                      GFExpression candidate) -> std::optional<FitReport> {
        if (egf) candidate = expr_egf_view(std::move(candidate));
        try {
            if (expression_expand(candidate, N) != original) return std::nullopt;
        } catch (const Error&) {
            return std::nullopt;
        }
        return FitReport{"transform", std::move(candidate), out.L, out.M,
                         out.degree_ok, out.size_ok, out.surplus_verified};
    };

    auto attempt_fit = [&](const Series& t) -> std::optional<RationalFitOutcome> {
        if (t.order() < 6) return std::nullopt;
        const RationalFitOutcome out = fit_rational_series(t);
        if (!out.accepted()) return std::nullopt;
        return out;
    };

    // identity
    if (auto out = attempt_fit(view))
        if (auto rep = finish(*out, expr_rational(*out->fraction))) return rep;
    // derivative, inverted by integration (constant 0)
    if (auto out = attempt_fit(view.derivative()))
        if (auto rep = finish(*out, expr_integral(expr_rational(*out->fraction)))) return rep;
    // logarithmic derivative, inverted by exp of the integral
    if (view.coeff(0) == 1) {
        const Series ld = view.derivative() / view.truncate_to(view.order() - 1);
        if (auto out = attempt_fit(ld))
            if (auto rep = finish(*out, expr_exp_integral(expr_rational(*out->fraction)))) return rep;
    }
    // functional inverse, kept only when the inverted coefficients stay integral
    if (view.order() >= 2 && view.coeff(0) == 0 && view.coeff(1) == 1) {
        const Series rev = reversion(view);
        bool integral = true;
        for (const auto& q : rev.coeffs())
            if (!is_integer(q)) {
                integral = false;
                break;
            }
        if (integral)
            if (auto out = attempt_fit(rev))
                if (auto rep = finish(*out, expr_reversion(expr_rational(*out->fraction)))) return rep;
    }
    return std::nullopt;
}

} // namespace detail

/**
 * Pre-transformation search: the OGF view first, then the EGF view (terms
 * divided by n!), each through identity, derivative, logarithmic derivative
 * and functional inverse; the first candidate whose expansion reproduces all
 * N input terms wins.  EGF-view results are wrapped so they expand back to
 * the integer sequence.
 */
inline std::optional<FitReport> transform_guess(const std::vector<Int>& seq) {
    if (seq.size() < 8)
        throw PreconditionViolated("transform search requires at least 8 terms");
    const Series ogf = Series::from_integers(seq);
    if (auto rep = detail::transform_view(ogf, false, ogf)) return rep;
    std::vector<Rat> egf_coeffs;
    egf_coeffs.reserve(seq.size());
    for (std::size_t n = 0; n < seq.size(); ++n)
        egf_coeffs.push_back(Rat(seq[n]) / Rat(factorial(n)));
    if (auto rep = detail::transform_view(Series(std::move(egf_coeffs)), true, ogf)) return rep;
    return std::nullopt;
}

} // namespace gfkit
