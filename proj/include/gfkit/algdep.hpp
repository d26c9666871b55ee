#pragma once
// Minimal-polynomial detection from a decimal value via lattice reduction,
// and reconstruction of an algebraic equation satisfied by the generating
// function of an integer sequence: recurrence-extend the sequence, evaluate
// the series at reciprocal integer points, detect each point's minimal
// polynomial, interpolate the coefficients as polynomials in the base point,
// and substitute back to a bivariate equation that is then verified against
// the series itself.

#include "gfkit/errors.hpp"
#include "gfkit/expression.hpp"
#include "gfkit/fixed_decimal.hpp"
#include "gfkit/holonomic.hpp"
#include "gfkit/lll.hpp"
#include "gfkit/numeric.hpp"
#include "gfkit/polynomial.hpp"
#include "gfkit/series.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace gfkit {

/// A polynomial equation sum_{j,k} c_{j,k} x^j z^k = 0 for x = S(z); entry j
/// of cz is the z-polynomial multiplying x^j.  Kept with integer coefficients,
/// jointly primitive, and with the x-major lexicographically leading
/// coefficient positive.
struct AlgebraicEquation {
    std::vector<IntPoly> cz;

    long x_degree() const { return static_cast<long>(cz.size()) - 1; }
    long z_degree() const {
        long d = 0;
        for (const auto& p : cz)
            if (p.degree() > d) d = p.degree();
        return d;
    }
    bool operator==(const AlgebraicEquation& other) const = default;
};

/// Normalizes a list of rational z-polynomials (index = power of x) into an
/// AlgebraicEquation: clears denominators jointly, divides by the joint
/// integer content, trims vanishing top powers of x, and fixes the sign so
/// the leading z-coefficient of the highest x-power is positive.  A zero
/// equation carries no information and yields none.
inline std::optional<AlgebraicEquation> make_algebraic_equation(std::vector<RatPoly> cz) {
    while (!cz.empty() && cz.back().is_zero()) cz.pop_back();
    if (cz.empty()) return std::nullopt;
    Int denoms = 1;
    for (const auto& p : cz)
        for (const auto& c : p.coeffs()) denoms = int_lcm(denoms, c.get_den());
    std::vector<IntPoly> out;
    out.reserve(cz.size());
    Int content = 0;
    for (const auto& p : cz) {
        std::vector<Int> v;
        v.reserve(p.coeffs().size());
        for (const auto& c : p.coeffs()) {
            Rat scaled = c * Rat(denoms);
            v.push_back(scaled.get_num());
            content = int_gcd(content, v.back());
        }
        out.emplace_back(std::move(v));
    }
    if (content == 0) return std::nullopt;
    bool negate = out.back().leading() < 0;
    for (auto& p : out) {
        std::vector<Int> v = p.coeffs();
        for (auto& c : v) {
            c /= content;
            if (negate) c = -c;
        }
        p = IntPoly(std::move(v));
    }
    return AlgebraicEquation{std::move(out)};
}

/// True iff sum_j cz[j](z) * s(z)^j vanishes through order T - z_degree,
/// where T is the order of s.
inline bool verify_annihilation(const AlgebraicEquation& eq, const Series& s) {
    const std::size_t T = s.order();
    Series acc = Series::zero(T);
    Series power = Series::one(T);
    for (std::size_t j = 0; j < eq.cz.size(); ++j) {
        if (j > 0) power = power * s;
        if (!eq.cz[j].is_zero()) acc = acc + Series::from_poly(to_rational(eq.cz[j]), T) * power;
    }
    const long upto = static_cast<long>(T) - eq.z_degree();
    for (long i = 0; i < upto; ++i)
        if (acc.coeff(static_cast<std::size_t>(i)) != 0) return false;
    return true;
}

/// Settings for reconstruct_algebraic: decimal precision, the degree range to
/// scan, the base evaluation point m (series evaluated at 1/m, 1/(m+1), ...),
/// the number of interpolation points, the number of series terms to extend
/// to, and the lattice reduction parameter.
struct AlgdepConfig {
    unsigned long precision = 118;
    long degree_min = 2;
    long degree_max = 8;
    long base_point = 100;
    long points = 12;
    long terms = 200;
    Rat delta = make_rat(3, 4);
};

/// Minimal-polynomial detection: finds a degree-d integer polynomial with
/// small coefficients that nearly vanishes at x, or none.  The lattice has
/// rows (e_i | round(10^p x^i)); the candidate is read off the first reduced
/// row and accepted only if it is nonconstant, its value at x is at most
/// 10^{-p/2} (1 + sum |c_i|) in absolute value, and every coefficient has at
/// most max(1, p / (2(d+1))) digits.  The result is primitive with positive
/// leading coefficient.
inline std::optional<IntPoly> algdep(const FixedDecimal& x, long d, unsigned long p,
                                     const Rat& delta = make_rat(3, 4)) {
    if (d < 1) throw PreconditionViolated("algdep requires degree >= 1");
    if (x.precision < p)
        throw PreconditionViolated("algdep requires a value carrying at least p digits");
    FixedDecimal v = x.precision == p ? x : FixedDecimal::from_rational(x.to_rational(), p);

    const std::size_t n = static_cast<std::size_t>(d) + 1;
    LatticeBasis basis(n, std::vector<Int>(n + 1, Int(0)));
    for (std::size_t i = 0; i < n; ++i) {
        basis[i][i] = 1;
        basis[i][n] = v.scaled_power(static_cast<unsigned long>(i));
    }
    LatticeBasis reduced = lll_reduce(std::move(basis), delta);

    std::vector<Int> c(reduced[0].begin(), reduced[0].begin() + static_cast<long>(n));
    IntPoly cand(std::move(c));
    if (cand.degree() < 1) return std::nullopt;

    // Residual gate, compared in squared form to stay in exact arithmetic:
    // P(x)^2 * 10^p <= (1 + sum |c_i|)^2.
    Rat xr = v.to_rational();
    Rat value = cand.eval(xr);
    Int size = 1;
    for (const auto& cf : cand.coeffs()) size += abs(cf);
    if (value * value * Rat(pow10(p)) > Rat(size) * Rat(size)) return std::nullopt;

    const unsigned long digit_cap =
        std::max<unsigned long>(1, p / (2 * (static_cast<unsigned long>(d) + 1)));
    for (const auto& cf : cand.coeffs())
        if (digit_count(cf) > digit_cap) return std::nullopt;

    std::vector<Int> prim = cand.coeffs();
    Int content = 0;
    for (const auto& cf : prim) content = int_gcd(content, cf);
    bool negate = cand.leading() < 0;
    for (auto& cf : prim) {
        cf /= content;
        if (negate) cf = -cf;
    }
    return IntPoly(std::move(prim));
}

namespace detail {

/// Newton interpolation through the given nodes; exact in rational
/// arithmetic, so the result reproduces every sampled value.
inline RatPoly newton_interpolate(const std::vector<Rat>& nodes, const std::vector<Rat>& values) {
    const std::size_t n = nodes.size();
    std::vector<Rat> dd = values;
    std::vector<Rat> lead(n);
    lead[0] = dd[0];
    for (std::size_t lvl = 1; lvl < n; ++lvl) {
        for (std::size_t i = 0; i + lvl < n; ++i)
            dd[i] = (dd[i + 1] - dd[i]) / (nodes[i + lvl] - nodes[i]);
        lead[lvl] = dd[0];
    }
    RatPoly poly{lead[n - 1]};
    for (std::size_t i = n - 1; i-- > 0;) poly = poly * RatPoly{-nodes[i], Rat(1)} + RatPoly{lead[i]};
    return poly;
}

}  // namespace detail

/// Reconstructs an algebraic equation for the generating function of seq, or
/// none.  Steps: (1) guess a P-recurrence; (2) extend the sequence to
/// cfg.terms; (3) form the series; (4) evaluate it at 1/(m+i) for each
/// interpolation point to cfg.precision digits; (5-6) scan degrees ascending,
/// keeping the first degree at which every point admits a minimal polynomial;
/// (7) align signs and restore a common leading coefficient across points;
/// (8) interpolate each coefficient as a polynomial in the evaluation point
/// t = m+i; (9) substitute t = 1/z and clear denominators; (10) verify
/// annihilation against the extended series.  Errors raised while extending
/// or evaluating (singular leading coefficient, unresolvable decimal tail)
/// propagate to the caller.
inline std::optional<AlgebraicEquation> reconstruct_algebraic(const std::vector<Int>& seq,
                                                              const AlgdepConfig& cfg = {}) {
    auto rec = guess_precurrence(seq);
    if (!rec) return std::nullopt;
    // Extend from the full given sequence: restating the recurrence with a
    // later starting rank keeps it valid and places the seed at ranks
    // 1..len(seq), so generation resumes right past the supplied terms.
    PRecurrence tail = *rec;
    tail.n0 = static_cast<long>(seq.size()) + 1;
    const long total = std::max(cfg.terms, static_cast<long>(seq.size()));
    std::vector<Int> extended = extend_precurrence(tail, seq, static_cast<std::size_t>(total));
    Series s = Series::from_integers(extended);

    std::vector<FixedDecimal> evals;
    std::vector<Rat> nodes;
    evals.reserve(static_cast<std::size_t>(cfg.points));
    for (long i = 0; i < cfg.points; ++i) {
        Rat point = make_rat(Int(1), Int(cfg.base_point + i));
        evals.push_back(series_eval_decimal(s, point, cfg.precision).value);
        nodes.emplace_back(Int(cfg.base_point + i));
    }

    for (long d = cfg.degree_min; d <= cfg.degree_max; ++d) {
        std::vector<IntPoly> per_point;
        per_point.reserve(evals.size());
        bool complete = true;
        for (const auto& value : evals) {
            auto poly = algdep(value, d, cfg.precision, cfg.delta);
            if (!poly) {
                complete = false;
                break;
            }
            per_point.push_back(std::move(*poly));
        }
        if (!complete) continue;

        // Restore a common leading coefficient: per-point polynomials are
        // primitive, but the true coefficient polynomials may share a content
        // that varies with the point.  Rescaling to the leading-coefficient
        // lcm makes interpolation exact whenever the true leading coefficient
        // is constant in t; a bad rescale cannot survive the final
        // verification step.
        Int lead_lcm = 1;
        bool leads_positive = true;
        for (const auto& poly : per_point) {
            Int lead = poly.coeff(static_cast<std::size_t>(d));
            if (lead <= 0) {
                leads_positive = false;
                break;
            }
            lead_lcm = int_lcm(lead_lcm, lead);
        }
        std::vector<std::vector<Rat>> samples(static_cast<std::size_t>(d) + 1,
                                              std::vector<Rat>(per_point.size()));
        for (std::size_t i = 0; i < per_point.size(); ++i) {
            Int scale = leads_positive
                            ? Int(lead_lcm / per_point[i].coeff(static_cast<std::size_t>(d)))
                            : Int(1);
            for (long j = 0; j <= d; ++j) {
                Int scaled = per_point[i].coeff(static_cast<std::size_t>(j)) * scale;
                samples[static_cast<std::size_t>(j)][i] = Rat(scaled);
            }
        }

        std::vector<RatPoly> in_t;
        in_t.reserve(samples.size());
        bool degree_ok = true;
        long t_degree = 0;
        for (const auto& row : samples) {
            RatPoly c = detail::newton_interpolate(nodes, row);
            if (c.degree() > cfg.points - 2) {
                degree_ok = false;
                break;
            }
            if (c.degree() > t_degree) t_degree = c.degree();
            in_t.push_back(std::move(c));
        }
        if (!degree_ok) continue;

        std::vector<RatPoly> in_z;
        in_z.reserve(in_t.size());
        for (const auto& c : in_t)
            in_z.push_back(poly_reverse(c, static_cast<std::size_t>(t_degree)));
        auto eq = make_algebraic_equation(std::move(in_z));
        if (!eq) continue;
        if (verify_annihilation(*eq, s)) return eq;
    }
    return std::nullopt;
}

/// Solves an equation of x-degree at most two for the series branch matching
/// s and returns it as an expression (rational for degree one or a vanishing
/// discriminant, radical otherwise); none when no branch reproduces s or the
/// x-degree exceeds two.
inline std::optional<GFExpression> solve_closed_form(const AlgebraicEquation& eq,
                                                     const Series& s) {
    const long dx = eq.x_degree();
    if (dx < 1 || dx > 2) return std::nullopt;
    const std::size_t T = s.order();

    auto matches = [&](const GFExpression& expr) {
        try {
            return expression_expand(expr, T) == s;
        } catch (const Error&) {
            return false;
        }
    };

    if (dx == 1) {
        try {
            RationalGF gf = make_rational_gf(to_rational(-eq.cz[0]), to_rational(eq.cz[1]));
            GFExpression expr = expr_rational(gf);
            if (matches(expr)) return expr;
        } catch (const Error&) {
        }
        return std::nullopt;
    }

    const IntPoly& a = eq.cz[2];
    const IntPoly& b = eq.cz[1];
    const IntPoly& c = eq.cz[0];
    IntPoly disc = b * b - Int(4) * (a * c);
    IntPoly minus_b = -b;
    IntPoly denom = Int(2) * a;
    if (disc.is_zero()) {
        try {
            RationalGF gf = make_rational_gf(to_rational(minus_b), to_rational(denom));
            GFExpression expr = expr_rational(gf);
            if (matches(expr)) return expr;
        } catch (const Error&) {
        }
        return std::nullopt;
    }
    for (int sign : {+1, -1}) {
        GFExpression expr = expr_radical(Radical{minus_b, disc, denom, sign});
        if (matches(expr)) return expr;
    }
    return std::nullopt;
}

}  // namespace gfkit
