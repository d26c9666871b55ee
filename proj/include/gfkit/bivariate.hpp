#pragma once

/**
 * Triangular arrays and bivariate rational generating functions.
 *
 * A Triangle holds rows 0..N-1 where row n has n+1 integer entries (column k
 * of row n corresponds to the monomial t^k z^n).  generate_tableau() builds
 * the six-parameter family of triangles defined by
 *
 *     A[0,0] = 1,   A[n+1,k+1] = (r*n + s*k + t) * A[n,k+1]
 *                              + (a*n + b*k + c) * A[n,k]
 *
 * with out-of-range entries read as zero, and bivariate_fit() searches for a
 * rational function num(t,z)/den(t,z) whose power-series expansion in z has
 * the triangle's row polynomials as coefficients.  The last two rows are held
 * back from the linear system and used purely for verification.
 */

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gfkit/errors.hpp"
#include "gfkit/linalg.hpp"
#include "gfkit/numeric.hpp"
#include "gfkit/polynomial.hpp"

namespace gfkit {

/** Triangular array of integers; row n is expected to hold n+1 entries. */
struct Triangle {
    std::vector<std::vector<Int>> rows;

    bool operator==(const Triangle&) const = default;
};

/** True when the triangle is nonempty and row n has exactly n+1 entries. */
inline bool triangle_valid(const Triangle& tri) {
    if (tri.rows.empty()) return false;
    for (std::size_t n = 0; n < tri.rows.size(); ++n)
        if (tri.rows[n].size() != n + 1) return false;
    return true;
}

/** Parameters of the generalized-tableau recurrence; each must lie in [-4, 4]. */
struct TableauSpec {
    long a, b, c, r, s, t;

    TableauSpec(long a_, long b_, long c_, long r_, long s_, long t_)
        : a(a_), b(b_), c(c_), r(r_), s(s_), t(t_) {
        for (long v : {a, b, c, r, s, t})
            if (v < -4 || v > 4)
                throw PreconditionViolated("tableau parameter outside [-4, 4]");
    }
};

/**
 * Evaluate the tableau recurrence for the given number of rows.  The corner
 * value A[0,0] defaults to 1; the recurrence is linear in it, so scaling init
 * scales every entry.
 *
 * @throws PreconditionViolated when nrows is zero.
 */
inline Triangle generate_tableau(const TableauSpec& spec, std::size_t nrows, const Int& init = Int(1)) {
    if (nrows == 0) throw PreconditionViolated("nrows >= 1");
    Triangle tri;
    tri.rows.push_back({init});
    for (std::size_t n = 0; n + 1 < nrows; ++n) {
        const auto& prev = tri.rows.back();
        const auto at = [&](long k) -> Int {
            if (k < 0 || k > static_cast<long>(n)) return Int(0);
            return prev[static_cast<std::size_t>(k)];
        };
        std::vector<Int> next(n + 2);
        for (long j = 0; j <= static_cast<long>(n) + 1; ++j) {
            const long k = j - 1;
            const Int up = Int(spec.r) * static_cast<long>(n) + Int(spec.s) * k + Int(spec.t);
            const Int diag = Int(spec.a) * static_cast<long>(n) + Int(spec.b) * k + Int(spec.c);
            next[static_cast<std::size_t>(j)] = up * at(j) + diag * at(k);
        }
        tri.rows.push_back(std::move(next));
    }
    return tri;
}

/**
 * Bivariate rational function with integer coefficients.  num[i] and den[i]
 * are the t-polynomials multiplying z^i.  The pair is stored jointly
 * primitive with den's constant term positive; dividing through by den(0,0)
 * gives the normalized den(0,0) = 1 view.
 */
struct BivariateRationalGF {
    std::vector<IntPoly> num;
    std::vector<IntPoly> den;

    bool operator==(const BivariateRationalGF&) const = default;
};

/**
 * Expand num/den as a power series in z and return the coefficient triangle.
 * Requires den's z^0 coefficient to be a nonzero constant (the den(0,0) = 1
 * normalization up to the stored integer scale).
 *
 * @throws ExpansionUndefined when den's constant term is missing or
 *         non-constant in t, when a row has terms beyond t^n, or when a row
 *         entry is not an integer.
 */
inline Triangle bivariate_expand(const BivariateRationalGF& g, std::size_t nrows) {
    if (g.den.empty() || g.den[0].is_zero())
        throw ExpansionUndefined("bivariate denominator has no constant term");
    if (g.den[0].degree() > 0)
        throw ExpansionUndefined("bivariate denominator's z^0 coefficient is not constant");
    const Rat d0 = Rat(g.den[0].coeff(0));

    std::vector<RatPoly> f;  // f[n] = row-n generating polynomial in t
    Triangle tri;
    for (std::size_t n = 0; n < nrows; ++n) {
        RatPoly acc = n < g.num.size() ? to_rational(g.num[n]) : RatPoly();
        for (std::size_t i = 1; i <= n && i < g.den.size(); ++i)
            acc -= to_rational(g.den[i]) * f[n - i];
        acc = (Rat(1) / d0) * acc;
        if (acc.degree() > static_cast<long>(n))
            throw ExpansionUndefined("triangle row has terms beyond t^n");
        std::vector<Int> row(n + 1);
        for (std::size_t k = 0; k <= n; ++k) {
            const Rat v = acc.coeff(k);
            if (!is_integer(v)) throw ExpansionUndefined("triangle row entry is not an integer");
            row[k] = v.get_num();
        }
        f.push_back(std::move(acc));
        tri.rows.push_back(std::move(row));
    }
    return tri;
}

namespace detail {

/** Total decimal digit mass of a bivariate pair's coefficients. */
inline std::size_t bivariate_mass(const BivariateRationalGF& g) {
    std::size_t m = 0;
    for (const auto* part : {&g.num, &g.den})
        for (const IntPoly& p : *part)
            for (const Int& c : p.coeffs()) m += digit_mass(c);
    return m;
}

inline std::size_t triangle_mass(const Triangle& tri) {
    std::size_t m = 0;
    for (const auto& row : tri.rows)
        for (const Int& x : row) m += digit_mass(x);
    return m;
}

} // namespace detail

/**
 * Fit a bivariate rational function to a triangle.  Degree bounds: num has
 * t-degree <= Lt and z-degree <= Lz; den has t-degree <= Mt and z-degree
 * <= Mz.  The linear system identifies the coefficients of z^n t^k over the
 * first rows-2 rows; candidates must then reproduce every row (including the
 * two held back), keep den's z^0 coefficient constant in t, and obey the
 * digit-mass size criterion (coefficient mass no larger than the triangle's).
 *
 * @throws PreconditionViolated for an invalid triangle, negative bounds, or
 *         fewer than Lz + Mz + 3 rows.
 */
inline std::optional<BivariateRationalGF> bivariate_fit(const Triangle& tri, long Lt, long Mt,
                                                        long Lz, long Mz) {
    if (!triangle_valid(tri)) throw PreconditionViolated("triangle rows must have sizes 1, 2, 3, ...");
    if (Lt < 0 || Mt < 0 || Lz < 0 || Mz < 0) throw PreconditionViolated("degree bounds >= 0");
    const long nrows = static_cast<long>(tri.rows.size());
    if (nrows < Lz + Mz + 3) throw PreconditionViolated("need at least Lz + Mz + 3 rows");

    const long fitted = nrows - 2;
    const std::size_t np = static_cast<std::size_t>((Lz + 1) * (Lt + 1));
    const std::size_t nq = static_cast<std::size_t>((Mz + 1) * (Mt + 1));
    const auto pidx = [&](long j, long k) { return static_cast<std::size_t>(j * (Lt + 1) + k); };
    const auto qidx = [&](long j, long k) { return np + static_cast<std::size_t>(j * (Mt + 1) + k); };

    RatMat sys;
    for (long n = 0; n < fitted; ++n) {
        const long tmax = std::max(Lt, Mt + n);
        for (long tk = 0; tk <= tmax; ++tk) {
            std::vector<Rat> row(np + nq, Rat(0));
            if (n <= Lz && tk <= Lt) row[pidx(n, tk)] += 1;
            for (long i = 0; i <= std::min(n, Mz); ++i) {
                const auto& trow = tri.rows[static_cast<std::size_t>(n - i)];
                for (long m = 0; m <= Mt; ++m) {
                    const long u = tk - m;
                    if (u >= 0 && u <= n - i) row[qidx(i, m)] -= Rat(trow[static_cast<std::size_t>(u)]);
                }
            }
            sys.push_back(std::move(row));
        }
    }

    for (const std::vector<Rat>& v : nullspace(sys)) {
        if (v[qidx(0, 0)] == 0) continue;

        // Assemble rational polynomials, then clear to a jointly primitive
        // integer pair with den(0,0) > 0.
        Int den_lcm = 1;
        for (const Rat& x : v) den_lcm = int_lcm(den_lcm, x.get_den());
        Int content = 0;
        std::vector<Int> w(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            const Rat scaled = v[i] * Rat(den_lcm);
            w[i] = scaled.get_num();
            content = int_gcd(content, w[i]);
        }
        if (content == 0) continue;
        if (w[qidx(0, 0)] < 0) content = -content;
        for (Int& x : w) x /= content;

        BivariateRationalGF g;
        for (long j = 0; j <= Lz; ++j) {
            std::vector<Int> c(static_cast<std::size_t>(Lt) + 1);
            for (long k = 0; k <= Lt; ++k) c[static_cast<std::size_t>(k)] = w[pidx(j, k)];
            g.num.emplace_back(std::move(c));
        }
        for (long j = 0; j <= Mz; ++j) {
            std::vector<Int> c(static_cast<std::size_t>(Mt) + 1);
            for (long k = 0; k <= Mt; ++k) c[static_cast<std::size_t>(k)] = w[qidx(j, k)];
            g.den.emplace_back(std::move(c));
        }
        while (!g.num.empty() && g.num.back().is_zero()) g.num.pop_back();
        while (!g.den.empty() && g.den.back().is_zero()) g.den.pop_back();
        if (g.den.empty() || g.den[0].is_zero() || g.den[0].degree() > 0) continue;

        try {
            if (bivariate_expand(g, tri.rows.size()) != tri) continue;
        } catch (const ExpansionUndefined&) {
            continue;
        }
        if (detail::bivariate_mass(g) > detail::triangle_mass(tri)) continue;
        return g;
    }
    return std::nullopt;
}

/** Parse the one-row-per-line whitespace-separated triangle text format. */
inline Triangle parse_triangle(const std::string& text) {
    Triangle tri;
    std::size_t consumed = 0;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        const std::size_t line_start = consumed;
        consumed += line.size() + 1;
        std::istringstream toks(line);
        std::string tok;
        std::vector<Int> row;
        std::size_t seen = 0;
        while (toks >> tok) {
            const std::size_t pos = line_start + line.find(tok, seen);
            seen = line.find(tok, seen) + tok.size();
            try {
                row.emplace_back(tok);
            } catch (const std::invalid_argument&) {
                throw ParseError("bad triangle entry '" + tok + "'", pos);
            }
        }
        if (!row.empty()) tri.rows.push_back(std::move(row));
    }
    return tri;
}

/** Render a triangle in the one-row-per-line text format. */
inline std::string format_triangle(const Triangle& tri) {
    std::string out;
    for (const auto& row : tri.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k > 0) out += ' ';
            out += to_string(row[k]);
        }
        out += '\n';
    }
    return out;
}

} // namespace gfkit
