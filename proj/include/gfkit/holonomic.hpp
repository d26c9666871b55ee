#pragma once

/**
 * Linear recurrences with polynomial coefficients: grid-scan guessing over
 * (order, degree) cells by increasing unknown count, exact nullspace solving,
 * verification against supplied terms, and iterative extension.
 *
 * Index convention: a term list t_1..t_N is ranked from 1; a recurrence of
 * order k asserts  P_0(n) a(n) = sum_{i=1..k} P_i(n) a(n-i)  for n >= n0.
 */

#include <algorithm>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "numeric.hpp"
#include "polynomial.hpp"

namespace gfkit {

struct PRecurrence {
    long k = 0;              // order
    long d = 0;              // maximum coefficient degree
    std::vector<IntPoly> p;  // P_0..P_k, jointly primitive, P_0 nonzero with positive leading coefficient
    long n0 = 0;             // first rank where the relation is asserted

    bool operator==(const PRecurrence& o) const {
        return k == o.k && d == o.d && n0 == o.n0 && p == o.p;
    }
};

/** Check P_0(n) a(n) = sum P_i(n) a(n-i) at every checkable rank >= n0 (vacuous true allowed). */
inline bool verify_precurrence(const PRecurrence& rec, const std::vector<Int>& seq) {
    const long N = static_cast<long>(seq.size());
    for (long n = std::max(rec.n0, rec.k + 1); n <= N; ++n) {
        Int lhs = seq[static_cast<std::size_t>(n - 1)] * rec.p[0].eval(Int(n));
        Int rhs(0);
        for (long i = 1; i <= rec.k; ++i)
            rhs += seq[static_cast<std::size_t>(n - 1 - i)] *
                   rec.p[static_cast<std::size_t>(i)].eval(Int(n));
        if (lhs != rhs) return false;
    }
    return true;
}

namespace detail {

/** Clear denominators jointly, divide out the content, make P_0's leading coefficient positive. */
inline std::vector<IntPoly> normalize_coefficient_blocks(const std::vector<RatPoly>& blocks) {
    Int l(1);
    for (const auto& b : blocks)
        for (const auto& q : b.coeffs()) l = int_lcm(l, q.get_den());
    Int content(0);
    std::vector<std::vector<Int>> scaled;
    for (const auto& b : blocks) {
        std::vector<Int> v;
        for (const auto& q : b.coeffs()) {
            v.push_back(Rat(q * Rat(l)).get_num());
            content = int_gcd(content, v.back());
        }
        scaled.push_back(std::move(v));
    }
    if (content == 0) content = 1;
    std::vector<IntPoly> out;
    for (auto& v : scaled) {
        for (auto& x : v) x /= content;
        out.emplace_back(std::move(v));
    }
    if (!out.empty() && out[0].leading() < 0)
        for (auto& poly : out) poly = -poly;
    return out;
}

} // namespace detail

/**
 * Scan (k,d) cells, k = 1..kmax and d = 0..dmax, in increasing unknown count
 * (d+1)(k+1) with ties broken by smaller k.  Each feasible cell (at least as
 * many equations as unknowns, three terms held back) contributes the exact
 * nullspace of its homogeneous system; the first normalized basis vector
 * whose recurrence holds on every rank — the held-back terms included — wins.
 * All-zero input carries no information and yields none.
 */
inline std::optional<PRecurrence> guess_precurrence(const std::vector<Int>& seq, long dmax = 4,
                                                    long kmax = 5) {
    const long N = static_cast<long>(seq.size());
    bool all_zero = true;
    for (const auto& t : seq)
        if (t != 0) {
            all_zero = false;
            break;
        }
    if (all_zero) return std::nullopt;

    struct Cell {
        long k, d, unknowns;
    };
    std::vector<Cell> cells;
    for (long k = 1; k <= kmax; ++k)
        for (long d = 0; d <= dmax; ++d) cells.push_back({k, d, (d + 1) * (k + 1)});
    std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
        if (a.unknowns != b.unknowns) return a.unknowns < b.unknowns;
        if (a.k != b.k) return a.k < b.k;
        return a.d < b.d;
    });

    for (const auto& cell : cells) {
        const long rows = N - 3 - cell.k;  // ranks k+1 .. N-3
        if (rows < cell.unknowns) continue;
        RatMat sys(static_cast<std::size_t>(rows),
                   std::vector<Rat>(static_cast<std::size_t>(cell.unknowns)));
        for (long r = 0; r < rows; ++r) {
            const long n = cell.k + 1 + r;
            for (long i = 0; i <= cell.k; ++i) {
                const Rat term = (i == 0 ? Rat(seq[static_cast<std::size_t>(n - 1)])
                                         : -Rat(seq[static_cast<std::size_t>(n - 1 - i)]));
                Rat npow(1);
                for (long j = 0; j <= cell.d; ++j) {
                    sys[static_cast<std::size_t>(r)][static_cast<std::size_t>(i * (cell.d + 1) + j)] =
                        term * npow;
                    npow *= Rat(n);
                }
            }
        }
        for (const auto& vec : nullspace(std::move(sys))) {
            std::vector<RatPoly> blocks;
            for (long i = 0; i <= cell.k; ++i) {
                std::vector<Rat> cs(vec.begin() + i * (cell.d + 1),
                                    vec.begin() + (i + 1) * (cell.d + 1));
                blocks.emplace_back(std::move(cs));
            }
            std::vector<IntPoly> polys = detail::normalize_coefficient_blocks(blocks);
            if (polys[0].is_zero()) continue;
            long dact = 0;
            for (const auto& poly : polys) dact = std::max(dact, poly.degree());
            PRecurrence rec{cell.k, dact, std::move(polys), cell.k + 1};
            if (verify_precurrence(rec, seq)) return rec;
        }
    }
    return std::nullopt;
}

/**
 * Run the recurrence forward from a seed whose last entry sits at rank
 * n0 - 1, until `count` terms exist in total (seed included).  Exact rational
 * steps; a non-integer value or a vanishing leading coefficient raises.
 */
inline std::vector<Int> extend_precurrence(const PRecurrence& rec, const std::vector<Int>& seed,
                                           std::size_t count) {
    if (static_cast<long>(seed.size()) < rec.k)
        throw PreconditionViolated("recurrence extension needs a seed of length >= order");
    std::vector<Int> out = seed;
    const long base = rec.n0 - static_cast<long>(seed.size());  // rank of seed[0]
    for (long n = rec.n0; out.size() < count; ++n) {
        const Int p0 = rec.p[0].eval(Int(n));
        if (p0 == 0) throw SingularLeadingCoefficient(n);
        Rat acc(0);
        for (long i = 1; i <= rec.k; ++i)
            acc += Rat(rec.p[static_cast<std::size_t>(i)].eval(Int(n))) *
                   Rat(out[static_cast<std::size_t>(n - i - base)]);
        acc /= Rat(p0);
        if (!is_integer(acc)) throw NonIntegerTerm(n);
        out.push_back(acc.get_num());
    }
    out.resize(count);
    return out;
}

} // namespace gfkit
