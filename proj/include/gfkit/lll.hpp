#pragma once
// Exact integer lattice reduction (LLL) with rational Gram-Schmidt data that
// is kept incrementally up to date across size-reduction and swap steps, so
// no orthogonalization is ever recomputed from scratch during a run.

#include "gfkit/errors.hpp"
#include "gfkit/linalg.hpp"
#include "gfkit/numeric.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace gfkit {

/// A lattice basis given by its rows; rows must have equal length and be
/// linearly independent over the rationals.
using LatticeBasis = IntMat;

namespace detail {

inline Rat dot_rat(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    Rat acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

inline Rat dot_int_rat(const std::vector<Int>& a, const std::vector<Rat>& b) {
    Rat acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += Rat(a[i]) * b[i];
    return acc;
}

}  // namespace detail

/// Orthogonalization coefficients mu (strict lower triangle) together with
/// the squared norms of the orthogonalized vectors.
struct GramSchmidtData {
    std::vector<std::vector<Rat>> mu;
    std::vector<Rat> norms;
};

/// Exact Gram-Schmidt over the rationals. Throws DependentRows as soon as an
/// orthogonalized vector vanishes.
inline GramSchmidtData gram_schmidt(const LatticeBasis& basis) {
    const std::size_t n = basis.size();
    std::vector<std::vector<Rat>> star(n);
    GramSchmidtData out;
    out.mu.assign(n, std::vector<Rat>(n, Rat(0)));
    out.norms.assign(n, Rat(0));
    for (std::size_t k = 0; k < n; ++k) {
        star[k].assign(basis[k].begin(), basis[k].end());
        for (std::size_t j = 0; j < k; ++j) {
            out.mu[k][j] = detail::dot_int_rat(basis[k], star[j]) / out.norms[j];
            for (std::size_t c = 0; c < star[k].size(); ++c)
                star[k][c] -= out.mu[k][j] * star[j][c];
        }
        out.norms[k] = detail::dot_rat(star[k], star[k]);
        if (out.norms[k] == 0) throw DependentRows();
    }
    return out;
}

/// LLL reduction of an integer lattice basis. The output spans the same
/// lattice, is size-reduced (|mu_{i,j}| <= 1/2) and satisfies the Lovasz
/// condition with the given delta. Requires 1/4 < delta < 1; throws
/// DependentRows if the rows are rationally dependent.
inline LatticeBasis lll_reduce(LatticeBasis basis, const Rat& delta = make_rat(3, 4)) {
    if (basis.empty()) throw PreconditionViolated("lattice basis must be nonempty");
    const std::size_t n = basis.size();
    const std::size_t cols = basis[0].size();
    for (const auto& row : basis)
        if (row.size() != cols) throw PreconditionViolated("lattice rows must have equal length");
    if (!(delta > make_rat(1, 4) && delta < 1))
        throw PreconditionViolated("lll_reduce requires 1/4 < delta < 1");

    std::vector<std::vector<Rat>> star(n);
    std::vector<std::vector<Rat>> mu(n, std::vector<Rat>(n, Rat(0)));
    std::vector<Rat> B(n, Rat(0));

    star[0].assign(basis[0].begin(), basis[0].end());
    B[0] = detail::dot_rat(star[0], star[0]);
    if (B[0] == 0) throw DependentRows();

    // Size-reduce row k against row l, updating basis and mu together.
    auto red = [&](std::size_t k, std::size_t l) {
        if (2 * abs(mu[k][l]) <= 1) return;
        Int q = round_half_even(mu[k][l]);
        for (std::size_t c = 0; c < cols; ++c) basis[k][c] -= q * basis[l][c];
        mu[k][l] -= Rat(q);
        for (std::size_t i = 0; i < l; ++i) mu[k][i] -= Rat(q) * mu[l][i];
    };

    // Exchange rows k-1 and k, rotating the stored orthogonalization data.
    auto swap_rows = [&](std::size_t k, std::size_t kmax) {
        std::swap(basis[k], basis[k - 1]);
        for (std::size_t j = 0; j + 1 < k; ++j) std::swap(mu[k][j], mu[k - 1][j]);
        Rat m = mu[k][k - 1];
        Rat Bnew = B[k] + m * m * B[k - 1];
        mu[k][k - 1] = m * B[k - 1] / Bnew;
        std::vector<Rat> b = star[k - 1];
        for (std::size_t c = 0; c < cols; ++c) {
            star[k - 1][c] = star[k][c] + m * b[c];
            star[k][c] = -mu[k][k - 1] * star[k][c] + (B[k] / Bnew) * b[c];
        }
        B[k] = B[k - 1] * B[k] / Bnew;
        B[k - 1] = Bnew;
        for (std::size_t i = k + 1; i <= kmax; ++i) {
            Rat t = mu[i][k];
            mu[i][k] = mu[i][k - 1] - m * t;
            mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k];
        }
    };

    std::size_t k = 1;
    std::size_t kmax = 0;
    while (k < n) {
        if (k > kmax) {
            kmax = k;
            star[k].assign(basis[k].begin(), basis[k].end());
            for (std::size_t j = 0; j < k; ++j) {
                mu[k][j] = detail::dot_int_rat(basis[k], star[j]) / B[j];
                for (std::size_t c = 0; c < cols; ++c) star[k][c] -= mu[k][j] * star[j][c];
            }
            B[k] = detail::dot_rat(star[k], star[k]);
            if (B[k] == 0) throw DependentRows();
        }
        while (true) {
            red(k, k - 1);
            if (B[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
                swap_rows(k, kmax);
                k = (k > 1) ? k - 1 : 1;
            } else {
                for (std::size_t l = k - 1; l-- > 0;) red(k, l);
                ++k;
                break;
            }
        }
    }
    return basis;
}

}  // namespace gfkit
