#pragma once

/**
 * Closed-form generating-function expressions: a normalized rational fraction
 * plus the wrapper nodes that undo pre-transformations (integral,
 * exp-integral, functional inverse, EGF view, negation) and quadratic radical
 * forms.  Every expression can be expanded to an exact truncated series.
 */

#include <cstddef>
#include <memory>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "numeric.hpp"
#include "polynomial.hpp"
#include "series.hpp"

namespace gfkit {

/**
 * P(z)/Q(z) held in two equivalent normal forms: the cleared form (coprime
 * integer polynomials, jointly primitive, Q(0) > 0) and, derived from it, the
 * textbook normalization with Q(0) = 1 and rational coefficients.
 */
class RationalGF {
public:
    RationalGF() : num_(), den_{Int(1)} {}
    RationalGF(IntPoly num, IntPoly den) : num_(std::move(num)), den_(std::move(den)) {}

    const IntPoly& num() const { return num_; }
    const IntPoly& den() const { return den_; }

    /** Numerator of the Q(0) = 1 normalization. */
    RatPoly num_normalized() const { return (Rat(1) / Rat(den_.coeff(0))) * to_rational(num_); }
    /** Denominator of the Q(0) = 1 normalization. */
    RatPoly den_normalized() const { return (Rat(1) / Rat(den_.coeff(0))) * to_rational(den_); }

    bool operator==(const RationalGF& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RationalGF& o) const { return !(*this == o); }

    Series expand(std::size_t T) const {
        if (T == 0) return Series();
        return Series::from_poly(to_rational(num_), T) / Series::from_poly(to_rational(den_), T);
    }

private:
    IntPoly num_, den_;
};

/**
 * Canonical constructor: reduce by the polynomial gcd, demand a nonzero
 * constant denominator term (power series only), clear to jointly primitive
 * integer coefficients with den(0) > 0.
 */
inline RationalGF make_rational_gf(const RatPoly& num_in, const RatPoly& den_in) {
    if (den_in.is_zero()) throw Error("rational GF with zero denominator");
    RatPoly num = num_in, den = den_in;
    const RatPoly g = poly_gcd(num, den);
    if (!g.is_zero() && g.degree() > 0) {
        num = divmod(num, g).first;
        den = divmod(den, g).first;
    }
    if (den.coeff(0) == 0) throw ExpansionUndefined("rational GF has a pole at z = 0");
    Int l(1);
    for (const auto& q : num.coeffs()) l = int_lcm(l, q.get_den());
    for (const auto& q : den.coeffs()) l = int_lcm(l, q.get_den());
    std::vector<Int> ni, di;
    Int content(0);
    for (const auto& q : num.coeffs()) {
        ni.push_back(Rat(q * Rat(l)).get_num());
        content = int_gcd(content, ni.back());
    }
    for (const auto& q : den.coeffs()) {
        di.push_back(Rat(q * Rat(l)).get_num());
        content = int_gcd(content, di.back());
    }
    for (auto& x : ni) x /= content;
    for (auto& x : di) x /= content;
    IntPoly n(std::move(ni)), d(std::move(di));
    if (d.coeff(0) < 0) {
        n = -n;
        d = -d;
    }
    return RationalGF(std::move(n), std::move(d));
}

struct GFExpression;
using ExprPtr = std::shared_ptr<const GFExpression>;

struct Integral {
    ExprPtr child;
};
struct ExpIntegral {
    ExprPtr child;
};
struct Reversion {
    ExprPtr child;
};
struct EgfView {
    ExprPtr child;
};
struct Negate {
    ExprPtr child;
};

/** (pre + sign*sqrt(root)) / denom, the solution branch of a quadratic in x. */
struct Radical {
    IntPoly pre;
    IntPoly root;
    IntPoly denom;
    int sign = 1;  // +1 or -1
};

struct GFExpression {
    std::variant<RationalGF, Integral, ExpIntegral, Reversion, EgfView, Negate, Radical> node;
};

inline ExprPtr make_expr(GFExpression e) { return std::make_shared<const GFExpression>(std::move(e)); }
inline GFExpression expr_rational(RationalGF r) { return GFExpression{std::move(r)}; }
inline GFExpression expr_integral(GFExpression child) { return GFExpression{Integral{make_expr(std::move(child))}}; }
inline GFExpression expr_exp_integral(GFExpression child) { return GFExpression{ExpIntegral{make_expr(std::move(child))}}; }
inline GFExpression expr_reversion(GFExpression child) { return GFExpression{Reversion{make_expr(std::move(child))}}; }
inline GFExpression expr_egf_view(GFExpression child) { return GFExpression{EgfView{make_expr(std::move(child))}}; }
inline GFExpression expr_negate(GFExpression child) { return GFExpression{Negate{make_expr(std::move(child))}}; }
inline GFExpression expr_radical(Radical r) { return GFExpression{std::move(r)}; }

bool operator==(const GFExpression& a, const GFExpression& b);

inline bool operator==(const Radical& a, const Radical& b) {
    return a.sign == b.sign && a.pre == b.pre && a.root == b.root && a.denom == b.denom;
}

inline bool operator==(const GFExpression& a, const GFExpression& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const auto& y = std::get<T>(b.node);
            if constexpr (std::is_same_v<T, RationalGF> || std::is_same_v<T, Radical>) {
                return x == y;
            } else {
                return *x.child == *y.child;
            }
        },
        a.node);
}

Series expression_expand(const GFExpression& e, std::size_t T);

namespace detail {

inline Series expand_radical(const Radical& r, std::size_t T) {
    if (r.denom.is_zero()) throw ExpansionUndefined("radical with zero denominator");
    std::size_t k = 0;
    while (r.denom.coeff(k) == 0) ++k;  // valuation of the denominator
    const std::size_t order = T + k;
    Series root_series = Series::from_poly(to_rational(r.root), order);
    Series sq;
    try {
        sq = root_series.sqrt();
    } catch (const PreconditionViolated&) {
        throw ExpansionUndefined("radical discriminant has no power-series square root");
    }
    Series numer = Series::from_poly(to_rational(r.pre), order) +
                   Rat(r.sign) * sq;
    for (std::size_t i = 0; i < k; ++i)
        if (numer.coeff(i) != 0)
            throw ExpansionUndefined("radical numerator valuation below denominator valuation");
    std::vector<Rat> dshift;
    for (std::size_t i = k; i <= static_cast<std::size_t>(r.denom.degree()); ++i)
        dshift.push_back(Rat(r.denom.coeff(i)));
    return numer.shift_down(k) / Series::from_poly(RatPoly(std::move(dshift)), T);
}

} // namespace detail

/** Exact first T coefficients of the series the expression denotes. */
inline Series expression_expand(const GFExpression& e, std::size_t T) {
    return std::visit(
        [&](const auto& node) -> Series {
            using N = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<N, RationalGF>) {
                return node.expand(T);
            } else if constexpr (std::is_same_v<N, Integral>) {
                if (T == 0) return Series();
                return expression_expand(*node.child, T - 1).integrate();
            } else if constexpr (std::is_same_v<N, ExpIntegral>) {
                if (T == 0) return Series();
                try {
                    return expression_expand(*node.child, T - 1).integrate().exp();
                } catch (const PreconditionViolated&) {
                    throw ExpansionUndefined("exp-integral inner series not exponentiable");
                }
            } else if constexpr (std::is_same_v<N, Reversion>) {
                if (T == 0) return Series();
                try {
                    return reversion(expression_expand(*node.child, std::max<std::size_t>(T, 2)))
                        .truncate_to(T);
                } catch (const NotReversible&) {
                    throw ExpansionUndefined("inner series is not reversible");
                }
            } else if constexpr (std::is_same_v<N, EgfView>) {
                Series inner = expression_expand(*node.child, T);
                std::vector<Rat> v(inner.coeffs());
                for (std::size_t n = 0; n < v.size(); ++n) v[n] *= Rat(factorial(n));
                return Series(std::move(v));
            } else if constexpr (std::is_same_v<N, Negate>) {
                return -expression_expand(*node.child, T);
            } else {
                return detail::expand_radical(node, T);
            }
        },
        e.node);
}

} // namespace gfkit
