#pragma once

/**
 * Truncated formal power series over the rationals.  A Series stores the
 * coefficients of z^0 .. z^{T-1}; T is the truncation order.  Coefficients
 * beyond the order are unknown, not zero, so binary operations truncate to
 * the shorter operand and calculus operations shift the order accordingly.
 * Everything is exact; decimals appear only in series_eval_decimal output.
 */

#include <algorithm>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "fixed_decimal.hpp"
#include "numeric.hpp"
#include "polynomial.hpp"

namespace gfkit {

class Series {
public:
    Series() = default;
    explicit Series(std::vector<Rat> coeffs) : a_(std::move(coeffs)) {}

    static Series from_integers(const std::vector<Int>& terms) {
        return Series(std::vector<Rat>(terms.begin(), terms.end()));
    }

    /** Polynomial coefficients padded with zeros (or cut) to the given order. */
    static Series from_poly(const RatPoly& p, std::size_t order) {
        std::vector<Rat> v(order, Rat(0));
        for (std::size_t i = 0; i < order; ++i) v[i] = p.coeff(i);
        return Series(std::move(v));
    }

    static Series zero(std::size_t order) { return Series(std::vector<Rat>(order, Rat(0))); }

    static Series one(std::size_t order) {
        Series s = zero(order);
        if (order > 0) s.a_[0] = 1;
        return s;
    }

    /** The series z, truncated to the given order. */
    static Series identity(std::size_t order) {
        Series s = zero(order);
        if (order > 1) s.a_[1] = 1;
        return s;
    }

    std::size_t order() const { return a_.size(); }
    const std::vector<Rat>& coeffs() const { return a_; }

    Rat coeff(std::size_t i) const {
        if (i >= a_.size()) throw Error("series coefficient index beyond truncation order");
        return a_[i];
    }

    bool operator==(const Series& o) const { return a_ == o.a_; }
    bool operator!=(const Series& o) const { return a_ != o.a_; }

    Series truncate_to(std::size_t m) const {
        if (m > a_.size()) throw Error("series truncation beyond stored order");
        return Series(std::vector<Rat>(a_.begin(), a_.begin() + m));
    }

    /**
     * Pad with zero coefficients up to order m.  The padding is a statement
     * about unknown terms, so this is only for algorithms (e.g. Newton steps)
     * that subsequently correct them.
     */
    Series extend_with_zeros(std::size_t m) const {
        std::vector<Rat> v = a_;
        if (m > v.size()) v.resize(m, Rat(0));
        return Series(std::move(v));
    }

    /** Multiply by z^k (order grows by k). */
    Series shift_up(std::size_t k) const {
        std::vector<Rat> v(k, Rat(0));
        v.insert(v.end(), a_.begin(), a_.end());
        return Series(std::move(v));
    }

    /** Divide by z^k; the first k coefficients must be exactly zero. */
    Series shift_down(std::size_t k) const {
        if (a_.size() < k) throw Error("series too short to shift down");
        for (std::size_t i = 0; i < k; ++i)
            if (a_[i] != 0) throw Error("series shift_down would drop a nonzero coefficient");
        return Series(std::vector<Rat>(a_.begin() + k, a_.end()));
    }

    Series operator-() const {
        Series r(*this);
        for (auto& v : r.a_) v = -v;
        return r;
    }

    friend Series operator+(const Series& x, const Series& y) {
        const std::size_t n = std::min(x.order(), y.order());
        std::vector<Rat> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = x.a_[i] + y.a_[i];
        return Series(std::move(v));
    }

    friend Series operator-(const Series& x, const Series& y) {
        const std::size_t n = std::min(x.order(), y.order());
        std::vector<Rat> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = x.a_[i] - y.a_[i];
        return Series(std::move(v));
    }

    friend Series operator*(const Series& x, const Series& y) {
        const std::size_t n = std::min(x.order(), y.order());
        std::vector<Rat> v(n, Rat(0));
        for (std::size_t i = 0; i < n; ++i) {
            if (x.a_[i] == 0) continue;
            for (std::size_t j = 0; i + j < n; ++j) v[i + j] += x.a_[i] * y.a_[j];
        }
        return Series(std::move(v));
    }

    friend Series operator*(const Rat& s, Series x) {
        for (auto& v : x.a_) v = s * v;
        return x;
    }

    /** Quotient q with q*y = x mod z^T, T = min order; y(0) must be nonzero. */
    friend Series operator/(const Series& x, const Series& y) {
        if (y.order() == 0 || y.a_[0] == 0) throw DivisorNotUnit();
        const std::size_t n = std::min(x.order(), y.order());
        std::vector<Rat> q(n);
        for (std::size_t k = 0; k < n; ++k) {
            Rat acc = x.a_[k];
            for (std::size_t i = 0; i < k; ++i) acc -= q[i] * y.a_[k - i];
            q[k] = acc / y.a_[0];
        }
        return Series(std::move(q));
    }

    /** Formal derivative; order drops by one. */
    Series derivative() const {
        if (a_.size() <= 1) return Series();
        std::vector<Rat> v(a_.size() - 1);
        for (std::size_t i = 1; i < a_.size(); ++i) v[i - 1] = Rat(static_cast<long>(i)) * a_[i];
        return Series(std::move(v));
    }

    /** Formal antiderivative with constant 0; order grows by one. */
    Series integrate() const {
        std::vector<Rat> v(a_.size() + 1, Rat(0));
        for (std::size_t i = 0; i < a_.size(); ++i) v[i + 1] = a_[i] / Rat(static_cast<long>(i + 1));
        return Series(std::move(v));
    }

    /** Formal logarithm, requiring s(0) = 1; order preserved. */
    Series log() const {
        if (a_.empty() || a_[0] != 1) throw PreconditionViolated("log requires s(0) = 1");
        return (derivative() / truncate_to(a_.size() - 1)).integrate();
    }

    /** Formal exponential, requiring s(0) = 0; order preserved. */
    Series exp() const {
        if (a_.empty()) return Series();
        if (a_[0] != 0) throw PreconditionViolated("exp requires s(0) = 0");
        const std::size_t n = a_.size();
        std::vector<Rat> e(n, Rat(0));
        e[0] = 1;
        for (std::size_t m = 1; m < n; ++m) {
            Rat acc(0);
            for (std::size_t k = 1; k <= m; ++k) acc += Rat(static_cast<long>(k)) * a_[k] * e[m - k];
            e[m] = acc / Rat(static_cast<long>(m));
        }
        return Series(std::move(e));
    }

    /** Square root with s(0) = +sqrt(a_0); a_0 must be a nonzero rational square. */
    Series sqrt() const {
        if (a_.empty()) return Series();
        auto s0 = sqrt_exact(a_[0]);
        if (a_[0] == 0 || !s0)
            throw PreconditionViolated("sqrt requires a nonzero perfect-square constant term");
        const std::size_t n = a_.size();
        std::vector<Rat> s(n, Rat(0));
        s[0] = *s0;
        const Rat twice = Rat(2) * s[0];
        for (std::size_t m = 1; m < n; ++m) {
            Rat acc = a_[m];
            for (std::size_t i = 1; i < m; ++i) acc -= s[i] * s[m - i];
            s[m] = acc / twice;
        }
        return Series(std::move(s));
    }

    /** Integer power at fixed order (repeated squaring). */
    Series pow_int(unsigned long e) const {
        Series result = one(order()), base = *this;
        while (e > 0) {
            if (e & 1UL) result = result * base;
            base = base * base;
            e >>= 1UL;
        }
        return result;
    }

    /** Exact partial sum of all stored terms at a rational point. */
    Rat eval_partial(const Rat& x) const {
        Rat acc(0);
        for (std::size_t i = a_.size(); i-- > 0;) acc = acc * x + a_[i];
        return acc;
    }

    RatPoly to_poly() const { return RatPoly(a_); }

private:
    std::vector<Rat> a_;
};

/** Composition f(g) with g(0) = 0; result order = min of the operand orders. */
inline Series compose(const Series& f, const Series& g) {
    if (g.order() == 0 || g.coeff(0) != 0)
        throw PreconditionViolated("composition requires inner series with g(0) = 0");
    const std::size_t n = std::min(f.order(), g.order());
    const Series gt = g.truncate_to(n);
    Series acc = Series::zero(n);
    for (std::size_t i = n; i-- > 0;) {
        acc = acc * gt;
        acc = acc + Series::from_poly(RatPoly{f.coeff(i)}, n);
    }
    return acc;
}

/**
 * Compositional inverse r with s(r(z)) = z mod z^T, by Newton iteration with
 * order doubling.  Requires s(0) = 0 and [z^1] s = 1 exactly.
 */
inline Series reversion(const Series& s) {
    if (s.order() < 2 || s.coeff(0) != 0 || s.coeff(1) != 1) throw NotReversible();
    const std::size_t T = s.order();
    const Series sd = s.derivative();
    Series r(std::vector<Rat>{Rat(0), Rat(1)});
    std::size_t k = 2;
    while (k < T) {
        const std::size_t m = std::min(2 * k, T);
        const Series rp = r.extend_with_zeros(m);
        // Error term s(r) - z vanishes to order k, so the Newton correction
        // (s(r) - z)/s'(r) only needs the denominator to order m - k.
        Series err = compose(s.truncate_to(m), rp) - Series::identity(m);
        Series num = err.shift_down(k);
        Series den = compose(sd.truncate_to(m - k), rp.truncate_to(m - k));
        Series corr = (num / den).shift_up(k).extend_with_zeros(m);
        r = rp - corr;
        k = m;
    }
    return r;
}

/** Decimal evaluation result: the rounded value plus a tail-size indicator. */
struct DecimalEval {
    FixedDecimal value;
    /** floor(log10 |a_{T-1} x^{T-1}|), or empty when that last term is exactly zero. */
    std::optional<long> tail_exponent;
};

/**
 * Evaluate the exact partial sum of all T stored terms at rational x and round
 * to p fractional digits.  Requires |x| < 1 and p >= 10.  Throws TailTooLarge
 * when the final stored term alone reaches the target accuracy, i.e. when
 * |a_{T-1} x^{T-1}| >= 10^{-p}.
 */
inline DecimalEval series_eval_decimal(const Series& s, const Rat& x, unsigned long p) {
    if (!(abs(x) < 1)) throw PreconditionViolated("decimal evaluation requires |x| < 1");
    if (p < 10) throw PreconditionViolated("decimal evaluation requires p >= 10");
    if (s.order() == 0) throw PreconditionViolated("decimal evaluation requires a nonempty series");
    const std::size_t T = s.order();
    Rat x_top(1);
    for (std::size_t i = 1; i < T; ++i) x_top *= x;
    const Rat last = abs(s.coeff(T - 1) * x_top);
    if (last * Rat(pow10(p)) >= 1) throw TailTooLarge();
    DecimalEval out{FixedDecimal::from_rational(s.eval_partial(x), p), std::nullopt};
    if (last != 0) out.tail_exponent = floor_log10_abs(last);
    return out;
}

/** True when the series has at least terms.size() coefficients and they equal the integers. */
inline bool matches_integer_prefix(const Series& s, const std::vector<Int>& terms) {
    if (s.order() < terms.size()) return false;
    for (std::size_t i = 0; i < terms.size(); ++i)
        if (s.coeff(i) != Rat(terms[i])) return false;
    return true;
}

} // namespace gfkit
