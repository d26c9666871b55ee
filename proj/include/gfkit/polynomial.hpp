#pragma once

/**
 * Dense univariate polynomials over an exact scalar (Int or Rat), stored with
 * ascending coefficients and no trailing zeros.  Field-only operations
 * (division, gcd) are provided for rational coefficients; conversions between
 * rational and primitive-integer forms live here as free functions.
 */

#include <algorithm>
#include <initializer_list>
#include <vector>

#include "errors.hpp"
#include "numeric.hpp"

namespace gfkit {

template <typename T>
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
    Polynomial(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }
    explicit Polynomial(const T& constant) : c_{constant} { trim(); }

    static Polynomial monomial(const T& coeff, std::size_t deg) {
        std::vector<T> v(deg + 1, T(0));
        v[deg] = coeff;
        return Polynomial(std::move(v));
    }

    /** Degree, or -1 for the zero polynomial. */
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    /** Coefficient of x^i (zero beyond the degree). */
    T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }
    const std::vector<T>& coeffs() const { return c_; }

    T leading() const { return c_.empty() ? T(0) : c_.back(); }

    void set_coeff(std::size_t i, const T& v) {
        if (i >= c_.size()) c_.resize(i + 1, T(0));
        c_[i] = v;
        trim();
    }

    bool operator==(const Polynomial& o) const { return c_ == o.c_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial operator-() const {
        Polynomial r(*this);
        for (auto& v : r.c_) v = -v;
        return r;
    }

    Polynomial& operator+=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return Polynomial();
        std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(r));
    }

    friend Polynomial operator*(const T& s, Polynomial p) {
        for (auto& v : p.c_) v = s * v;
        p.trim();
        return p;
    }

    /** Multiply by x^k. */
    Polynomial times_power(std::size_t k) const {
        if (is_zero()) return Polynomial();
        std::vector<T> r(k, T(0));
        r.insert(r.end(), c_.begin(), c_.end());
        return Polynomial(std::move(r));
    }

    /** Keep coefficients of x^0..x^{k-1}. */
    Polynomial truncate(std::size_t k) const {
        std::vector<T> r(c_.begin(), c_.begin() + std::min(k, c_.size()));
        return Polynomial(std::move(r));
    }

    Polynomial derivative() const {
        if (c_.size() <= 1) return Polynomial();
        std::vector<T> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = T(static_cast<long>(i)) * c_[i];
        return Polynomial(std::move(r));
    }

    /** Horner evaluation; U must be constructible from T (e.g. Rat from Int). */
    template <typename U>
    U eval(const U& x) const {
        U acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + U(c_[i]);
        return acc;
    }

private:
    std::vector<T> c_;

    void trim() {
        while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
    }
};

using IntPoly = Polynomial<Int>;
using RatPoly = Polynomial<Rat>;

inline RatPoly to_rational(const IntPoly& p) {
    std::vector<Rat> v(p.coeffs().begin(), p.coeffs().end());
    return RatPoly(std::move(v));
}

/** Quotient and remainder over a field. */
inline std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
    if (b.is_zero()) throw Error("polynomial division by zero");
    RatPoly rem = a, quot;
    const long db = b.degree();
    const Rat lead = b.leading();
    while (!rem.is_zero() && rem.degree() >= db) {
        const long shift = rem.degree() - db;
        const Rat factor = rem.leading() / lead;
        quot += RatPoly::monomial(factor, static_cast<std::size_t>(shift));
        rem -= RatPoly::monomial(factor, static_cast<std::size_t>(shift)) * b;
    }
    return {quot, rem};
}

/** Monic gcd over the rationals; gcd(0,0) = 0. */
inline RatPoly poly_gcd(RatPoly a, RatPoly b) {
    while (!b.is_zero()) {
        RatPoly r = divmod(a, b).second;
        a = b;
        b = r;
    }
    if (a.is_zero()) return a;
    return (Rat(1) / a.leading()) * a;
}

/**
 * Clear denominators and divide out the integer content: the unique positive
 * multiple of p with coprime integer coefficients (sign of p preserved).
 */
inline IntPoly to_integer_primitive(const RatPoly& p) {
    if (p.is_zero()) return IntPoly();
    Int l(1);
    for (const auto& q : p.coeffs()) l = int_lcm(l, q.get_den());
    std::vector<Int> v;
    v.reserve(p.coeffs().size());
    Int g(0);
    for (const auto& q : p.coeffs()) {
        Rat scaled = q * Rat(l);
        v.push_back(scaled.get_num());
        g = int_gcd(g, v.back());
    }
    for (auto& x : v) x /= g;  // g > 0 since p != 0
    return IntPoly(std::move(v));
}

/** P(x + shift): variable shift computed by exact expansion. */
template <typename T>
Polynomial<T> poly_shift(const Polynomial<T>& p, const T& shift) {
    Polynomial<T> result, power{T(1)};
    const Polynomial<T> base{shift, T(1)};  // (x + shift)
    for (std::size_t i = 0; i <= static_cast<std::size_t>(std::max(0L, p.degree())); ++i) {
        if (!(p.coeff(i) == T(0))) result += p.coeff(i) * power;
        power = power * base;
    }
    if (p.is_zero()) return Polynomial<T>();
    return result;
}

/** Coefficient reversal against a fixed degree bound: x^deg * p(1/x). */
template <typename T>
Polynomial<T> poly_reverse(const Polynomial<T>& p, std::size_t deg) {
    std::vector<T> v(deg + 1, T(0));
    for (std::size_t i = 0; i <= deg; ++i) v[deg - i] = p.coeff(i);
    return Polynomial<T>(std::move(v));
}

} // namespace gfkit
