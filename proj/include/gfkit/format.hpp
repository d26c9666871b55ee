#pragma once

/**
 * Canonical textual rendering of every result form.  The grammar is fixed so
 * that output can be compared bit-for-bit and re-parsed (see parse.hpp):
 *
 *   series polynomials   ascending, spaced signs:   1 - 2*z + 2*z^2
 *   recurrence polys     descending, compact:       4*n-6
 *   rational GF          (num)/(den), or the bare numerator when den = 1
 *   expression wrappers  egf(E), integral(E), exp_integral(E), rev(E), neg(E)
 *   radical              radical((P +/- (R)^(1/2))/(D))
 *   recurrence           n*a(n) = (4*n-6)*a(n-1)
 *   hypergeometric       hypergeom([1/2; 1], [2]; 4*z; 1)
 *   algebraic equation   algebraic(27*x^2*z^2 - 18*x*z + x + 16*z - 1 = 0)
 *   euler product        euler_product(c: 1,1,1; pattern: periodic([], [1]))
 */

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "gfkit/algdep.hpp"
#include "gfkit/bivariate.hpp"
#include "gfkit/euler.hpp"
#include "gfkit/expression.hpp"
#include "gfkit/holonomic.hpp"
#include "gfkit/hypergeom.hpp"
#include "gfkit/numeric.hpp"
#include "gfkit/polynomial.hpp"

namespace gfkit {

namespace detail {

/** "c", "c*v", or "c*v^i" with the coefficient's magnitude; 1 is omitted
 *  before the variable. */
template <typename T>
std::string format_monomial(const T& mag, const std::string& var, std::size_t i) {
    if (i == 0) return to_string(mag);
    std::string s;
    if (mag != 1) s = to_string(mag) + "*";
    s += var;
    if (i > 1) s += "^" + std::to_string(i);
    return s;
}

template <typename T>
bool is_negative(const T& v) {
    return v < 0;
}

} // namespace detail

/** Ascending powers with spaced signs: "1 - 2*z + 2*z^2"; zero prints "0". */
template <typename T>
std::string format_poly_ascending(const Polynomial<T>& p, const std::string& var = "z") {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
        const T& c = p.coeffs()[i];
        if (c == 0) continue;
        const bool neg = detail::is_negative(c);
        const T mag = neg ? T(-c) : c;
        if (first) {
            out += (neg ? "-" : "") + detail::format_monomial(mag, var, i);
            first = false;
        } else {
            out += (neg ? " - " : " + ") + detail::format_monomial(mag, var, i);
        }
    }
    return out;
}

/** Descending powers, compact signs: "4*n-6"; zero prints "0". */
template <typename T>
std::string format_poly_descending(const Polynomial<T>& p, const std::string& var = "n") {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (std::size_t ii = p.coeffs().size(); ii-- > 0;) {
        const T& c = p.coeffs()[ii];
        if (c == 0) continue;
        const bool neg = detail::is_negative(c);
        const T mag = neg ? T(-c) : c;
        if (first) {
            out += (neg ? "-" : "") + detail::format_monomial(mag, var, ii);
            first = false;
        } else {
            out += (neg ? "-" : "+") + detail::format_monomial(mag, var, ii);
        }
    }
    return out;
}

/** "(num)/(den)", or the bare numerator when the denominator is constant 1. */
inline std::string format_rational_gf(const RationalGF& g) {
    if (g.den() == IntPoly({Int(1)})) return format_poly_ascending(g.num());
    return "(" + format_poly_ascending(g.num()) + ")/(" + format_poly_ascending(g.den()) + ")";
}

/** Render any closed-form expression tree in the canonical grammar. */
inline std::string format_expression(const GFExpression& e) {
    struct Visitor {
        std::string operator()(const RationalGF& g) const { return format_rational_gf(g); }
        std::string operator()(const Integral& n) const {
            return "integral(" + format_expression(*n.child) + ")";
        }
        std::string operator()(const ExpIntegral& n) const {
            return "exp_integral(" + format_expression(*n.child) + ")";
        }
        std::string operator()(const Reversion& n) const {
            return "rev(" + format_expression(*n.child) + ")";
        }
        std::string operator()(const EgfView& n) const {
            return "egf(" + format_expression(*n.child) + ")";
        }
        std::string operator()(const Negate& n) const {
            return "neg(" + format_expression(*n.child) + ")";
        }
        std::string operator()(const Radical& r) const {
            const std::string root = "(" + format_poly_ascending(r.root) + ")^(1/2)";
            std::string core;
            if (r.pre.is_zero())
                core = (r.sign > 0 ? "" : "-") + root;
            else
                core = format_poly_ascending(r.pre) + (r.sign > 0 ? " + " : " - ") + root;
            return "radical((" + core + ")/(" + format_poly_ascending(r.denom) + "))";
        }
    };
    return std::visit(Visitor{}, e.node);
}

namespace detail {

/** A polynomial that is a single monomial with positive coefficient may be
 *  printed without parentheses in recurrence position. */
inline bool single_positive_monomial(const IntPoly& p) {
    std::size_t nonzero = 0;
    bool pos = false;
    for (const Int& c : p.coeffs()) {
        if (c == 0) continue;
        ++nonzero;
        pos = c > 0;
    }
    return nonzero == 1 && pos;
}

inline std::string recurrence_factor(const IntPoly& p) {
    const std::string s = format_poly_descending(p, "n");
    if (single_positive_monomial(p)) return s;
    return "(" + s + ")";
}

} // namespace detail

/** "n*a(n) = (4*n-6)*a(n-1)": lag-0 polynomial on the left, the rest summed
 *  on the right; zero right-hand terms are skipped. */
inline std::string format_recurrence(const PRecurrence& rec) {
    std::string out = detail::recurrence_factor(rec.p.at(0)) + "*a(n) = ";
    bool first = true;
    for (std::size_t i = 1; i < rec.p.size(); ++i) {
        if (rec.p[i].is_zero()) continue;
        if (!first) out += " + ";
        out += detail::recurrence_factor(rec.p[i]) + "*a(n-" + std::to_string(i) + ")";
        first = false;
    }
    if (first) out += "0";
    return out;
}

namespace detail {

inline std::string format_rat_list(const std::vector<Rat>& v, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out += sep;
        out += to_string(v[i]);
    }
    return out;
}

/** "z", "-z", "4*z", or "27/4*z". */
inline std::string format_z_multiple(const Rat& w) {
    if (w == 1) return "z";
    if (w == -1) return "-z";
    return to_string(w) + "*z";
}

} // namespace detail

/** "hypergeom([1/2; 1], [2]; 4*z; 1)". */
inline std::string format_hypergeometric(const HypergeometricForm& f) {
    return "hypergeom([" + detail::format_rat_list(f.upper, "; ") + "], [" +
           detail::format_rat_list(f.lower, "; ") + "]; " + detail::format_z_multiple(f.w) +
           "; " + to_string(f.t0) + ")";
}

/** "algebraic(27*x^2*z^2 - 18*x*z + x + 16*z - 1 = 0)": terms ordered by
 *  descending x power, then descending z power. */
inline std::string format_algebraic(const AlgebraicEquation& eq) {
    std::string out = "algebraic(";
    bool first = true;
    for (std::size_t j = eq.cz.size(); j-- > 0;) {
        const IntPoly& p = eq.cz[j];
        for (std::size_t k = p.coeffs().size(); k-- > 0;) {
            const Int& c = p.coeff(k);
            if (c == 0) continue;
            const bool neg = c < 0;
            const Int mag = neg ? Int(-c) : c;
            std::string term;
            if (j == 0 && k == 0) {
                term = to_string(mag);
            } else {
                if (mag != 1) term = to_string(mag);
                if (j >= 1) {
                    if (!term.empty()) term += "*";
                    term += j == 1 ? "x" : "x^" + std::to_string(j);
                }
                if (k >= 1) {
                    if (!term.empty()) term += "*";
                    term += k == 1 ? "z" : "z^" + std::to_string(k);
                }
            }
            if (first) {
                out += (neg ? "-" : "") + term;
                first = false;
            } else {
                out += (neg ? " - " : " + ") + term;
            }
        }
    }
    if (first) out += "0";
    return out + " = 0)";
}

/** "euler_product(c: 1,1,1; pattern: periodic([], [1]))"; the pattern clause
 *  is "none", "periodic([prefix], [cycle])", or "gf(rational)". */
inline std::string format_euler_product(const EulerProduct& ep) {
    std::string pat = "none";
    if (ep.pattern) {
        if (const auto* per = std::get_if<PeriodicPattern>(&*ep.pattern))
            pat = "periodic([" + detail::format_rat_list(per->prefix, ",") + "], [" +
                  detail::format_rat_list(per->cycle, ",") + "])";
        else
            pat = "gf(" + format_rational_gf(std::get<RationalGF>(*ep.pattern)) + ")";
    }
    return "euler_product(c: " + detail::format_rat_list(ep.exponents, ",") + "; pattern: " + pat +
           ")";
}

namespace detail {

/** Two-variable monomial "c*t^j*z^i" with the coefficient's magnitude; a
 *  unit coefficient is omitted unless the monomial is constant. */
inline std::string format_monomial_tz(const Int& mag, std::size_t j, std::size_t i) {
    std::string s;
    if (mag != 1 || (j == 0 && i == 0)) s = to_string(mag);
    if (j > 0) {
        if (!s.empty()) s += "*";
        s += (j == 1) ? "t" : "t^" + std::to_string(j);
    }
    if (i > 0) {
        if (!s.empty()) s += "*";
        s += (i == 1) ? "z" : "z^" + std::to_string(i);
    }
    return s;
}

} // namespace detail

/** Ascending rendering of sum_i c[i](t) * z^i with spaced signs, t-powers
 *  inside each z-power: "1 - z - t*z"; zero prints "0". */
inline std::string format_bivariate_poly(const std::vector<IntPoly>& c) {
    std::string out;
    bool first = true;
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (long j = 0; j <= c[i].degree(); ++j) {
            const Int& a = c[i].coeff(j);
            if (a == 0) continue;
            const bool neg = a < 0;
            const Int mag = neg ? Int(-a) : a;
            const std::string mono =
                detail::format_monomial_tz(mag, static_cast<std::size_t>(j), i);
            if (first) {
                out += (neg ? "-" : "") + mono;
                first = false;
            } else {
                out += (neg ? " - " : " + ") + mono;
            }
        }
    }
    if (first) return "0";
    return out;
}

/** "(num)/(den)" over two-variable polynomials; bare numerator when den = 1. */
inline std::string format_bivariate_gf(const BivariateRationalGF& g) {
    const bool unit_den =
        g.den.size() == 1 && g.den[0].degree() == 0 && g.den[0].coeff(0) == 1;
    const std::string num = format_bivariate_poly(g.num);
    if (unit_den) return num;
    return "(" + num + ")/(" + format_bivariate_poly(g.den) + ")";
}

} // namespace gfkit
