#pragma once

/**
 * Parsers for the canonical textual grammar produced by format.hpp, plus the
 * CLI's sequence-input parser.  Each parser consumes the whole string and
 * throws ParseError (with a character position) on malformed input.
 *
 * Parsing is whitespace-insensitive, so both the spaced ascending form
 * ("1 - 2*z + 2*z^2") and the compact descending form ("4*n-6") are read by
 * the same polynomial parser; re-formatting restores the canonical layout.
 * A parsed recurrence carries no starting rank (the textual form does not
 * serialize one); its n0 is 0.
 */

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gfkit/errors.hpp"
#include "gfkit/format.hpp"

namespace gfkit {

namespace detail {

struct Token {
    enum Kind { Number, Ident, Symbol, End } kind = End;
    std::string text;
    std::size_t pos = 0;
};

inline std::vector<Token> lex(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    const std::string symbols = "()[],;:=^*/+-";
    while (i < s.size()) {
        const char c = s[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            ++i;
            continue;
        }
        if (c >= '0' && c <= '9') {
            std::size_t j = i;
            while (j < s.size() && s[j] >= '0' && s[j] <= '9') ++j;
            out.push_back({Token::Number, s.substr(i, j - i), i});
            i = j;
            continue;
        }
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') {
            std::size_t j = i;
            while (j < s.size() && ((s[j] >= 'a' && s[j] <= 'z') || (s[j] >= 'A' && s[j] <= 'Z') ||
                                    (s[j] >= '0' && s[j] <= '9') || s[j] == '_'))
                ++j;
            out.push_back({Token::Ident, s.substr(i, j - i), i});
            i = j;
            continue;
        }
        if (symbols.find(c) != std::string::npos) {
            out.push_back({Token::Symbol, std::string(1, c), i});
            ++i;
            continue;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
    out.push_back({Token::End, "", s.size()});
    return out;
}

class Cursor {
public:
    explicit Cursor(std::vector<Token> toks) : t_(std::move(toks)) {}

    const Token& peek(std::size_t ahead = 0) const {
        const std::size_t j = i_ + ahead;
        return j < t_.size() ? t_[j] : t_.back();
    }
    const Token& next() {
        const Token& tok = peek();
        if (i_ + 1 < t_.size()) ++i_;
        return tok;
    }
    bool at_symbol(const char* s) const {
        return peek().kind == Token::Symbol && peek().text == s;
    }
    bool at_ident(const char* s) const { return peek().kind == Token::Ident && peek().text == s; }
    bool at_number() const { return peek().kind == Token::Number; }
    bool at_end() const { return peek().kind == Token::End; }

    void expect_symbol(const char* s) {
        if (!at_symbol(s))
            throw ParseError(std::string("expected '") + s + "'", peek().pos);
        next();
    }
    void expect_ident(const char* s) {
        if (!at_ident(s))
            throw ParseError(std::string("expected '") + s + "'", peek().pos);
        next();
    }
    void expect_end() {
        if (!at_end()) throw ParseError("trailing input", peek().pos);
    }

private:
    std::vector<Token> t_;
    std::size_t i_ = 0;
};

inline Int parse_integer_token(Cursor& cur) {
    if (!cur.at_number()) throw ParseError("expected a number", cur.peek().pos);
    return Int(cur.next().text);
}

/** ['-'] INT ['/' INT] */
inline Rat parse_rat(Cursor& cur) {
    bool neg = false;
    if (cur.at_symbol("-")) {
        cur.next();
        neg = true;
    }
    Int num = parse_integer_token(cur);
    Int den = 1;
    if (cur.at_symbol("/")) {
        cur.next();
        den = parse_integer_token(cur);
    }
    Rat q = make_rat(num, den);
    return neg ? Rat(-q) : q;
}

inline unsigned long parse_exponent(Cursor& cur) {
    const Int e = parse_integer_token(cur);
    return e.get_ui();
}

/**
 * Sum of monomial terms in one variable.  Stops at any token that cannot
 * begin or join a term; with stop_before_paren, also stops at a '+'/'-' sign
 * that is immediately followed by '(' (leaving the sign unconsumed) so that
 * radical bodies can split "P - (R)^(1/2)".
 */
inline RatPoly parse_polynomial(Cursor& cur, const std::string& var,
                                bool stop_before_paren = false) {
    std::vector<Rat> coeffs;
    const auto add = [&](std::size_t power, const Rat& c) {
        if (coeffs.size() <= power) coeffs.resize(power + 1, Rat(0));
        coeffs[power] += c;
    };
    bool any = false;
    int sign = 1;
    if (cur.at_symbol("-")) {
        cur.next();
        sign = -1;
    } else if (cur.at_symbol("+")) {
        cur.next();
    }
    for (;;) {
        // one term
        Rat coeff(1);
        bool have_coeff = false;
        std::size_t power = 0;
        bool have_var = false;
        if (cur.at_number()) {
            Int num = parse_integer_token(cur);
            Int den = 1;
            if (cur.at_symbol("/") && cur.peek(1).kind == Token::Number) {
                cur.next();
                den = parse_integer_token(cur);
            }
            coeff = make_rat(num, den);
            have_coeff = true;
            if (cur.at_symbol("*") && cur.peek(1).kind == Token::Ident &&
                cur.peek(1).text == var)
                cur.next();
        }
        if (cur.at_ident(var.c_str())) {
            cur.next();
            have_var = true;
            power = 1;
            if (cur.at_symbol("^")) {
                cur.next();
                power = parse_exponent(cur);
            }
        }
        if (!have_coeff && !have_var)
            throw ParseError("expected a term", cur.peek().pos);
        add(power, sign > 0 ? coeff : Rat(-coeff));
        any = true;

        if (cur.at_symbol("+") || cur.at_symbol("-")) {
            if (stop_before_paren && cur.peek(1).kind == Token::Symbol &&
                cur.peek(1).text == "(")
                break;
            sign = cur.next().text == "-" ? -1 : 1;
            continue;
        }
        break;
    }
    if (!any) throw ParseError("empty polynomial", cur.peek().pos);
    return RatPoly(std::move(coeffs));
}

inline IntPoly to_integer_exact(const RatPoly& p, std::size_t pos) {
    std::vector<Int> c;
    c.reserve(p.coeffs().size());
    for (const Rat& q : p.coeffs()) {
        if (!is_integer(q)) throw ParseError("expected integer coefficients", pos);
        c.push_back(q.get_num());
    }
    return IntPoly(std::move(c));
}

inline GFExpression parse_expression_cursor(Cursor& cur);

inline GFExpression parse_wrapped(Cursor& cur, const char* name) {
    cur.expect_ident(name);
    cur.expect_symbol("(");
    GFExpression child = parse_expression_cursor(cur);
    cur.expect_symbol(")");
    return child;
}

inline GFExpression parse_radical_body(Cursor& cur) {
    cur.expect_ident("radical");
    cur.expect_symbol("(");
    cur.expect_symbol("(");
    Radical r;
    RatPoly pre;
    if (cur.at_symbol("-") && cur.peek(1).kind == Token::Symbol && cur.peek(1).text == "(") {
        cur.next();
        r.sign = -1;
    } else if (!cur.at_symbol("(")) {
        const std::size_t pos = cur.peek().pos;
        pre = parse_polynomial(cur, "z", /*stop_before_paren=*/true);
        r.pre = to_integer_exact(pre, pos);
        if (cur.at_symbol("+"))
            r.sign = 1;
        else if (cur.at_symbol("-"))
            r.sign = -1;
        else
            throw ParseError("expected '+' or '-' before the root", cur.peek().pos);
        cur.next();
    }
    const std::size_t rpos = cur.peek().pos;
    cur.expect_symbol("(");
    r.root = to_integer_exact(parse_polynomial(cur, "z"), rpos);
    cur.expect_symbol(")");
    cur.expect_symbol("^");
    cur.expect_symbol("(");
    if (parse_integer_token(cur) != 1) throw ParseError("expected exponent 1/2", cur.peek().pos);
    cur.expect_symbol("/");
    if (parse_integer_token(cur) != 2) throw ParseError("expected exponent 1/2", cur.peek().pos);
    cur.expect_symbol(")");
    cur.expect_symbol(")");
    cur.expect_symbol("/");
    const std::size_t dpos = cur.peek().pos;
    cur.expect_symbol("(");
    r.denom = to_integer_exact(parse_polynomial(cur, "z"), dpos);
    cur.expect_symbol(")");
    cur.expect_symbol(")");
    return GFExpression{r};
}

inline GFExpression parse_expression_cursor(Cursor& cur) {
    if (cur.at_ident("egf")) return expr_egf_view(parse_wrapped(cur, "egf"));
    if (cur.at_ident("integral")) return expr_integral(parse_wrapped(cur, "integral"));
    if (cur.at_ident("exp_integral")) return expr_exp_integral(parse_wrapped(cur, "exp_integral"));
    if (cur.at_ident("rev")) return expr_reversion(parse_wrapped(cur, "rev"));
    if (cur.at_ident("neg")) return expr_negate(parse_wrapped(cur, "neg"));
    if (cur.at_ident("radical")) return parse_radical_body(cur);
    if (cur.at_symbol("(")) {
        cur.next();
        RatPoly num = parse_polynomial(cur, "z");
        cur.expect_symbol(")");
        cur.expect_symbol("/");
        cur.expect_symbol("(");
        RatPoly den = parse_polynomial(cur, "z");
        cur.expect_symbol(")");
        return expr_rational(make_rational_gf(num, den));
    }
    RatPoly num = parse_polynomial(cur, "z");
    return expr_rational(make_rational_gf(num, RatPoly({Rat(1)})));
}

/** Recurrence factor: "(poly)" or a single monomial like "n", "2*n^3", "4". */
inline IntPoly parse_recurrence_factor(Cursor& cur) {
    const std::size_t pos = cur.peek().pos;
    if (cur.at_symbol("(")) {
        cur.next();
        RatPoly p = parse_polynomial(cur, "n");
        cur.expect_symbol(")");
        return to_integer_exact(p, pos);
    }
    Rat coeff(1);
    bool have_coeff = false;
    if (cur.at_number()) {
        coeff = Rat(parse_integer_token(cur));
        have_coeff = true;
        if (cur.at_symbol("*") && cur.peek(1).kind == Token::Ident && cur.peek(1).text == "n")
            cur.next();
    }
    std::size_t power = 0;
    if (cur.at_ident("n")) {
        cur.next();
        power = 1;
        if (cur.at_symbol("^")) {
            cur.next();
            power = parse_exponent(cur);
        }
    } else if (!have_coeff) {
        throw ParseError("expected a recurrence coefficient", pos);
    }
    RatPoly p = RatPoly::monomial(coeff, power);
    return to_integer_exact(p, pos);
}

} // namespace detail

/** Parse a closed-form expression in the canonical grammar. */
inline GFExpression parse_expression(const std::string& text) {
    detail::Cursor cur(detail::lex(text));
    GFExpression e = detail::parse_expression_cursor(cur);
    cur.expect_end();
    return e;
}

/**
 * Parse "P0*a(n) = P1*a(n-1) + ...".  The textual form carries no starting
 * rank, so the result has n0 = 0; callers comparing recurrences through this
 * parser compare the polynomial data only.
 */
inline PRecurrence parse_recurrence(const std::string& text) {
    detail::Cursor cur(detail::lex(text));
    std::vector<IntPoly> polys;
    polys.push_back(detail::parse_recurrence_factor(cur));
    cur.expect_symbol("*");
    cur.expect_ident("a");
    cur.expect_symbol("(");
    cur.expect_ident("n");
    cur.expect_symbol(")");
    cur.expect_symbol("=");
    if (cur.at_number() && cur.peek().text == "0" && cur.peek(1).kind == detail::Token::End) {
        cur.next();
    } else {
        for (;;) {
            const IntPoly p = detail::parse_recurrence_factor(cur);
            cur.expect_symbol("*");
            cur.expect_ident("a");
            cur.expect_symbol("(");
            cur.expect_ident("n");
            cur.expect_symbol("-");
            const Int lag = detail::parse_integer_token(cur);
            cur.expect_symbol(")");
            const std::size_t i = lag.get_ui();
            if (i == 0) throw ParseError("lag must be positive", cur.peek().pos);
            if (polys.size() <= i) polys.resize(i + 1);
            polys[i] = p;
            if (cur.at_symbol("+")) {
                cur.next();
                continue;
            }
            break;
        }
    }
    cur.expect_end();

    PRecurrence rec;
    rec.k = static_cast<long>(polys.size()) - 1;
    long d = 0;
    for (const IntPoly& p : polys) d = std::max(d, p.degree());
    rec.d = d;
    rec.p = std::move(polys);
    rec.n0 = 0;
    return rec;
}

/** Parse "hypergeom([...], [...]; w*z; t0)". */
inline HypergeometricForm parse_hypergeometric(const std::string& text) {
    detail::Cursor cur(detail::lex(text));
    HypergeometricForm f;
    cur.expect_ident("hypergeom");
    cur.expect_symbol("(");
    cur.expect_symbol("[");
    while (!cur.at_symbol("]")) {
        f.upper.push_back(detail::parse_rat(cur));
        if (cur.at_symbol(";")) cur.next();
    }
    cur.expect_symbol("]");
    cur.expect_symbol(",");
    cur.expect_symbol("[");
    while (!cur.at_symbol("]")) {
        f.lower.push_back(detail::parse_rat(cur));
        if (cur.at_symbol(";")) cur.next();
    }
    cur.expect_symbol("]");
    cur.expect_symbol(";");
    if (cur.at_ident("z")) {
        cur.next();
        f.w = 1;
    } else if (cur.at_symbol("-") && cur.peek(1).kind == detail::Token::Ident &&
               cur.peek(1).text == "z") {
        cur.next();
        cur.next();
        f.w = -1;
    } else {
        f.w = detail::parse_rat(cur);
        cur.expect_symbol("*");
        cur.expect_ident("z");
    }
    cur.expect_symbol(";");
    f.t0 = detail::parse_rat(cur);
    cur.expect_symbol(")");
    cur.expect_end();
    return f;
}

/** Parse "algebraic(P(x, z) = 0)". */
inline AlgebraicEquation parse_algebraic(const std::string& text) {
    detail::Cursor cur(detail::lex(text));
    cur.expect_ident("algebraic");
    cur.expect_symbol("(");

    std::vector<std::vector<Rat>> cz;  // cz[j][k]
    const auto add = [&](std::size_t j, std::size_t k, const Rat& c) {
        if (cz.size() <= j) cz.resize(j + 1);
        if (cz[j].size() <= k) cz[j].resize(k + 1, Rat(0));
        cz[j][k] += c;
    };

    int sign = 1;
    if (cur.at_symbol("-")) {
        cur.next();
        sign = -1;
    }
    for (;;) {
        Rat coeff(1);
        bool have_any = false;
        std::size_t j = 0, k = 0;
        if (cur.at_number()) {
            Int num = detail::parse_integer_token(cur);
            Int den = 1;
            if (cur.at_symbol("/") && cur.peek(1).kind == detail::Token::Number) {
                cur.next();
                den = detail::parse_integer_token(cur);
            }
            coeff = make_rat(num, den);
            have_any = true;
        }
        for (;;) {
            if (cur.at_symbol("*") && cur.peek(1).kind == detail::Token::Ident) cur.next();
            if (cur.at_ident("x")) {
                cur.next();
                j = 1;
                if (cur.at_symbol("^")) {
                    cur.next();
                    j = detail::parse_exponent(cur);
                }
                have_any = true;
                continue;
            }
            if (cur.at_ident("z")) {
                cur.next();
                k = 1;
                if (cur.at_symbol("^")) {
                    cur.next();
                    k = detail::parse_exponent(cur);
                }
                have_any = true;
                continue;
            }
            break;
        }
        if (!have_any) throw ParseError("expected a term", cur.peek().pos);
        add(j, k, sign > 0 ? coeff : Rat(-coeff));

        if (cur.at_symbol("+") || cur.at_symbol("-")) {
            sign = cur.next().text == "-" ? -1 : 1;
            continue;
        }
        break;
    }
    cur.expect_symbol("=");
    if (detail::parse_integer_token(cur) != 0)
        throw ParseError("expected '= 0'", cur.peek().pos);
    cur.expect_symbol(")");
    cur.expect_end();

    AlgebraicEquation eq;
    for (const auto& row : cz) {
        RatPoly p{std::vector<Rat>(row)};
        eq.cz.push_back(detail::to_integer_exact(p, 0));
    }
    while (!eq.cz.empty() && eq.cz.back().is_zero()) eq.cz.pop_back();
    return eq;
}

/** Parse "euler_product(c: ...; pattern: ...)". */
inline EulerProduct parse_euler_product(const std::string& text) {
    detail::Cursor cur(detail::lex(text));
    EulerProduct ep;
    cur.expect_ident("euler_product");
    cur.expect_symbol("(");
    cur.expect_ident("c");
    cur.expect_symbol(":");
    while (!cur.at_symbol(";")) {
        ep.exponents.push_back(detail::parse_rat(cur));
        if (cur.at_symbol(",")) cur.next();
    }
    cur.expect_symbol(";");
    cur.expect_ident("pattern");
    cur.expect_symbol(":");
    if (cur.at_ident("none")) {
        cur.next();
    } else if (cur.at_ident("periodic")) {
        cur.next();
        PeriodicPattern pat;
        cur.expect_symbol("(");
        cur.expect_symbol("[");
        while (!cur.at_symbol("]")) {
            pat.prefix.push_back(detail::parse_rat(cur));
            if (cur.at_symbol(",")) cur.next();
        }
        cur.expect_symbol("]");
        cur.expect_symbol(",");
        cur.expect_symbol("[");
        while (!cur.at_symbol("]")) {
            pat.cycle.push_back(detail::parse_rat(cur));
            if (cur.at_symbol(",")) cur.next();
        }
        cur.expect_symbol("]");
        cur.expect_symbol(")");
        ep.pattern = std::move(pat);
    } else if (cur.at_ident("gf")) {
        cur.next();
        cur.expect_symbol("(");
        GFExpression e = detail::parse_expression_cursor(cur);
        cur.expect_symbol(")");
        const auto* g = std::get_if<RationalGF>(&e.node);
        if (g == nullptr) throw ParseError("pattern gf must be rational", cur.peek().pos);
        ep.pattern = *g;
    } else {
        throw ParseError("expected pattern clause", cur.peek().pos);
    }
    cur.expect_symbol(")");
    cur.expect_end();
    ep.integral = true;
    for (const Rat& c : ep.exponents)
        if (!is_integer(c)) ep.integral = false;
    return ep;
}

/**
 * Parse CLI sequence input: comma- or whitespace-separated integers with an
 * optional "offset=N" prefix.
 *
 * @throws ParseError with the offending character position.
 */
inline std::pair<std::vector<Int>, long> parse_sequence_input(const std::string& text) {
    std::vector<Int> terms;
    long offset = 0;
    std::size_t i = 0;
    const auto skip_seps = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == ',' ||
                                   text[i] == '\r' || text[i] == '\n'))
            ++i;
    };
    skip_seps();
    if (text.compare(i, 7, "offset=") == 0) {
        i += 7;
        const std::size_t start = i;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
        if (i == start) throw ParseError("expected a number after offset=", i);
        offset = std::stol(text.substr(start, i - start));
    }
    for (;;) {
        skip_seps();
        if (i >= text.size()) break;
        const std::size_t start = i;
        if (text[i] == '-' || text[i] == '+') ++i;
        std::size_t digits = 0;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
            ++i;
            ++digits;
        }
        if (digits == 0) throw ParseError("expected an integer", start);
        terms.emplace_back(text.substr(start, i - start));
        if (i < text.size() && text[i] != ' ' && text[i] != '\t' && text[i] != ',' &&
            text[i] != '\r' && text[i] != '\n')
            throw ParseError("expected an integer", start);
    }
    return {std::move(terms), offset};
}

/**
 * Normalize a canonical expression by parsing and re-formatting it according
 * to its method tag.  Lookup results (and unknown tags) are returned with
 * surrounding whitespace trimmed.
 */
inline std::string normalize_result_expression(const std::string& method, const std::string& text) {
    std::size_t b = text.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = text.find_last_not_of(" \t\r\n");
    const std::string t = text.substr(b, e - b + 1);
    if (method == "rational" || method == "transform") return format_expression(parse_expression(t));
    if (method == "precurrence") return format_recurrence(parse_recurrence(t));
    if (method == "hypergeometric") return format_hypergeometric(parse_hypergeometric(t));
    if (method == "algebraic") {
        if (t.rfind("algebraic(", 0) == 0) return format_algebraic(parse_algebraic(t));
        return format_expression(parse_expression(t));
    }
    if (method == "euler") return format_euler_product(parse_euler_product(t));
    return t;
}

} // namespace gfkit
