#pragma once

/**
 * Fixed-point decimal values: an integer mantissa scaled by 10^-precision,
 * where precision counts digits after the decimal point.  All rounding is
 * round-half-even; precision is always an explicit per-call parameter.
 */

#include <cctype>
#include <string>

#include "errors.hpp"
#include "numeric.hpp"

namespace gfkit {

struct FixedDecimal {
    Int mantissa;             ///< value = mantissa * 10^-precision
    unsigned long precision;  ///< decimal digits after the point

    FixedDecimal() : mantissa(0), precision(0) {}
    FixedDecimal(Int m, unsigned long p) : mantissa(std::move(m)), precision(p) {}

    /** Round an exact rational to p digits after the decimal point. */
    static FixedDecimal from_rational(const Rat& q, unsigned long p) {
        Rat scaled = q * Rat(pow10(p));
        return FixedDecimal(round_half_even(scaled), p);
    }

    Rat to_rational() const { return make_rat(mantissa, pow10(precision)); }

    /** round(10^precision * x^i), computed exactly from the mantissa. */
    Int scaled_power(unsigned long i) const {
        if (i == 0) return pow10(precision);
        if (i == 1) return mantissa;
        // x^i * 10^p = mantissa^i / 10^{p*(i-1)}
        return round_half_even(make_rat(ipow(mantissa, i), pow10(precision * (i - 1))));
    }

    /** Decimal string with exactly `precision` digits after the point. */
    std::string to_string() const {
        Int m = mantissa;
        bool neg = m < 0;
        if (neg) m = -m;
        std::string digits = m.get_str();
        if (digits.size() <= precision) digits.insert(0, precision + 1 - digits.size(), '0');
        std::string out = neg ? "-" : "";
        out += digits.substr(0, digits.size() - precision);
        if (precision > 0) {
            out += '.';
            out += digits.substr(digits.size() - precision);
        }
        return out;
    }

    /** Parse "[-]ddd[.ddd]"; precision is the number of digits after the point. */
    static FixedDecimal parse(const std::string& text) {
        std::size_t i = 0;
        bool neg = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            neg = text[i] == '-';
            ++i;
        }
        std::string digits;
        unsigned long frac = 0;
        bool seen_point = false, seen_digit = false;
        for (; i < text.size(); ++i) {
            char ch = text[i];
            if (ch == '.') {
                if (seen_point) throw ParseError("second decimal point", i);
                seen_point = true;
            } else if (std::isdigit(static_cast<unsigned char>(ch))) {
                digits += ch;
                seen_digit = true;
                if (seen_point) ++frac;
            } else {
                throw ParseError(std::string("unexpected character '") + ch + "' in decimal", i);
            }
        }
        if (!seen_digit) throw ParseError("empty decimal literal", 0);
        Int m(digits, 10);
        if (neg) m = -m;
        return FixedDecimal(m, frac);
    }
};

} // namespace gfkit
