#include "ladder/scalar.hpp"

#include <cmath>
#include <string>

#include "ladder/errors.hpp"

namespace ladder {
namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
    }
    return true;
}

std::string_view strip_sign(std::string_view s, bool& negative) {
    negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    return s;
}

bool parse_fraction(std::string_view text, Rational& out) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return false;
    bool neg = false;
    const auto num = strip_sign(text.substr(0, slash), neg);
    const auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return false;
    const mpz_class n{std::string(num), 10};
    const mpz_class d{std::string(den), 10};
    if (d == 0) throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
    out = Rational(neg ? mpz_class(-n) : n, d);
    out.canonicalize();
    return true;
}

// [sign] digits [. digits] [e|E [sign] digits]
bool parse_decimal(std::string_view text, Rational& out) {
    bool neg = false;
    auto s = strip_sign(text, neg);
    std::string_view exponent_part;
    if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        exponent_part = s.substr(e + 1);
        s = s.substr(0, e);
        if (exponent_part.empty()) return false;
    }
    std::string_view int_part = s, frac_part;
    if (const auto dot = s.find('.'); dot != std::string_view::npos) {
        int_part = s.substr(0, dot);
        frac_part = s.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty()) return false;
    if (!int_part.empty() && !all_digits(int_part)) return false;
    if (!frac_part.empty() && !all_digits(frac_part)) return false;

    long exponent = 0;
    if (!exponent_part.empty()) {
        bool eneg = false;
        const auto digits = strip_sign(exponent_part, eneg);
        if (!all_digits(digits) || digits.size() > 6) return false;
        exponent = std::stol(std::string(digits));
        if (eneg) exponent = -exponent;
    }
    mpz_class mantissa(std::string(int_part) + std::string(frac_part), 10);
    exponent -= static_cast<long>(frac_part.size());
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
    out = exponent >= 0 ? Rational(mantissa * scale) : Rational(mantissa, scale);
    out.canonicalize();
    if (neg) out = -out;
    return true;
}

}  // namespace

bool is_exact_literal(std::string_view text) {
    Rational scratch;
    try {
        return parse_fraction(text, scratch) || parse_decimal(text, scratch);
    } catch (const InvalidArgument&) {
        return false;
    }
}

Rational parse_rational(std::string_view text) {
    Rational value;
    if (parse_fraction(text, value) || parse_decimal(text, value)) {
        return value;
    }
    if (text == "sqrt(2)-1" || text == "sqrt2-1") {
        return Rational(std::sqrt(2.0) - 1.0);
    }
    throw InvalidArgument("cannot parse number '" + std::string(text) + "'");
}

}  // namespace ladder
