#pragma once

#include <gmpxx.h>

#include <string_view>

namespace ladder {

using Rational = mpq_class;

/// Parses a probability literal: a fraction `a/b`, a decimal (`0.25`, `1e-3`)
/// read as its exact decimal value, or `sqrt(2)-1`. The last has no exact
/// rational form and returns the nearest double converted exactly.
Rational parse_rational(std::string_view text);

/// True when `text` denotes an exact rational (fraction or decimal literal).
bool is_exact_literal(std::string_view text);

template <typename Scalar>
Scalar from_rational(const Rational& value);

template <>
inline double from_rational<double>(const Rational& value) { return value.get_d(); }

template <>
inline long double from_rational<long double>(const Rational& value) {
    // mpq only converts to double; refine with one long-double correction step.
    const double hi = value.get_d();
    const Rational rest = value - Rational(hi);
    return static_cast<long double>(hi) + static_cast<long double>(rest.get_d());
}

template <>
inline Rational from_rational<Rational>(const Rational& value) { return value; }

}  // namespace ladder
