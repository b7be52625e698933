#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace ncd {

using Rational = mpq_class;

// Accepts "p", "p/q", and decimals such as "0.25", "-3.5e-2". Decimals are
// converted exactly, so "0.1" is 1/10 and not the nearest double.
Rational parse_rational(std::string_view text);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational &value);

inline double to_double(const Rational &value) { return value.get_d(); }

// Best rational approximation with denominator at most max_den
// (continued-fraction convergents).
Rational approximate_rational(double x, long max_den);

} // namespace ncd
