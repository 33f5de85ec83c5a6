#ifndef FAIRDIV_RATIONAL_HPP
#define FAIRDIV_RATIONAL_HPP

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

namespace fairdiv {

// Exact arbitrary-precision rational. The backend keeps values in lowest
// terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

// Binary floating point with a 128-bit significand, used whenever an
// expression involves log, exp, or a fractional power.
using BigFloat = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<128, boost::multiprecision::digit_base_2>>;

// Parses "p", "-p", or "p/q" with q > 0. Throws ParseError on anything else
// (including "p/0" and signs inside the denominator).
Rational parse_rational(std::string_view text);

// Renders exactly: "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const Rational& value);

// Deterministic scientific rendering with 40 significant digits.
std::string to_string(const BigFloat& value);

// base^exponent with an integer exponent. Throws DomainError for 0^e, e < 0.
Rational pow_rational(Rational base, long exponent);

BigFloat to_bigfloat(const Rational& value);

} // namespace fairdiv

#endif
