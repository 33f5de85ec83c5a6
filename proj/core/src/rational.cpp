#include "fairdiv/rational.hpp"

#include <cctype>
#include <iomanip>
#include <sstream>

#include "fairdiv/errors.hpp"

namespace fairdiv {

namespace {

using boost::multiprecision::cpp_int;

// Digits with an optional leading '-'; no whitespace, no '+'.
cpp_int parse_integer(std::string_view text, std::string_view whole) {
    bool negative = false;
    std::size_t pos = 0;
    if (pos < text.size() && text[pos] == '-') {
        negative = true;
        ++pos;
    }
    if (pos == text.size()) {
        throw ParseError("expected digits in rational \"" + std::string(whole) + "\"");
    }
    for (std::size_t p = pos; p < text.size(); ++p) {
        if (!std::isdigit(static_cast<unsigned char>(text[p]))) {
            throw ParseError("invalid character '" + std::string(1, text[p]) +
                             "' in rational \"" + std::string(whole) + "\"");
        }
    }
    cpp_int value(std::string(text.substr(pos)));
    return negative ? -value : value;
}

} // namespace

Rational parse_rational(std::string_view text) {
    // Trim surrounding whitespace.
    std::size_t first = 0, last = text.size();
    while (first < last && std::isspace(static_cast<unsigned char>(text[first]))) ++first;
    while (last > first && std::isspace(static_cast<unsigned char>(text[last - 1]))) --last;
    std::string_view body = text.substr(first, last - first);
    if (body.empty()) {
        throw ParseError("empty rational literal");
    }

    const std::size_t slash = body.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_integer(body, body));
    }
    if (body.find('/', slash + 1) != std::string_view::npos) {
        throw ParseError("more than one '/' in rational \"" + std::string(body) + "\"");
    }
    cpp_int num = parse_integer(body.substr(0, slash), body);
    std::string_view den_text = body.substr(slash + 1);
    if (!den_text.empty() && den_text.front() == '-') {
        throw ParseError("denominator must be positive in \"" + std::string(body) + "\"");
    }
    cpp_int den = parse_integer(den_text, body);
    if (den == 0) {
        throw ParseError("zero denominator in \"" + std::string(body) + "\"");
    }
    return Rational(num, den);
}

std::string to_string(const Rational& value) {
    std::string out = numerator(value).str();
    if (denominator(value) != 1) {
        out += "/";
        out += denominator(value).str();
    }
    return out;
}

std::string to_string(const BigFloat& value) {
    std::ostringstream os;
    os << std::setprecision(40) << std::scientific << value;
    return os.str();
}

Rational pow_rational(Rational base, long exponent) {
    if (exponent < 0) {
        if (base == 0) {
            throw DomainError("zero base with negative exponent");
        }
        base = Rational(1) / base;
        exponent = -exponent;
    }
    Rational result = 1;
    while (exponent > 0) {
        if (exponent & 1) result *= base;
        base *= base;
        exponent >>= 1;
    }
    return result;
}

BigFloat to_bigfloat(const Rational& value) {
    return BigFloat(value);
}

} // namespace fairdiv
