#ifndef FAIRDIV_ERRORS_HPP
#define FAIRDIV_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fairdiv {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed document or expression text. Carries the byte offset of the
// offending token when one is known.
class ParseError : public Error {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    explicit ParseError(const std::string& what) : Error(what), offset_(npos) {}
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " (at offset " + std::to_string(offset) + ")"),
          offset_(offset) {}

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

// Well-formed text describing a structurally invalid expression, e.g. an
// aggregator nested inside another aggregator's argument.
class StructuralError : public ParseError {
public:
    using ParseError::ParseError;
};

// Arguments that violate an operation's preconditions.
class InputError : public Error {
public:
    using Error::Error;
};

// An enumeration request exceeding the configured allocation cap.
class CapacityError : public Error {
public:
    using Error::Error;
};

// Evaluation left the function's domain: log or fractional power of a
// negative number, division by zero, or a value outside [-inf, inf).
class DomainError : public Error {
public:
    using Error::Error;
};

// A bounded search exhausted its budget without an answer.
class NotFoundError : public Error {
public:
    using Error::Error;
};

} // namespace fairdiv

#endif
