#ifndef EDOP_ERRORS_HPP
#define EDOP_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace edop {

// Base class for everything this library throws on invalid input.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A spectrum with duplicate (or otherwise unusable) points.
class InvalidSpectrumError : public Error {
public:
    explicit InvalidSpectrumError(const std::string& what) : Error(what) {}
};

// Violated operation precondition; the message names the failed hypothesis.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

// NaN/Inf fed into a numeric routine.
class NumericInputError : public Error {
public:
    explicit NumericInputError(const std::string& what) : Error(what) {}
};

// Tails of two model operators are not eventually positionwise equal, so
// their difference is not compact in the model and index quantities are
// undefined.
class NotCompactError : public Error {
public:
    explicit NotCompactError(const std::string& what) : Error(what) {}
};

// A projection pair with nonzero essential codimension cannot be conjugated
// by a unitary of the form identity + finite rank; `pair_index` names the
// offending pair.
class ObstructionError : public Error {
public:
    ObstructionError(const std::string& what, std::size_t pair_index, long long codim)
        : Error(what), pair_index(pair_index), codim(codim) {}
    std::size_t pair_index;
    long long codim;
};

// Requested a separating line at a point that is not a hull vertex.
class NoSeparatingLineError : public Error {
public:
    explicit NoSeparatingLineError(const std::string& what) : Error(what) {}
};

// Incompatible matrix/operator dimensions.
class ShapeError : public Error {
public:
    explicit ShapeError(const std::string& what) : Error(what) {}
};

// Malformed input file or JSON document.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

} // namespace edop

#endif
