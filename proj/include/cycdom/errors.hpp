#pragma once

#include <stdexcept>
#include <string>

namespace cycdom {

/// Base class for all cycdom error conditions.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A polynomial text could not be parsed.  `position` is the byte offset of
/// the offending character in the input string.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Operands live in rings of different dimension.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// The requested space/dimension combination has no implemented decision
/// procedure.
class UnsupportedSpace : public Error {
public:
    using Error::Error;
};

/// A numeric computation lost too much precision to certify its result.
class PrecisionLoss : public Error {
public:
    using Error::Error;
};

/// Arc families that must keep positive pairwise distance touch or overlap.
class NonDisjoint : public Error {
public:
    using Error::Error;
};

}  // namespace cycdom
