#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kato {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed vector: empty, or holding NaN / infinity.
class InvalidVector : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    DimensionMismatch(std::size_t expected, std::size_t got)
        : Error("dimension mismatch: expected " + std::to_string(expected) + ", got " +
                std::to_string(got)) {}
};

/// A value fell outside the domain an operation accepts.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Q is numerically ±P, so Q - (P.Q)P has no direction.
class DegeneratePair : public Error {
public:
    using Error::Error;
};

/// y = -P on S^0: there is no point orthogonal to P.
class NoPreimage : public Error {
public:
    using Error::Error;
};

/// Disk preimage requested for a point on (or too close to) the boundary sphere.
class NotInterior : public Error {
public:
    using Error::Error;
};

/// Exact and floating angles mixed in one operation.
class MixedRepresentation : public Error {
public:
    using Error::Error;
};

/// A witness search ran out of iterations.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// P, x0, R fail to be linearly independent.
class DegenerateConfiguration : public Error {
public:
    using Error::Error;
};

/// A Lyapunov orbit landed exactly on a critical point.
class DerivativeSingular : public Error {
public:
    using Error::Error;
};

class PedalDegenerate : public Error {
public:
    PedalDegenerate(std::size_t index, double dot)
        : Error("pedal sample " + std::to_string(index) + " has |P.ped| = " +
                std::to_string(dot) + " below the degeneracy threshold"),
          index_(index) {}

    [[nodiscard]] std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

} // namespace kato
