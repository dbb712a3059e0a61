#pragma once

#include <stdexcept>
#include <string>

namespace rsom {

enum class ErrorKind {
    NotSquare,
    NegativeEntry,
    AsymmetryBeyondTolerance,
    NonZeroDiagonal,
    NonFiniteEntry,
    DisconnectedNeighborGraph,
    KTooLarge,
    DisconnectedGraph,
    UndefinedDistance,
    NoComparableSites,
    IterationOutOfRange,
    DimensionMismatch,
    DimensionNot2D,
    InvalidArgument,
    IoError,
    ParseError,
};

const char* error_kind_name(ErrorKind kind);

// Errors that indicate bad user input (CLI exit code 1); everything else
// is treated as a runtime failure (exit code 2).
bool is_validation_error(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message, long i = -1, long j = -1)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
          kind_(kind), i_(i), j_(j) {}

    ErrorKind kind() const { return kind_; }
    long index_i() const { return i_; }
    long index_j() const { return j_; }

private:
    ErrorKind kind_;
    long i_;
    long j_;
};

} // namespace rsom
