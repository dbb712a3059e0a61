#include "rsom/error.hpp"

namespace rsom {

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NotSquare: return "NotSquare";
        case ErrorKind::NegativeEntry: return "NegativeEntry";
        case ErrorKind::AsymmetryBeyondTolerance: return "AsymmetryBeyondTolerance";
        case ErrorKind::NonZeroDiagonal: return "NonZeroDiagonal";
        case ErrorKind::NonFiniteEntry: return "NonFiniteEntry";
        case ErrorKind::DisconnectedNeighborGraph: return "DisconnectedNeighborGraph";
        case ErrorKind::KTooLarge: return "KTooLarge";
        case ErrorKind::DisconnectedGraph: return "DisconnectedGraph";
        case ErrorKind::UndefinedDistance: return "UndefinedDistance";
        case ErrorKind::NoComparableSites: return "NoComparableSites";
        case ErrorKind::IterationOutOfRange: return "IterationOutOfRange";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::DimensionNot2D: return "DimensionNot2D";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::IoError: return "IoError";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Error";
}

bool is_validation_error(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::IoError:
            return false;
        default:
            return true;
    }
}

} // namespace rsom
