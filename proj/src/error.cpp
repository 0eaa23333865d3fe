#include "phqm/error.hpp"

namespace phqm {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::NonFinite: return "NonFinite";
        case ErrorKind::SingularMatrix: return "SingularMatrix";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::NotHermitian: return "NotHermitian";
        case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
        case ErrorKind::ComplexSpectrum: return "ComplexSpectrum";
        case ErrorKind::NonDiagonalizable: return "NonDiagonalizable";
        case ErrorKind::DegenerateSpectrum: return "DegenerateSpectrum";
        case ErrorKind::NotPseudoHermitian: return "NotPseudoHermitian";
        case ErrorKind::NullPTNorm: return "NullPTNorm";
        case ErrorKind::MissingSignatures: return "MissingSignatures";
        case ErrorKind::DegenerateMetric: return "DegenerateMetric";
        case ErrorKind::NotOrthonormal: return "NotOrthonormal";
        case ErrorKind::InconsistentDecomposition: return "InconsistentDecomposition";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::ZeroState: return "ZeroState";
        case ErrorKind::AsymmetricContour: return "AsymmetricContour";
        case ErrorKind::GridTooCoarse: return "GridTooCoarse";
        case ErrorKind::JointOnNode: return "JointOnNode";
        case ErrorKind::BrokenPTSymmetry: return "BrokenPTSymmetry";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what, std::optional<double> value)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), value_(value) {}

}  // namespace phqm
