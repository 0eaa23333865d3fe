#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace phqm {

enum class ErrorKind {
    DimensionMismatch,
    NonFinite,
    SingularMatrix,
    NoConvergence,
    NotHermitian,
    NotPositiveDefinite,
    ComplexSpectrum,
    NonDiagonalizable,
    DegenerateSpectrum,
    NotPseudoHermitian,
    NullPTNorm,
    MissingSignatures,
    DegenerateMetric,
    NotOrthonormal,
    InconsistentDecomposition,
    IndexOutOfRange,
    ZeroState,
    AsymmetricContour,
    GridTooCoarse,
    JointOnNode,
    BrokenPTSymmetry,
    InvalidArgument,
    ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library. `value` carries the offending
/// number when there is one (a condition number, an eigenvalue's imaginary
/// part, a residual).
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what, std::optional<double> value = std::nullopt);

    ErrorKind kind() const noexcept { return kind_; }
    std::optional<double> value() const noexcept { return value_; }

private:
    ErrorKind kind_;
    std::optional<double> value_;
};

}  // namespace phqm
