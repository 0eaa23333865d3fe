#pragma once

#include <vector>

#include "phqm/linalg.hpp"

namespace phqm {

/// Complex symmetric (T = T^T, not Hermitian) tridiagonal matrix.
struct SymmetricTridiagonal {
    std::vector<Complex> diag;
    std::vector<Complex> off;  // off[j] couples j and j+1

    std::size_t size() const noexcept { return diag.size(); }
    ComplexVector apply(const ComplexVector& v) const;
    ComplexMatrix apply(const ComplexMatrix& m) const;
    ComplexMatrix dense() const;
    double frobenius() const;
};

/// All eigenvalues by implicit QL with complex orthogonal rotations.
/// Unordered. Throws NoConvergence.
std::vector<Complex> tridiagonal_eigenvalues(const SymmetricTridiagonal& t);

struct RefinedEigenpair {
    Complex value;
    ComplexVector vector;  // unit 2-norm
    double residual = 0.0;  // ||T v - value v|| / ||T||_F
};

/// Inverse iteration from an eigenvalue estimate with Rayleigh quotient
/// shift updates; keeps the iterate with the smallest residual.
RefinedEigenpair refine_eigenpair(const SymmetricTridiagonal& t, Complex estimate);

}  // namespace phqm
