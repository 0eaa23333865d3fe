#pragma once

// Dense complex matrices and the eigen/factorization kernels used by every
// other module. Matrices are Eigen column-major objects; the row-major
// ordering of the file format is handled in io.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "phqm/tolerance.hpp"

namespace phqm {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// ---- shape and value checks (throw phqm::Error) ----

void require_square(const ComplexMatrix& m, const char* what);
void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what);
void require_dim(const ComplexVector& v, Eigen::Index n, const char* what);
void require_finite(const ComplexMatrix& m, const char* what);

// ---- basic algebra ----

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector apply(const ComplexMatrix& a, const ComplexVector& v);
ComplexMatrix adjoint(const ComplexMatrix& a);

/// Inverse by partially pivoted LU. Throws SingularMatrix when a pivot falls
/// below tol::singular_pivot * ||M||_F.
ComplexMatrix inverse(const ComplexMatrix& m);

/// Reference inner product <v|w> = sum conj(v_k) w_k.
Complex inner(const ComplexVector& v, const ComplexVector& w);
double norm(const ComplexVector& v);

/// Frobenius norm; the norm used in every relative residual below.
double frobenius(const ComplexMatrix& m);

/// Largest absolute entry.
double max_abs(const ComplexMatrix& m);

/// ||M - M^dagger||_F / ||M||_F (0 for the zero matrix).
double hermiticity_residual(const ComplexMatrix& m);

/// 2-norm condition number from singular values; +inf when singular.
double condition_number(const ComplexMatrix& m);

/// Rescales v so its largest-magnitude entry is real and positive.
/// Ties are broken towards the lowest index.
void fix_phase(Eigen::Ref<ComplexVector> v);

/// Index of the largest-magnitude entry under the same tie rule.
Eigen::Index dominant_index(const ComplexVector& v);

// ---- eigen kernels ----

/// Permutation sorting by ascending real part, near-ties by imaginary part.
std::vector<std::size_t> spectral_order(const std::vector<Complex>& values);

struct EigenDecomposition {
    std::vector<Complex> eigenvalues;   // ascending real part, then imaginary part
    ComplexMatrix right_eigenvectors;  // unit columns, phase fixed
    double condition_estimate = 0.0;   // kappa_2 of right_eigenvectors
};

struct HermitianEigenDecomposition {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // unitary, phase fixed
};

/// General complex eigenproblem. Throws NoConvergence when the QR iteration
/// exceeds 100*n sweeps or a residual ||M v - lambda v|| exceeds tol*||M||.
EigenDecomposition eig_general(const ComplexMatrix& m, double tol = tol::verification);

/// Hermitian eigenproblem. Throws NotHermitian when ||M - M^dagger|| > tol*||M||.
HermitianEigenDecomposition eig_hermitian(const ComplexMatrix& m, double tol = tol::construction);

struct PositiveRoot {
    ComplexMatrix root;
    ComplexMatrix inverse_root;
    double min_eigenvalue = 0.0;
    double max_eigenvalue = 0.0;
};

/// Unique positive square root of a Hermitian positive-definite matrix and
/// its inverse from one eigendecomposition. Throws NotPositiveDefinite when
/// the smallest eigenvalue is <= tol * max(1, largest).
PositiveRoot positive_root(const ComplexMatrix& m, double tol = tol::construction);

ComplexMatrix sqrt_positive(const ComplexMatrix& m, double tol = tol::construction);

}  // namespace phqm
