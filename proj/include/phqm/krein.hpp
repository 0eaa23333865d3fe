#pragma once

#include <vector>

#include "phqm/linalg.hpp"

namespace phqm {

struct MetricOperator;

/// Fundamental decomposition V = V_- (+) V_+ of a space with indefinite
/// inner product (v, w) = <v|P w>.
struct KreinDecomposition {
    ComplexMatrix P;
    ComplexMatrix Pi_plus;
    ComplexMatrix Pi_minus;
    ComplexMatrix C;  // Pi_plus - Pi_minus
    Eigen::Index dim_plus = 0;
    Eigen::Index dim_minus = 0;
    // eigenvectors of P split by sign, scaled so +-(xi, xi) = 1
    std::vector<ComplexVector> xi_plus;
    std::vector<ComplexVector> xi_minus;
};

/// Pi_+ is the reference-orthogonal spectral projector of P onto its
/// positive eigenvalues. Throws NotHermitian, or DegenerateMetric when an
/// eigenvalue of P lies within tol*||P||_2 of zero.
KreinDecomposition fundamental_decomposition(const ComplexMatrix& p, double tol = tol::construction);

/// (v, w) = <v|P w>.
Complex krein_inner(const ComplexVector& v, const ComplexVector& w, const ComplexMatrix& p);

/// (Pi_+ v, Pi_+ w) - (Pi_- v, Pi_- w). Throws InconsistentDecomposition if
/// this differs from (v, C w) by more than tol relative to ||P|| ||v|| ||w||.
Complex hilbert_from_krein(const KreinDecomposition& kd, const ComplexVector& v, const ComplexVector& w,
                           double tol = tol::verification);

struct InterleavedBasis {
    std::vector<ComplexVector> vectors;  // psi_0 = xi+_0, psi_1 = xi-_0, ...
    std::vector<double> krein_norms;     // (psi_n, psi_n)
    bool tail_appended = false;          // sizes differed; surplus kept in order
};

/// Relabels xi+ / xi- into one sequence alternating between the two
/// subspaces. Both lists must lie in their subspace and be orthonormal
/// under the induced positive inner product; throws NotOrthonormal otherwise.
InterleavedBasis interleave_basis(const KreinDecomposition& kd, const std::vector<ComplexVector>& xi_plus,
                                  const std::vector<ComplexVector>& xi_minus, double tol = tol::verification);

/// Grading operator of P computed in the eta-orthonormal frame and mapped
/// back: rho^{-1} sign(rho^{-1} P rho^{-1}) rho. For P and eta coming from
/// the same signed eigensystem this equals eta^{-1} P.
ComplexMatrix grading_in_metric_frame(const ComplexMatrix& p, const MetricOperator& m, double tol = tol::construction);

}  // namespace phqm
