#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "phqm/biortho.hpp"

namespace phqm {

/// Positive-definite metric eta_+ with its inverse and square roots.
struct MetricOperator {
    ComplexMatrix eta;
    ComplexMatrix eta_inv;
    ComplexMatrix rho;      // sqrt(eta), Hermitian positive
    ComplexMatrix rho_inv;
    double min_eigenvalue = 0.0;
    double kappa = 0.0;     // lambda_max / lambda_min of eta
};

/// Grading operator C and indefinite metric P built from a signed
/// biorthonormal system.
struct CPTStructure {
    ComplexMatrix C;
    ComplexMatrix P;
    std::vector<int> signatures;
};

/// eta = sum |phi_n><phi_n|, eta^{-1} = sum |psi_n><psi_n|, rho = sqrt(eta).
/// Throws NotPositiveDefinite if eta fails the positivity check.
MetricOperator build_metric(const BiorthonormalSystem& sys);

/// Alternating default (+1, -1, +1, ...).
std::vector<int> alternating_signatures(std::size_t n);

/// C = sum sigma_n |psi_n><phi_n|, P = sum sigma_n |phi_n><phi_n|.
/// Uses `signatures` when given, else the system's own; throws
/// MissingSignatures when neither exists.
CPTStructure build_cpt(const BiorthonormalSystem& sys, std::optional<std::vector<int>> signatures = std::nullopt);

/// ||H^dagger eta - eta H||_F / (||H||_F ||eta||_F).
double verify_pseudo_hermiticity(const ComplexMatrix& h, const ComplexMatrix& eta);

/// <v|eta w>.
Complex physical_inner(const ComplexVector& v, const ComplexVector& w, const MetricOperator& m);

/// h = rho H rho^{-1}. Throws NotPseudoHermitian when the pseudo-Hermiticity
/// residual of (H, eta) exceeds tol.
ComplexMatrix hermitize(const ComplexMatrix& h, const MetricOperator& m, double tol = tol::verification);

/// max over pairs of |<a, O b>_+ - <O a, b>_+| / (lambda_max(eta) ||a|| ||b||).
double self_adjointness_residual(const ComplexMatrix& o, const MetricOperator& m,
                                 const std::vector<std::pair<ComplexVector, ComplexVector>>& sample);

struct CPTResiduals {
    double involution = 0.0;   // ||C^2 - I||_max
    double commutator = 0.0;   // ||[C, H]||_max / ||H||_max
    double c_eta_p = 0.0;      // ||C - eta^{-1} P||_max
    double p_hermitian = 0.0;  // ||P - P^dagger||_max
};

CPTResiduals verify_cpt(const CPTStructure& cpt, const ComplexMatrix& h, const MetricOperator& m);

struct TruncationRow {
    Eigen::Index dim = 0;
    double riesz_kappa = 0.0;
    double eta_kappa = 0.0;
};

using SystemBuilder = std::function<BiorthonormalSystem(Eigen::Index)>;

/// Condition numbers of S_k and eta_k for each requested truncation.
/// `dims` must be strictly ascending.
std::vector<TruncationRow> truncation_scan(const SystemBuilder& builder, const std::vector<Eigen::Index>& dims);

/// True when eta_kappa never decreases along the scan (relative roundoff
/// below tol::construction ignored).
bool eta_kappa_monotone(const std::vector<TruncationRow>& rows);

}  // namespace phqm
