#pragma once

#include <optional>
#include <vector>

#include "phqm/linalg.hpp"

namespace phqm {

/// Real-spectrum eigensystem {E_n, psi_n, phi_n} with <phi_m|psi_n> = delta_mn
/// and sum_n |psi_n><phi_n| = I. When built against an indefinite metric P
/// it also carries the Krein signatures sigma_n = <psi_n|P psi_n> and P itself.
///
/// The constructor only checks shapes; use verify_system for the numerical
/// invariants.
class BiorthonormalSystem {
public:
    BiorthonormalSystem(std::vector<double> energies, ComplexMatrix psi, ComplexMatrix phi, double riesz_kappa,
                        std::optional<std::vector<int>> signatures = std::nullopt,
                        std::optional<ComplexMatrix> pseudo_metric = std::nullopt);

    Eigen::Index dim() const noexcept { return psi_.rows(); }
    std::size_t size() const noexcept { return energies_.size(); }

    const std::vector<double>& energies() const noexcept { return energies_; }
    const ComplexMatrix& psi() const noexcept { return psi_; }
    const ComplexMatrix& phi() const noexcept { return phi_; }
    ComplexVector psi(std::size_t n) const { return psi_.col(static_cast<Eigen::Index>(n)); }
    ComplexVector phi(std::size_t n) const { return phi_.col(static_cast<Eigen::Index>(n)); }
    double riesz_kappa() const noexcept { return riesz_kappa_; }
    const std::optional<std::vector<int>>& signatures() const noexcept { return signatures_; }
    const std::optional<ComplexMatrix>& pseudo_metric() const noexcept { return pseudo_metric_; }

    /// True when signatures are present and follow (+1, -1, +1, ...).
    bool signatures_alternate() const;

private:
    std::vector<double> energies_;
    ComplexMatrix psi_;
    ComplexMatrix phi_;
    double riesz_kappa_;
    std::optional<std::vector<int>> signatures_;
    std::optional<ComplexMatrix> pseudo_metric_;
};

/// Biorthonormal system of a diagonalizable H with real, nondegenerate
/// spectrum. phi is the columns of (S^{-1})^dagger for the eigenvector
/// matrix S.
///
/// Scale convention: a Hermitian H keeps its orthonormal eigenvectors, so
/// phi_n = psi_n. Otherwise each psi_n is scaled so that its largest
/// magnitude entry is exactly 1.
///
/// Throws ComplexSpectrum, NonDiagonalizable (riesz kappa above
/// tol::kappa_limit) or DegenerateSpectrum.
BiorthonormalSystem diagonalize_real_spectrum(const ComplexMatrix& h, double tol = tol::reality);

/// As above, then rescales each psi_n so <psi_n|P psi_n> = sigma_n = +-1 and
/// sets phi_n = sigma_n P psi_n.
///
/// Requires P Hermitian and invertible and
/// ||P H - H^dagger P||_F <= tol * ||P||_F ||H||_F.
/// Throws NotPseudoHermitian, NullPTNorm, plus the errors above.
BiorthonormalSystem with_pseudo_metric(const ComplexMatrix& h, const ComplexMatrix& p, double tol = tol::reality);

struct SystemResiduals {
    double duality = 0.0;       // max |<phi_m|psi_n> - delta_mn|
    double completeness = 0.0;  // max |(sum |psi_n><phi_n|) - I| entry
    std::optional<double> signature;  // max |<psi_m|P psi_n> - sigma_n delta_mn|
    double tolerance = 0.0;
    bool pass = false;
};

/// Diagnostic; never throws.
SystemResiduals verify_system(const BiorthonormalSystem& sys, double tol = tol::verification) noexcept;

/// c_n = <phi_n|v>, so v = sum c_n psi_n.
std::vector<Complex> spectral_coefficients(const BiorthonormalSystem& sys, const ComplexVector& v);

/// Sum s_n^* t_n of two coefficient lists.
Complex l2_pairing(const std::vector<Complex>& s, const std::vector<Complex>& t);

}  // namespace phqm
