#include "phqm/biortho.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "phqm/error.hpp"

namespace phqm {

namespace {

std::string describe(Complex z) {
    std::ostringstream os;
    os.precision(17);
    os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    return os.str();
}

}  // namespace

BiorthonormalSystem::BiorthonormalSystem(std::vector<double> energies, ComplexMatrix psi, ComplexMatrix phi,
                                         double riesz_kappa, std::optional<std::vector<int>> signatures,
                                         std::optional<ComplexMatrix> pseudo_metric)
    : energies_(std::move(energies)),
      psi_(std::move(psi)),
      phi_(std::move(phi)),
      riesz_kappa_(riesz_kappa),
      signatures_(std::move(signatures)),
      pseudo_metric_(std::move(pseudo_metric)) {
    require_square(psi_, "psi");
    require_same_shape(psi_, phi_, "psi/phi");
    if (static_cast<Eigen::Index>(energies_.size()) != psi_.cols())
        throw Error(ErrorKind::DimensionMismatch, "one energy per eigenvector required");
    if (signatures_) {
        if (signatures_->size() != energies_.size())
            throw Error(ErrorKind::DimensionMismatch, "one signature per eigenvector required");
        for (int s : *signatures_)
            if (s != 1 && s != -1) throw Error(ErrorKind::InvalidArgument, "signatures must be +1 or -1");
    }
    if (pseudo_metric_) require_same_shape(*pseudo_metric_, psi_, "pseudo metric");
}

bool BiorthonormalSystem::signatures_alternate() const {
    if (!signatures_) return false;
    for (std::size_t n = 0; n < signatures_->size(); ++n)
        if ((*signatures_)[n] != (n % 2 == 0 ? 1 : -1)) return false;
    return true;
}

BiorthonormalSystem diagonalize_real_spectrum(const ComplexMatrix& h, double tol) {
    require_square(h, "Hamiltonian");
    require_finite(h, "Hamiltonian");
    const auto n = h.rows();
    const bool hermitian = (h - h.adjoint()).norm() <= tol * h.norm();

    std::vector<Complex> values;
    ComplexMatrix s;
    if (hermitian) {
        auto eig = eig_hermitian(h, tol);
        values.assign(eig.eigenvalues.begin(), eig.eigenvalues.end());
        s = std::move(eig.eigenvectors);
    } else {
        auto eig = eig_general(h);
        values = std::move(eig.eigenvalues);
        s = std::move(eig.right_eigenvectors);
    }

    std::vector<double> energies;
    energies.reserve(values.size());
    for (const Complex& lambda : values) {
        if (std::abs(lambda.imag()) > tol * std::max(1.0, std::abs(lambda)))
            throw Error(ErrorKind::ComplexSpectrum, "eigenvalue " + describe(lambda) + " is not real", lambda.imag());
        energies.push_back(lambda.real());
    }

    if (!hermitian) {
        for (Eigen::Index k = 0; k < n; ++k) {
            const ComplexVector col = s.col(k);
            s.col(k) /= col[dominant_index(col)];
        }
    }

    const double kappa = condition_number(s);
    if (!(kappa <= tol::kappa_limit))
        throw Error(ErrorKind::NonDiagonalizable, "eigenvector matrix condition number above limit", kappa);

    for (std::size_t k = 1; k < energies.size(); ++k) {
        const double a = energies[k - 1];
        const double b = energies[k];
        if (b - a <= tol * std::max({1.0, std::abs(a), std::abs(b)}))
            throw Error(ErrorKind::DegenerateSpectrum,
                        "energies " + std::to_string(k - 1) + " and " + std::to_string(k) + " coincide", b);
    }

    ComplexMatrix phi = inverse(s).adjoint();
    return BiorthonormalSystem(std::move(energies), std::move(s), std::move(phi), kappa);
}

BiorthonormalSystem with_pseudo_metric(const ComplexMatrix& h, const ComplexMatrix& p, double tol) {
    require_square(h, "Hamiltonian");
    require_same_shape(h, p, "pseudo metric");
    require_finite(p, "pseudo metric");
    if (hermiticity_residual(p) > tol)
        throw Error(ErrorKind::NotHermitian, "pseudo metric is not Hermitian", hermiticity_residual(p));
    inverse(p);  // invertibility check only
    // commutator form, so an ill-conditioned P does not inflate the residual
    const double ph = (p * h - h.adjoint() * p).norm() / (p.norm() * h.norm());
    if (ph > tol) throw Error(ErrorKind::NotPseudoHermitian, "||P H - H^dagger P|| exceeds tolerance", ph);

    const auto base = diagonalize_real_spectrum(h, tol);
    const auto n = base.dim();
    const double p_scale = p.norm();

    ComplexMatrix psi = base.psi();
    ComplexMatrix phi(n, n);
    std::vector<int> sigma(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) {
        ComplexVector v = psi.col(k).normalized();
        const double krein_norm = inner(v, p * v).real();
        if (std::abs(krein_norm) < tol * p_scale)
            throw Error(ErrorKind::NullPTNorm, "eigenvector " + std::to_string(k) + " is P-neutral", krein_norm);
        const int s = krein_norm > 0 ? 1 : -1;
        v /= std::sqrt(std::abs(krein_norm));
        psi.col(k) = v;
        phi.col(k) = static_cast<double>(s) * (p * v);
        sigma[static_cast<std::size_t>(k)] = s;
    }
    const double kappa = condition_number(psi);
    std::vector<double> energies = base.energies();
    return BiorthonormalSystem(std::move(energies), std::move(psi), std::move(phi), kappa, std::move(sigma), p);
}

SystemResiduals verify_system(const BiorthonormalSystem& sys, double tol) noexcept {
    SystemResiduals out;
    out.tolerance = tol;
    const auto n = sys.dim();
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    out.duality = max_abs(sys.phi().adjoint() * sys.psi() - id);
    out.completeness = max_abs(sys.psi() * sys.phi().adjoint() - id);
    bool pass = out.duality <= tol && out.completeness <= tol;
    if (sys.signatures() && sys.pseudo_metric()) {
        Eigen::VectorXcd sigma(static_cast<Eigen::Index>(sys.size()));
        for (std::size_t k = 0; k < sys.size(); ++k) sigma[static_cast<Eigen::Index>(k)] = (*sys.signatures())[k];
        const ComplexMatrix gram = sys.psi().adjoint() * (*sys.pseudo_metric()) * sys.psi();
        out.signature = max_abs(gram - ComplexMatrix(sigma.asDiagonal()));
        pass = pass && *out.signature <= tol;
    }
    out.pass = pass;
    return out;
}

std::vector<Complex> spectral_coefficients(const BiorthonormalSystem& sys, const ComplexVector& v) {
    require_dim(v, sys.dim(), "spectral_coefficients");
    const ComplexVector c = sys.phi().adjoint() * v;
    return {c.data(), c.data() + c.size()};
}

Complex l2_pairing(const std::vector<Complex>& s, const std::vector<Complex>& t) {
    if (s.size() != t.size()) throw Error(ErrorKind::DimensionMismatch, "coefficient lists differ in length");
    Complex sum = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) sum += std::conj(s[k]) * t[k];
    return sum;
}

}  // namespace phqm
