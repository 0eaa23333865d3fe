#include "phqm/metric.hpp"

#include <algorithm>
#include <cmath>

#include "phqm/error.hpp"

namespace phqm {

namespace {

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

ComplexMatrix signed_sum(const ComplexMatrix& left, const ComplexMatrix& right, const std::vector<int>& sigma) {
    Eigen::VectorXcd d(static_cast<Eigen::Index>(sigma.size()));
    for (std::size_t k = 0; k < sigma.size(); ++k) d[static_cast<Eigen::Index>(k)] = static_cast<double>(sigma[k]);
    return left * d.asDiagonal() * right.adjoint();
}

}  // namespace

MetricOperator build_metric(const BiorthonormalSystem& sys) {
    MetricOperator m;
    m.eta = hermitian_part(sys.phi() * sys.phi().adjoint());
    m.eta_inv = hermitian_part(sys.psi() * sys.psi().adjoint());
    auto root = positive_root(m.eta, tol::construction);
    m.rho = std::move(root.root);
    m.rho_inv = std::move(root.inverse_root);
    m.min_eigenvalue = root.min_eigenvalue;
    m.kappa = root.max_eigenvalue / root.min_eigenvalue;
    return m;
}

std::vector<int> alternating_signatures(std::size_t n) {
    std::vector<int> sigma(n);
    for (std::size_t k = 0; k < n; ++k) sigma[k] = k % 2 == 0 ? 1 : -1;
    return sigma;
}

CPTStructure build_cpt(const BiorthonormalSystem& sys, std::optional<std::vector<int>> signatures) {
    if (!signatures) signatures = sys.signatures();
    if (!signatures) throw Error(ErrorKind::MissingSignatures, "system has no signatures and none were supplied");
    if (signatures->size() != sys.size())
        throw Error(ErrorKind::DimensionMismatch, "one signature per eigenvector required");
    CPTStructure out;
    out.C = signed_sum(sys.psi(), sys.phi(), *signatures);
    out.P = hermitian_part(signed_sum(sys.phi(), sys.phi(), *signatures));
    out.signatures = std::move(*signatures);
    return out;
}

double verify_pseudo_hermiticity(const ComplexMatrix& h, const ComplexMatrix& eta) {
    require_square(h, "Hamiltonian");
    require_same_shape(h, eta, "metric");
    const double scale = h.norm() * eta.norm();
    if (scale == 0.0) return 0.0;
    return (h.adjoint() * eta - eta * h).norm() / scale;
}

Complex physical_inner(const ComplexVector& v, const ComplexVector& w, const MetricOperator& m) {
    require_dim(v, m.eta.rows(), "physical_inner");
    require_dim(w, m.eta.rows(), "physical_inner");
    return v.dot(m.eta * w);
}

ComplexMatrix hermitize(const ComplexMatrix& h, const MetricOperator& m, double tol) {
    const double residual = verify_pseudo_hermiticity(h, m.eta);
    if (residual > tol)
        throw Error(ErrorKind::NotPseudoHermitian, "H is not pseudo-Hermitian with respect to eta", residual);
    return m.rho * h * m.rho_inv;
}

double self_adjointness_residual(const ComplexMatrix& o, const MetricOperator& m,
                                 const std::vector<std::pair<ComplexVector, ComplexVector>>& sample) {
    require_same_shape(o, m.eta, "observable");
    const double eta_norm = m.kappa * m.min_eigenvalue;
    double worst = 0.0;
    for (const auto& [a, b] : sample) {
        const Complex lhs = physical_inner(a, o * b, m);
        const Complex rhs = physical_inner(o * a, b, m);
        const double scale = eta_norm * a.norm() * b.norm();
        if (scale == 0.0) continue;
        worst = std::max(worst, std::abs(lhs - rhs) / scale);
    }
    return worst;
}

CPTResiduals verify_cpt(const CPTStructure& cpt, const ComplexMatrix& h, const MetricOperator& m) {
    require_same_shape(cpt.C, h, "C");
    require_same_shape(cpt.P, h, "P");
    const auto n = h.rows();
    CPTResiduals r;
    r.involution = max_abs(cpt.C * cpt.C - ComplexMatrix::Identity(n, n));
    const double h_scale = std::max(max_abs(h), 1e-300);
    r.commutator = max_abs(cpt.C * h - h * cpt.C) / h_scale;
    r.c_eta_p = max_abs(cpt.C - m.eta_inv * cpt.P);
    r.p_hermitian = max_abs(cpt.P - cpt.P.adjoint());
    return r;
}

std::vector<TruncationRow> truncation_scan(const SystemBuilder& builder, const std::vector<Eigen::Index>& dims) {
    for (std::size_t k = 1; k < dims.size(); ++k)
        if (dims[k] <= dims[k - 1]) throw Error(ErrorKind::InvalidArgument, "truncation dimensions must ascend");
    std::vector<TruncationRow> rows;
    rows.reserve(dims.size());
    for (const auto k : dims) {
        const auto sys = builder(k);
        const auto metric = build_metric(sys);
        rows.push_back({k, sys.riesz_kappa(), metric.kappa});
    }
    return rows;
}

bool eta_kappa_monotone(const std::vector<TruncationRow>& rows) {
    for (std::size_t k = 1; k < rows.size(); ++k)
        if (rows[k].eta_kappa < rows[k - 1].eta_kappa * (1.0 - tol::construction)) return false;
    return true;
}

}  // namespace phqm
