#include "phqm/krein.hpp"

#include <algorithm>
#include <cmath>

#include "phqm/error.hpp"
#include "phqm/metric.hpp"

namespace phqm {

KreinDecomposition fundamental_decomposition(const ComplexMatrix& p, double tol) {
    const auto eig = eig_hermitian(p, tol);
    const auto n = p.rows();
    const double scale = std::max(std::abs(eig.eigenvalues.front()), std::abs(eig.eigenvalues.back()));

    KreinDecomposition kd;
    kd.P = p;
    kd.Pi_plus = ComplexMatrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double lambda = eig.eigenvalues[static_cast<std::size_t>(k)];
        if (std::abs(lambda) <= tol * scale)
            throw Error(ErrorKind::DegenerateMetric, "P has an eigenvalue at zero", lambda);
        const ComplexVector u = eig.eigenvectors.col(k);
        const ComplexVector xi = u / std::sqrt(std::abs(lambda));
        if (lambda > 0) {
            kd.Pi_plus += u * u.adjoint();
            kd.xi_plus.push_back(xi);
        } else {
            kd.xi_minus.push_back(xi);
        }
    }
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    kd.Pi_minus = id - kd.Pi_plus;
    kd.C = 2.0 * kd.Pi_plus - id;
    kd.dim_plus = static_cast<Eigen::Index>(kd.xi_plus.size());
    kd.dim_minus = static_cast<Eigen::Index>(kd.xi_minus.size());
    return kd;
}

Complex krein_inner(const ComplexVector& v, const ComplexVector& w, const ComplexMatrix& p) {
    require_dim(v, p.rows(), "krein_inner");
    require_dim(w, p.rows(), "krein_inner");
    return v.dot(p * w);
}

Complex hilbert_from_krein(const KreinDecomposition& kd, const ComplexVector& v, const ComplexVector& w,
                           double tol) {
    const ComplexVector vp = kd.Pi_plus * v;
    const ComplexVector wp = kd.Pi_plus * w;
    const ComplexVector vm = kd.Pi_minus * v;
    const ComplexVector wm = kd.Pi_minus * w;
    const Complex split = krein_inner(vp, wp, kd.P) - krein_inner(vm, wm, kd.P);
    const Complex graded = krein_inner(v, kd.C * w, kd.P);
    const double scale = std::max(kd.P.norm() * v.norm() * w.norm(), 1e-300);
    if (std::abs(split - graded) > tol * scale)
        throw Error(ErrorKind::InconsistentDecomposition, "(Pi v, Pi w) split disagrees with (v, C w)",
                    std::abs(split - graded) / scale);
    return split;
}

InterleavedBasis interleave_basis(const KreinDecomposition& kd, const std::vector<ComplexVector>& xi_plus,
                                  const std::vector<ComplexVector>& xi_minus, double tol) {
    auto check = [&](const std::vector<ComplexVector>& xs, const ComplexMatrix& foreign, const char* label) {
        for (std::size_t i = 0; i < xs.size(); ++i) {
            require_dim(xs[i], kd.P.rows(), "interleave_basis");
            if ((foreign * xs[i]).norm() > tol * std::max(1.0, xs[i].norm()))
                throw Error(ErrorKind::NotOrthonormal, std::string(label) + " vector outside its subspace");
            for (std::size_t j = 0; j <= i; ++j) {
                const Complex g = hilbert_from_krein(kd, xs[j], xs[i]);
                const double target = i == j ? 1.0 : 0.0;
                if (std::abs(g - target) > tol)
                    throw Error(ErrorKind::NotOrthonormal, std::string(label) + " list is not orthonormal",
                                std::abs(g - target));
            }
        }
    };
    check(xi_plus, kd.Pi_minus, "xi+");
    check(xi_minus, kd.Pi_plus, "xi-");

    InterleavedBasis out;
    const std::size_t pairs = std::min(xi_plus.size(), xi_minus.size());
    for (std::size_t k = 0; k < pairs; ++k) {
        out.vectors.push_back(xi_plus[k]);
        out.vectors.push_back(xi_minus[k]);
    }
    for (std::size_t k = pairs; k < xi_plus.size(); ++k) out.vectors.push_back(xi_plus[k]);
    for (std::size_t k = pairs; k < xi_minus.size(); ++k) out.vectors.push_back(xi_minus[k]);
    out.tail_appended = xi_plus.size() != xi_minus.size();
    for (const auto& v : out.vectors) out.krein_norms.push_back(krein_inner(v, v, kd.P).real());
    return out;
}

ComplexMatrix grading_in_metric_frame(const ComplexMatrix& p, const MetricOperator& m, double tol) {
    require_same_shape(p, m.eta, "pseudo metric");
    ComplexMatrix framed = m.rho_inv * p * m.rho_inv;
    framed = 0.5 * (framed + framed.adjoint()).eval();
    const auto kd = fundamental_decomposition(framed, tol);
    return m.rho_inv * kd.C * m.rho;
}

}  // namespace phqm
