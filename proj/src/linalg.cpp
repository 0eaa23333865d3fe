#include "phqm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "phqm/error.hpp"

namespace phqm {

namespace {

std::string shape(const ComplexMatrix& m) {
    std::ostringstream os;
    os << m.rows() << "x" << m.cols();
    return os.str();
}

}  // namespace

std::vector<std::size_t> spectral_order(const std::vector<Complex>& values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a].real() < values[b].real(); });
    // runs of nearly equal real parts are ordered by imaginary part so
    // conjugate pairs come out in a fixed order
    std::size_t start = 0;
    while (start < order.size()) {
        std::size_t end = start + 1;
        while (end < order.size()) {
            const Complex lo = values[order[end - 1]];
            const Complex hi = values[order[end]];
            const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
            if (hi.real() - lo.real() > 1e-12 * scale) break;
            ++end;
        }
        std::stable_sort(order.begin() + static_cast<std::ptrdiff_t>(start),
                         order.begin() + static_cast<std::ptrdiff_t>(end),
                         [&](std::size_t a, std::size_t b) { return values[a].imag() < values[b].imag(); });
        start = end;
    }
    return order;
}

void require_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() == 0 || m.rows() != m.cols())
        throw Error(ErrorKind::DimensionMismatch, std::string(what) + " must be square and non-empty, got " + shape(m));
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": " + shape(a) + " vs " + shape(b));
}

void require_dim(const ComplexVector& v, Eigen::Index n, const char* what) {
    if (v.size() != n)
        throw Error(ErrorKind::DimensionMismatch,
                    std::string(what) + ": expected dimension " + std::to_string(n) + ", got " + std::to_string(v.size()));
}

void require_finite(const ComplexMatrix& m, const char* what) {
    if (!m.allFinite()) throw Error(ErrorKind::NonFinite, std::string(what) + " has non-finite entries");
}

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "add");
    return a + b;
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows())
        throw Error(ErrorKind::DimensionMismatch, "multiply: " + shape(a) + " * " + shape(b));
    return a * b;
}

ComplexVector apply(const ComplexMatrix& a, const ComplexVector& v) {
    require_dim(v, a.cols(), "apply");
    return a * v;
}

ComplexMatrix adjoint(const ComplexMatrix& a) { return a.adjoint(); }

ComplexMatrix inverse(const ComplexMatrix& m) {
    require_square(m, "inverse");
    const double scale = frobenius(m);
    Eigen::PartialPivLU<ComplexMatrix> lu(m);
    const double pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
    if (!(pivot >= tol::singular_pivot * scale) || scale == 0.0)
        throw Error(ErrorKind::SingularMatrix, "pivot magnitude below threshold", pivot);
    return lu.inverse();
}

Complex inner(const ComplexVector& v, const ComplexVector& w) {
    require_dim(w, v.size(), "inner");
    return v.dot(w);  // Eigen conjugates the left operand
}

double norm(const ComplexVector& v) { return v.norm(); }

double frobenius(const ComplexMatrix& m) { return m.norm(); }

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double hermiticity_residual(const ComplexMatrix& m) {
    const double n = frobenius(m);
    return n == 0.0 ? 0.0 : (m - m.adjoint()).norm() / n;
}

double condition_number(const ComplexMatrix& m) {
    if (m.size() == 0) return 1.0;
    Eigen::BDCSVD<ComplexMatrix> svd(m);
    const auto& s = svd.singularValues();
    const double smin = s.minCoeff();
    if (smin <= 0.0) return std::numeric_limits<double>::infinity();
    return s.maxCoeff() / smin;
}

Eigen::Index dominant_index(const ComplexVector& v) {
    if (v.size() == 0) return 0;
    const double largest = v.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (std::abs(v[i]) >= largest * (1.0 - 1e-10)) return i;
    return 0;
}

void fix_phase(Eigen::Ref<ComplexVector> v) {
    const ComplexVector copy = v;
    const Complex pivot = copy[dominant_index(copy)];
    if (std::abs(pivot) == 0.0) return;
    v *= std::abs(pivot) / pivot;
}

EigenDecomposition eig_general(const ComplexMatrix& m, double tol) {
    require_square(m, "eig_general");
    require_finite(m, "eig_general input");
    const auto n = m.rows();

    Eigen::ComplexEigenSolver<ComplexMatrix> solver;
    solver.setMaxIterations(100 * n);
    solver.compute(m, true);
    if (solver.info() != Eigen::Success)
        throw Error(ErrorKind::NoConvergence, "QR iteration exceeded " + std::to_string(100 * n) + " sweeps");

    const Eigen::VectorXcd raw = solver.eigenvalues();
    const std::vector<Complex> values(raw.data(), raw.data() + raw.size());
    const auto order = spectral_order(values);

    EigenDecomposition out;
    out.eigenvalues.reserve(static_cast<std::size_t>(n));
    out.right_eigenvectors.resize(n, n);
    const double scale = frobenius(m);
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto src = order[static_cast<std::size_t>(k)];
        const Complex lambda = values[src];
        ComplexVector v = solver.eigenvectors().col(static_cast<Eigen::Index>(src));
        v.normalize();
        fix_phase(v);
        const double residual = (m * v - lambda * v).norm();
        if (residual > tol * scale)
            throw Error(ErrorKind::NoConvergence, "eigenpair residual above tolerance", residual);
        out.eigenvalues.push_back(lambda);
        out.right_eigenvectors.col(k) = v;
    }
    out.condition_estimate = condition_number(out.right_eigenvectors);
    return out;
}

HermitianEigenDecomposition eig_hermitian(const ComplexMatrix& m, double tol) {
    require_square(m, "eig_hermitian");
    require_finite(m, "eig_hermitian input");
    const double scale = frobenius(m);
    const double defect = (m - m.adjoint()).norm();
    if (defect > tol * scale) throw Error(ErrorKind::NotHermitian, "||M - M^dagger|| exceeds tolerance", defect);

    const ComplexMatrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    if (solver.info() != Eigen::Success) throw Error(ErrorKind::NoConvergence, "Hermitian eigensolver failed");

    HermitianEigenDecomposition out;
    out.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
    out.eigenvectors = solver.eigenvectors();
    for (Eigen::Index k = 0; k < out.eigenvectors.cols(); ++k) fix_phase(out.eigenvectors.col(k));
    return out;
}

PositiveRoot positive_root(const ComplexMatrix& m, double tol) {
    const auto eig = eig_hermitian(m, tol);
    const double lo = eig.eigenvalues.front();
    const double hi = eig.eigenvalues.back();
    if (!(lo > tol * std::max(1.0, std::abs(hi))))
        throw Error(ErrorKind::NotPositiveDefinite, "smallest eigenvalue is not positive", lo);

    const Eigen::VectorXd lambda = Eigen::Map<const Eigen::VectorXd>(eig.eigenvalues.data(),
                                                                      static_cast<Eigen::Index>(eig.eigenvalues.size()));
    const ComplexMatrix& u = eig.eigenvectors;
    PositiveRoot out;
    out.root = u * lambda.cwiseSqrt().cast<Complex>().asDiagonal() * u.adjoint();
    out.inverse_root = u * lambda.cwiseSqrt().cwiseInverse().cast<Complex>().asDiagonal() * u.adjoint();
    // exact Hermiticity
    out.root = 0.5 * (out.root + out.root.adjoint()).eval();
    out.inverse_root = 0.5 * (out.inverse_root + out.inverse_root.adjoint()).eval();
    out.min_eigenvalue = lo;
    out.max_eigenvalue = hi;
    return out;
}

ComplexMatrix sqrt_positive(const ComplexMatrix& m, double tol) { return positive_root(m, tol).root; }

}  // namespace phqm
