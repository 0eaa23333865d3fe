#pragma once

// Seeded generators for the property suites.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "phqm/linalg.hpp"

namespace phqm::testing {

class MatrixSampler {
public:
    explicit MatrixSampler(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    Eigen::Index dimension(Eigen::Index lo, Eigen::Index hi) {
        return std::uniform_int_distribution<Eigen::Index>(lo, hi)(rng_);
    }

    ComplexMatrix gaussian(Eigen::Index rows, Eigen::Index cols) {
        std::normal_distribution<double> g;
        ComplexMatrix m(rows, cols);
        for (Eigen::Index j = 0; j < cols; ++j)
            for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = Complex(g(rng_), g(rng_));
        return m;
    }

    ComplexVector vector(Eigen::Index n) { return gaussian(n, 1).col(0); }

    ComplexMatrix unitary(Eigen::Index n) {
        Eigen::HouseholderQR<ComplexMatrix> qr(gaussian(n, n));
        return qr.householderQ() * ComplexMatrix::Identity(n, n);
    }

    /// U diag(s) V^dagger with singular values spread over [1, kappa].
    ComplexMatrix conditioned(Eigen::Index n, double kappa) {
        Eigen::VectorXd s(n);
        for (Eigen::Index k = 0; k < n; ++k) s[k] = std::exp(uniform(0.0, std::log(kappa)));
        s[0] = 1.0;
        s[n - 1] = kappa;
        return unitary(n) * s.cast<Complex>().asDiagonal() * unitary(n).adjoint();
    }

    /// Ascending energies in [-5, 5] with gaps of at least `gap`.
    std::vector<double> spectrum(Eigen::Index n, double gap = 0.05) {
        for (;;) {
            std::vector<double> e(static_cast<std::size_t>(n));
            for (auto& x : e) x = uniform(-5.0, 5.0);
            std::sort(e.begin(), e.end());
            bool ok = true;
            for (std::size_t k = 1; k < e.size(); ++k) ok = ok && e[k] - e[k - 1] >= gap;
            if (ok) return e;
        }
    }

    /// Hermitian P with eigenvalues of random sign and magnitude in [0.1, 3].
    ComplexMatrix indefinite_hermitian(Eigen::Index n) {
        Eigen::VectorXd lambda(n);
        for (Eigen::Index k = 0; k < n; ++k) lambda[k] = (uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0) * uniform(0.1, 3.0);
        const ComplexMatrix u = unitary(n);
        ComplexMatrix p = u * lambda.cast<Complex>().asDiagonal() * u.adjoint();
        return 0.5 * (p + p.adjoint());
    }

private:
    std::mt19937_64 rng_;
};

struct SimilarityCase {
    ComplexMatrix h;
    ComplexMatrix s;
    std::vector<double> energies;
};

/// H = S diag(E) S^{-1} with kappa(S) <= kappa.
inline SimilarityCase similarity_case(MatrixSampler& rng, Eigen::Index n, double kappa = 100.0) {
    SimilarityCase c;
    c.s = rng.conditioned(n, kappa);
    c.energies = rng.spectrum(n);
    Eigen::VectorXcd d(n);
    for (Eigen::Index k = 0; k < n; ++k) d[k] = c.energies[static_cast<std::size_t>(k)];
    c.h = c.s * d.asDiagonal() * c.s.inverse();
    return c;
}

}  // namespace phqm::testing
