#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "phqm/linalg.hpp"
#include "phqm/tridiagonal.hpp"
#include "support/random_matrices.hpp"

namespace phqm {
namespace {

SymmetricTridiagonal random_tridiagonal(testing::MatrixSampler& rng, std::size_t n) {
    SymmetricTridiagonal t;
    const ComplexVector d = rng.vector(static_cast<Eigen::Index>(n));
    const ComplexVector o = rng.vector(static_cast<Eigen::Index>(n - 1));
    t.diag.assign(d.data(), d.data() + d.size());
    t.off.assign(o.data(), o.data() + o.size());
    return t;
}

TEST(Tridiagonal, DenseAndApplyAgree) {
    testing::MatrixSampler rng(11);
    const auto t = random_tridiagonal(rng, 9);
    const ComplexMatrix dense = t.dense();
    EXPECT_EQ(dense, dense.transpose());
    const ComplexVector v = rng.vector(9);
    EXPECT_LE((t.apply(v) - dense * v).norm(), 1e-14);
    const ComplexMatrix m = rng.gaussian(9, 3);
    EXPECT_LE(max_abs(t.apply(m) - dense * m), 1e-14);
    EXPECT_NEAR(t.frobenius(), dense.norm(), 1e-14);
}

TEST(Tridiagonal, DirichletLaplacianClosedForm) {
    const std::size_t n = 50;
    SymmetricTridiagonal t;
    t.diag.assign(n, 2.0);
    t.off.assign(n - 1, -1.0);
    auto values = tridiagonal_eigenvalues(t);
    std::sort(values.begin(), values.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
    for (std::size_t k = 0; k < n; ++k) {
        const double exact = 2.0 - 2.0 * std::cos(std::numbers::pi * static_cast<double>(k + 1) / (n + 1.0));
        EXPECT_NEAR(values[k].real(), exact, 1e-12);
        EXPECT_NEAR(values[k].imag(), 0.0, 1e-12);
    }
}

TEST(Tridiagonal, RandomComplexSymmetricMatchesDenseSolver) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        testing::MatrixSampler rng(12000 + seed);
        const auto n = static_cast<std::size_t>(rng.dimension(2, 40));
        const auto t = random_tridiagonal(rng, n);
        const auto ql = tridiagonal_eigenvalues(t);
        const Eigen::ComplexEigenSolver<ComplexMatrix> dense(t.dense(), false);
        ASSERT_EQ(ql.size(), n);
        // every dense eigenvalue has a QL partner
        for (Eigen::Index k = 0; k < dense.eigenvalues().size(); ++k) {
            double best = 1e300;
            for (const Complex& z : ql) best = std::min(best, std::abs(z - dense.eigenvalues()[k]));
            EXPECT_LE(best, 1e-8 * t.frobenius()) << "seed " << seed;
        }
    }
}

TEST(Refine, RecoversEigenpairFromPerturbedEstimate) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        testing::MatrixSampler rng(13000 + seed);
        const auto n = static_cast<std::size_t>(rng.dimension(4, 60));
        const auto t = random_tridiagonal(rng, n);
        const auto values = tridiagonal_eigenvalues(t);
        const Complex target = values[static_cast<std::size_t>(rng.dimension(0, static_cast<Eigen::Index>(n) - 1))];
        const auto pair = refine_eigenpair(t, target + Complex(1e-9, -1e-9));
        EXPECT_NEAR(pair.vector.norm(), 1.0, 1e-12);
        EXPECT_LE(pair.residual, 1e-11) << "seed " << seed;
        EXPECT_LE((t.apply(pair.vector) - pair.value * pair.vector).norm() / t.frobenius(), 1e-11);
    }
}

}  // namespace
}  // namespace phqm
