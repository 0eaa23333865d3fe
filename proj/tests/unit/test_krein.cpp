#include <gtest/gtest.h>

#include <cmath>

#include "phqm/biortho.hpp"
#include "phqm/error.hpp"
#include "phqm/krein.hpp"
#include "phqm/metric.hpp"
#include "support/matchers.hpp"
#include "support/random_matrices.hpp"

namespace phqm {
namespace {

using testing::kind_of;
using testing::mat2;
using testing::vec2;

ComplexMatrix diag2(double a, double b) { return mat2(a, 0.0, 0.0, b); }

void expect_invariants(const KreinDecomposition& kd, double tol) {
    const auto n = kd.P.rows();
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    EXPECT_LE(max_abs(kd.Pi_plus + kd.Pi_minus - id), tol);
    EXPECT_LE(max_abs(kd.Pi_plus * kd.Pi_minus), tol);
    EXPECT_LE(max_abs(kd.Pi_plus * kd.Pi_plus - kd.Pi_plus), tol);
    EXPECT_LE(max_abs(kd.Pi_minus * kd.Pi_minus - kd.Pi_minus), tol);
    EXPECT_LE(max_abs(kd.C - (kd.Pi_plus - kd.Pi_minus)), tol);
    EXPECT_LE(max_abs(kd.C * kd.C - id), tol);
    EXPECT_EQ(kd.dim_plus + kd.dim_minus, n);
}

TEST(Fundamental, Diagonal) {
    const auto kd = fundamental_decomposition(diag2(1.0, -1.0));
    EXPECT_LE(max_abs(kd.Pi_plus - diag2(1.0, 0.0)), 1e-15);
    EXPECT_LE(max_abs(kd.C - diag2(1.0, -1.0)), 1e-15);
    expect_invariants(kd, 1e-15);
}

TEST(Fundamental, Flip) {
    const auto kd = fundamental_decomposition(mat2(0.0, 1.0, 1.0, 0.0));
    EXPECT_LE(max_abs(kd.Pi_plus - mat2(0.5, 0.5, 0.5, 0.5)), 1e-15);
    EXPECT_LE(max_abs(kd.C - mat2(0.0, 1.0, 1.0, 0.0)), 1e-15);
    expect_invariants(kd, 1e-15);
}

TEST(Fundamental, IndefiniteShearMetric) {
    const auto kd = fundamental_decomposition(mat2(1.0, -1.0, -1.0, 0.0));
    EXPECT_EQ(kd.dim_plus, 1);
    EXPECT_EQ(kd.dim_minus, 1);
    expect_invariants(kd, 1e-14);
    // +-(xi, xi) = 1
    EXPECT_NEAR(krein_inner(kd.xi_plus[0], kd.xi_plus[0], kd.P).real(), 1.0, 1e-14);
    EXPECT_NEAR(krein_inner(kd.xi_minus[0], kd.xi_minus[0], kd.P).real(), -1.0, 1e-14);
}

TEST(Fundamental, Errors) {
    EXPECT_EQ(kind_of([] { fundamental_decomposition(mat2(1.0, 0.0, 0.0, 0.0)); }), ErrorKind::DegenerateMetric);
    EXPECT_EQ(kind_of([] { fundamental_decomposition(mat2(1.0, 1.0, 0.0, 1.0)); }), ErrorKind::NotHermitian);
}

TEST(KreinInner, Examples) {
    testing::MatrixSampler rng(3);
    const ComplexVector v = rng.vector(3);
    const ComplexVector w = rng.vector(3);
    EXPECT_LE(std::abs(krein_inner(v, w, ComplexMatrix::Identity(3, 3)) - inner(v, w)), 1e-15);
    EXPECT_EQ(krein_inner(vec2(0.0, 1.0), vec2(0.0, 1.0), diag2(1.0, -1.0)), Complex(-1.0));
    EXPECT_EQ(krein_inner(vec2(1.0, 0.0), vec2(1.0, 0.0), mat2(1.0, -1.0, -1.0, 0.0)), Complex(1.0));
    EXPECT_EQ(kind_of([] { krein_inner(vec2(1.0, 0.0), ComplexVector::Zero(3), diag2(1.0, -1.0)); }),
              ErrorKind::DimensionMismatch);
}

TEST(HilbertFromKrein, Examples) {
    const auto kd = fundamental_decomposition(diag2(1.0, -1.0));
    EXPECT_NEAR(hilbert_from_krein(kd, vec2(0.0, 1.0), vec2(0.0, 1.0)).real(), 1.0, 1e-15);

    const auto flat = fundamental_decomposition(ComplexMatrix::Identity(2, 2));
    const ComplexVector v = vec2(Complex(1.0, 2.0), -3.0);
    EXPECT_NEAR(hilbert_from_krein(flat, v, v).real(), v.squaredNorm(), 1e-13);

    const auto shear = fundamental_decomposition(mat2(1.0, -1.0, -1.0, 0.0));
    const ComplexVector u = vec2(1.0, 1.0);
    const Complex value = hilbert_from_krein(shear, u, u);
    EXPECT_GT(value.real(), 0.0);
    EXPECT_LE(std::abs(value - inner(u, shear.P * (shear.C * u))), 1e-12);
}

TEST(HilbertFromKrein, InconsistentDecompositionDetected) {
    auto kd = fundamental_decomposition(diag2(1.0, -1.0));
    kd.C = ComplexMatrix::Identity(2, 2);
    EXPECT_EQ(kind_of([&] { hilbert_from_krein(kd, vec2(0.0, 1.0), vec2(0.0, 1.0)); }),
              ErrorKind::InconsistentDecomposition);
}

TEST(RandomKrein, InvariantsPositivityAndCrossOrthogonality) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        testing::MatrixSampler rng(4000 + seed);
        const auto n = rng.dimension(2, 16);
        const ComplexMatrix p = rng.indefinite_hermitian(n);
        const auto kd = fundamental_decomposition(p);
        expect_invariants(kd, 1e-10);
        for (int trial = 0; trial < 20; ++trial) {
            const ComplexVector x = rng.vector(n);
            const ComplexVector y = rng.vector(n);
            EXPECT_GT(hilbert_from_krein(kd, x, x).real(), 0.0) << "seed " << seed;
            const Complex cross = krein_inner(kd.Pi_plus * x, kd.Pi_minus * y, p);
            EXPECT_LE(std::abs(cross), 1e-10 * x.norm() * y.norm()) << "seed " << seed;
            // Hermitian symmetry of the induced product
            const Complex xy = hilbert_from_krein(kd, x, y);
            EXPECT_LE(std::abs(xy - std::conj(hilbert_from_krein(kd, y, x))), 1e-10 * x.norm() * y.norm());
        }
    }
}

TEST(Interleave, Examples) {
    const auto kd = fundamental_decomposition(diag2(1.0, -1.0));
    const auto basis = interleave_basis(kd, {vec2(1.0, 0.0)}, {vec2(0.0, 1.0)});
    ASSERT_EQ(basis.vectors.size(), 2u);
    EXPECT_EQ(basis.vectors[0], vec2(1.0, 0.0));
    EXPECT_EQ(basis.vectors[1], vec2(0.0, 1.0));
    EXPECT_EQ(basis.krein_norms, (std::vector<double>{1.0, -1.0}));
    EXPECT_FALSE(basis.tail_appended);

    const auto flip = fundamental_decomposition(mat2(0.0, 1.0, 1.0, 0.0));
    const auto fb = interleave_basis(flip, flip.xi_plus, flip.xi_minus);
    const double r = 1.0 / std::sqrt(2.0);
    // eigenvector phase is free
    EXPECT_NEAR(std::abs(fb.vectors[0].dot(vec2(r, r))), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(fb.vectors[1].dot(vec2(r, -r))), 1.0, 1e-15);
    EXPECT_NEAR(fb.krein_norms[0], 1.0, 1e-15);
    EXPECT_NEAR(fb.krein_norms[1], -1.0, 1e-15);
}

TEST(Interleave, UnequalSizesAppendTail) {
    ComplexMatrix p = ComplexMatrix::Zero(3, 3);
    p.diagonal() << 1.0, -1.0, 1.0;
    const auto kd = fundamental_decomposition(p);
    ComplexVector e0 = ComplexVector::Unit(3, 0), e1 = ComplexVector::Unit(3, 1), e2 = ComplexVector::Unit(3, 2);
    const auto basis = interleave_basis(kd, {e0, e2}, {e1});
    ASSERT_EQ(basis.vectors.size(), 3u);
    EXPECT_EQ(basis.vectors[0], e0);
    EXPECT_EQ(basis.vectors[1], e1);
    EXPECT_EQ(basis.vectors[2], e2);
    EXPECT_TRUE(basis.tail_appended);
    EXPECT_EQ(basis.krein_norms, (std::vector<double>{1.0, -1.0, 1.0}));
}

TEST(Interleave, RejectsBadLists) {
    const auto kd = fundamental_decomposition(diag2(1.0, -1.0));
    EXPECT_EQ(kind_of([&] { interleave_basis(kd, {vec2(1.0, 1.0)}, {}); }), ErrorKind::NotOrthonormal);
    EXPECT_EQ(kind_of([&] { interleave_basis(kd, {vec2(2.0, 0.0)}, {}); }), ErrorKind::NotOrthonormal);
}

TEST(RandomInterleave, OrthonormalityAndAlternatingNorms) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        testing::MatrixSampler rng(5000 + seed);
        const auto n = rng.dimension(2, 12);
        const auto kd = fundamental_decomposition(rng.indefinite_hermitian(n));
        const auto basis = interleave_basis(kd, kd.xi_plus, kd.xi_minus);
        ASSERT_EQ(static_cast<Eigen::Index>(basis.vectors.size()), n);
        const std::size_t pairs = std::min(kd.xi_plus.size(), kd.xi_minus.size());
        for (std::size_t a = 0; a < basis.vectors.size(); ++a) {
            for (std::size_t b = 0; b < basis.vectors.size(); ++b) {
                const Complex g = hilbert_from_krein(kd, basis.vectors[a], basis.vectors[b]);
                EXPECT_LE(std::abs(g - (a == b ? 1.0 : 0.0)), 1e-10) << "seed " << seed;
                const Complex k = krein_inner(basis.vectors[a], basis.vectors[b], kd.P);
                if (a != b) {
                    EXPECT_LE(std::abs(k), 1e-10);
                }
            }
            if (a < 2 * pairs) {
                EXPECT_NEAR(basis.krein_norms[a], a % 2 == 0 ? 1.0 : -1.0, 1e-10);
            }
        }
    }
}

TEST(GradingInMetricFrame, AgreesWithSignedSystem) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        testing::MatrixSampler rng(6000 + seed);
        const auto n = rng.dimension(2, 10);
        const auto c = testing::similarity_case(rng, n, 20.0);
        const auto sys = diagonalize_real_spectrum(c.h);
        const auto m = build_metric(sys);
        const auto cpt = build_cpt(sys, alternating_signatures(sys.size()));
        const ComplexMatrix graded = grading_in_metric_frame(cpt.P, m);
        EXPECT_LE(max_abs(graded - cpt.C), 1e-8 * std::max(1.0, max_abs(cpt.C))) << "seed " << seed;
        EXPECT_LE(max_abs(graded - m.eta_inv * cpt.P), 1e-8 * std::max(1.0, max_abs(cpt.C))) << "seed " << seed;
    }
}

}  // namespace
}  // namespace phqm
