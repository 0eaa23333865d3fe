#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <unsupported/Eigen/MatrixFunctions>

#include "phqm/biortho.hpp"
#include "phqm/error.hpp"
#include "phqm/measurement.hpp"
#include "phqm/metric.hpp"
#include "support/matchers.hpp"
#include "support/random_matrices.hpp"

namespace phqm {
namespace {

using testing::kind_of;
using testing::mat2;
using testing::vec2;

const Complex I(0.0, 1.0);

TEST(Projector, Examples) {
    const auto sys = diagonalize_real_spectrum(testing::shear_hamiltonian());
    EXPECT_LE(max_abs(projector(sys, 0) - mat2(1.0, -1.0, 0.0, 0.0)), 1e-15);
    EXPECT_LE(max_abs(projector(sys, 0) + projector(sys, 1) - ComplexMatrix::Identity(2, 2)), 1e-12);
    EXPECT_EQ(kind_of([&] { projector(sys, 2); }), ErrorKind::IndexOutOfRange);

    const auto herm = diagonalize_real_spectrum(mat2(1.0, I, -I, 2.0));
    const ComplexMatrix l = projector(herm, 1);
    EXPECT_LE(hermiticity_residual(l), 1e-14);
    EXPECT_LE(max_abs(l - herm.psi(1) * herm.psi(1).adjoint()), 1e-14);
}

TEST(Projector, RandomAlgebra) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        testing::MatrixSampler rng(7000 + seed);
        const auto n = rng.dimension(2, 16);
        const auto sys = diagonalize_real_spectrum(testing::similarity_case(rng, n).h);
        ComplexMatrix sum = ComplexMatrix::Zero(n, n);
        for (std::size_t a = 0; a < sys.size(); ++a) {
            const ComplexMatrix la = projector(sys, a);
            sum += la;
            for (std::size_t b = 0; b < sys.size(); ++b) {
                const ComplexMatrix expected = a == b ? la : ComplexMatrix::Zero(n, n);
                EXPECT_LE(max_abs(la * projector(sys, b) - expected), 1e-10) << "seed " << seed;
            }
        }
        EXPECT_LE(max_abs(sum - ComplexMatrix::Identity(n, n)), 1e-10);
    }
}

TEST(Measure, Examples) {
    const auto sys = diagonalize_real_spectrum(testing::shear_hamiltonian());
    const auto m = build_metric(sys);
    auto report = measure(sys, m, vec2(0.0, 1.0));
    ASSERT_EQ(report.outcomes.size(), 2u);
    EXPECT_NEAR(report.outcomes[0].probability, 0.5, 1e-14);
    EXPECT_NEAR(report.outcomes[1].probability, 0.5, 1e-14);
    EXPECT_EQ(report.outcomes[0].eigenvalue, sys.energies()[0]);
    EXPECT_NEAR(report.total, 1.0, 1e-14);

    // brute force through explicit projectors
    const ComplexVector v = vec2(0.0, 1.0);
    for (std::size_t k = 0; k < 2; ++k) {
        const ComplexVector lv = projector(sys, k) * v;
        EXPECT_NEAR(report.outcomes[k].probability, (lv.dot(m.eta * lv) / v.dot(m.eta * v)).real(), 1e-14);
    }

    report = measure(sys, m, sys.psi(0));
    EXPECT_NEAR(report.outcomes[0].probability, 1.0, 1e-15);
    EXPECT_NEAR(report.outcomes[1].probability, 0.0, 1e-15);

    const auto scaled = measure(sys, m, Complex(-2.0, 3.0) * vec2(0.0, 1.0));
    EXPECT_NEAR(scaled.outcomes[0].probability, 0.5, 1e-14);

    EXPECT_EQ(kind_of([&] { measure(sys, m, ComplexVector::Zero(2)); }), ErrorKind::ZeroState);
    EXPECT_EQ(kind_of([&] { measure(sys, m, ComplexVector::Zero(3)); }), ErrorKind::DimensionMismatch);
}

TEST(Measure, RandomProbabilitiesSumToOne) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        testing::MatrixSampler rng(8000 + seed);
        const auto n = rng.dimension(2, 16);
        const auto sys = diagonalize_real_spectrum(testing::similarity_case(rng, n).h);
        const auto m = build_metric(sys);
        const auto report = measure(sys, m, rng.vector(n));
        EXPECT_NEAR(report.total, 1.0, 1e-12) << "seed " << seed;
        for (const auto& o : report.outcomes) {
            EXPECT_GE(o.probability, 0.0);
            EXPECT_LE(o.probability, 1.0 + 1e-12);
        }
    }
}

TEST(Evolve, ShearClosedForm) {
    const auto h = testing::shear_hamiltonian();
    const auto sys = diagonalize_real_spectrum(h);
    const auto m = build_metric(sys);
    std::vector<double> times(201);
    for (std::size_t k = 0; k < times.size(); ++k)
        times[k] = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(times.size() - 1);
    const auto trace = evolve(h, sys, m, vec2(0.0, 1.0), times);
    EXPECT_EQ(trace.states.front(), vec2(0.0, 1.0));
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double t = times[k];
        EXPECT_NEAR(trace.eta_norms[k] * trace.eta_norms[k], 2.0, 1e-12);
        EXPECT_NEAR(trace.reference_norms[k] * trace.reference_norms[k], 3.0 - 2.0 * std::cos(t), 1e-12);
        // Psi(t) = -e^{-it} psi_0 + e^{-2it} psi_1
        const ComplexVector expected = -std::exp(-I * t) * vec2(1.0, 0.0) + std::exp(-2.0 * I * t) * vec2(1.0, 1.0);
        EXPECT_LE((trace.states[k] - expected).norm(), 1e-13);
    }
    EXPECT_LE(trace.max_eta_drift(), 1e-12);
}

TEST(Evolve, HermitianKeepsReferenceNorm) {
    const ComplexMatrix h = mat2(1.0, Complex(0.5, 0.5), Complex(0.5, -0.5), -2.0);
    const auto sys = diagonalize_real_spectrum(h);
    const auto m = build_metric(sys);
    const std::vector<double> times{0.0, 0.7, 3.0, 11.0};
    const auto trace = evolve(h, sys, m, vec2(1.0, I), times);
    for (double r : trace.reference_norms) EXPECT_NEAR(r, std::sqrt(2.0), 1e-12);
}

TEST(Evolve, RandomDriftAgainstMatrixExponential) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        testing::MatrixSampler rng(9000 + seed);
        const auto n = rng.dimension(2, 8);
        const auto c = testing::similarity_case(rng, n, 20.0);
        const auto sys = diagonalize_real_spectrum(c.h);
        const auto m = build_metric(sys);
        std::vector<double> times(1001);
        for (std::size_t k = 0; k < times.size(); ++k) times[k] = 10.0 * static_cast<double>(k) / 1000.0;
        const ComplexVector psi0 = rng.vector(n);
        const auto trace = evolve(c.h, sys, m, psi0, times);
        EXPECT_LE(trace.max_eta_drift(), 1e-8) << "seed " << seed;
        const ComplexMatrix u = (ComplexMatrix(-I * 3.0 * c.h)).exp();
        const ComplexVector direct = u * psi0;
        EXPECT_LE((trace.states[300] - direct).norm(), 1e-8 * direct.norm()) << "seed " << seed;
    }
}

TEST(Evolve, RejectsUnsortedTimes) {
    const auto sys = diagonalize_real_spectrum(testing::shear_hamiltonian());
    const auto m = build_metric(sys);
    const std::vector<double> times{1.0, 0.5};
    EXPECT_EQ(kind_of([&] { evolve(testing::shear_hamiltonian(), sys, m, vec2(1.0, 0.0), times); }),
              ErrorKind::InvalidArgument);
}

TEST(Continuity, StationaryStatesDoNotLeak) {
    const auto h = testing::shear_hamiltonian();
    const auto sys = diagonalize_real_spectrum(h);
    const auto m = build_metric(sys);
    EXPECT_EQ(probability_continuity_check(h, sys, sys, m, 0, 0.0), 0.0);
    EXPECT_LE(probability_continuity_check(h, sys, sys, m, 0, 1e-2), 1e-28);
    EXPECT_LE(probability_continuity_check(h, sys, sys, m, 1, 1.0), 1e-28);
    const ComplexMatrix herm = mat2(0.0, 1.0, 1.0, 1.0);
    const auto hs = diagonalize_real_spectrum(herm);
    const auto hm = build_metric(hs);
    EXPECT_LE(probability_continuity_check(herm, hs, hs, hm, 1, 5.0), 1e-28);
    EXPECT_EQ(kind_of([&] { probability_continuity_check(h, sys, sys, m, 2, 1.0); }), ErrorKind::IndexOutOfRange);
}

TEST(Continuity, PerturbedEvolutionLeaksQuadratically) {
    // H' = H + eta^{-1} K with K Hermitian stays pseudo-Hermitian for the same eta
    const auto h0 = testing::shear_hamiltonian();
    const auto observable = diagonalize_real_spectrum(h0);
    const auto m = build_metric(observable);
    const ComplexMatrix k = mat2(0.0, 0.2, 0.2, 0.1);
    const ComplexMatrix h = h0 + m.eta_inv * k;
    ASSERT_LE(verify_pseudo_hermiticity(h, m.eta), 1e-14);
    const auto h_sys = diagonalize_real_spectrum(h);

    std::vector<double> leaks;
    for (double t : {1e-2, 1e-3}) {
        const double leak = probability_continuity_check(h, h_sys, observable, m, 0, t);
        const ComplexVector state = (ComplexMatrix(-I * t * h)).exp() * observable.psi(0);
        const ComplexVector other = projector(observable, 1) * state;
        const double oracle = physical_inner(other, other, m).real() / physical_inner(state, state, m).real();
        EXPECT_NEAR(leak, oracle, 1e-8 * oracle);
        leaks.push_back(leak);
    }
    EXPECT_GT(leaks[0], 0.0);
    EXPECT_NEAR(leaks[0] / leaks[1], 100.0, 1.0);
}

}  // namespace
}  // namespace phqm
