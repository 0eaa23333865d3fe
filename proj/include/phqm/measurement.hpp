#pragma once

#include <span>
#include <vector>

#include "phqm/biortho.hpp"
#include "phqm/metric.hpp"

namespace phqm {

struct Outcome {
    double eigenvalue = 0.0;
    double probability = 0.0;
};

struct MeasurementReport {
    std::vector<Outcome> outcomes;
    double total = 0.0;
};

/// Time units with hbar = 1.
struct EvolutionTrace {
    std::vector<double> times;
    std::vector<ComplexVector> states;
    std::vector<double> eta_norms;        // sqrt(<Psi, Psi>_+)
    std::vector<double> reference_norms;  // sqrt(<Psi|Psi>)

    /// max |eta_norm(t) - eta_norm(0)| / eta_norm(0)
    double max_eta_drift() const;
};

/// Lambda_n = |psi_n><phi_n|. Throws IndexOutOfRange.
ComplexMatrix projector(const BiorthonormalSystem& sys, std::size_t n);

/// Prob_n = <Lambda_n psi, Lambda_n psi>_+ / <psi, psi>_+. The observable's
/// system may belong to any operator acting on the metric's space.
/// Throws ZeroState.
MeasurementReport measure(const BiorthonormalSystem& sys, const MetricOperator& m, const ComplexVector& psi);

/// Psi(t) = sum_n c_n exp(-i E_n t) psi_n with c_n = <phi_n|psi0>.
/// `sys` must be the eigensystem of `h`; `times` must be sorted.
EvolutionTrace evolve(const ComplexMatrix& h, const BiorthonormalSystem& sys, const MetricOperator& m,
                      const ComplexVector& psi0, std::span<const double> times);

/// Starts in psi_n of `observable`, evolves for t under `h` (using `h_sys`,
/// the eigensystem of h) and returns 1 - Prob_n(Psi(t)).
double probability_continuity_check(const ComplexMatrix& h, const BiorthonormalSystem& h_sys,
                                    const BiorthonormalSystem& observable, const MetricOperator& m, std::size_t n,
                                    double t);

}  // namespace phqm
