#include "phqm/measurement.hpp"

#include <algorithm>
#include <cmath>

#include "phqm/error.hpp"

namespace phqm {

double EvolutionTrace::max_eta_drift() const {
    if (eta_norms.empty() || eta_norms.front() == 0.0) return 0.0;
    double worst = 0.0;
    for (double v : eta_norms) worst = std::max(worst, std::abs(v - eta_norms.front()));
    return worst / eta_norms.front();
}

ComplexMatrix projector(const BiorthonormalSystem& sys, std::size_t n) {
    if (n >= sys.size())
        throw Error(ErrorKind::IndexOutOfRange, "projector index " + std::to_string(n) + " out of range");
    return sys.psi(n) * sys.phi(n).adjoint();
}

MeasurementReport measure(const BiorthonormalSystem& sys, const MetricOperator& m, const ComplexVector& psi) {
    require_dim(psi, sys.dim(), "measure");
    require_same_shape(m.eta, sys.psi(), "metric");
    const double denom = physical_inner(psi, psi, m).real();
    if (psi.norm() == 0.0 || !(denom > 0.0)) throw Error(ErrorKind::ZeroState, "state vector is zero");

    MeasurementReport report;
    report.outcomes.reserve(sys.size());
    for (std::size_t n = 0; n < sys.size(); ++n) {
        // Lambda_n psi = psi_n <phi_n|psi>
        const ComplexVector projected = sys.psi(n) * sys.phi(n).dot(psi);
        const double p = physical_inner(projected, projected, m).real() / denom;
        report.outcomes.push_back({sys.energies()[n], p});
        report.total += p;
    }
    return report;
}

EvolutionTrace evolve(const ComplexMatrix& h, const BiorthonormalSystem& sys, const MetricOperator& m,
                      const ComplexVector& psi0, std::span<const double> times) {
    require_same_shape(h, sys.psi(), "Hamiltonian");
    require_same_shape(m.eta, sys.psi(), "metric");
    require_dim(psi0, sys.dim(), "evolve");
    if (!std::is_sorted(times.begin(), times.end()))
        throw Error(ErrorKind::InvalidArgument, "evolution times must be sorted");

    const ComplexVector c = sys.phi().adjoint() * psi0;
    const auto& energy = sys.energies();

    EvolutionTrace trace;
    trace.times.assign(times.begin(), times.end());
    for (double t : times) {
        ComplexVector phase(c.size());
        for (Eigen::Index k = 0; k < c.size(); ++k)
            phase[k] = c[k] * std::exp(Complex(0.0, -energy[static_cast<std::size_t>(k)] * t));
        ComplexVector state = t == 0.0 ? psi0 : ComplexVector(sys.psi() * phase);
        trace.eta_norms.push_back(std::sqrt(std::max(0.0, physical_inner(state, state, m).real())));
        trace.reference_norms.push_back(state.norm());
        trace.states.push_back(std::move(state));
    }
    return trace;
}

double probability_continuity_check(const ComplexMatrix& h, const BiorthonormalSystem& h_sys,
                                    const BiorthonormalSystem& observable, const MetricOperator& m, std::size_t n,
                                    double t) {
    if (n >= observable.size())
        throw Error(ErrorKind::IndexOutOfRange, "eigenstate index " + std::to_string(n) + " out of range");
    if (t == 0.0) return 0.0;
    const double times[] = {t};
    const auto trace = evolve(h, h_sys, m, observable.psi(n), times);
    const auto report = measure(observable, m, trace.states.front());
    // 1 - Prob_n, summed from the other outcomes to avoid cancellation
    double leaked = 0.0;
    for (std::size_t k = 0; k < report.outcomes.size(); ++k)
        if (k != n) leaked += report.outcomes[k].probability;
    return leaked;
}

}  // namespace phqm
