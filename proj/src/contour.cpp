#include "phqm/contour.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "phqm/error.hpp"

namespace phqm {

namespace {

constexpr double pi = std::numbers::pi;

// angle reduced to (-pi, pi]
double wrap(double a) {
    double r = std::remainder(a, 2.0 * pi);
    if (r <= -pi) r += 2.0 * pi;
    return r;
}

bool same_angle(double a, double b) { return std::abs(wrap(a - b)) <= 1e-12; }

}  // namespace

ContourSpec ContourSpec::real_line() { return ContourSpec{{Segment{0.0, 1.0}}, true, Complex(0.0, 0.0)}; }

ContourSpec ContourSpec::wedge(double direction) {
    return ContourSpec{{Segment{pi - direction, 1.0}, Segment{direction, 1.0}}, true, Complex(0.0, 0.0)};
}

Contour::Contour(std::vector<Segment> segments, std::vector<double> joints, std::vector<Complex> tangents,
                 Complex anchor, bool symmetric)
    : segments_(std::move(segments)),
      joints_(std::move(joints)),
      tangents_(std::move(tangents)),
      anchor_(anchor),
      symmetric_(symmetric) {
    if (segments_.empty()) throw Error(ErrorKind::InvalidArgument, "contour needs at least one segment");
    if (joints_.size() + 1 != segments_.size() || tangents_.size() != segments_.size())
        throw Error(ErrorKind::DimensionMismatch, "contour joints/tangents do not match the segments");
    if (!std::is_sorted(joints_.begin(), joints_.end()))
        throw Error(ErrorKind::InvalidArgument, "contour joints must ascend");
}

Complex Contour::tangent(double x) const {
    const auto s = static_cast<std::size_t>(std::upper_bound(joints_.begin(), joints_.end(), x) - joints_.begin());
    return tangents_[s];
}

Complex Contour::walk(double x) const {
    const std::size_t last = segments_.size() - 1;
    auto s = static_cast<std::size_t>(std::upper_bound(joints_.begin(), joints_.end(), 0.0) - joints_.begin());
    Complex z = anchor_;
    double pos = 0.0;
    if (x >= 0.0) {
        for (;; ++s) {
            const double end = s < last ? joints_[s] : std::numeric_limits<double>::infinity();
            if (x <= end) return z + tangents_[s] * (x - pos);
            z += tangents_[s] * (end - pos);
            pos = end;
        }
    }
    for (;; --s) {
        const double start = s > 0 ? joints_[s - 1] : -std::numeric_limits<double>::infinity();
        if (x >= start) return z + tangents_[s] * (x - pos);
        z += tangents_[s] * (start - pos);
        pos = start;
    }
}

Complex Contour::point(double x) const {
    if (symmetric_ && x < 0.0) return -std::conj(walk(-x));
    return walk(x);
}

Contour Contour::snapped(double h) const {
    if (!(h > 0.0)) throw Error(ErrorKind::InvalidArgument, "grid spacing must be positive");
    std::vector<double> joints(joints_.size());
    for (std::size_t k = 0; k < joints_.size(); ++k) joints[k] = std::round(joints_[k] / h) * h;
    for (std::size_t k = 1; k < joints.size(); ++k)
        if (joints[k] <= joints[k - 1])
            throw Error(ErrorKind::JointOnNode, "two contour joints snap to the same grid node", joints[k]);
    std::vector<Segment> segments = segments_;
    for (std::size_t k = 1; k + 1 < segments.size(); ++k) segments[k].length = joints[k] - joints[k - 1];
    return Contour(std::move(segments), std::move(joints), tangents_, anchor_, symmetric_);
}

Contour build_contour(const ContourSpec& spec) {
    const auto& segs = spec.segments;
    if (segs.empty()) throw Error(ErrorKind::InvalidArgument, "contour needs at least one segment");
    double total = 0.0;
    for (const auto& s : segs) {
        if (!std::isfinite(s.direction) || !std::isfinite(s.length) || !(s.length > 0.0))
            throw Error(ErrorKind::InvalidArgument, "segment lengths must be positive and angles finite");
        total += s.length;
    }
    if (!std::isfinite(spec.anchor.real()) || !std::isfinite(spec.anchor.imag()))
        throw Error(ErrorKind::NonFinite, "contour anchor is not finite");

    const std::size_t count = segs.size();
    if (spec.symmetric) {
        for (std::size_t k = 0; k < count / 2; ++k) {
            const auto& left = segs[k];
            const auto& right = segs[count - 1 - k];
            if (!same_angle(left.direction, pi - right.direction) ||
                std::abs(left.length - right.length) > 1e-12 * std::max(left.length, right.length))
                throw Error(ErrorKind::AsymmetricContour,
                            "segment " + std::to_string(k) + " does not mirror segment " + std::to_string(count - 1 - k));
        }
        if (count % 2 == 1 && !same_angle(2.0 * segs[count / 2].direction, 0.0))
            throw Error(ErrorKind::AsymmetricContour, "middle segment must be horizontal");
        if (std::abs(spec.anchor.real()) > 1e-12 * std::max(1.0, std::abs(spec.anchor)))
            throw Error(ErrorKind::AsymmetricContour, "gamma(0) must lie on the imaginary axis", spec.anchor.real());
    }

    std::vector<double> joints(count - 1);
    double cumulative = -0.5 * total;
    for (std::size_t k = 0; k + 1 < count; ++k) {
        cumulative += segs[k].length;
        joints[k] = cumulative;
    }
    if (spec.symmetric) {
        // exact mirror positions
        for (std::size_t k = 0; k < joints.size() / 2; ++k) joints[k] = -joints[joints.size() - 1 - k];
        if (joints.size() % 2 == 1) joints[joints.size() / 2] = 0.0;
    }

    std::vector<Complex> tangents(count);
    for (std::size_t k = 0; k < count; ++k) {
        const bool left_of_centre = k + 1 < count && joints[k] <= 0.0;
        const double angle = left_of_centre ? segs[k].direction + pi : segs[k].direction;
        tangents[k] = std::polar(1.0, wrap(angle));
        if (!(tangents[k].real() > 1e-12))
            throw Error(ErrorKind::InvalidArgument,
                        "segment " + std::to_string(k) + " does not advance to the right", wrap(angle));
    }
    if (spec.symmetric) {
        // mirror pairs share conjugate tangents bit for bit
        for (std::size_t k = 0; k < count / 2; ++k) tangents[k] = std::conj(tangents[count - 1 - k]);
        if (count % 2 == 1) tangents[count / 2] = Complex(1.0, 0.0);
    }
    return Contour(segs, std::move(joints), std::move(tangents), spec.anchor, spec.symmetric);
}

PotentialSpec::PotentialSpec(Function f, std::string label, std::optional<double> exponent)
    : f_(std::move(f)), label_(std::move(label)), exponent_(exponent) {}

PotentialSpec PotentialSpec::power(double exponent) {
    if (!std::isfinite(exponent) || exponent < 0.0)
        throw Error(ErrorKind::InvalidArgument, "power exponent must be finite and non-negative", exponent);
    const bool integral = exponent == std::floor(exponent) && exponent <= 64.0;
    Function f = [exponent, integral](Complex z) -> Complex {
        if (exponent == 0.0) return -1.0;
        if (z == Complex(0.0, 0.0)) return 0.0;
        const Complex iz(-z.imag(), z.real());
        if (integral) {
            Complex r = iz;
            for (int k = 1; k < static_cast<int>(exponent); ++k) r *= iz;
            return -r;
        }
        return -std::pow(iz, exponent);
    };
    std::ostringstream label;
    label << "-(iz)^" << exponent;
    return PotentialSpec(std::move(f), label.str(), exponent);
}

PotentialSpec PotentialSpec::polynomial(std::vector<Complex> coefficients) {
    if (coefficients.empty()) throw Error(ErrorKind::InvalidArgument, "polynomial needs coefficients");
    for (const auto& c : coefficients)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw Error(ErrorKind::NonFinite, "polynomial coefficient is not finite");
    Function f = [c = std::move(coefficients)](Complex z) {
        Complex acc = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
        return acc;
    };
    return PotentialSpec(std::move(f), "polynomial", std::nullopt);
}

PotentialSpec PotentialSpec::custom(Function f, std::string label) {
    if (!f) throw Error(ErrorKind::InvalidArgument, "custom potential is empty");
    return PotentialSpec(std::move(f), std::move(label), std::nullopt);
}

ComplexMatrix DiscretizedOperator::parity() const { return parity_matrix(grid_points); }

DiscretizedOperator discretize(const PotentialSpec& v, const Contour& c, Eigen::Index n, double half_length) {
    if (n < 5 || n % 2 == 0)
        throw Error(ErrorKind::GridTooCoarse, "grid needs an odd number of points >= 5", static_cast<double>(n));
    if (!std::isfinite(half_length) || !(half_length > 0.0))
        throw Error(ErrorKind::InvalidArgument, "half length L must be positive", half_length);

    const double h = 2.0 * half_length / static_cast<double>(n + 1);
    DiscretizedOperator d{c.snapped(h), n, half_length, h, {}, {}, {}, {}};
    const auto centre = (n - 1) / 2;
    const auto size = static_cast<std::size_t>(n);

    // nodes with one Dirichlet node on each side
    std::vector<Complex> z(size + 2);
    for (Eigen::Index j = -1; j <= n; ++j)
        z[static_cast<std::size_t>(j + 1)] = d.contour.point(static_cast<double>(j - centre) * h);

    d.nodes.resize(size);
    d.points.resize(size);
    d.weights.resize(size);
    std::vector<Complex> step(size + 1);  // step[j] = z_j - z_{j-1}
    for (std::size_t j = 0; j <= size; ++j) step[j] = z[j + 1] - z[j];

    d.H.diag.resize(size);
    d.H.off.resize(size - 1);
    std::vector<Complex> root(size);
    for (std::size_t j = 0; j < size; ++j) {
        const Complex a = step[j];
        const Complex b = step[j + 1];
        d.nodes[j] = static_cast<double>(static_cast<Eigen::Index>(j) - centre) * h;
        d.points[j] = z[j + 1];
        d.weights[j] = 0.5 * (a + b);
        root[j] = std::sqrt(d.weights[j]);
        const Complex pot = v(z[j + 1]);
        if (!std::isfinite(pot.real()) || !std::isfinite(pot.imag()))
            throw Error(ErrorKind::NonFinite, "potential is not finite on the contour", d.nodes[j]);
        d.H.diag[j] = 2.0 / (a * b) + pot;
    }
    for (std::size_t j = 0; j + 1 < size; ++j) d.H.off[j] = -1.0 / (step[j + 1] * (root[j] * root[j + 1]));
    return d;
}

ComplexMatrix parity_matrix(Eigen::Index n) {
    if (n < 1 || n % 2 == 0) throw Error(ErrorKind::GridTooCoarse, "parity needs an odd grid", static_cast<double>(n));
    ComplexMatrix r = ComplexMatrix::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) r(j, n - 1 - j) = 1.0;
    return r;
}

double pt_symmetry_check(const DiscretizedOperator& d) {
    if (!d.contour.symmetric()) throw Error(ErrorKind::AsymmetricContour, "PT check needs a symmetric contour");
    const auto& diag = d.H.diag;
    const auto& off = d.H.off;
    const std::size_t n = diag.size();
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) sum += std::norm(std::conj(diag[n - 1 - j]) - diag[j]);
    for (std::size_t j = 0; j + 1 < n; ++j) sum += 2.0 * std::norm(std::conj(off[n - 2 - j]) - off[j]);
    const double scale = d.H.frobenius();
    return scale == 0.0 ? 0.0 : std::sqrt(sum) / scale;
}

bool SpectrumSolution::all_real() const { return std::all_of(real.begin(), real.end(), [](bool r) { return r; }); }

SpectrumSolution solve_spectrum(const DiscretizedOperator& d, Eigen::Index k, const SpectrumOptions& options) {
    const Eigen::Index n = d.grid_points;
    if (k < 1 || k > n / 4)
        throw Error(ErrorKind::InvalidArgument, "number of modes must lie in [1, grid_points/4]", static_cast<double>(k));

    const auto all = tridiagonal_eigenvalues(d.H);
    const auto order = spectral_order(all);

    SpectrumSolution out;
    out.modes.resize(n, k);
    for (Eigen::Index m = 0; m < k; ++m) {
        const Complex estimate = all[order[static_cast<std::size_t>(m)]];
        auto pair = refine_eigenpair(d.H, estimate);
        // keep the QL value when refinement wandered to a neighbour
        const double gap = m + 1 < static_cast<Eigen::Index>(all.size())
                               ? std::abs(all[order[static_cast<std::size_t>(m + 1)]] - estimate)
                               : std::abs(estimate);
        if (std::abs(pair.value - estimate) > 0.25 * gap)
            throw Error(ErrorKind::NoConvergence, "inverse iteration left eigenvalue " + std::to_string(m),
                        std::abs(pair.value - estimate));
        fix_phase(pair.vector);
        out.energies.push_back(pair.value);
        out.max_residual = std::max(out.max_residual, pair.residual);
        out.modes.col(m) = pair.vector;
    }

    for (const Complex& e : out.energies) {
        const double rel = std::abs(e.imag()) / std::max(1.0, std::abs(e));
        out.real.push_back(rel <= options.reality);
        out.max_relative_imag = std::max(out.max_relative_imag, rel);
    }
    if (options.require_real && !out.all_real())
        throw Error(ErrorKind::ComplexSpectrum, "computed spectrum has non-real eigenvalues", out.max_relative_imag);

    // modes = basis * coords. H_k is the operator on span(modes) whose
    // eigenpairs are exactly the refined ones; the compression
    // basis^dagger H basis differs from it only by the mode residuals, but
    // those get amplified by the non-orthogonality of the modes.
    Eigen::HouseholderQR<ComplexMatrix> qr(out.modes);
    out.basis = qr.householderQ() * ComplexMatrix::Identity(n, k);
    const ComplexMatrix coords = out.basis.adjoint() * out.modes;
    Eigen::VectorXcd lambda(k);
    for (Eigen::Index m = 0; m < k; ++m) lambda[m] = out.energies[static_cast<std::size_t>(m)];
    out.H_k = coords * lambda.asDiagonal() * inverse(coords);
    const ComplexMatrix reversed = out.basis.colwise().reverse();
    out.P_k = out.basis.adjoint() * reversed;
    out.P_k = (0.5 * (out.P_k + out.P_k.adjoint())).eval();

    out.pt_residual = d.contour.symmetric() ? pt_symmetry_check(d) : std::numeric_limits<double>::infinity();
    if (out.all_real()) {
        try {
            if (out.pt_residual <= options.tol)
                out.system = with_pseudo_metric(out.H_k, out.P_k, options.tol);
            else
                out.system = diagonalize_real_spectrum(out.H_k, options.tol);
        } catch (const Error& e) {
            out.system_error = e.what();
        }
    }
    return out;
}

SignatureScan signature_scan(const DiscretizedOperator& d, Eigen::Index k, const SpectrumOptions& options) {
    const double residual = pt_symmetry_check(d);
    if (residual > options.tol)
        throw Error(ErrorKind::BrokenPTSymmetry, "operator is not PT-symmetric on the grid", residual);
    const auto sol = solve_spectrum(d, k, options);
    if (!sol.all_real())
        throw Error(ErrorKind::ComplexSpectrum, "spectrum is not real for the requested modes", sol.max_relative_imag);
    const auto sys = with_pseudo_metric(sol.H_k, sol.P_k, options.tol);
    SignatureScan out;
    out.signatures = *sys.signatures();
    out.alternating = sys.signatures_alternate();
    out.energies = sol.energies;
    return out;
}

}  // namespace phqm
