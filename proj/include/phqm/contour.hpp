#pragma once

// Schrodinger operator -d^2/dz^2 + v(z) on a piecewise-linear complex
// contour, discretized on a uniform arc-length grid.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "phqm/biortho.hpp"
#include "phqm/tridiagonal.hpp"

namespace phqm {

/// One straight piece of a contour. `direction` is the angle of the ray
/// pointing away from the contour centre (x = 0): a piece left of the
/// centre is traversed along direction + pi, a piece right of it (or
/// straddling it) along direction.
struct Segment {
    double direction = 0.0;  // radians
    double length = 1.0;     // arc length; the two end pieces extend as rays
};

struct ContourSpec {
    std::vector<Segment> segments;  // left to right
    bool symmetric = true;
    Complex anchor{0.0, 0.0};       // gamma(0)

    static ContourSpec real_line();
    /// Two rays meeting at gamma(0) = 0; the right ray leaves at `direction`,
    /// the left one at its mirror pi - direction.
    static ContourSpec wedge(double direction);
};

class Contour {
public:
    Contour(std::vector<Segment> segments, std::vector<double> joints, std::vector<Complex> tangents, Complex anchor,
            bool symmetric);

    const std::vector<Segment>& segments() const noexcept { return segments_; }
    /// Arc-length positions of the inner joints, ascending.
    const std::vector<double>& joints() const noexcept { return joints_; }
    Complex anchor() const noexcept { return anchor_; }
    bool symmetric() const noexcept { return symmetric_; }

    /// Unit tangent of the piece containing x (right-continuous at joints).
    Complex tangent(double x) const;
    /// gamma(x). On a symmetric contour gamma(-x) = -conj(gamma(x)) exactly.
    Complex point(double x) const;

    /// Same pieces with every inner joint moved to the nearest multiple of h.
    /// Throws JointOnNode when two joints collapse onto one node.
    Contour snapped(double h) const;

private:
    Complex walk(double x) const;

    std::vector<Segment> segments_;
    std::vector<double> joints_;
    std::vector<Complex> tangents_;
    Complex anchor_;
    bool symmetric_;
};

/// Validates the pieces and places the inner joints at -T/2 + cumulative
/// lengths (T = total length). With spec.symmetric the pieces must mirror
/// each other under direction -> pi - direction with equal lengths and
/// gamma(0) must be purely imaginary; otherwise throws AsymmetricContour.
Contour build_contour(const ContourSpec& spec);

/// v(z) = -(i z)^N, sum_k c_k z^k, or an arbitrary callable.
class PotentialSpec {
public:
    using Function = std::function<Complex(Complex)>;

    static PotentialSpec power(double exponent);
    static PotentialSpec polynomial(std::vector<Complex> coefficients);  // ascending powers
    static PotentialSpec custom(Function f, std::string label = "custom");

    Complex operator()(Complex z) const { return f_(z); }
    const std::string& label() const noexcept { return label_; }
    std::optional<double> exponent() const noexcept { return exponent_; }

private:
    PotentialSpec(Function f, std::string label, std::optional<double> exponent);

    Function f_;
    std::string label_;
    std::optional<double> exponent_;
};

/// Discretized operator. Nodes sit at x_j = (j - (n-1)/2) h with
/// h = 2L/(n+1), so x = 0 is a node and the Dirichlet points x = +-L lie one
/// step beyond the ends. Grid coordinates are psi_j = sqrt(w_j) u(z_j),
/// with w_j the mean of the two adjacent complex steps, which keeps H
/// complex symmetric. Grid reversal R is the parity operator.
struct DiscretizedOperator {
    Contour contour;  // joints snapped to the grid
    Eigen::Index grid_points = 0;
    double half_length = 0.0;
    double spacing = 0.0;
    std::vector<double> nodes;
    std::vector<Complex> points;  // gamma(x_j)
    std::vector<Complex> weights;  // w_j
    SymmetricTridiagonal H;

    ComplexMatrix dense_hamiltonian() const { return H.dense(); }
    /// R as a dense permutation matrix.
    ComplexMatrix parity() const;
};

/// Throws GridTooCoarse (n < 5 or even), InvalidArgument (L <= 0).
DiscretizedOperator discretize(const PotentialSpec& v, const Contour& c, Eigen::Index n, double half_length);

/// R[j, k] = 1 iff k = n - 1 - j. Throws GridTooCoarse for even n.
ComplexMatrix parity_matrix(Eigen::Index n);

/// ||R conj(H) R - H||_F / ||H||_F. Throws AsymmetricContour.
double pt_symmetry_check(const DiscretizedOperator& d);

struct SpectrumOptions {
    double tol = tol::discretized;  // PT residual and restricted-system tolerance
    double reality = 1e-6;          // |Im E| <= reality * max(1, |E|) counts as real
    bool require_real = false;
};

struct SpectrumSolution {
    std::vector<Complex> energies;  // lowest k by real part
    std::vector<bool> real;
    double max_relative_imag = 0.0;
    ComplexMatrix modes;  // n x k grid eigenvectors, unit columns
    double max_residual = 0.0;  // ||H v - E v|| / ||H||_F over the modes
    ComplexMatrix basis;  // orthonormal basis of span(modes)
    ComplexMatrix H_k;    // restriction of H to span(modes) in basis coordinates
    ComplexMatrix P_k;    // basis^dagger R basis
    double pt_residual = 0.0;
    std::optional<BiorthonormalSystem> system;  // restricted eigensystem in basis coordinates
    std::optional<std::string> system_error;

    bool all_real() const;
};

/// Lowest k eigenvalues by real part and the restricted eigensystem.
/// Throws InvalidArgument (k < 1 or k > n/4), ComplexSpectrum when
/// options.require_real and a kept eigenvalue is not real, NoConvergence.
SpectrumSolution solve_spectrum(const DiscretizedOperator& d, Eigen::Index k, const SpectrumOptions& options = {});

struct SignatureScan {
    std::vector<int> signatures;
    bool alternating = false;
    std::vector<Complex> energies;
};

/// sigma_n = sign <psi_n|R psi_n>. Throws BrokenPTSymmetry, ComplexSpectrum
/// or NullPTNorm.
SignatureScan signature_scan(const DiscretizedOperator& d, Eigen::Index k, const SpectrumOptions& options = {});

}  // namespace phqm
