#include "phqm/tridiagonal.hpp"

#include <cmath>
#include <complex>
#include <limits>

#include "phqm/error.hpp"

namespace phqm {

ComplexVector SymmetricTridiagonal::apply(const ComplexVector& v) const {
    const auto n = static_cast<Eigen::Index>(diag.size());
    require_dim(v, n, "tridiagonal apply");
    ComplexVector out(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        Complex s = diag[static_cast<std::size_t>(j)] * v[j];
        if (j > 0) s += off[static_cast<std::size_t>(j - 1)] * v[j - 1];
        if (j + 1 < n) s += off[static_cast<std::size_t>(j)] * v[j + 1];
        out[j] = s;
    }
    return out;
}

ComplexMatrix SymmetricTridiagonal::apply(const ComplexMatrix& m) const {
    ComplexMatrix out(m.rows(), m.cols());
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.col(c) = apply(ComplexVector(m.col(c)));
    return out;
}

ComplexMatrix SymmetricTridiagonal::dense() const {
    const auto n = static_cast<Eigen::Index>(diag.size());
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        m(j, j) = diag[static_cast<std::size_t>(j)];
        if (j + 1 < n) m(j, j + 1) = m(j + 1, j) = off[static_cast<std::size_t>(j)];
    }
    return m;
}

double SymmetricTridiagonal::frobenius() const {
    double s = 0.0;
    for (const auto& d : diag) s += std::norm(d);
    for (const auto& e : off) s += 2.0 * std::norm(e);
    return std::sqrt(s);
}

std::vector<Complex> tridiagonal_eigenvalues(const SymmetricTridiagonal& t) {
    const std::size_t n = t.size();
    if (n == 0) return {};
    if (t.off.size() + 1 != n) throw Error(ErrorKind::DimensionMismatch, "tridiagonal off-diagonal length");

    std::vector<Complex> d = t.diag;
    std::vector<Complex> e(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) e[i] = t.off[i];

    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr int max_iterations = 60;
    const Complex exceptional(0.75, 0.5);

    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        for (;;) {
            std::size_t m = l;
            for (; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m == l) break;
            if (iter >= max_iterations)
                throw Error(ErrorKind::NoConvergence, "tridiagonal QL exceeded iteration cap", static_cast<double>(l));

            // active block snapshot so a broken-down sweep can be retried
            const std::vector<Complex> d_saved(d.begin() + static_cast<std::ptrdiff_t>(l),
                                               d.begin() + static_cast<std::ptrdiff_t>(m + 1));
            const std::vector<Complex> e_saved(e.begin() + static_cast<std::ptrdiff_t>(l),
                                               e.begin() + static_cast<std::ptrdiff_t>(m + 1));

            bool broke_down = false;
            for (int attempt = 0; attempt < 4; ++attempt) {
                ++iter;
                Complex g;
                if (attempt > 0 || iter % 10 == 0) {
                    g = d[m] - d[l] - exceptional * static_cast<double>(attempt + 1) * e[l];
                } else {
                    g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                    Complex r = std::sqrt(g * g + 1.0);
                    if (std::abs(g - r) > std::abs(g + r)) r = -r;
                    g = d[m] - d[l] + e[l] / (g + r);
                }
                Complex s = 1.0;
                Complex c = 1.0;
                Complex p = 0.0;
                broke_down = false;
                for (std::size_t i = m; i-- > l;) {
                    const Complex f = s * e[i];
                    const Complex b = c * e[i];
                    const Complex r = std::sqrt(f * f + g * g);
                    if (std::abs(r) <= 1e3 * eps * (std::abs(f) + std::abs(g)) || std::abs(r) == 0.0) {
                        broke_down = true;
                        break;
                    }
                    e[i + 1] = r;
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    const Complex q = (d[i] - g) * s + 2.0 * c * b;
                    p = s * q;
                    d[i + 1] = g + p;
                    g = c * q - b;
                }
                if (!broke_down) {
                    d[l] -= p;
                    e[l] = g;
                    e[m] = 0.0;
                    break;
                }
                std::copy(d_saved.begin(), d_saved.end(), d.begin() + static_cast<std::ptrdiff_t>(l));
                std::copy(e_saved.begin(), e_saved.end(), e.begin() + static_cast<std::ptrdiff_t>(l));
            }
            if (broke_down) throw Error(ErrorKind::NoConvergence, "complex orthogonal rotation broke down");
        }
    }
    return d;
}

namespace {

// LU of (T - shift I) with partial pivoting, LAPACK gttrf layout.
struct TridiagonalLU {
    std::vector<Complex> dl, d, du, du2;
    std::vector<bool> swapped;

    TridiagonalLU(const SymmetricTridiagonal& t, Complex shift, double floor) {
        const std::size_t n = t.size();
        d.resize(n);
        for (std::size_t i = 0; i < n; ++i) d[i] = t.diag[i] - shift;
        dl = t.off;
        du = t.off;
        du2.assign(n > 2 ? n - 2 : 0, 0.0);
        swapped.assign(n > 0 ? n - 1 : 0, false);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (std::abs(d[i]) >= std::abs(dl[i])) {
                if (d[i] == 0.0) d[i] = floor;
                const Complex fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
            } else {
                const Complex fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                const Complex temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if (i + 2 < n) {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
                swapped[i] = true;
            }
        }
        for (auto& piv : d)
            if (std::abs(piv) < floor) piv = floor;
    }

    void solve(ComplexVector& b) const {
        const std::size_t n = d.size();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const auto k = static_cast<Eigen::Index>(i);
            if (!swapped[i]) {
                b[k + 1] -= dl[i] * b[k];
            } else {
                const Complex temp = b[k];
                b[k] = b[k + 1];
                b[k + 1] = temp - dl[i] * b[k];
            }
        }
        for (std::size_t i = n; i-- > 0;) {
            const auto k = static_cast<Eigen::Index>(i);
            Complex s = b[k];
            if (i + 1 < n) s -= du[i] * b[k + 1];
            if (i + 2 < n) s -= du2[i] * b[k + 2];
            b[k] = s / d[i];
        }
    }
};

using LongComplex = std::complex<long double>;

// T x - lambda x accumulated in extended precision
ComplexVector extended_residual(const SymmetricTridiagonal& t, const ComplexVector& x, LongComplex lambda) {
    const std::size_t n = t.size();
    ComplexVector r(static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j) {
        const auto k = static_cast<Eigen::Index>(j);
        LongComplex s = (LongComplex(t.diag[j]) - lambda) * LongComplex(x[k]);
        if (j > 0) s += LongComplex(t.off[j - 1]) * LongComplex(x[k - 1]);
        if (j + 1 < n) s += LongComplex(t.off[j]) * LongComplex(x[k + 1]);
        r[k] = Complex(static_cast<double>(s.real()), static_cast<double>(s.imag()));
    }
    return r;
}

// x^dagger T x / x^dagger x in extended precision
LongComplex extended_rayleigh(const SymmetricTridiagonal& t, const ComplexVector& x) {
    const std::size_t n = t.size();
    LongComplex num = 0.0L;
    long double den = 0.0L;
    for (std::size_t j = 0; j < n; ++j) {
        const auto k = static_cast<Eigen::Index>(j);
        LongComplex tx = LongComplex(t.diag[j]) * LongComplex(x[k]);
        if (j > 0) tx += LongComplex(t.off[j - 1]) * LongComplex(x[k - 1]);
        if (j + 1 < n) tx += LongComplex(t.off[j]) * LongComplex(x[k + 1]);
        num += std::conj(LongComplex(x[k])) * tx;
        den += std::norm(LongComplex(x[k]));
    }
    return num / den;
}

}  // namespace

RefinedEigenpair refine_eigenpair(const SymmetricTridiagonal& t, Complex estimate) {
    const auto n = static_cast<Eigen::Index>(t.size());
    const double scale = t.frobenius();
    const double floor = std::numeric_limits<double>::epsilon() * std::max(scale, 1e-300);

    ComplexVector x(n);
    for (Eigen::Index j = 0; j < n; ++j) x[j] = Complex(1.0 + 0.5 * std::sin(0.7 * static_cast<double>(j)), 0.25);
    x.normalize();

    // x^dagger T x minimizes ||T x - lambda x|| for unit x; the bilinear
    // quotient x^T T x / x^T x loses accuracy when x^T x is small
    Complex lambda = estimate;
    double best = std::numeric_limits<double>::infinity();
    ComplexVector best_x = x;
    Complex best_lambda = lambda;
    for (int round = 0; round < 8; ++round) {
        const TridiagonalLU lu(t, lambda, floor);
        for (int it = 0; it < 2; ++it) {
            lu.solve(x);
            x.normalize();
        }
        const ComplexVector tx = t.apply(x);
        lambda = x.dot(tx);
        const double r = (tx - lambda * x).norm();
        if (r < best) {
            best = r;
            best_x = x;
            best_lambda = lambda;
        } else if (round >= 2) {
            break;
        }
    }
    x = std::move(best_x);
    lambda = best_lambda;

    // Residual correction with the residual formed in extended precision.
    // The shift sits slightly off lambda so the solve stays well posed; each
    // step damps the other eigencomponents by about offset/gap.
    const double offset = 1e-6 * std::max(1.0, std::abs(lambda));
    LongComplex exact_lambda = extended_rayleigh(t, x);
    for (int step = 0; step < 3; ++step) {
        const Complex shift(static_cast<double>(exact_lambda.real()) + offset,
                            static_cast<double>(exact_lambda.imag()));
        const TridiagonalLU lu(t, shift, floor);
        ComplexVector y = extended_residual(t, x, exact_lambda);
        lu.solve(y);
        x -= y;
        x.normalize();
        exact_lambda = extended_rayleigh(t, x);
    }
    lambda = Complex(static_cast<double>(exact_lambda.real()), static_cast<double>(exact_lambda.imag()));
    RefinedEigenpair out;
    out.value = lambda;
    out.residual = extended_residual(t, x, LongComplex(lambda)).norm() / std::max(scale, 1e-300);
    out.vector = std::move(x);
    return out;
}

}  // namespace phqm
