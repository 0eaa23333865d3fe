#pragma once

namespace phqm::tol {

// Three tiers: exact algebra, verification of built objects, and anything
// that went through a grid discretization.
inline constexpr double construction = 1e-12;
inline constexpr double verification = 1e-10;
inline constexpr double discretized = 1e-8;

// |Im E| <= reality * max(1, |E|) counts as real.
inline constexpr double reality = 1e-9;

// Eigenvector matrices with a larger 2-norm condition number are treated
// as numerically defective.
inline constexpr double kappa_limit = 1e8;

// Elimination pivots below this fraction of ||M|| are singular.
inline constexpr double singular_pivot = 1e-14;

}  // namespace phqm::tol
