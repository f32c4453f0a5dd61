#pragma once

#include "newton_ensemble/common.hpp"
#include "newton_ensemble/polytope.hpp"

namespace newton_ensemble {

// Moment maps and logarithmic coordinates.  A torus-invariant point is the
// vector s with s_j = log|z_j|^2; every function here is a pure function of
// s and safe for concurrent use.

// mu_Sigma(z) in s-coordinates: x_j = e^{s_j} / (1 + sum_k e^{s_k}).
// Computed through log-sum-exp; saturates gracefully for large |s_j|.
VectorXd mu_sigma(const VectorXd& s);

// The chart L : Sigma_interior -> R^m, L(x)_j = log(x_j / (1 - sum x_k)),
// with L(mu_sigma(s)) = s identically.  Throws BoundaryPoint when x has a
// nonpositive component or 1 - sum x <= 0.
VectorXd lmap(const VectorXd& x);
VectorXd lmap_inv(const VectorXd& t);

// Jacobian of L: entries 1/x_0 + delta_jk / x_j with x_0 = 1 - sum x_j.
// Symmetric positive definite; all eigenvalues exceed 1.
MatrixXd lmap_jacobian(const VectorXd& x);

// Moment map of the polytope's monomial embedding (c_alpha = 1) restricted
// to the open orbit: the e^{<alpha,s>}-weighted average of the lattice
// points of P.  Diagnostic use only.
VectorXd mu_polytope_orbit(const LatticePolytope& P, const VectorXd& s);

}  // namespace newton_ensemble
