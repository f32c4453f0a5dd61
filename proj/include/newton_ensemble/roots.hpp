#pragma once

#include "newton_ensemble/common.hpp"

namespace newton_ensemble {

using Complex = std::complex<double>;
using VectorXcd = Eigen::VectorXcd;

// Horner evaluation of sum_k a(k) z^k and the derivative.
Complex poly_eval(const VectorXcd& a, Complex z);
Complex poly_eval_derivative(const VectorXcd& a, Complex z);

struct AberthConfig {
  int max_iterations = 400;
  double newton_certificate = 1e-8;  // per-root bound on |f(z)/f'(z)| / max(1,|z|)
  int retries = 4;
};

// All roots of the polynomial with ascending coefficients a (a nonzero
// leading and constant term is assumed; callers strip valuation first).
// Simultaneous Aberth-Ehrlich iteration from a circle of initial guesses,
// followed by Newton polish and a per-root residual certificate.  Throws
// RootFindingFailed when certification fails after retries with perturbed
// initializations.
std::vector<Complex> aberth_roots(const VectorXcd& a, const AberthConfig& cfg = {});

// Convenience for sparse integer-exponent input: strips exact zero leading
// and trailing coefficients (roots at the origin are excluded by
// construction) and returns the remaining degree-many roots in C*.
std::vector<Complex> nonzero_roots(const VectorXcd& coefficients,
                                   const AberthConfig& cfg = {});

}  // namespace newton_ensemble
