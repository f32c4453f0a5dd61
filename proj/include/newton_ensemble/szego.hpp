#pragma once

#include "newton_ensemble/common.hpp"
#include "newton_ensemble/polytope.hpp"

namespace newton_ensemble {

struct KernelDiagResult {
  double log_value = 0.0;  // natural log of the kernel diagonal
  long term_count = 0;     // #(NP cap Z^m)
  VectorXi argmax_alpha;   // lattice point with the largest summand
};

// Lattice points of N*P with their log multinomial weights, built once and
// shared read-only across grid evaluations.
struct LatticeTable {
  int N = 1;
  int np = 0;  // N * degree
  MatrixXi points;
  MatrixXd points_d;         // cached double copy
  VectorXd log_multinomial;  // log C(Np, alpha) per point
};

// log of the squared Fubini-Study L^2 norm of the monomial chi_alpha in
// degree p and dimension m:  log p! - log (p+m)! - log C(p,alpha), where
// C(p,alpha) = p! / ((p-|alpha|)! alpha_1! ... alpha_m!).
// Throws OutOfSimplex when |alpha| > p.
double fs_norm_sq_log(const VectorXi& alpha, int p, int m);

// log C(p, alpha); same domain restriction as above.
double log_multinomial(const VectorXi& alpha, int p);

LatticeTable make_lattice_table(const LatticePolytope& P, int N);

// Diagonal of the conditional kernel for H^0(CP^m, O(Np), NP):
//   Pi(z,z) = [(Np+m)!/(Np)!] * sum_{alpha in NP} C(Np,alpha) e^{<alpha,s>}
//             / (1 + sum_j e^{s_j})^{Np}.
// All sums are shifted into log space, so Np up to a few thousand is fine.
KernelDiagResult kernel_diag(const LatticeTable& table, int m, const VectorXd& s);
KernelDiagResult kernel_diag(const LatticePolytope& P, int N, const VectorXd& s);

// Expected squared Fubini-Study mass of an L^2-normalized random
// polynomial: exp(kernel log value) / term count.
double mass_density(const LatticeTable& table, int m, const VectorXd& s);
double mass_density(const LatticePolytope& P, int N, const VectorXd& s);

// Finite-N potential u_N(s) = (1/N) log sum_{alpha in NP} C(Np,alpha)
// e^{<alpha,s>}, its gradient (a point of P: the weighted lattice average
// over N) and its Hessian (the weighted covariance over N, symmetric PSD).
double u_N(const LatticeTable& table, const VectorXd& s);
VectorXd grad_u_N(const LatticeTable& table, const VectorXd& s);
MatrixXd hess_u_N(const LatticeTable& table, const VectorXd& s);
double u_N(const LatticePolytope& P, int N, const VectorXd& s);
VectorXd grad_u_N(const LatticePolytope& P, int N, const VectorXd& s);
MatrixXd hess_u_N(const LatticePolytope& P, int N, const VectorXd& s);

// log |m_hat_alpha(z)|^2 = log C(Np,alpha) + <alpha,s> - Np log(1+sum e^{s_j}):
// the squared FS mass of the normalized monomial of degree Np.
double monomial_mass_log(const VectorXi& alpha, int np, const VectorXd& s);

}  // namespace newton_ensemble
