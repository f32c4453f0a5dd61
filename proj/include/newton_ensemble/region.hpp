#pragma once

#include "newton_ensemble/common.hpp"
#include "newton_ensemble/geometry.hpp"
#include "newton_ensemble/polytope.hpp"

namespace newton_ensemble {

// Tolerances of the normal-bundle solver; overridable per call.
struct SolveConfig {
  double newton_tol = 1e-10;       // residual for the per-face Newton solve
  double cone_tol = 1e-9;          // feasibility slack for cone coefficients
  double face_tol = 1e-9;          // feasibility slack for face inequalities
  double transition_slack = 1e-7;  // margin below which interfaces are flagged
  double hess_step = 1e-4;         // central-difference step for the Hessian
  int max_newton_iterations = 80;
};

struct RegionResult {
  int face_index = -1;       // index into LatticePolytope::faces()
  std::uint64_t face_id = 0;
  int face_dim = 0;          // r; equals m exactly when allowed
  bool allowed = false;
  bool transition = false;   // several faces accept within tolerance
  VectorXd tau;              // normal-cone shift (zero when allowed)
  VectorXd q;                // p mu_Sigma(s + tau); boundary point when forbidden
  double b = 0.0;            // decay value at s
  double residual = 0.0;     // solver residual
};

struct PsiHessian {
  MatrixXd matrix;  // symmetric PSD Hessian of u_infty in s-coordinates
  int rank = 0;     // numerical rank (eigenvalue threshold 1e-6 (trace+1))
};

/**
 * Per-polytope normal-bundle solver.  Given s with x = mu_Sigma(s) outside
 * the scaled interior (1/p)P, finds the unique face F of (1/p)P inside the
 * open simplex, the boundary point q = p y in the closure of pF, and the
 * shift tau with p mu_Sigma(s + tau) = q and -tau in the normal cone at q.
 *
 * Per face the solve runs in log coordinates: with y parameterized over the
 * affine hull of the closed face and v = sum c_i g_i over the face's
 * normal-cone generators g_i = -u_i, damped Newton drives
 * L(y) + v - s to zero; the Jacobian is [L'(y) B | G].  tau = -v.
 *
 * Instances hold only immutable precomputed data; solves are const and
 * freely concurrent.
 */
class RegionSolver {
 public:
  explicit RegionSolver(const LatticePolytope& P, SolveConfig cfg = {});

  const LatticePolytope& polytope() const { return *P_; }
  const SolveConfig& config() const { return cfg_; }

  // hint: face index to try first (spatial coherence across grid sweeps).
  RegionResult solve(const VectorXd& s, int hint = -1) const;

  // b(s) = <q,tau> + p [log(1+sum e^{s_j}) - log(1+sum e^{s_j+tau_j})].
  double decay_b(const VectorXd& s) const;

  // The same value as a path integral of q - p mu_Sigma along sigma = r tau
  // (composite Simpson with `steps` subintervals, steps >= 16 and even).
  double decay_b_action(const VectorXd& s, int steps) const;

  // u_infty(s) = p log(1+sum e^{s_j}) - b(s).
  double u_infty(const VectorXd& s) const;

  // grad_s b = p mu_Sigma(s) - q(s); continuous across region interfaces.
  VectorXd grad_b(const VectorXd& s) const;

  // Central-difference Hessian of u_infty (= Jacobian of s -> q(s)),
  // symmetrized, with numerical rank.  With reject_transition, throws
  // TransitionPoint when the point or any probe point straddles an
  // interface (the Hessian is undefined there).
  PsiHessian psi_hessian(const VectorXd& s, double step = -1.0,
                         bool reject_transition = true) const;

  // Number of faces whose solve meets all acceptance checks at s
  // (diagnostic for the uniqueness property).
  int count_accepting_faces(const VectorXd& s) const;

 private:
  struct SolvableFace {
    int face_index = 0;
    MatrixXd tangent;       // m x r, columns span T_F scaled into Sigma coords
    MatrixXd generators;    // m x (m-r), columns g_i = -u_i
    VectorXd y_start;       // relative-interior sample of F scaled by 1/p
    std::vector<int> inactive_facets;
  };

  struct FaceSolution {
    bool converged = false;
    VectorXd y;
    VectorXd c;
    double residual = 0.0;
    double min_cone = 0.0;    // min_i c_i
    double min_slack = 0.0;   // min over inactive facets of l_j(p y)
  };

  const LatticePolytope* P_;
  SolveConfig cfg_;
  int m_ = 0;
  double p_ = 0.0;
  std::vector<SolvableFace> candidates_;  // boundary faces inside Sigma interior,
                                          // decreasing dimension

  FaceSolution solve_face(const SolvableFace& f, const VectorXd& s) const;
  RegionResult finish(const VectorXd& s, int face_index, const VectorXd& tau,
                      const VectorXd& q, double residual, bool allowed,
                      bool transition) const;
};

// One-shot conveniences (construct a solver internally).
RegionResult solve_region(const LatticePolytope& P, const VectorXd& s, SolveConfig cfg = {});
double decay_b(const LatticePolytope& P, const VectorXd& s, SolveConfig cfg = {});
double decay_b_action(const LatticePolytope& P, const VectorXd& s, int steps,
                      SolveConfig cfg = {});
double u_infty(const LatticePolytope& P, const VectorXd& s, SolveConfig cfg = {});
VectorXd grad_b(const LatticePolytope& P, const VectorXd& s, SolveConfig cfg = {});

}  // namespace newton_ensemble
