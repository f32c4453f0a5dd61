#include "newton_ensemble/region.hpp"

#include <Eigen/Eigenvalues>

namespace newton_ensemble {

namespace {

// Does the face's relative interior lie in the open simplex after scaling
// by 1/p?  Exact: sample/den in P-coords, needs all components > 0 and
// component sum < p * den.
bool face_in_sigma_interior(const Face& f, long long p) {
  long long total = 0;
  for (Eigen::Index j = 0; j < f.sample.num.size(); ++j) {
    if (f.sample.num(j) <= 0) return false;
    total += f.sample.num(j);
  }
  return total < p * f.sample.den;
}

}  // namespace

RegionSolver::RegionSolver(const LatticePolytope& P, SolveConfig cfg)
    : P_(&P), cfg_(cfg), m_(P.dim()), p_(static_cast<double>(P.degree())) {
  if (!P.is_delzant())
    throw NonDelzant("region solve requires a Delzant polytope: " +
                     P.delzant_certificate().reason);
  const auto& faces = P.faces();
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const Face& f = faces[i];
    if (f.dim == m_) continue;  // interior face is the allowed region
    if (!face_in_sigma_interior(f, P.degree())) continue;
    SolvableFace sf;
    sf.face_index = static_cast<int>(i);
    sf.tangent = f.tangent_basis.cast<double>().transpose() / p_;
    sf.generators = f.normal_generators.cast<double>().transpose();
    sf.y_start = f.sample.value() / p_;
    for (int j = 0; j < P.facet_count(); ++j)
      if (std::find(f.active_facets.begin(), f.active_facets.end(), j) ==
          f.active_facets.end())
        sf.inactive_facets.push_back(j);
    candidates_.push_back(std::move(sf));
  }
  // faces() is ordered by decreasing dimension already; keep that order.
}

RegionSolver::FaceSolution RegionSolver::solve_face(const SolvableFace& f,
                                                    const VectorXd& s) const {
  const int r = static_cast<int>(f.tangent.cols());
  const int nc = static_cast<int>(f.generators.cols());
  FaceSolution sol;

  VectorXd t = VectorXd::Zero(r);
  VectorXd c = VectorXd::Zero(nc);
  VectorXd y = f.y_start;

  auto residual_of = [&](const VectorXd& yy, const VectorXd& cc) -> VectorXd {
    return lmap(yy) + f.generators * cc - s;
  };

  VectorXd F = residual_of(y, c);
  double fnorm = F.lpNorm<Eigen::Infinity>();
  MatrixXd J(m_, m_);
  for (int it = 0; it < cfg_.max_newton_iterations && fnorm > cfg_.newton_tol; ++it) {
    J.leftCols(r).noalias() = lmap_jacobian(y) * f.tangent;
    J.rightCols(nc) = f.generators;
    const VectorXd delta = J.partialPivLu().solve(-F);

    double step = 1.0;
    bool moved = false;
    for (int halving = 0; halving < 48; ++halving, step *= 0.5) {
      const VectorXd t2 = t + step * delta.head(r);
      const VectorXd c2 = c + step * delta.tail(nc);
      const VectorXd y2 = f.y_start + f.tangent * t2;
      if ((y2.array() <= 0.0).any() || y2.sum() >= 1.0) continue;  // stay in the chart
      const VectorXd F2 = residual_of(y2, c2);
      const double fn2 = F2.lpNorm<Eigen::Infinity>();
      if (fn2 < fnorm || fn2 <= cfg_.newton_tol) {
        t = t2;
        c = c2;
        y = y2;
        F = F2;
        fnorm = fn2;
        moved = true;
        break;
      }
    }
    if (!moved) break;  // damping stalled; leave convergence check to caller
  }

  sol.converged = fnorm <= cfg_.newton_tol;
  sol.y = y;
  sol.c = c;
  sol.residual = fnorm;
  sol.min_cone = nc > 0 ? c.minCoeff() : 0.0;
  double slack = std::numeric_limits<double>::infinity();
  const VectorXd py = p_ * y;
  for (int j : f.inactive_facets) slack = std::min(slack, P_->facet_value(j, py));
  sol.min_slack = f.inactive_facets.empty() ? 0.0 : slack;
  return sol;
}

RegionResult RegionSolver::finish(const VectorXd& s, int face_index, const VectorXd& tau,
                                  const VectorXd& q, double residual, bool allowed,
                                  bool transition) const {
  RegionResult out;
  out.face_index = face_index;
  const Face& f = P_->faces()[face_index];
  out.face_id = f.id;
  out.face_dim = f.dim;
  out.allowed = allowed;
  out.transition = transition;
  out.tau = tau;
  out.q = q;
  out.residual = residual;
  if (allowed) {
    out.b = 0.0;
  } else {
    out.b = q.dot(tau) + p_ * (softplus_log_sum(s) - softplus_log_sum(s + tau));
  }
  return out;
}

RegionResult RegionSolver::solve(const VectorXd& s, int hint) const {
  const VectorXd x = mu_sigma(s);
  const VectorXd px = p_ * x;
  double lmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < P_->facet_count(); ++i) lmin = std::min(lmin, P_->facet_value(i, px));

  if (lmin > cfg_.transition_slack)
    return finish(s, 0, VectorXd::Zero(m_), px, 0.0, true, false);

  struct Accept {
    int face_index;
    VectorXd tau, q;
    double residual;
    bool marginal;
  };
  std::vector<Accept> accepts;

  // Returns true on a strict accept, which ends the search (the accepting
  // face is then unique).
  auto try_face = [&](const SolvableFace& sf) -> bool {
    const FaceSolution sol = solve_face(sf, s);
    if (!sol.converged || sol.min_cone < -cfg_.cone_tol || sol.min_slack < -cfg_.face_tol)
      return false;
    const bool marginal =
        sol.min_cone < cfg_.transition_slack || sol.min_slack < cfg_.transition_slack;
    accepts.push_back(
        {sf.face_index, -(sf.generators * sol.c), p_ * sol.y, sol.residual, marginal});
    return !marginal;
  };

  bool strict = false;
  if (hint > 0) {
    for (const auto& sf : candidates_)
      if (sf.face_index == hint) {
        strict = try_face(sf);
        break;
      }
  }
  if (!strict) {
    for (const auto& sf : candidates_) {
      if (sf.face_index == hint) continue;
      if (try_face(sf)) break;
    }
  }

  if (!accepts.empty()) {
    // Highest-dimensional accepting face wins; candidate order is already
    // decreasing in dimension apart from the hint.
    std::size_t best = 0;
    for (std::size_t k = 1; k < accepts.size(); ++k)
      if (P_->faces()[accepts[k].face_index].dim > P_->faces()[accepts[best].face_index].dim)
        best = k;
    const Accept& a = accepts[best];
    const bool transition = a.marginal || accepts.size() >= 2;
    return finish(s, a.face_index, a.tau, a.q, a.residual, false, transition);
  }

  // No boundary face accepted: the point is allowed (possibly marginally).
  if (lmin > -cfg_.face_tol)
    return finish(s, 0, VectorXd::Zero(m_), px, 0.0, true, lmin <= cfg_.transition_slack);

  throw NoFaceAccepted("no face accepted at s = [" +
                       [&] {
                         std::string out;
                         for (Eigen::Index j = 0; j < s.size(); ++j)
                           out += (j ? "," : "") + std::to_string(s(j));
                         return out;
                       }() +
                       "], interior slack " + std::to_string(lmin));
}

double RegionSolver::decay_b(const VectorXd& s) const { return solve(s).b; }

double RegionSolver::decay_b_action(const VectorXd& s, int steps) const {
  if (steps < 16) throw ConfigError("decay_b_action needs at least 16 steps");
  if (steps % 2 != 0) ++steps;
  const RegionResult base = solve(s);
  if (base.allowed) return 0.0;
  const VectorXd tau = base.tau;

  auto integrand = [&](double r) -> double {
    const VectorXd sr = s + r * tau;
    const RegionResult res = solve(sr, base.face_index);
    const VectorXd q = res.allowed ? p_ * mu_sigma(sr) : res.q;
    return (q - p_ * mu_sigma(sr)).dot(tau);
  };

  const double h = 1.0 / steps;
  double acc = integrand(0.0) + integrand(1.0);
  for (int k = 1; k < steps; ++k) acc += (k % 2 ? 4.0 : 2.0) * integrand(k * h);
  return acc * h / 3.0;
}

double RegionSolver::u_infty(const VectorXd& s) const {
  return p_ * softplus_log_sum(s) - decay_b(s);
}

VectorXd RegionSolver::grad_b(const VectorXd& s) const {
  const RegionResult res = solve(s);
  return p_ * mu_sigma(s) - res.q;
}

PsiHessian RegionSolver::psi_hessian(const VectorXd& s, double step,
                                     bool reject_transition) const {
  const double h = step > 0.0 ? step : cfg_.hess_step;
  const RegionResult center = solve(s);
  if (reject_transition && center.transition)
    throw TransitionPoint("Hessian undefined at a transition point");

  MatrixXd H(m_, m_);
  for (int k = 0; k < m_; ++k) {
    VectorXd sp = s, sm = s;
    sp(k) += h;
    sm(k) -= h;
    const RegionResult rp = solve(sp, center.face_index);
    const RegionResult rm = solve(sm, center.face_index);
    if (reject_transition && (rp.face_id != center.face_id || rm.face_id != center.face_id))
      throw TransitionPoint("probe points straddle a region interface");
    H.col(k) = (rp.q - rm.q) / (2.0 * h);
  }
  PsiHessian out;
  out.matrix = 0.5 * (H + H.transpose());

  Eigen::SelfAdjointEigenSolver<MatrixXd> es(out.matrix);
  const double threshold = 1e-6 * (out.matrix.trace() + 1.0);
  out.rank = 0;
  for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j)
    if (es.eigenvalues()(j) > threshold) ++out.rank;
  return out;
}

int RegionSolver::count_accepting_faces(const VectorXd& s) const {
  int count = 0;
  for (const auto& sf : candidates_) {
    const FaceSolution sol = solve_face(sf, s);
    if (sol.converged && sol.min_cone >= -cfg_.cone_tol && sol.min_slack >= -cfg_.face_tol)
      ++count;
  }
  return count;
}

RegionResult solve_region(const LatticePolytope& P, const VectorXd& s, SolveConfig cfg) {
  return RegionSolver(P, cfg).solve(s);
}
double decay_b(const LatticePolytope& P, const VectorXd& s, SolveConfig cfg) {
  return RegionSolver(P, cfg).decay_b(s);
}
double decay_b_action(const LatticePolytope& P, const VectorXd& s, int steps,
                      SolveConfig cfg) {
  return RegionSolver(P, cfg).decay_b_action(s, steps);
}
double u_infty(const LatticePolytope& P, const VectorXd& s, SolveConfig cfg) {
  return RegionSolver(P, cfg).u_infty(s);
}
VectorXd grad_b(const LatticePolytope& P, const VectorXd& s, SolveConfig cfg) {
  return RegionSolver(P, cfg).grad_b(s);
}

}  // namespace newton_ensemble
