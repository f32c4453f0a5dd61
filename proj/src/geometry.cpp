#include "newton_ensemble/geometry.hpp"

namespace newton_ensemble {

VectorXd mu_sigma(const VectorXd& s) {
  const double lse = softplus_log_sum(s);
  VectorXd x(s.size());
  for (Eigen::Index j = 0; j < s.size(); ++j) x(j) = std::exp(s(j) - lse);
  return x;
}

VectorXd lmap(const VectorXd& x) {
  const double x0 = 1.0 - x.sum();
  if (x0 <= 0.0 || (x.array() <= 0.0).any())
    throw BoundaryPoint("point is not in the open simplex");
  VectorXd t(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) t(j) = std::log(x(j)) - std::log(x0);
  return t;
}

VectorXd lmap_inv(const VectorXd& t) { return mu_sigma(t); }

MatrixXd lmap_jacobian(const VectorXd& x) {
  const double x0 = 1.0 - x.sum();
  if (x0 <= 0.0 || (x.array() <= 0.0).any())
    throw BoundaryPoint("point is not in the open simplex");
  const Eigen::Index m = x.size();
  MatrixXd J = MatrixXd::Constant(m, m, 1.0 / x0);
  for (Eigen::Index j = 0; j < m; ++j) J(j, j) += 1.0 / x(j);
  return J;
}

VectorXd mu_polytope_orbit(const LatticePolytope& P, const VectorXd& s) {
  const MatrixXi pts = P.lattice_points(1);
  VectorXd logw(pts.rows());
  for (int r = 0; r < pts.rows(); ++r) logw(r) = pts.row(r).cast<double>().dot(s);
  const double lse = log_sum_exp(logw);
  VectorXd out = VectorXd::Zero(P.dim());
  for (int r = 0; r < pts.rows(); ++r)
    out += std::exp(logw(r) - lse) * pts.row(r).cast<double>().transpose();
  return out;
}

}  // namespace newton_ensemble
