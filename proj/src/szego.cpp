#include "newton_ensemble/szego.hpp"

namespace newton_ensemble {

double log_multinomial(const VectorXi& alpha, int p) {
  const int total = alpha.sum();
  if (total > p || (alpha.array() < 0).any())
    throw OutOfSimplex("|alpha| exceeds the degree");
  double v = std::lgamma(p + 1.0) - std::lgamma(p - total + 1.0);
  for (Eigen::Index j = 0; j < alpha.size(); ++j) v -= std::lgamma(alpha(j) + 1.0);
  return v;
}

double fs_norm_sq_log(const VectorXi& alpha, int p, int m) {
  return std::lgamma(p + 1.0) - std::lgamma(p + m + 1.0) - log_multinomial(alpha, p);
}

LatticeTable make_lattice_table(const LatticePolytope& P, int N) {
  LatticeTable t;
  t.N = N;
  t.np = N * P.degree();
  t.points = P.lattice_points(N);
  t.points_d = t.points.cast<double>();
  t.log_multinomial.resize(t.points.rows());
  for (int r = 0; r < t.points.rows(); ++r)
    t.log_multinomial(r) = log_multinomial(t.points.row(r).transpose(), t.np);
  return t;
}

namespace {

// log of the rising factorial (Np+1)...(Np+m) = (Np+m)!/(Np)!.
double log_dim_factor(int np, int m) {
  double v = 0.0;
  for (int j = 1; j <= m; ++j) v += std::log(static_cast<double>(np + j));
  return v;
}

// Shifted weights w_r proportional to C(Np,alpha_r) e^{<alpha_r,s>}.
VectorXd softmax_weights(const LatticeTable& t, const VectorXd& s, double* log_sum,
                         int* argmax) {
  VectorXd logw = t.log_multinomial + t.points_d * s;
  int arg = 0;
  const double m = logw.maxCoeff(&arg);
  VectorXd w = (logw.array() - m).exp();
  const double total = w.sum();
  w /= total;
  if (log_sum) *log_sum = m + std::log(total);
  if (argmax) *argmax = arg;
  return w;
}

}  // namespace

KernelDiagResult kernel_diag(const LatticeTable& table, int m, const VectorXd& s) {
  KernelDiagResult out;
  double log_sum = 0.0;
  int argmax = 0;
  softmax_weights(table, s, &log_sum, &argmax);
  out.log_value =
      log_dim_factor(table.np, m) + log_sum - table.np * softplus_log_sum(s);
  out.term_count = table.points.rows();
  out.argmax_alpha = table.points.row(argmax).transpose();
  return out;
}

KernelDiagResult kernel_diag(const LatticePolytope& P, int N, const VectorXd& s) {
  return kernel_diag(make_lattice_table(P, N), P.dim(), s);
}

double mass_density(const LatticeTable& table, int m, const VectorXd& s) {
  const KernelDiagResult k = kernel_diag(table, m, s);
  return std::exp(k.log_value) / static_cast<double>(k.term_count);
}

double mass_density(const LatticePolytope& P, int N, const VectorXd& s) {
  return mass_density(make_lattice_table(P, N), P.dim(), s);
}

double u_N(const LatticeTable& table, const VectorXd& s) {
  double log_sum = 0.0;
  softmax_weights(table, s, &log_sum, nullptr);
  return log_sum / table.N;
}

VectorXd grad_u_N(const LatticeTable& table, const VectorXd& s) {
  const VectorXd w = softmax_weights(table, s, nullptr, nullptr);
  return (table.points_d.transpose() * w) / table.N;
}

MatrixXd hess_u_N(const LatticeTable& table, const VectorXd& s) {
  const VectorXd w = softmax_weights(table, s, nullptr, nullptr);
  const VectorXd mean = table.points_d.transpose() * w;
  const Eigen::Index m = s.size();
  MatrixXd cov = MatrixXd::Zero(m, m);
  for (int r = 0; r < table.points.rows(); ++r) {
    const VectorXd d = table.points_d.row(r).transpose() - mean;
    cov.noalias() += w(r) * d * d.transpose();
  }
  return cov / table.N;
}

double u_N(const LatticePolytope& P, int N, const VectorXd& s) {
  return u_N(make_lattice_table(P, N), s);
}
VectorXd grad_u_N(const LatticePolytope& P, int N, const VectorXd& s) {
  return grad_u_N(make_lattice_table(P, N), s);
}
MatrixXd hess_u_N(const LatticePolytope& P, int N, const VectorXd& s) {
  return hess_u_N(make_lattice_table(P, N), s);
}

double monomial_mass_log(const VectorXi& alpha, int np, const VectorXd& s) {
  return log_multinomial(alpha, np) + alpha.cast<double>().dot(s) -
         np * softplus_log_sum(s);
}

}  // namespace newton_ensemble
