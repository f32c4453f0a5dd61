#include "newton_ensemble/oracles.hpp"

#include "newton_ensemble/geometry.hpp"

namespace newton_ensemble {

namespace {

double logistic(double t) { return 1.0 / (1.0 + std::exp(-t)); }

// Hessian of p log(1 + e^{s1} + e^{s2}) in s, i.e. p (diag(x) - x x^T).
Eigen::Matrix2d allowed_hessian(double p, const VectorXd& s) {
  const VectorXd x = mu_sigma(s);
  Eigen::Matrix2d H;
  H << x(0) * (1 - x(0)), -x(0) * x(1), -x(0) * x(1), x(1) * (1 - x(1));
  return p * H;
}

}  // namespace

SquareOracle square_oracle(const VectorXd& s) {
  const double s1 = s(0), s2 = s(1);
  const double m1 = std::exp(s1);  // |z1|^2
  const double m2 = std::exp(s2);  // |z2|^2
  SquareOracle out;
  if (m2 >= m1 + 1.0) {
    out.region = SquareRegion::UpperEdge;
    // u_infty = s2 + log(1+e^{s1}) + log 4 on this region.
    out.b = 2.0 * std::log(1.0 + m1 + m2) - std::log(4.0 * m2 * (1.0 + m1));
    const double sig = logistic(s1);
    out.hessian << sig * (1.0 - sig), 0.0, 0.0, 0.0;
    out.rank = 1;
  } else if (m2 <= m1 - 1.0) {
    out.region = SquareRegion::LowerEdge;
    out.b = 2.0 * std::log(1.0 + m1 + m2) - std::log(4.0 * m1 * (1.0 + m2));
    const double sig = logistic(s2);
    out.hessian << 0.0, 0.0, 0.0, sig * (1.0 - sig);
    out.rank = 1;
  } else {
    out.region = SquareRegion::Allowed;
    out.b = 0.0;
    out.hessian = allowed_hessian(2.0, s);
    out.rank = 2;
  }
  return out;
}

SquareOracle trapezoid_oracle(const VectorXd& s) {
  const double m1 = std::exp(s(0));
  const double m2 = std::exp(s(1));
  SquareOracle out;
  if (m2 >= m1 + 1.0) {
    out = square_oracle(s);  // flow-out identical to the square's upper region
  } else {
    out.region = SquareRegion::Allowed;
    out.b = 0.0;
    out.hessian = allowed_hessian(2.0, s);
    out.rank = 2;
  }
  return out;
}

HirzebruchOracle hirzebruch_oracle(int n, const VectorXd& s) {
  if (n < 2) throw ConfigError("hirzebruch_oracle requires n >= 2");
  const double nd = static_cast<double>(n);
  const double m1 = std::exp(s(0));
  const double m2 = std::exp(s(1));

  HirzebruchOracle out;
  out.b_known = false;
  out.b = 0.0;
  if (m2 < std::min((m1 + 1.0) / nd, 1.0 / (nd - 1.0))) {
    out.region = HirzebruchRegion::Allowed;
    out.b = 0.0;
    out.b_known = true;
    out.hessian = allowed_hessian(nd + 1.0, s);
    out.rank = 2;
  } else if (m2 >= (m1 + 1.0) / nd && m1 < 1.0 / (nd - 1.0)) {
    out.region = HirzebruchRegion::EdgeF;
    // e^{-b} = ((n+1)^{n+1}/n^n) m2 (1+m1)^n / (1+m1+m2)^{n+1}
    out.b = (nd + 1.0) * std::log(1.0 + m1 + m2) - (nd + 1.0) * std::log(nd + 1.0) +
            nd * std::log(nd) - std::log(m2) - nd * std::log(1.0 + m1);
    out.b_known = true;
    const double sig = logistic(s(0));
    out.hessian << nd * sig * (1.0 - sig), 0.0, 0.0, 0.0;
    out.rank = 1;
  } else if (m2 < std::pow(nd - 1.0, nd - 1.0) * std::pow(m1, nd)) {
    out.region = HirzebruchRegion::SlantFp;
    // u_infty = (n+1) log(n/(n-1) + e^{w}/(n-1)^{1/n}) + const, w = s1 - s2/n.
    const double w = s(0) - s(1) / nd;
    const double A = std::exp(w) / std::pow(nd - 1.0, 1.0 / nd);
    const double K = nd / (nd - 1.0);
    const double g = A / (K + A);
    const double curvature = (nd + 1.0) * g * (1.0 - g);
    Eigen::Matrix2d D;
    D << 1.0, -1.0 / nd, -1.0 / nd, 1.0 / (nd * nd);
    out.hessian = curvature * D;
    out.rank = 1;
  } else {
    out.region = HirzebruchRegion::VertexV;
    out.hessian = Eigen::Matrix2d::Zero();
    out.rank = 0;
  }
  return out;
}

}  // namespace newton_ensemble
