#include "newton_ensemble/roots.hpp"

namespace newton_ensemble {

Complex poly_eval(const VectorXcd& a, Complex z) {
  Complex v = 0.0;
  for (Eigen::Index k = a.size() - 1; k >= 0; --k) v = v * z + a(k);
  return v;
}

Complex poly_eval_derivative(const VectorXcd& a, Complex z) {
  Complex v = 0.0;
  for (Eigen::Index k = a.size() - 1; k >= 1; --k)
    v = v * z + a(k) * static_cast<double>(k);
  return v;
}

namespace {

std::vector<Complex> initial_guesses(const VectorXcd& a, double rotate) {
  const int n = static_cast<int>(a.size()) - 1;
  // Cauchy-style radius; clamp to a sane range for wildly scaled inputs.
  double r = std::pow(std::abs(a(0) / a(n)), 1.0 / n);
  if (!std::isfinite(r) || r <= 0.0) r = 1.0;
  r = std::clamp(r, 1e-6, 1e6);
  std::vector<Complex> z(n);
  for (int k = 0; k < n; ++k) {
    const double theta = 2.0 * M_PI * k / n + 0.4 + rotate;
    z[k] = r * Complex(std::cos(theta), std::sin(theta));
  }
  return z;
}

bool aberth_pass(const VectorXcd& a, std::vector<Complex>& z, const AberthConfig& cfg) {
  const int n = static_cast<int>(z.size());
  for (int it = 0; it < cfg.max_iterations; ++it) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const Complex p = poly_eval(a, z[i]);
      const Complex dp = poly_eval_derivative(a, z[i]);
      if (dp == Complex(0.0, 0.0)) {
        z[i] += Complex(1e-8, 1e-8);
        worst = 1.0;
        continue;
      }
      const Complex w = p / dp;
      Complex sum = 0.0;
      for (int j = 0; j < n; ++j)
        if (j != i) sum += 1.0 / (z[i] - z[j]);
      const Complex denom = 1.0 - w * sum;
      const Complex delta = denom == Complex(0.0, 0.0) ? w : w / denom;
      z[i] -= delta;
      worst = std::max(worst, std::abs(delta) / std::max(1.0, std::abs(z[i])));
    }
    if (worst < 1e-14) return true;
  }
  return false;
}

void polish(const VectorXcd& a, std::vector<Complex>& z) {
  for (auto& root : z)
    for (int it = 0; it < 4; ++it) {
      const Complex dp = poly_eval_derivative(a, root);
      if (dp == Complex(0.0, 0.0)) break;
      root -= poly_eval(a, root) / dp;
    }
}

bool certified(const VectorXcd& a, const std::vector<Complex>& z, const AberthConfig& cfg) {
  for (const auto& root : z) {
    const Complex dp = poly_eval_derivative(a, root);
    if (dp == Complex(0.0, 0.0)) return false;
    const double err = std::abs(poly_eval(a, root) / dp) / std::max(1.0, std::abs(root));
    if (!(err < cfg.newton_certificate)) return false;
  }
  return true;
}

}  // namespace

std::vector<Complex> aberth_roots(const VectorXcd& a, const AberthConfig& cfg) {
  const int n = static_cast<int>(a.size()) - 1;
  if (n <= 0) return {};
  if (n == 1) return {-a(0) / a(1)};

  VectorXcd scaled = a / a.cwiseAbs().maxCoeff();
  for (int attempt = 0; attempt <= cfg.retries; ++attempt) {
    std::vector<Complex> z = initial_guesses(scaled, attempt * 0.7391);
    aberth_pass(scaled, z, cfg);
    polish(scaled, z);
    if (certified(scaled, z, cfg)) return z;
  }
  throw RootFindingFailed("Aberth iteration failed to certify all roots (degree " +
                          std::to_string(n) + ")");
}

std::vector<Complex> nonzero_roots(const VectorXcd& coefficients, const AberthConfig& cfg) {
  int lo = 0, hi = static_cast<int>(coefficients.size()) - 1;
  while (lo <= hi && coefficients(lo) == Complex(0.0, 0.0)) ++lo;
  while (hi >= lo && coefficients(hi) == Complex(0.0, 0.0)) --hi;
  if (hi <= lo) return {};
  return aberth_roots(coefficients.segment(lo, hi - lo + 1), cfg);
}

}  // namespace newton_ensemble
