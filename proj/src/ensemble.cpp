#include "newton_ensemble/ensemble.hpp"

#include <algorithm>

namespace newton_ensemble {

Complex PolySample::evaluate(const Eigen::Vector2cd& z) const {
  Complex acc = 0.0;
  for (int r = 0; r < support.rows(); ++r) {
    Complex mono = coefficients(r);
    for (int j = 0; j < 2; ++j)
      for (int e = 0; e < support(r, j); ++e) mono *= z(j);
    acc += mono;
  }
  return acc;
}

PolySample sample_poly(const LatticeTable& table, int m, std::uint64_t seed,
                       std::uint64_t index) {
  PolySample f;
  f.m = m;
  f.N = table.N;
  f.degree = table.np;
  f.support = table.points;
  f.seed = seed;
  f.index = index;
  f.coefficients.resize(table.points.rows());
  std::mt19937_64 rng = substream(seed, index);
  const double log_norm_const =
      std::lgamma(table.np + 1.0) - std::lgamma(table.np + m + 1.0);
  for (int r = 0; r < table.points.rows(); ++r) {
    // ||chi_alpha||^2 = p!/(p+m)! / C(p,alpha); coefficient is lambda/||chi||.
    const double log_norm_sq = log_norm_const - table.log_multinomial(r);
    f.coefficients(r) = complex_gaussian(rng) * std::exp(-0.5 * log_norm_sq);
  }
  return f;
}

PolySample sample_poly(const LatticePolytope& P, int N, std::uint64_t seed,
                       std::uint64_t index) {
  return sample_poly(make_lattice_table(P, N), P.dim(), seed, index);
}

std::vector<Complex> roots_1d(const PolySample& f, const AberthConfig& cfg) {
  if (f.m != 1) throw DimensionUnsupported("roots_1d requires m = 1");
  const int lo = f.support.col(0).minCoeff();
  const int hi = f.support.col(0).maxCoeff();
  VectorXcd a = VectorXcd::Zero(hi - lo + 1);
  for (int r = 0; r < f.support.rows(); ++r) a(f.support(r, 0) - lo) = f.coefficients(r);
  std::vector<Complex> roots = aberth_roots(a, cfg);
  if (static_cast<int>(roots.size()) != hi - lo)
    throw RootFindingFailed("root count does not match the degree span");
  return roots;
}

namespace {

// Coefficients of z_2^k as polynomials in z_1.
std::vector<VectorXcd> z2_rows(const PolySample& f) {
  const int d1 = f.support.col(0).maxCoeff();
  const int d2 = f.support.col(1).maxCoeff();
  std::vector<VectorXcd> rows(d2 + 1, VectorXcd::Zero(d1 + 1));
  for (int r = 0; r < f.support.rows(); ++r)
    rows[f.support(r, 1)](f.support(r, 0)) += f.coefficients(r);
  return rows;
}

VectorXcd eval_rows(const std::vector<VectorXcd>& rows, Complex z1) {
  VectorXcd out(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) out(k) = poly_eval(rows[k], z1);
  return out;
}

Complex sylvester_det(const VectorXcd& fr, const VectorXcd& gr) {
  const int df = static_cast<int>(fr.size()) - 1;
  const int dg = static_cast<int>(gr.size()) - 1;
  const int n = df + dg;
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < dg; ++i)
    for (int k = 0; k <= df; ++k) S(i, i + k) = fr(df - k);
  for (int i = 0; i < df; ++i)
    for (int k = 0; k <= dg; ++k) S(dg + i, i + k) = gr(dg - k);
  return S.determinant();
}

// Joint Newton polish for (f, g) at (z1, z2); returns the final relative
// residual.
double polish_pair(const PolySample& f, const PolySample& g, Eigen::Vector2cd& z) {
  auto scale = [](const PolySample& h, const Eigen::Vector2cd& zz) {
    double s = 0.0;
    for (int r = 0; r < h.support.rows(); ++r) {
      double mono = std::abs(h.coefficients(r));
      for (int j = 0; j < 2; ++j)
        mono *= std::pow(std::abs(zz(j)), h.support(r, j));
      s += mono;
    }
    return std::max(s, 1e-300);
  };
  auto jacobian_entry = [](const PolySample& h, const Eigen::Vector2cd& zz, int var) {
    Complex acc = 0.0;
    for (int r = 0; r < h.support.rows(); ++r) {
      const int e = h.support(r, var);
      if (e == 0) continue;
      Complex mono = h.coefficients(r) * static_cast<double>(e);
      for (int j = 0; j < 2; ++j) {
        const int pow = h.support(r, j) - (j == var ? 1 : 0);
        for (int q = 0; q < pow; ++q) mono *= zz(j);
      }
      acc += mono;
    }
    return acc;
  };

  double rel = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 20; ++it) {
    const Complex fv = f.evaluate(z);
    const Complex gv = g.evaluate(z);
    rel = std::max(std::abs(fv) / scale(f, z), std::abs(gv) / scale(g, z));
    if (rel < 1e-12) break;
    Eigen::Matrix2cd J;
    J << jacobian_entry(f, z, 0), jacobian_entry(f, z, 1), jacobian_entry(g, z, 0),
        jacobian_entry(g, z, 1);
    const Complex det = J(0, 0) * J(1, 1) - J(0, 1) * J(1, 0);
    if (std::abs(det) < 1e-300) break;
    const Eigen::Vector2cd rhs(fv, gv);
    Eigen::Vector2cd delta;
    delta(0) = (J(1, 1) * rhs(0) - J(0, 1) * rhs(1)) / det;
    delta(1) = (-J(1, 0) * rhs(0) + J(0, 0) * rhs(1)) / det;
    z -= delta;
  }
  return rel;
}

}  // namespace

std::vector<Eigen::Vector2cd> zeros_2d(const PolySample& f, const PolySample& g) {
  if (f.m != 2 || g.m != 2) throw DimensionUnsupported("zeros_2d requires m = 2");
  if (f.degree > 10 || g.degree > 10)
    throw ConfigError("zeros_2d is capped at N*p <= 10");

  const auto fr = z2_rows(f);
  const auto gr = z2_rows(g);
  const int d1f = f.support.col(0).maxCoeff();
  const int d1g = g.support.col(0).maxCoeff();
  const int d2f = static_cast<int>(fr.size()) - 1;
  const int d2g = static_cast<int>(gr.size()) - 1;
  const int res_degree = d1f * d2g + d1g * d2f;
  const int nodes = res_degree + 1;

  for (int attempt = 0; attempt < 4; ++attempt) {
    // Evaluation-interpolation of Res_{z2}(f,g) on a rotated unit circle.
    const double rot = 0.31 + 0.77 * attempt;
    VectorXcd values(nodes);
    double max_value = 0.0;
    for (int k = 0; k < nodes; ++k) {
      const double theta = 2.0 * M_PI * k / nodes + rot;
      const Complex z1(std::cos(theta), std::sin(theta));
      values(k) = sylvester_det(eval_rows(fr, z1), eval_rows(gr, z1));
      max_value = std::max(max_value, std::abs(values(k)));
    }
    if (max_value < 1e-250) throw DegenerateSystem("resultant is numerically zero");

    VectorXcd res(nodes);  // inverse DFT against the rotated nodes
    for (int c = 0; c < nodes; ++c) {
      Complex acc = 0.0;
      for (int k = 0; k < nodes; ++k) {
        const double theta = 2.0 * M_PI * k / nodes + rot;
        acc += values(k) * std::polar(1.0, -theta * c);
      }
      res(c) = acc / static_cast<double>(nodes);
    }

    // Trim numerically vanishing extreme coefficients.
    const double trim = 1e-10 * res.cwiseAbs().maxCoeff();
    int lo = 0, hi = nodes - 1;
    while (lo < hi && std::abs(res(lo)) < trim) ++lo;
    while (hi > lo && std::abs(res(hi)) < trim) --hi;
    if (hi <= lo) throw DegenerateSystem("resultant collapsed to a monomial");

    std::vector<Complex> z1_roots;
    try {
      z1_roots = aberth_roots(res.segment(lo, hi - lo + 1));
    } catch (const RootFindingFailed&) {
      continue;  // retry with rotated nodes
    }

    std::vector<Eigen::Vector2cd> zeros;
    bool ill_conditioned = false;
    for (const Complex& z1 : z1_roots) {
      if (std::abs(z1) < 1e-12 || std::abs(z1) > 1e12) continue;
      std::vector<Complex> z2_candidates;
      try {
        z2_candidates = nonzero_roots(eval_rows(fr, z1));
      } catch (const RootFindingFailed&) {
        ill_conditioned = true;
        break;
      }
      // Keep the z2 candidates that also annihilate g, then polish jointly.
      for (const Complex& z2 : z2_candidates) {
        if (std::abs(z2) < 1e-12 || std::abs(z2) > 1e12) continue;
        Eigen::Vector2cd z(z1, z2);
        const double rel = polish_pair(f, g, z);
        if (rel > 1e-8) continue;
        if (std::abs(z(0)) < 1e-12 || std::abs(z(0)) > 1e12 || std::abs(z(1)) < 1e-12 ||
            std::abs(z(1)) > 1e12)
          continue;
        bool duplicate = false;
        for (const auto& w : zeros)
          if ((w - z).norm() < 1e-6 * (1.0 + z.norm())) duplicate = true;
        if (!duplicate) zeros.push_back(z);
      }
    }
    if (!ill_conditioned) return zeros;
  }
  throw ResultantIllConditioned("zeros_2d failed after coordinate rotations");
}

double theory_cdf_1d(const LatticeTable& table, const LatticePolytope& P,
                     const VectorXd& s1) {
  const double lo = static_cast<double>(P.vertices().col(0).minCoeff());
  const double hi = static_cast<double>(P.vertices().col(0).maxCoeff());
  const double q = grad_u_N(table, s1)(0);  // a point of P
  return (q - lo) / (hi - lo);
}

ZeroStats zero_statistics(const LatticePolytope& P, int N, int trials, std::uint64_t seed,
                          int histogram_bins) {
  const int m = P.dim();
  if (m != 1 && m != 2) throw DimensionUnsupported("zero statistics require m in {1,2}");
  const LatticeTable table = make_lattice_table(P, N);
  const RegionSolver solver(P);

  ZeroStats stats;
  stats.trials = trials;
  stats.per_trial_counts.assign(trials, 0);

  struct TrialOut {
    bool failed = false;
    int count = 0;
    long long allowed = 0;
    long long boundary = 0;
    std::vector<double> svals;                              // m = 1
    std::vector<std::pair<Eigen::Vector2d, bool>> points;   // m = 2
  };
  std::vector<TrialOut> outs(trials);

  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t t) {
    TrialOut& out = outs[t];
    try {
      if (m == 1) {
        const PolySample f = sample_poly(table, m, seed, t);
        const auto roots = roots_1d(f);
        out.count = static_cast<int>(roots.size());
        for (const Complex& z : roots) {
          VectorXd s(1);
          s(0) = 2.0 * std::log(std::abs(z));
          out.svals.push_back(s(0));
          const RegionResult res = solver.solve(s);
          if (res.transition)
            ++out.boundary;
          else if (res.allowed)
            ++out.allowed;
        }
      } else {
        const PolySample f = sample_poly(table, m, seed, 2 * t);
        const PolySample g = sample_poly(table, m, seed, 2 * t + 1);
        const auto zeros = zeros_2d(f, g);
        out.count = static_cast<int>(zeros.size());
        for (const auto& z : zeros) {
          VectorXd s(2);
          s << 2.0 * std::log(std::abs(z(0))), 2.0 * std::log(std::abs(z(1)));
          const RegionResult res = solver.solve(s);
          if (res.transition) {
            ++out.boundary;
            out.points.emplace_back(Eigen::Vector2d(s(0), s(1)), false);
          } else {
            if (res.allowed) ++out.allowed;
            out.points.emplace_back(Eigen::Vector2d(s(0), s(1)), res.allowed);
          }
        }
      }
    } catch (const std::exception&) {
      out.failed = true;
    }
  });

  // Deterministic reduction in trial order.
  std::vector<double> fractions;
  std::vector<double> pooled_s;
  for (int t = 0; t < trials; ++t) {
    const TrialOut& out = outs[t];
    if (out.failed) {
      ++stats.failed_trials;
      continue;
    }
    stats.per_trial_counts[t] = out.count;
    stats.total_zeros += out.count;
    stats.allowed_zeros += out.allowed;
    stats.boundary_zeros += out.boundary;
    const long long classified = out.count - out.boundary;
    if (classified > 0)
      fractions.push_back(static_cast<double>(out.allowed) / classified);
    pooled_s.insert(pooled_s.end(), out.svals.begin(), out.svals.end());
    stats.classified_points.insert(stats.classified_points.end(), out.points.begin(),
                                   out.points.end());
  }
  if (!fractions.empty()) {
    double mean = 0.0;
    for (double v : fractions) mean += v;
    mean /= fractions.size();
    double var = 0.0;
    for (double v : fractions) var += (v - mean) * (v - mean);
    var = fractions.size() > 1 ? var / (fractions.size() - 1) : 0.0;
    stats.allowed_fraction_mean = mean;
    stats.allowed_fraction_stderr = std::sqrt(var / fractions.size());
  }

  if (m == 1 && !pooled_s.empty()) {
    std::sort(pooled_s.begin(), pooled_s.end());
    stats.hist_lo = pooled_s.front();
    stats.hist_hi = pooled_s.back();
    stats.histogram.assign(histogram_bins, 0);
    const double width = std::max(stats.hist_hi - stats.hist_lo, 1e-12);
    for (double v : pooled_s) {
      int bin = static_cast<int>((v - stats.hist_lo) / width * histogram_bins);
      bin = std::clamp(bin, 0, histogram_bins - 1);
      ++stats.histogram[static_cast<std::size_t>(bin)];
    }
    double ks = 0.0;
    const double n = static_cast<double>(pooled_s.size());
    for (std::size_t i = 0; i < pooled_s.size(); ++i) {
      VectorXd s(1);
      s(0) = pooled_s[i];
      const double cdf = theory_cdf_1d(table, P, s);
      ks = std::max(ks, std::abs((i + 1) / n - cdf));
      ks = std::max(ks, std::abs(i / n - cdf));
    }
    stats.ks_distance = ks;
  }
  return stats;
}

}  // namespace newton_ensemble
