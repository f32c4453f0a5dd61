#pragma once

#include "newton_ensemble/common.hpp"
#include "newton_ensemble/polytope.hpp"
#include "newton_ensemble/region.hpp"
#include "newton_ensemble/roots.hpp"
#include "newton_ensemble/szego.hpp"

namespace newton_ensemble {

/**
 * One draw from the conditional Gaussian ensemble on polynomials with
 * Newton polytope in N*P: coefficients lambda_alpha / ||chi_alpha|| with
 * lambda_alpha i.i.d. standard complex Gaussian and the Fubini-Study norms
 * taken in degree N*p.  Reproducible from (seed, index).
 */
struct PolySample {
  int m = 0;
  int N = 1;
  int degree = 0;      // ambient degree N*p
  MatrixXi support;    // lattice points of N*P, one per row
  VectorXcd coefficients;
  std::uint64_t seed = 0;
  std::uint64_t index = 0;

  Complex evaluate(const Eigen::Vector2cd& z) const;  // m = 2
};

PolySample sample_poly(const LatticePolytope& P, int N, std::uint64_t seed,
                       std::uint64_t index);
PolySample sample_poly(const LatticeTable& table, int m, std::uint64_t seed,
                       std::uint64_t index);

// All roots in C* of a univariate sample (m = 1); the count equals
// max alpha - min alpha of the support.
std::vector<Complex> roots_1d(const PolySample& f, const AberthConfig& cfg = {});

// Common zeros in C*^2 of two bivariate samples via a Sylvester resultant
// in z_2 computed by evaluation-interpolation on a z_1 circle, univariate
// back-substitution, and joint Newton polish.  Desk scale: requires
// N*p <= 10.
std::vector<Eigen::Vector2cd> zeros_2d(const PolySample& f, const PolySample& g);

struct ZeroStats {
  int trials = 0;
  int failed_trials = 0;
  std::vector<int> per_trial_counts;
  double allowed_fraction_mean = 0.0;
  double allowed_fraction_stderr = 0.0;
  long long total_zeros = 0;
  long long allowed_zeros = 0;
  long long boundary_zeros = 0;  // transition-tolerance hits, excluded from fractions
  // m = 1: histogram of s = log|root|^2 and the pooled KS distance to the
  // finite-N theory distribution function.
  double hist_lo = 0.0, hist_hi = 0.0;
  std::vector<long long> histogram;
  double ks_distance = 0.0;
  // m = 2: classified zero list (s-coordinates and allowed flag).
  std::vector<std::pair<Eigen::Vector2d, bool>> classified_points;
};

// Finite-N distribution function of s = log|root|^2 for m = 1: the exact
// expected counting function (mu_NP(s) - N min P) / (N length P).
double theory_cdf_1d(const LatticeTable& table, const LatticePolytope& P, const VectorXd& s1);

ZeroStats zero_statistics(const LatticePolytope& P, int N, int trials, std::uint64_t seed,
                          int histogram_bins = 64);

}  // namespace newton_ensemble
