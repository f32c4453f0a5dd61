#pragma once

#include "newton_ensemble/common.hpp"
#include "newton_ensemble/ensemble.hpp"

namespace newton_ensemble {

struct AmoebaSample {
  // Log-plane points (log|z_1|, log|z_2|) on the zero curve.
  std::vector<Eigen::Vector2d> points;
};

struct TentacleFacetStats {
  std::string facet;        // "x2=0", "x1=0", "diagonal"
  int free_tentacles = 0;   // degree of the deflated facet restriction
  int allowed = 0;          // roots classified into the allowed part
  bool empty_restriction = false;  // P meets the facet in a point or not at all
};

struct TentacleStats {
  std::vector<TentacleFacetStats> facets;
  int free_total = 0;
  int nu_at = 0;  // classically allowed tentacles
};

// Points of the amoeba Log(Z_f) of a bivariate sample: for each s1 grid
// value, z_1 ranges over `phases` points of the circle |z_1|^2 = e^{s1} and
// the z_2 slice roots are collected.  Points are certified on the curve to
// relative residual 1e-8.
AmoebaSample amoeba_points(const PolySample& f, const std::vector<double>& s1_grid,
                           int phases = 8);

// Tentacle statistics of Log(Z_f): the restriction of f to each facet of
// p*Sigma is a univariate polynomial supported on the 1-dimensional
// polytope N(P cap facet); its roots are the free tentacle ends, classified
// through the 1-dimensional region solver.  The diagonal facet is handled
// by the homogeneous-coordinate permutation z1 -> 1/w1, z2 -> w2/w1.
TentacleStats tentacle_stats(const PolySample& f, const LatticePolytope& P, int N);

}  // namespace newton_ensemble
