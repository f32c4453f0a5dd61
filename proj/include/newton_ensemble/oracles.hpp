#pragma once

#include "newton_ensemble/common.hpp"

namespace newton_ensemble {

// Hand-coded closed forms for the worked toric-surface examples.  These
// never call the numeric solver; they exist to catch solver regressions.

enum class SquareRegion { Allowed, UpperEdge, LowerEdge };
enum class HirzebruchRegion { Allowed, EdgeF, SlantFp, VertexV };

struct SquareOracle {
  SquareRegion region;
  double b;              // 0 on the allowed region
  Eigen::Matrix2d hessian;  // of u_infty in s-coordinates
  int rank;
};

struct HirzebruchOracle {
  HirzebruchRegion region;
  double b;          // valid on Allowed (0) and EdgeF only
  bool b_known;
  Eigen::Matrix2d hessian;  // valid on all four regions
  int rank;
};

// Unit square, p = 2.  Regions split at |z2|^2 = |z1|^2 +- 1; on the upper
// flow-out  e^{-b} = 4 |z2|^2 (1+|z1|^2) / (1+|z1|^2+|z2|^2)^2  and the
// Hessian is diag(sigma(1-sigma), 0) with sigma the logistic of s1.
SquareOracle square_oracle(const VectorXd& s);

// Trapezoid {(0,0),(1,0),(2,0),(0,1),(1,1)} (first Hirzebruch surface):
// allowed below |z2|^2 = |z1|^2 + 1, and the single flow-out coincides with
// the square's upper region formulas.
SquareOracle trapezoid_oracle(const VectorXd& s);

// Hirzebruch family, vertices {(0,0),...,(n+1,0),(0,1),(1,1)}, n >= 2,
// p = n+1.  Four regions with psi ranks (2,1,1,0); on the edge flow-out
// e^{-b} = ((n+1)^{n+1}/n^n) |z2|^2 (1+|z1|^2)^n / (1+|z1|^2+|z2|^2)^{n+1}.
HirzebruchOracle hirzebruch_oracle(int n, const VectorXd& s);

}  // namespace newton_ensemble
