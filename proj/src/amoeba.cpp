#include "newton_ensemble/amoeba.hpp"

#include <optional>

namespace newton_ensemble {

namespace {

// Relative residual of f at z against the coefficient-magnitude scale.
double relative_residual(const PolySample& f, const Eigen::Vector2cd& z) {
  double scale = 0.0;
  for (int r = 0; r < f.support.rows(); ++r) {
    double mono = std::abs(f.coefficients(r));
    for (int j = 0; j < 2; ++j) mono *= std::pow(std::abs(z(j)), f.support(r, j));
    scale += mono;
  }
  return std::abs(f.evaluate(z)) / std::max(scale, 1e-300);
}

struct Restriction {
  VectorXcd coefficients;  // ascending in the facet coordinate
  int interval_lo = 0;     // 1-d polytope of P on this facet
  int interval_hi = 0;
  bool empty = true;       // point or empty intersection
};

// Restriction of the sample to one facet of Np*Sigma together with the 1-d
// polytope P cap facet in the facet coordinate.  wall: 0 -> {x2 = 0} with
// coordinate x1, 1 -> {x1 = 0} with coordinate x2, 2 -> diagonal
// {|x| = Np} with coordinate x2 after permuting homogeneous coordinates.
Restriction restrict_to_wall(const PolySample& f, const LatticePolytope& P, int wall) {
  Restriction out;

  int lo = std::numeric_limits<int>::max();
  int hi = std::numeric_limits<int>::min();
  const int p = P.degree();
  for (int r = 0; r < P.vertices().rows(); ++r) {
    const int x1 = P.vertices()(r, 0);
    const int x2 = P.vertices()(r, 1);
    bool on = false;
    int coord = 0;
    if (wall == 0) {
      on = x2 == 0;
      coord = x1;
    } else if (wall == 1) {
      on = x1 == 0;
      coord = x2;
    } else {
      on = x1 + x2 == p;
      coord = x2;
    }
    if (on) {
      lo = std::min(lo, coord);
      hi = std::max(hi, coord);
    }
  }
  if (lo > hi || lo == hi) return out;  // empty restriction
  out.interval_lo = lo;
  out.interval_hi = hi;
  out.empty = false;

  const int N = f.N;
  out.coefficients = VectorXcd::Zero(N * hi + 1);
  for (int r = 0; r < f.support.rows(); ++r) {
    const int a1 = f.support(r, 0);
    const int a2 = f.support(r, 1);
    if (wall == 0 && a2 == 0)
      out.coefficients(a1) += f.coefficients(r);
    else if (wall == 1 && a1 == 0)
      out.coefficients(a2) += f.coefficients(r);
    else if (wall == 2 && a1 + a2 == f.degree)
      out.coefficients(a2) += f.coefficients(r);
  }
  return out;
}

}  // namespace

AmoebaSample amoeba_points(const PolySample& f, const std::vector<double>& s1_grid,
                           int phases) {
  if (f.m != 2) throw DimensionUnsupported("amoeba sampling requires m = 2");
  AmoebaSample out;
  const int d1 = f.support.col(0).maxCoeff();
  const int d2 = f.support.col(1).maxCoeff();
  std::vector<VectorXcd> rows(d2 + 1, VectorXcd::Zero(d1 + 1));
  for (int r = 0; r < f.support.rows(); ++r)
    rows[f.support(r, 1)](f.support(r, 0)) += f.coefficients(r);

  for (double s1 : s1_grid) {
    const double r1 = std::exp(0.5 * s1);
    for (int k = 0; k < phases; ++k) {
      const double theta = 2.0 * M_PI * k / phases;
      const Complex z1 = std::polar(r1, theta);
      VectorXcd slice(d2 + 1);
      for (int c = 0; c <= d2; ++c) slice(c) = poly_eval(rows[c], z1);
      std::vector<Complex> z2_roots;
      try {
        z2_roots = nonzero_roots(slice);
      } catch (const RootFindingFailed&) {
        continue;  // skip a bad slice, the sample is for plotting only
      }
      for (const Complex& z2 : z2_roots) {
        if (std::abs(z2) < 1e-12 || std::abs(z2) > 1e12) continue;
        if (relative_residual(f, Eigen::Vector2cd(z1, z2)) > 1e-8) continue;
        out.points.emplace_back(std::log(std::abs(z1)), std::log(std::abs(z2)));
      }
    }
  }
  return out;
}

TentacleStats tentacle_stats(const PolySample& f, const LatticePolytope& P, int N) {
  if (P.dim() != 2) throw DimensionUnsupported("tentacle statistics require m = 2");
  static const char* kNames[3] = {"x2=0", "x1=0", "diagonal"};

  TentacleStats stats;
  for (int wall = 0; wall < 3; ++wall) {
    TentacleFacetStats fs;
    fs.facet = kNames[wall];
    const Restriction restriction = restrict_to_wall(f, P, wall);
    if (restriction.empty) {
      fs.empty_restriction = true;
      stats.facets.push_back(fs);
      continue;
    }

    // 1-d conditional problem on the facet polytope, ambient degree p.
    MatrixXi interval(2, 1);
    interval << restriction.interval_lo, restriction.interval_hi;
    const LatticePolytope Q = LatticePolytope::from_vertices(interval, P.degree());
    const RegionSolver solver(Q);

    const auto roots = nonzero_roots(restriction.coefficients);
    fs.free_tentacles = static_cast<int>(roots.size());
    for (const Complex& w : roots) {
      VectorXd s(1);
      s(0) = 2.0 * std::log(std::abs(w));
      const RegionResult res = solver.solve(s);
      if (res.allowed && !res.transition) ++fs.allowed;
    }
    stats.free_total += fs.free_tentacles;
    stats.nu_at += fs.allowed;
    stats.facets.push_back(fs);
  }
  return stats;
}

}  // namespace newton_ensemble
