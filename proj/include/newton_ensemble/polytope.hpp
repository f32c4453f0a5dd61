#pragma once

#include "newton_ensemble/common.hpp"

namespace newton_ensemble {

/**
 * One open face of a lattice polytope.  Faces follow the open-face
 * convention: the face of dimension r is the relative interior of the
 * corresponding closed face, so faces are pairwise disjoint and their
 * union is the whole polytope.  The m-dimensional face is the interior,
 * with an empty active-facet set.
 */
struct Face {
  std::uint64_t id = 0;      // stable hash of the sorted active-facet set
  int dim = 0;               // r in 0..m
  std::vector<int> vertex_ids;
  std::vector<int> active_facets;        // facets containing the face
  MatrixXi tangent_basis;                // dim rows, integer vectors spanning T_F
  MatrixXi normal_generators;            // rows {-u_i : facet i active}
  RationalVector sample;                 // a relative-interior point (exact)
};

struct DelzantCertificate {
  bool delzant = false;
  int failing_vertex = -1;   // index into vertices() when delzant == false
  std::string reason;
};

/**
 * Exterior/interior decomposition of the boundary of a planar polytope
 * relative to the dilated standard simplex p*Sigma.  The exterior part is
 * the portion of dP lying on d(p*Sigma); its lattice length counts unit
 * lattice steps (the diagonal facet of p*Sigma has lattice length p).
 */
struct BoundaryDecomposition {
  std::vector<int> exterior_facets;            // facets of P lying on d(p*Sigma)
  std::vector<int> interior_facets;            // the rest of dP
  std::vector<Eigen::Vector2i> exterior_vertices;  // isolated contact points
  long long exterior_length = 0;
};

/**
 * Integral polytope in R^m (m in {1,2,3}) with both vertex and half-space
 * representations, the open-face decomposition, and a Delzant certificate.
 * All combinatorial data is computed with exact integer arithmetic at
 * construction time; instances are immutable afterwards and safe to share
 * across threads.
 *
 * Facet i is the inequality l_i(x) = <x,u_i> + a_i >= 0 with u_i the
 * primitive inward normal.
 */
class LatticePolytope {
 public:
  // Convex hull of integer points in the nonnegative orthant.  degree
  // defaults to max_{vertices} |alpha|; a larger value may be requested for
  // a non-minimal embedding.
  static LatticePolytope from_vertices(const MatrixXi& points, int degree_override = -1);

  int dim() const { return dim_; }
  int degree() const { return degree_; }

  const MatrixXi& vertices() const { return vertices_; }          // one vertex per row
  const MatrixXi& facet_normals() const { return facet_normals_; }  // one facet per row
  const VectorXi& facet_offsets() const { return facet_offsets_; }
  int facet_count() const { return static_cast<int>(facet_normals_.rows()); }

  // Complete disjoint open-face decomposition, ordered by decreasing
  // dimension (the interior face comes first) and id within a dimension.
  const std::vector<Face>& faces() const { return faces_; }
  const Face& interior_face() const { return faces_.front(); }

  const DelzantCertificate& delzant_certificate() const { return delzant_; }
  bool is_delzant() const { return delzant_.delzant; }

  // l_i(x), exact for integer x and floating point for real x.
  long long facet_value_exact(int i, const Eigen::Matrix<long long, Eigen::Dynamic, 1>& x) const;
  double facet_value(int i, const VectorXd& x) const;

  // The unique open face whose active-facet set is {i : l_i(x) = 0};
  // exact for rational input.  Throws OutsidePolytope.
  const Face& face_containing(const RationalVector& x) const;

  // All lattice points of N*P, sorted lexicographically.  Throws
  // OverflowError when the bounding-box scan would exceed `cap` points.
  MatrixXi lattice_points(int N, long long cap = 10000000LL) const;

  // Exact Euclidean volume.
  Rational volume() const;

  // Boundary split relative to p*Sigma (m = 2 only).
  BoundaryDecomposition boundary_decomposition() const;

 private:
  int dim_ = 0;
  int degree_ = 0;
  MatrixXi vertices_;
  MatrixXi facet_normals_;
  VectorXi facet_offsets_;
  std::vector<Face> faces_;
  DelzantCertificate delzant_;

  void build_facets(const MatrixXi& points);
  void build_faces();
  void check_delzant();
};

// Euler check helper: sum over faces of (-1)^dim (equals 1 for a polytope).
int face_euler_sum(const LatticePolytope& P);

}  // namespace newton_ensemble
