#include <doctest.h>

#include <functional>

#include "newton_ensemble/polytope.hpp"

using namespace newton_ensemble;

namespace {

MatrixXi rows(std::initializer_list<std::initializer_list<int>> data) {
  const int r = static_cast<int>(data.size());
  const int c = static_cast<int>(data.begin()->size());
  MatrixXi out(r, c);
  int i = 0;
  for (const auto& row : data) {
    int j = 0;
    for (int v : row) out(i, j++) = v;
    ++i;
  }
  return out;
}

LatticePolytope unit_square() {
  return LatticePolytope::from_vertices(rows({{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
}

LatticePolytope trapezoid() {
  return LatticePolytope::from_vertices(rows({{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}}));
}

LatticePolytope segment(int a, int b, int p = -1) {
  MatrixXi v(2, 1);
  v << a, b;
  return LatticePolytope::from_vertices(v, p);
}

// Orthant-box scan against a hand-written membership predicate, independent
// of the hull/facet machinery.
long scan_count(int box, int N, const std::function<bool(int, int, int)>& member) {
  long count = 0;
  for (int x = 0; x <= box * N; ++x)
    for (int y = 0; y <= box * N; ++y)
      if (member(x, y, N)) ++count;
  return count;
}

}  // namespace

TEST_CASE("hull of the unit square") {
  const auto P = unit_square();
  CHECK(P.dim() == 2);
  CHECK(P.degree() == 2);
  CHECK(P.vertices().rows() == 4);
  CHECK(P.facet_count() == 4);
  // Facets are x1 >= 0, x2 >= 0, 1 - x1 >= 0, 1 - x2 >= 0 in some order.
  int found = 0;
  for (int i = 0; i < 4; ++i) {
    const VectorXi u = P.facet_normals().row(i).transpose();
    const int a = P.facet_offsets()(i);
    if ((u(0) == 1 && u(1) == 0 && a == 0) || (u(0) == 0 && u(1) == 1 && a == 0) ||
        (u(0) == -1 && u(1) == 0 && a == 1) || (u(0) == 0 && u(1) == -1 && a == 1))
      ++found;
  }
  CHECK(found == 4);
}

TEST_CASE("hull drops redundant points and sets the degree") {
  const auto P = trapezoid();
  CHECK(P.vertices().rows() == 4);  // (1,0) is not a corner
  CHECK(P.degree() == 2);
  CHECK(P.facet_count() == 4);
}

TEST_CASE("one-dimensional hull") {
  const auto P = segment(1, 2);
  CHECK(P.dim() == 1);
  CHECK(P.degree() == 2);
  CHECK(P.vertices().rows() == 2);
}

TEST_CASE("hull input validation") {
  CHECK_THROWS_AS(LatticePolytope::from_vertices(rows({{0, 0}, {1, 1}, {2, 2}})),
                  NotFullDimensional);
  CHECK_THROWS_AS(LatticePolytope::from_vertices(rows({{0, 0}, {-1, 2}, {1, 0}})),
                  NegativeCoordinate);
  MatrixXi m4(5, 4);
  m4.setZero();
  m4(1, 0) = m4(2, 1) = m4(3, 2) = m4(4, 3) = 1;
  CHECK_THROWS_AS(LatticePolytope::from_vertices(m4), DimensionUnsupported);
}

TEST_CASE("open-face decomposition counts") {
  CHECK(unit_square().faces().size() == 9);  // 4 vertices, 4 open edges, interior
  CHECK(segment(1, 2).faces().size() == 3);

  // Euler alternating sum is 1 for m = 1, 2, 3.
  CHECK(face_euler_sum(segment(0, 3)) == 1);
  CHECK(face_euler_sum(unit_square()) == 1);
  CHECK(face_euler_sum(trapezoid()) == 1);
  const auto cube = LatticePolytope::from_vertices(rows({{0, 0, 0},
                                                         {1, 0, 0},
                                                         {0, 1, 0},
                                                         {0, 0, 1},
                                                         {1, 1, 0},
                                                         {1, 0, 1},
                                                         {0, 1, 1},
                                                         {1, 1, 1}}));
  CHECK(cube.faces().size() == 27);
  CHECK(face_euler_sum(cube) == 1);
}

TEST_CASE("top edge of the square has normal-cone generator (0,1)") {
  const auto P = unit_square();
  RationalVector x;
  x.num.resize(2);
  x.num << 1, 4;  // (1/4, 1): relative interior of the top edge
  x.den = 4;
  const Face& f = P.face_containing(x);
  CHECK(f.dim == 1);
  REQUIRE(f.normal_generators.rows() == 1);
  CHECK(f.normal_generators(0, 0) == 0);
  CHECK(f.normal_generators(0, 1) == 1);
}

TEST_CASE("face_containing identifies interior, edge, vertex") {
  const auto P = unit_square();
  RationalVector mid;
  mid.num.resize(2);
  mid.num << 1, 1;
  mid.den = 2;
  CHECK(P.face_containing(mid).dim == 2);

  RationalVector corner;
  corner.num.resize(2);
  corner.num << 1, 1;
  corner.den = 1;
  CHECK(P.face_containing(corner).dim == 0);

  RationalVector outside;
  outside.num.resize(2);
  outside.num << 3, 1;
  outside.den = 2;
  CHECK_THROWS_AS(P.face_containing(outside), OutsidePolytope);
}

TEST_CASE("face ids are stable across rebuilds") {
  const auto P1 = unit_square();
  const auto P2 = LatticePolytope::from_vertices(rows({{1, 1}, {0, 1}, {1, 0}, {0, 0}}));
  REQUIRE(P1.faces().size() == P2.faces().size());
  for (std::size_t i = 0; i < P1.faces().size(); ++i)
    CHECK(P1.faces()[i].id == P2.faces()[i].id);
}

TEST_CASE("delzant certificates") {
  CHECK(unit_square().is_delzant());
  CHECK(trapezoid().is_delzant());
  CHECK(segment(0, 5).is_delzant());

  const auto simplex2 =
      LatticePolytope::from_vertices(rows({{0, 0}, {3, 0}, {0, 3}}));  // 3*Sigma
  CHECK(simplex2.is_delzant());

  const auto bad = LatticePolytope::from_vertices(rows({{0, 0}, {1, 0}, {0, 2}}));
  CHECK_FALSE(bad.is_delzant());
  const auto& cert = bad.delzant_certificate();
  REQUIRE(cert.failing_vertex >= 0);
  CHECK(bad.vertices()(cert.failing_vertex, 0) == 1);
  CHECK(bad.vertices()(cert.failing_vertex, 1) == 0);
}

TEST_CASE("codimension-k faces of Delzant polytopes have k independent generators") {
  for (const auto& P : {unit_square(), trapezoid()}) {
    for (const auto& f : P.faces()) {
      const int codim = P.dim() - f.dim;
      CHECK(f.normal_generators.rows() == codim);
      if (codim == 2) {
        const auto& g = f.normal_generators;
        CHECK(g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0) != 0);
      }
    }
  }
}

TEST_CASE("lattice point enumeration") {
  const auto square = unit_square();
  CHECK(square.lattice_points(2).rows() == 9);

  const auto seg = segment(1, 2);
  const MatrixXi pts = seg.lattice_points(3);
  REQUIRE(pts.rows() == 4);
  CHECK(pts(0, 0) == 3);
  CHECK(pts(3, 0) == 6);

  CHECK(trapezoid().lattice_points(1).rows() == 5);

  // Lexicographic order.
  const MatrixXi sq = square.lattice_points(2);
  for (int r = 1; r < sq.rows(); ++r) {
    const bool less = sq(r - 1, 0) < sq(r, 0) ||
                      (sq(r - 1, 0) == sq(r, 0) && sq(r - 1, 1) < sq(r, 1));
    CHECK(less);
  }

  CHECK_THROWS_AS(square.lattice_points(2, 5), OverflowError);
}

TEST_CASE("lattice counts match a brute-force orthant scan") {
  for (int N = 1; N <= 5; ++N) {
    CHECK(unit_square().lattice_points(N).rows() ==
          scan_count(1, N, [](int x, int y, int n) { return x <= n && y <= n; }));
    CHECK(trapezoid().lattice_points(N).rows() ==
          scan_count(2, N, [](int x, int y, int n) { return y <= n && x + y <= 2 * n; }));
    CHECK(LatticePolytope::from_vertices(rows({{0, 0}, {3, 0}, {0, 3}}))
              .lattice_points(N)
              .rows() == scan_count(3, N, [](int x, int y, int n) { return x + y <= 3 * n; }));
    int seg_count = 0;
    for (int x = N; x <= 2 * N; ++x) ++seg_count;
    CHECK(segment(1, 2).lattice_points(N).rows() == seg_count);
  }
}

TEST_CASE("lattice count growth approaches the volume") {
  const auto P = trapezoid();
  const int N = 50;
  const double count = static_cast<double>(P.lattice_points(N).rows());
  const double vol = P.volume().value();
  CHECK(count / (N * N) == doctest::Approx(vol).epsilon(0.10));
  CHECK(count >= vol * N * N);  // boundary terms only add
}

TEST_CASE("exact volumes") {
  CHECK(unit_square().volume() == Rational(1));
  CHECK(trapezoid().volume() == Rational(3, 2));
  CHECK(segment(1, 2).volume() == Rational(1));

  // p*Sigma has volume p^m / m!.
  const auto sigma3 = LatticePolytope::from_vertices(rows({{0, 0}, {3, 0}, {0, 3}}));
  CHECK(sigma3.volume() == Rational(9, 2));
  const auto tet =
      LatticePolytope::from_vertices(rows({{0, 0, 0}, {2, 0, 0}, {0, 2, 0}, {0, 0, 2}}));
  CHECK(tet.volume() == Rational(8, 6));
  const auto cube = LatticePolytope::from_vertices(rows({{0, 0, 0},
                                                         {1, 0, 0},
                                                         {0, 1, 0},
                                                         {0, 0, 1},
                                                         {1, 1, 0},
                                                         {1, 0, 1},
                                                         {0, 1, 1},
                                                         {1, 1, 1}}));
  CHECK(cube.volume() == Rational(1));
}

TEST_CASE("boundary decomposition against p*Sigma") {
  // Unit square (p=2): bottom and left edges lie on the walls, the vertex
  // (1,1) touches the diagonal; lattice length 2.
  const auto square = unit_square();
  const auto bd = square.boundary_decomposition();
  CHECK(bd.exterior_length == 2);
  CHECK(bd.exterior_facets.size() == 2);
  REQUIRE(bd.exterior_vertices.size() == 1);
  CHECK(bd.exterior_vertices[0] == Eigen::Vector2i(1, 1));

  // 2*Sigma: the whole boundary is exterior, lattice length 6.
  const auto sigma2 = LatticePolytope::from_vertices(rows({{0, 0}, {2, 0}, {0, 2}}));
  CHECK(sigma2.boundary_decomposition().exterior_length == 6);
  CHECK(sigma2.boundary_decomposition().interior_facets.empty());

  // Trapezoid: bottom [0,2] (length 2), left [0,1] (length 1), and the
  // slanted edge from (2,0) to (1,1) lies on the diagonal of 2*Sigma
  // (length 1); total 4.
  const auto bd2 = trapezoid().boundary_decomposition();
  CHECK(bd2.exterior_length == 4);
  CHECK(bd2.exterior_facets.size() == 3);
  CHECK(bd2.interior_facets.size() == 1);

  CHECK_THROWS_AS(segment(0, 1).boundary_decomposition(), DimensionUnsupported);
}

TEST_CASE("degree override for non-minimal embeddings") {
  const auto P = segment(0, 1, 2);
  CHECK(P.degree() == 2);
  CHECK_THROWS_AS(segment(0, 3, 2), ConfigError);
}
