#include "newton_ensemble/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace newton_ensemble {

namespace {

using VectorXl = Eigen::Matrix<long long, Eigen::Dynamic, 1>;
using MatrixXl = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;
using Vec2l = Eigen::Matrix<long long, 2, 1>;
using Vec3l = Eigen::Matrix<long long, 3, 1>;

long long gcd_ll(long long a, long long b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

// Rank of a small integer matrix by fraction-free elimination (exact).
int integer_rank(MatrixXl A) {
  int rank = 0;
  const int rows = static_cast<int>(A.rows());
  const int cols = static_cast<int>(A.cols());
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r) {
      if (A(r, col) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    A.row(rank).swap(A.row(pivot));
    for (int r = rank + 1; r < rows; ++r) {
      if (A(r, col) == 0) continue;
      const long long a = A(rank, col);
      const long long b = A(r, col);
      const long long g = gcd_ll(a, b);
      A.row(r) = A.row(r) * (a / g) - A.row(rank) * (b / g);
    }
    ++rank;
  }
  return rank;
}

VectorXi primitive(const VectorXi& v) {
  long long g = 0;
  for (int j = 0; j < v.size(); ++j) g = gcd_ll(g, v(j));
  if (g <= 1) return v;
  VectorXi out = v;
  for (int j = 0; j < v.size(); ++j) out(j) = static_cast<int>(v(j) / g);
  return out;
}

std::uint64_t face_hash(const std::vector<int>& sorted_active) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t x) {
    for (int b = 0; b < 8; ++b) {
      h ^= (x >> (8 * b)) & 0xffULL;
      h *= 1099511628211ULL;
    }
  };
  mix(static_cast<std::uint64_t>(sorted_active.size()) + 0x51ULL);
  for (int i : sorted_active) mix(static_cast<std::uint64_t>(i) + 1);
  return h;
}

long long cross2(const Vec2l& o, const Vec2l& a, const Vec2l& b) {
  return (a(0) - o(0)) * (b(1) - o(1)) - (a(1) - o(1)) * (b(0) - o(0));
}

// Andrew monotone chain over exact integer points; returns indices of the
// hull corners in counterclockwise order.
std::vector<int> polygon_cycle(const std::vector<Vec2l>& pts) {
  std::vector<int> idx(pts.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return pts[a](0) < pts[b](0) || (pts[a](0) == pts[b](0) && pts[a](1) < pts[b](1));
  });
  idx.erase(std::unique(idx.begin(), idx.end(),
                        [&](int a, int b) { return pts[a] == pts[b]; }),
            idx.end());
  const int n = static_cast<int>(idx.size());
  if (n <= 2) return idx;
  std::vector<int> hull(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {  // lower chain
    while (k >= 2 && cross2(pts[hull[k - 2]], pts[hull[k - 1]], pts[idx[i]]) <= 0) --k;
    hull[k++] = idx[i];
  }
  const int lower = k + 1;
  for (int i = n - 2; i >= 0; --i) {  // upper chain
    while (k >= lower && cross2(pts[hull[k - 2]], pts[hull[k - 1]], pts[idx[i]]) <= 0) --k;
    hull[k++] = idx[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace

LatticePolytope LatticePolytope::from_vertices(const MatrixXi& points, int degree_override) {
  LatticePolytope P;
  if (points.rows() == 0) throw NotFullDimensional("empty point set");
  P.dim_ = static_cast<int>(points.cols());
  if (P.dim_ < 1 || P.dim_ > 3)
    throw DimensionUnsupported("supported dimensions are m in {1,2,3}, got m=" +
                               std::to_string(P.dim_));
  if ((points.array() < 0).any())
    throw NegativeCoordinate("vertex outside the nonnegative orthant");

  // Affine full-dimensionality (exact).
  {
    MatrixXl D(points.rows() > 1 ? points.rows() - 1 : 0, P.dim_);
    for (int r = 1; r < points.rows(); ++r)
      D.row(r - 1) = (points.row(r) - points.row(0)).cast<long long>();
    if (points.rows() == 1 || integer_rank(D) < P.dim_)
      throw NotFullDimensional("points do not affinely span R^m");
  }

  P.build_facets(points);
  P.build_faces();
  P.check_delzant();

  int p = 0;
  for (int r = 0; r < P.vertices_.rows(); ++r) p = std::max(p, P.vertices_.row(r).sum());
  if (degree_override >= 0) {
    if (degree_override < p)
      throw ConfigError("degree override " + std::to_string(degree_override) +
                        " is below deg P = " + std::to_string(p));
    p = degree_override;
  }
  P.degree_ = p;
  return P;
}

void LatticePolytope::build_facets(const MatrixXi& points) {
  const int m = dim_;

  // Dedupe input points.
  std::vector<VectorXi> pts;
  {
    std::set<std::vector<int>> seen;
    for (int r = 0; r < points.rows(); ++r) {
      std::vector<int> key(points.cols());
      for (int j = 0; j < points.cols(); ++j) key[j] = points(r, j);
      if (seen.insert(key).second) pts.push_back(points.row(r).transpose());
    }
  }
  const int n = static_cast<int>(pts.size());

  // Enumerate supporting hyperplanes through m affinely independent points.
  std::set<std::pair<std::vector<int>, long long>> planes;
  auto consider = [&](VectorXi normal, const VectorXi& base) {
    normal = primitive(normal);
    long long lo = 0, hi = 0;
    for (int r = 0; r < n; ++r) {
      const long long v = (pts[r] - base).cast<long long>().dot(normal.cast<long long>());
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    VectorXi u;
    if (lo == 0)
      u = normal;  // all points on the >= side
    else if (hi == 0)
      u = -normal;
    else
      return;
    const long long a = -u.cast<long long>().dot(base.cast<long long>());
    std::vector<int> key(u.size());
    for (int j = 0; j < u.size(); ++j) key[j] = u(j);
    planes.emplace(std::move(key), a);
  };

  if (m == 1) {
    VectorXi e(1);
    e << 1;
    for (int i = 0; i < n; ++i) {
      consider(e, pts[i]);
      consider(-e, pts[i]);
    }
  } else if (m == 2) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const VectorXi d = pts[j] - pts[i];
        VectorXi nrm(2);
        nrm << -d(1), d(0);
        if (nrm(0) == 0 && nrm(1) == 0) continue;
        consider(nrm, pts[i]);
      }
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
          Eigen::Vector3i a, b;
          for (int c = 0; c < 3; ++c) {
            a(c) = pts[j](c) - pts[i](c);
            b(c) = pts[k](c) - pts[i](c);
          }
          const Eigen::Vector3i cr = a.cross(b);
          if (cr.isZero()) continue;
          VectorXi nrm(3);
          nrm << cr(0), cr(1), cr(2);
          consider(nrm, pts[i]);
        }
  }

  facet_normals_.resize(static_cast<int>(planes.size()), m);
  facet_offsets_.resize(static_cast<int>(planes.size()));
  int fi = 0;
  for (const auto& [u, a] : planes) {
    for (int j = 0; j < m; ++j) facet_normals_(fi, j) = u[j];
    facet_offsets_(fi) = static_cast<int>(a);
    ++fi;
  }

  // Hull corners: points pinned by m active facets of full normal rank.
  std::vector<VectorXi> corners;
  for (int r = 0; r < n; ++r) {
    std::vector<int> active;
    for (int i = 0; i < facet_count(); ++i) {
      const long long v =
          facet_normals_.row(i).cast<long long>().dot(pts[r].cast<long long>()) +
          facet_offsets_(i);
      if (v == 0) active.push_back(i);
    }
    if (static_cast<int>(active.size()) < m) continue;
    MatrixXl NR(static_cast<int>(active.size()), m);
    for (std::size_t k = 0; k < active.size(); ++k)
      NR.row(static_cast<int>(k)) = facet_normals_.row(active[k]).cast<long long>();
    if (integer_rank(NR) == m) corners.push_back(pts[r]);
  }
  std::sort(corners.begin(), corners.end(), [](const VectorXi& a, const VectorXi& b) {
    for (int j = 0; j < a.size(); ++j) {
      if (a(j) != b(j)) return a(j) < b(j);
    }
    return false;
  });
  vertices_.resize(static_cast<int>(corners.size()), m);
  for (std::size_t r = 0; r < corners.size(); ++r)
    vertices_.row(static_cast<int>(r)) = corners[r].transpose();
}

void LatticePolytope::build_faces() {
  const int m = dim_;
  const int nv = static_cast<int>(vertices_.rows());
  if (nv > 63) throw OverflowError("face lattice limited to 63 vertices");

  std::vector<std::uint64_t> facet_mask(facet_count(), 0);
  for (int i = 0; i < facet_count(); ++i)
    for (int r = 0; r < nv; ++r) {
      const long long v =
          facet_normals_.row(i).cast<long long>().dot(vertices_.row(r).cast<long long>()) +
          facet_offsets_(i);
      if (v == 0) facet_mask[i] |= (1ULL << r);
    }

  const std::uint64_t full = (1ULL << nv) - 1;
  std::set<std::uint64_t> masks;
  masks.insert(full);
  for (auto fm : facet_mask) masks.insert(fm);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::uint64_t> cur(masks.begin(), masks.end());
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        const std::uint64_t inter = cur[i] & cur[j];
        if (inter != 0 && masks.insert(inter).second) grew = true;
      }
  }

  faces_.clear();
  for (std::uint64_t mask : masks) {
    Face f;
    for (int r = 0; r < nv; ++r)
      if (mask & (1ULL << r)) f.vertex_ids.push_back(r);
    for (int i = 0; i < facet_count(); ++i)
      if ((mask & facet_mask[i]) == mask) f.active_facets.push_back(i);

    // Dimension and an integer tangent basis from vertex differences.
    const VectorXi v0 = vertices_.row(f.vertex_ids[0]).transpose();
    std::vector<VectorXi> basis;
    for (std::size_t k = 1; k < f.vertex_ids.size(); ++k) {
      const VectorXi d = vertices_.row(f.vertex_ids[k]).transpose() - v0;
      MatrixXl T(static_cast<int>(basis.size()) + 1, m);
      for (std::size_t b = 0; b < basis.size(); ++b)
        T.row(static_cast<int>(b)) = basis[b].cast<long long>();
      T.row(static_cast<int>(basis.size())) = d.cast<long long>();
      if (integer_rank(T) == static_cast<int>(basis.size()) + 1) basis.push_back(d);
    }
    f.dim = static_cast<int>(basis.size());
    f.tangent_basis.resize(f.dim, m);
    for (int b = 0; b < f.dim; ++b) f.tangent_basis.row(b) = basis[b].transpose();

    f.normal_generators.resize(static_cast<int>(f.active_facets.size()), m);
    for (std::size_t k = 0; k < f.active_facets.size(); ++k)
      f.normal_generators.row(static_cast<int>(k)) = -facet_normals_.row(f.active_facets[k]);

    f.sample.num = VectorXl::Zero(m);
    for (int vid : f.vertex_ids) f.sample.num += vertices_.row(vid).cast<long long>().transpose();
    f.sample.den = static_cast<long long>(f.vertex_ids.size());

    f.id = face_hash(f.active_facets);
    faces_.push_back(std::move(f));
  }

  std::sort(faces_.begin(), faces_.end(), [](const Face& a, const Face& b) {
    return a.dim > b.dim || (a.dim == b.dim && a.id < b.id);
  });

  // Sanity: the decomposition starts with the interior and ids are unique.
  std::set<std::uint64_t> ids;
  for (const auto& f : faces_) ids.insert(f.id);
  if (ids.size() != faces_.size() || faces_.front().dim != dim_)
    throw std::logic_error("face decomposition failed");
}

void LatticePolytope::check_delzant() {
  const int m = dim_;
  delzant_.delzant = true;
  for (int r = 0; r < vertices_.rows(); ++r) {
    std::vector<int> active;
    for (int i = 0; i < facet_count(); ++i) {
      const long long v =
          facet_normals_.row(i).cast<long long>().dot(vertices_.row(r).cast<long long>()) +
          facet_offsets_(i);
      if (v == 0) active.push_back(i);
    }
    if (static_cast<int>(active.size()) != m) {
      delzant_ = {false, r,
                  "vertex lies on " + std::to_string(active.size()) + " facets, expected " +
                      std::to_string(m)};
      return;
    }
    MatrixXl NR(m, m);
    for (int k = 0; k < m; ++k) NR.row(k) = facet_normals_.row(active[k]).cast<long long>();
    long long det = 0;
    if (m == 1)
      det = NR(0, 0);
    else if (m == 2)
      det = NR(0, 0) * NR(1, 1) - NR(0, 1) * NR(1, 0);
    else
      det = NR(0, 0) * (NR(1, 1) * NR(2, 2) - NR(1, 2) * NR(2, 1)) -
            NR(0, 1) * (NR(1, 0) * NR(2, 2) - NR(1, 2) * NR(2, 0)) +
            NR(0, 2) * (NR(1, 0) * NR(2, 1) - NR(1, 1) * NR(2, 0));
    if (det != 1 && det != -1) {
      delzant_ = {false, r,
                  "primitive normals at vertex have determinant " + std::to_string(det)};
      return;
    }
  }
  delzant_.failing_vertex = -1;
  delzant_.reason = "all vertices smooth";
}

long long LatticePolytope::facet_value_exact(
    int i, const Eigen::Matrix<long long, Eigen::Dynamic, 1>& x) const {
  return facet_normals_.row(i).cast<long long>().dot(x) + facet_offsets_(i);
}

double LatticePolytope::facet_value(int i, const VectorXd& x) const {
  return facet_normals_.row(i).cast<double>().dot(x) + static_cast<double>(facet_offsets_(i));
}

const Face& LatticePolytope::face_containing(const RationalVector& x) const {
  if (x.size() != dim_) throw DimensionUnsupported("point dimension mismatch");
  std::vector<int> active;
  for (int i = 0; i < facet_count(); ++i) {
    const long long v =
        facet_normals_.row(i).cast<long long>().dot(x.num) + facet_offsets_(i) * x.den;
    if (v < 0) throw OutsidePolytope("facet inequality violated");
    if (v == 0) active.push_back(i);
  }
  for (const auto& f : faces_)
    if (f.active_facets == active) return f;
  throw std::logic_error("active set matches no face");
}

MatrixXi LatticePolytope::lattice_points(int N, long long cap) const {
  if (N < 1) throw ConfigError("dilation N must be >= 1");
  const int m = dim_;
  VectorXi lo(m), hi(m);
  for (int j = 0; j < m; ++j) {
    lo(j) = vertices_.col(j).minCoeff() * N;
    hi(j) = vertices_.col(j).maxCoeff() * N;
  }
  long long box = 1;
  for (int j = 0; j < m; ++j) {
    box *= static_cast<long long>(hi(j) - lo(j) + 1);
    if (box > cap) throw OverflowError("lattice enumeration exceeds cap");
  }

  std::vector<VectorXi> pts;
  VectorXi alpha = lo;
  Eigen::Matrix<long long, Eigen::Dynamic, 1> al(m);
  for (;;) {
    for (int j = 0; j < m; ++j) al(j) = alpha(j);
    bool inside = true;
    for (int i = 0; i < facet_count() && inside; ++i)
      inside = facet_normals_.row(i).cast<long long>().dot(al) +
                   static_cast<long long>(N) * facet_offsets_(i) >=
               0;
    if (inside) pts.push_back(alpha);
    int j = m - 1;
    for (; j >= 0; --j) {
      if (alpha(j) < hi(j)) {
        ++alpha(j);
        for (int k = j + 1; k < m; ++k) alpha(k) = lo(k);
        break;
      }
    }
    if (j < 0) break;
  }
  MatrixXi out(static_cast<int>(pts.size()), m);
  for (std::size_t r = 0; r < pts.size(); ++r) out.row(static_cast<int>(r)) = pts[r].transpose();
  return out;
}

Rational LatticePolytope::volume() const {
  const int m = dim_;
  if (m == 1) return Rational(vertices_.col(0).maxCoeff() - vertices_.col(0).minCoeff(), 1);

  if (m == 2) {
    std::vector<Vec2l> pv(vertices_.rows());
    for (int r = 0; r < vertices_.rows(); ++r)
      pv[r] = vertices_.row(r).cast<long long>().transpose();
    const std::vector<int> cyc = polygon_cycle(pv);
    long long twice = 0;
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      const Vec2l& a = pv[cyc[k]];
      const Vec2l& b = pv[cyc[(k + 1) % cyc.size()]];
      twice += a(0) * b(1) - a(1) * b(0);
    }
    return Rational(twice < 0 ? -twice : twice, 2);
  }

  // m == 3: fan of tetrahedra from vertex 0 over triangulated facets.
  Vec3l v0;
  for (int j = 0; j < 3; ++j) v0(j) = vertices_(0, j);
  long long six = 0;
  for (int i = 0; i < facet_count(); ++i) {
    if (facet_value_exact(i, vertices_.row(0).cast<long long>().transpose()) == 0) continue;
    std::vector<int> on_facet;
    for (int r = 0; r < vertices_.rows(); ++r)
      if (facet_value_exact(i, vertices_.row(r).cast<long long>().transpose()) == 0)
        on_facet.push_back(r);
    // Order the facet polygon by projecting out the largest normal coordinate.
    int drop = 0;
    for (int j = 1; j < 3; ++j)
      if (std::abs(facet_normals_(i, j)) > std::abs(facet_normals_(i, drop))) drop = j;
    std::vector<Vec2l> proj(on_facet.size());
    for (std::size_t k = 0; k < on_facet.size(); ++k) {
      int c = 0;
      for (int j = 0; j < 3; ++j)
        if (j != drop) proj[k](c++) = vertices_(on_facet[k], j);
    }
    const std::vector<int> cyc = polygon_cycle(proj);
    for (std::size_t k = 1; k + 1 < cyc.size(); ++k) {
      Vec3l a, b, c;
      for (int j = 0; j < 3; ++j) {
        a(j) = vertices_(on_facet[cyc[0]], j) - v0(j);
        b(j) = vertices_(on_facet[cyc[k]], j) - v0(j);
        c(j) = vertices_(on_facet[cyc[k + 1]], j) - v0(j);
      }
      const long long det = a.dot(b.cross(c));
      six += det < 0 ? -det : det;
    }
  }
  return Rational(six, 6);
}

BoundaryDecomposition LatticePolytope::boundary_decomposition() const {
  if (dim_ != 2) throw DimensionUnsupported("boundary decomposition requires m = 2");
  const long long p = degree_;

  auto on_sigma_wall = [&](int vertex, int wall) -> bool {
    if (wall == 0) return vertices_(vertex, 0) == 0;
    if (wall == 1) return vertices_(vertex, 1) == 0;
    return vertices_(vertex, 0) + vertices_(vertex, 1) == p;
  };

  BoundaryDecomposition bd;
  std::set<int> exterior_vertex_ids;
  for (int i = 0; i < facet_count(); ++i) {
    std::vector<int> ends;
    for (int r = 0; r < vertices_.rows(); ++r)
      if (facet_value_exact(i, vertices_.row(r).cast<long long>().transpose()) == 0) ends.push_back(r);
    bool exterior = false;
    for (int wall = 0; wall < 3 && !exterior; ++wall) {
      bool all = true;
      for (int r : ends) all = all && on_sigma_wall(r, wall);
      exterior = all;
    }
    if (exterior) {
      bd.exterior_facets.push_back(i);
      const long long dx = vertices_(ends[1], 0) - vertices_(ends[0], 0);
      const long long dy = vertices_(ends[1], 1) - vertices_(ends[0], 1);
      bd.exterior_length += gcd_ll(dx, dy);
      for (int r : ends) exterior_vertex_ids.insert(r);
    } else {
      bd.interior_facets.push_back(i);
    }
  }
  for (int r = 0; r < vertices_.rows(); ++r) {
    if (exterior_vertex_ids.count(r)) continue;
    for (int wall = 0; wall < 3; ++wall)
      if (on_sigma_wall(r, wall)) {
        bd.exterior_vertices.push_back(Eigen::Vector2i(vertices_(r, 0), vertices_(r, 1)));
        break;
      }
  }
  return bd;
}

int face_euler_sum(const LatticePolytope& P) {
  int sum = 0;
  for (const auto& f : P.faces()) sum += (f.dim % 2 == 0) ? 1 : -1;
  return sum;
}

}  // namespace newton_ensemble
