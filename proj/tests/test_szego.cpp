#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <random>

#include "newton_ensemble/geometry.hpp"
#include "newton_ensemble/szego.hpp"

using namespace newton_ensemble;

namespace {

VectorXd vec(std::initializer_list<double> v) {
  VectorXd out(static_cast<int>(v.size()));
  int i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

VectorXi ivec(std::initializer_list<int> v) {
  VectorXi out(static_cast<int>(v.size()));
  int i = 0;
  for (int x : v) out(i++) = x;
  return out;
}

LatticePolytope unit_square() {
  MatrixXi sq(4, 2);
  sq << 0, 0, 1, 0, 0, 1, 1, 1;
  return LatticePolytope::from_vertices(sq);
}

LatticePolytope segment(int a, int b) {
  MatrixXi v(2, 1);
  v << a, b;
  return LatticePolytope::from_vertices(v);
}

LatticePolytope simplex(int m, int p) {
  MatrixXi v(m + 1, m);
  v.setZero();
  for (int j = 0; j < m; ++j) v(j + 1, j) = p;
  return LatticePolytope::from_vertices(v);
}

// Direct small-sum oracle for the kernel diagonal: explicit factorials and
// moduli, no log-space tricks.
double kernel_direct(const LatticePolytope& P, int N, const VectorXd& s) {
  const int m = P.dim();
  const int np = N * P.degree();
  const MatrixXi pts = P.lattice_points(N);
  auto factorial = [](int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  };
  double sum = 0.0;
  for (int r = 0; r < pts.rows(); ++r) {
    double c = factorial(np);
    c /= factorial(np - pts.row(r).sum());
    for (int j = 0; j < m; ++j) c /= factorial(pts(r, j));
    sum += c * std::exp(pts.row(r).cast<double>().dot(s));
  }
  double denom = 1.0;
  for (int j = 0; j < m; ++j) denom += std::exp(s(j));
  double dim_factor = 1.0;
  for (int j = 1; j <= m; ++j) dim_factor *= np + j;
  return dim_factor * sum / std::pow(denom, np);
}

}  // namespace

TEST_CASE("Fubini-Study norms of monomials") {
  CHECK(fs_norm_sq_log(ivec({0}), 1, 1) == doctest::Approx(std::log(0.5)).epsilon(1e-14));
  CHECK(fs_norm_sq_log(ivec({1}), 2, 1) ==
        doctest::Approx(std::log(1.0 / 6)).epsilon(1e-13));
  // C(p, 0) = 1: the norm is p!/(p+m)!.
  CHECK(fs_norm_sq_log(ivec({0, 0}), 3, 2) ==
        doctest::Approx(std::log(6.0 / 120.0)).epsilon(1e-13));
  CHECK_THROWS_AS(fs_norm_sq_log(ivec({3}), 2, 1), OutOfSimplex);
}

TEST_CASE("kernel diagonal against direct small sums") {
  const auto seg = segment(1, 2);
  const KernelDiagResult k1 = kernel_diag(seg, 1, vec({0.0}));
  CHECK(std::exp(k1.log_value) == doctest::Approx(9.0 / 4).epsilon(1e-13));
  CHECK(k1.term_count == 2);

  const auto square = unit_square();
  const KernelDiagResult k2 = kernel_diag(square, 1, vec({0.0, 0.0}));
  CHECK(std::exp(k2.log_value) == doctest::Approx(kernel_direct(square, 1, vec({0.0, 0.0})))
                                      .epsilon(1e-12));
  // The direct sum evaluates to 12 * (1+2+2+2) / 9 = 28/3.
  CHECK(std::exp(k2.log_value) == doctest::Approx(28.0 / 3).epsilon(1e-13));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  for (int t = 0; t < 25; ++t) {
    VectorXd s(2);
    s << U(rng), U(rng);
    const KernelDiagResult k = kernel_diag(square, 2, s);
    CHECK(std::exp(k.log_value) ==
          doctest::Approx(kernel_direct(square, 2, s)).epsilon(1e-11));
  }
}

TEST_CASE("full-simplex identity: the kernel is constant prod(Np+j)") {
  for (int m = 1; m <= 2; ++m)
    for (int p = 1; p <= 3; ++p) {
      const auto P = simplex(m, p);
      for (int N = 1; N <= 10; ++N) {
        const LatticeTable table = make_lattice_table(P, N);
        double expected = 0.0;
        for (int j = 1; j <= m; ++j) expected += std::log(N * p + j);
        std::mt19937_64 rng(100 * m + 10 * p + N);
        std::uniform_real_distribution<double> U(-3.0, 3.0);
        for (int t = 0; t < 5; ++t) {
          VectorXd s(m);
          for (int j = 0; j < m; ++j) s(j) = U(rng);
          CHECK(kernel_diag(table, m, s).log_value ==
                doctest::Approx(expected).epsilon(1e-10));
        }
      }
    }
}

TEST_CASE("mass density") {
  // Full simplex is flat: m=1, p=1, N=2 gives 3/3 = 1.
  CHECK(mass_density(simplex(1, 1), 2, vec({0.7})) == doctest::Approx(1.0).epsilon(1e-12));

  // The allowed-region limit for the square is p^2/Vol = 4; N=100 lands
  // within 2% at the center.
  const auto square = unit_square();
  const LatticeTable table = make_lattice_table(square, 100);
  CHECK(mass_density(table, 2, vec({0.0, 0.0})) == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("u_N gradient is a weighted lattice average in P") {
  const auto seg = segment(1, 2);
  // N=1, s=0: weights C(2,1)=2 on alpha=1 and C(2,2)=1 on alpha=2.
  CHECK(grad_u_N(seg, 1, vec({0.0}))(0) == doctest::Approx(4.0 / 3).epsilon(1e-13));

  const auto square = unit_square();
  const LatticeTable table = make_lattice_table(square, 3);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> U(-4.0, 4.0);
  for (int t = 0; t < 50; ++t) {
    VectorXd s(2);
    s << U(rng), U(rng);
    const VectorXd g = grad_u_N(table, s);
    CHECK(g.minCoeff() >= 0.0);
    CHECK(g.maxCoeff() <= 1.0);  // inside the unit square
  }
}

TEST_CASE("analytic u_N derivatives match central differences") {
  const auto square = unit_square();
  const LatticeTable table = make_lattice_table(square, 2);
  const double h = 1e-4;
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> U(-3.0, 3.0);
  for (int t = 0; t < 20; ++t) {
    VectorXd s(2);
    s << U(rng), U(rng);
    const VectorXd g = grad_u_N(table, s);
    const MatrixXd H = hess_u_N(table, s);
    for (int k = 0; k < 2; ++k) {
      VectorXd sp = s, sm = s;
      sp(k) += h;
      sm(k) -= h;
      const double fd_g = (u_N(table, sp) - u_N(table, sm)) / (2 * h);
      CHECK(g(k) == doctest::Approx(fd_g).epsilon(1e-6));
      const VectorXd fd_h = (grad_u_N(table, sp) - grad_u_N(table, sm)) / (2 * h);
      for (int j = 0; j < 2; ++j)
        CHECK(H(j, k) == doctest::Approx(fd_h(j)).epsilon(1e-6).scale(1.0));
    }
  }
}

TEST_CASE("u_N is convex: Hessian PSD") {
  const auto square = unit_square();
  const LatticeTable table = make_lattice_table(square, 4);
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> U(-6.0, 6.0);
  for (int t = 0; t < 100; ++t) {
    VectorXd s(2);
    s << U(rng), U(rng);
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(hess_u_N(table, s));
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);
  }
}

TEST_CASE("monomial masses sum to one over the full simplex") {
  const int np = 7;
  for (const VectorXd& s : {vec({0.3, -1.2}), vec({2.0, 1.0})}) {
    double total = 0.0;
    for (int a = 0; a <= np; ++a)
      for (int b = 0; a + b <= np; ++b) total += std::exp(monomial_mass_log(ivec({a, b}), np, s));
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(monomial_mass_log(ivec({1}), 2, vec({0.0})) ==
        doctest::Approx(std::log(0.5)).epsilon(1e-14));
}

TEST_CASE("monomial argmax tracks the moment map") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> U(-1.5, 1.5);
  for (int np : {20, 40, 60}) {
    for (int t = 0; t < 10; ++t) {
      VectorXd s(2);
      s << U(rng), U(rng);
      double best = -1e300;
      VectorXi arg(2);
      for (int a = 0; a <= np; ++a)
        for (int b = 0; a + b <= np; ++b) {
          const double v = monomial_mass_log(ivec({a, b}), np, s);
          if (v > best) {
            best = v;
            arg << a, b;
          }
        }
      const VectorXd target = np * mu_sigma(s);
      CHECK((arg.cast<double>() - target).lpNorm<Eigen::Infinity>() <= 1.0);
    }
  }
}

TEST_CASE("monomial decay rate grows with distance from the moment image") {
  // Lemma-style check: at fixed s, monomials with alpha/np away from
  // mu_Sigma(s) decay like e^{-lambda np}, lambda increasing in distance.
  const VectorXd s = vec({0.0, 0.0});
  const VectorXd x = mu_sigma(s);
  auto rate = [&](double dist) {
    // fit log mass ~ -lambda * np over np in [20, 200]
    std::vector<double> xs, ys;
    for (int np = 20; np <= 200; np += 20) {
      VectorXi alpha(2);
      alpha << static_cast<int>(std::lround((x(0) + dist) * np)),
          static_cast<int>(std::lround(x(1) * np));
      xs.push_back(np);
      ys.push_back(monomial_mass_log(alpha, np, s));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = static_cast<int>(xs.size());
    for (int i = 0; i < n; ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
  };
  const double lambda1 = rate(0.20);
  const double lambda2 = rate(0.35);
  CHECK(lambda1 > 0.0);
  CHECK(lambda2 > lambda1);
}
