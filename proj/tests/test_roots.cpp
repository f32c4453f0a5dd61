#include <doctest.h>

#include <random>

#include "newton_ensemble/roots.hpp"

using namespace newton_ensemble;

TEST_CASE("linear and quadratic roots") {
  VectorXcd a(2);
  a << Complex(-1.0, 0.0), Complex(1.0, 0.0);  // z - 1
  const auto r = aberth_roots(a);
  REQUIRE(r.size() == 1);
  CHECK(std::abs(r[0] - Complex(1.0, 0.0)) < 1e-12);

  VectorXcd b(3);
  b << Complex(2.0, 0.0), Complex(-3.0, 0.0), Complex(1.0, 0.0);  // (z-1)(z-2)
  auto r2 = aberth_roots(b);
  REQUIRE(r2.size() == 2);
  std::sort(r2.begin(), r2.end(),
            [](const Complex& x, const Complex& y) { return x.real() < y.real(); });
  CHECK(std::abs(r2[0] - Complex(1.0, 0.0)) < 1e-10);
  CHECK(std::abs(r2[1] - Complex(2.0, 0.0)) < 1e-10);
}

TEST_CASE("roots of unity recovered at moderate degree") {
  const int n = 32;
  VectorXcd a = VectorXcd::Zero(n + 1);
  a(0) = Complex(-1.0, 0.0);
  a(n) = Complex(1.0, 0.0);  // z^n - 1
  const auto roots = aberth_roots(a);
  REQUIRE(roots.size() == n);
  for (const auto& z : roots) {
    CHECK(std::abs(std::abs(z) - 1.0) < 1e-9);
    CHECK(std::abs(poly_eval(a, z)) < 1e-8);
  }
}

TEST_CASE("random coefficient polynomials certify all roots") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 40;
    VectorXcd a(n + 1);
    for (int k = 0; k <= n; ++k) a(k) = complex_gaussian(rng);
    const auto roots = aberth_roots(a);
    CHECK(static_cast<int>(roots.size()) == n);
    for (const auto& z : roots) {
      const double backward =
          std::abs(poly_eval(a, z) / poly_eval_derivative(a, z)) / std::max(1.0, std::abs(z));
      CHECK(backward < 1e-8);
    }
  }
}

TEST_CASE("valuation stripping keeps only C* roots") {
  VectorXcd a = VectorXcd::Zero(6);
  a(2) = Complex(-1.0, 0.0);
  a(5) = Complex(1.0, 0.0);  // z^2 (z^3 - 1)
  const auto roots = nonzero_roots(a);
  CHECK(roots.size() == 3);
  for (const auto& z : roots) CHECK(std::abs(std::abs(z) - 1.0) < 1e-10);

  VectorXcd mono = VectorXcd::Zero(4);
  mono(3) = Complex(2.0, 0.0);
  CHECK(nonzero_roots(mono).empty());
}
