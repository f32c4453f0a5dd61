#pragma once

#include <Eigen/Dense>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <mutex>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace newton_ensemble {

using Eigen::MatrixXd;
using Eigen::MatrixXi;
using Eigen::VectorXd;
using Eigen::VectorXi;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct NotFullDimensional : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NegativeCoordinate : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionUnsupported : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct OutsidePolytope : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct OverflowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BoundaryPoint : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct OutOfSimplex : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonDelzant : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoFaceAccepted : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TransitionPoint : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RootFindingFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ResultantIllConditioned : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateSystem : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Exact rational scalar / vector (int64; polytope combinatorics must be
// tie-free, so no floating point here)
// ---------------------------------------------------------------------------

struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n) : num(n), den(1) {}
  Rational(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num == 0) den = 1;
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num * b.num, a.den * b.den);
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num * b.den < b.num * a.den;
  }
};

// Rational vector with a shared denominator; exact input type for
// face-identification queries.
struct RationalVector {
  Eigen::Matrix<long long, Eigen::Dynamic, 1> num;
  long long den = 1;

  static RationalVector from_integer(const VectorXi& v) {
    RationalVector r;
    r.num = v.cast<long long>();
    r.den = 1;
    return r;
  }
  int size() const { return static_cast<int>(num.size()); }
  VectorXd value() const { return num.cast<double>() / static_cast<double>(den); }
};

// ---------------------------------------------------------------------------
// Stable log-sum-exp helpers
// ---------------------------------------------------------------------------

// log(sum_i exp(a_i)), shifted by the max term.
template <typename Derived>
double log_sum_exp(const Eigen::MatrixBase<Derived>& a) {
  if (a.size() == 0) return -std::numeric_limits<double>::infinity();
  const double m = a.maxCoeff();
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) s += std::exp(a(i) - m);
  return m + std::log(s);
}

// log(1 + sum_j exp(s_j)); the "softplus log-sum" of the moment-map chart.
inline double softplus_log_sum(const VectorXd& s) {
  double m = 0.0;
  for (Eigen::Index j = 0; j < s.size(); ++j) m = std::max(m, s(j));
  double acc = std::exp(-m);
  for (Eigen::Index j = 0; j < s.size(); ++j) acc += std::exp(s(j) - m);
  return m + std::log(acc);
}

// ---------------------------------------------------------------------------
// Deterministic RNG substreams
// ---------------------------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Per-trial substream so that trials parallelize deterministically.
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(index)));
}

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Standard complex Gaussian, E|lambda|^2 = 1, via Box-Muller on the raw
// 64-bit stream (bit-reproducible across platforms, unlike
// std::normal_distribution).
inline std::complex<double> complex_gaussian(std::mt19937_64& rng) {
  double u1 = uniform01(rng);
  while (u1 <= 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double g1 = r * std::cos(2.0 * M_PI * u2);
  const double g2 = r * std::sin(2.0 * M_PI * u2);
  return std::complex<double>(g1 * M_SQRT1_2, g2 * M_SQRT1_2);
}

// ---------------------------------------------------------------------------
// Ordered worker-pool map: results land by index, so output is deterministic
// regardless of thread count.
// ---------------------------------------------------------------------------

inline int default_thread_count() {
  if (const char* env = std::getenv("NEWTON_ENSEMBLE_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                         int threads = 0) {
  if (threads <= 0) threads = default_thread_count();
  threads = static_cast<int>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          next.store(count);
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace newton_ensemble
