#pragma once
// Shared error types, RNG, and small helpers used across the library.

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace sphereform {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidInput : Error { using Error::Error; };
struct InvalidParams : Error { using Error::Error; };
struct Unsupported : Error { using Error::Error; };
struct GroupTooLarge : Error { using Error::Error; };
struct DecompositionUnstable : Error { using Error::Error; };
struct GeometryError : Error { using Error::Error; };
struct FrameError : Error { using Error::Error; };
struct NotApplicable : Error { using Error::Error; };

inline constexpr double kPi = 3.14159265358979323846;

inline double clamp_unit(double x) { return x < -1.0 ? -1.0 : (x > 1.0 ? 1.0 : x); }

// angle between unit vectors
inline double angle_between(const Vec& a, const Vec& b) {
  return std::acos(clamp_unit(a.dot(b)));
}

// Deterministic RNG. Box-Muller on top of mt19937_64 so that the stream does
// not depend on libstdc++'s distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next_u64() {
    // xorshift* keeps the stream self-contained and fast
    std::uint64_t x = state_;
    x ^= x >> 12;
    x ^= x << 25;
    x ^= x >> 27;
    state_ = x;
    return x * 0x2545F4914F6CDD1Dull;
  }

  // uniform in [0, 1)
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    while (u1 <= 1e-300) u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kPi * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * kPi * u2);
  }

  Vec gaussian_vector(int n) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = normal();
    return v;
  }

  Vec unit_vector(int n) {
    Vec v = gaussian_vector(n);
    double nm = v.norm();
    while (nm < 1e-12) {
      v = gaussian_vector(n);
      nm = v.norm();
    }
    return v / nm;
  }

  CVec unit_complex_vector(int n) {
    CVec v(n);
    for (int i = 0; i < n; ++i) v(i) = std::complex<double>(normal(), normal());
    return v / v.norm();
  }

  Mat gaussian_matrix(int r, int c) {
    Mat m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m(i, j) = normal();
    return m;
  }

  Mat symmetric_gaussian(int n) {
    Mat g = gaussian_matrix(n, n);
    return 0.5 * (g + g.transpose());
  }

  // Haar-ish random orthogonal matrix via QR with sign fix.
  Mat random_orthogonal(int n) {
    Eigen::HouseholderQR<Mat> qr(gaussian_matrix(n, n));
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i)
      if (r(i, i) < 0) q.col(i) = -q.col(i);
    return q;
  }

  // derive an independent child stream (for per-task determinism)
  Rng fork() { return Rng(next_u64() ^ 0xd1b54a32d192ed03ull); }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw InvalidInput(msg);
}

inline void require_finite(const Mat& m, const std::string& what) {
  if (!m.allFinite()) throw InvalidInput(what + ": non-finite entries");
}

inline void require_finite(const Vec& v, const std::string& what) {
  if (!v.allFinite()) throw InvalidInput(what + ": non-finite entries");
}

}  // namespace sphereform
