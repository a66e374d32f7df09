#include <Eigen/SVD>
#include <cmath>

#include "sphereform/quotients.hpp"

namespace sphereform {

ProjectiveInvolutionQuotient::ProjectiveInvolutionQuotient(int d_) : d(d_) {
  if (d < 2) throw InvalidParams("ProjectiveInvolutionQuotient: requires d >= 2");
}

CVec ProjectiveInvolutionQuotient::involution(const CVec& z) const {
  require(z.size() == 2 * d, "involution: expected C^{2d} vector");
  CVec w(2 * d);
  for (int i = 0; i < d; ++i) {
    w(i) = std::conj(z(d + i));
    w(d + i) = -std::conj(z(i));
  }
  return w;
}

double ProjectiveInvolutionQuotient::fs_distance(const CVec& z, const CVec& w) const {
  std::complex<double> ip = z.dot(w);  // Eigen: conjugate-linear in z
  return std::acos(clamp_unit(std::abs(ip)));
}

double ProjectiveInvolutionQuotient::quotient_distance(const CVec& z, const CVec& w) const {
  require(std::abs(z.norm() - 1.0) <= 1e-9 && std::abs(w.norm() - 1.0) <= 1e-9,
          "cp quotient_distance: unit vectors required");
  return std::min(fs_distance(z, w), fs_distance(z, involution(w)));
}

namespace {

// real gradient step decreasing |<z, y>| (treating C^k as R^{2k})
void step_away(const CVec& z, CVec& y, double step) {
  std::complex<double> c = z.dot(y);
  CVec grad = z * c;  // gradient of |<z,y>|^2 / 2 with respect to y
  double gn = grad.norm();
  if (gn < 1e-15) return;
  y -= (step / gn) * grad;
  y.normalize();
}

}  // namespace

double cp_eccentricity_lower(const ProjectiveInvolutionQuotient& q, const CVec& z, Rng& rng,
                             int restarts, int iters) {
  const int n = 2 * q.d;
  require(z.size() == n, "cp_eccentricity_lower: wrong dimension");

  double best = 0.0;
  auto value = [&](const CVec& y) { return q.quotient_distance(z, y); };

  // null-space seed: w with <z,w> = 0 and B(z,w) = 0 where
  // B(z,w) = sum_{i<=d} z_i w_{d+i} - z_{d+i} w_i  (so that <z, sigma(w)> = conj(B))
  {
    CMat sys = CMat::Zero(2, n);
    for (int i = 0; i < n; ++i) sys(0, i) = std::conj(z(i));
    for (int i = 0; i < q.d; ++i) {
      sys(1, q.d + i) = z(i);
      sys(1, i) = -z(q.d + i);
    }
    Eigen::JacobiSVD<CMat> svd(sys, Eigen::ComputeFullV);
    // columns beyond the row rank span the null space; n >= 4 so they exist
    for (int c = n - 1; c >= 2; --c) {
      CVec w = svd.matrixV().col(c);
      w.normalize();
      best = std::max(best, value(w));
    }
  }

  for (int r = 0; r < restarts; ++r) {
    CVec y = rng.unit_complex_vector(n);
    double step = 0.3;
    double fy = value(y);
    for (int it = 0; it < iters && step > 1e-10; ++it) {
      // move against the active branch (plain or involuted)
      double f1 = q.fs_distance(z, y);
      double f2 = q.fs_distance(z, q.involution(y));
      CVec cand = y;
      if (f1 <= f2) {
        step_away(z, cand, step);
      } else {
        // decrease |<z, sigma(y)>| = |B(z, y)|; B is C-linear in y with
        // coefficient vector b: B(z,y) = <conj(b), y> pattern
        CVec b = CVec::Zero(n);
        for (int i = 0; i < q.d; ++i) {
          b(q.d + i) = std::conj(z(i));
          b(i) = -std::conj(z(q.d + i));
        }
        step_away(b, cand, step);
      }
      double fc = value(cand);
      if (fc > fy) {
        y = cand;
        fy = fc;
      } else {
        step *= 0.5;
      }
    }
    best = std::max(best, fy);
  }
  return best;
}

double cp_diameter_sampled(const ProjectiveInvolutionQuotient& q, int pairs, Rng& rng) {
  const int n = 2 * q.d;
  double best = 0.0;
  for (int t = 0; t < pairs; ++t)
    best = std::max(best,
                    q.quotient_distance(rng.unit_complex_vector(n), rng.unit_complex_vector(n)));
  return best;
}

double cp_min_displacement(const ProjectiveInvolutionQuotient& q, int samples, Rng& rng) {
  const int n = 2 * q.d;
  double worst = kPi;
  for (int t = 0; t < samples; ++t) {
    CVec z = rng.unit_complex_vector(n);
    worst = std::min(worst, q.fs_distance(z, q.involution(z)));
  }
  return worst;
}

double cp_involution_square_residual(const ProjectiveInvolutionQuotient& q, int samples,
                                     Rng& rng) {
  // 1 - |<z, sigma^2 z>| measures the identity action on projective classes
  // without the half-mantissa loss of arccos near zero distance
  const int n = 2 * q.d;
  double worst = 0.0;
  for (int t = 0; t < samples; ++t) {
    CVec z = rng.unit_complex_vector(n);
    CVec zz = q.involution(q.involution(z));
    worst = std::max(worst, std::abs(1.0 - std::abs(z.dot(zz))));
  }
  return worst;
}

}  // namespace sphereform
