#pragma once
// Shared numerical kernels: tolerant rank, geodesics, sphere nets, quadrature.

#include <functional>
#include <optional>
#include <vector>

#include "sphereform/common.hpp"

namespace sphereform {

// Unit vector in R^{n+1}; normalized on construction.
struct SpherePoint {
  Vec coords;

  explicit SpherePoint(Vec c) : coords(std::move(c)) {
    require_finite(coords, "SpherePoint");
    double n = coords.norm();
    require(n > 1e-12, "SpherePoint: zero vector");
    coords /= n;
  }

  int ambient_dim() const { return static_cast<int>(coords.size()); }
  int sphere_dim() const { return ambient_dim() - 1; }
};

// Tangent vector at a base point: <base, dir> = 0.
struct TangentVector {
  SpherePoint base;
  Vec dir;

  TangentVector(SpherePoint b, Vec d) : base(std::move(b)), dir(std::move(d)) {
    require_finite(dir, "TangentVector");
    require(dir.size() == base.coords.size(), "TangentVector: dimension mismatch");
    require(std::abs(base.coords.dot(dir)) <= 1e-10, "TangentVector: not orthogonal to base");
  }
};

// Projects w to the tangent space at p and normalizes.
TangentVector make_unit_tangent(const SpherePoint& p, const Vec& w);

enum class IntervalMethod { net, witness, sample };

// [lower, upper] bounds with provenance; certified only for net/witness bounds.
struct CertifiedInterval {
  double lower = 0.0;
  double upper = 0.0;
  bool certified = false;
  IntervalMethod method = IntervalMethod::sample;

  double width() const { return upper - lower; }
  bool contains(double x) const { return lower <= x && x <= upper; }
};

const char* method_name(IntervalMethod m);

// Covering net on S^dim: every point of the sphere is within covering_radius
// of some net point.
struct SphericalNet {
  int dim = 0;
  double covering_radius = 0.0;
  bool certified = false;
  std::vector<Vec> points;

  // empirical max gap over random probes (filled by audit)
  double audited_gap = 0.0;
};

// Number of singular values above tol * sigma_max.
int rank_tol(const Mat& m, double tol = 1e-8);

// Arc-length geodesic: cos(t) p + sin(t) dir, renormalized.
SpherePoint geodesic(const SpherePoint& p, const TangentVector& v, double t);

// Recursive latitude-band net, certified by construction for dim <= 4.
// dim > 4 with require_certified -> Unsupported; otherwise a sampled,
// uncertified net is returned (covering_radius = audited empirical gap).
SphericalNet build_net(int dim, double delta, bool require_certified = true,
                       std::uint64_t sample_seed = 1);

// Randomized covering audit: max over `probes` random points of the distance
// to the nearest net point.
double net_audit(const SphericalNet& net, int probes, Rng& rng);

// Composite Simpson on [a, b] with n even subintervals (n >= 16).
double quadrature(const std::function<double(double)>& f, double a, double b, int n);

// Streaming enumeration of the certified net for S^dim at resolution delta;
// avoids materializing large nets. Visits exactly the points build_net would
// produce. `f` receives (const double* coords, int len).
void for_each_net_point(int dim, double delta,
                        const std::function<void(const double*, int)>& f);

// Number of points the certified net would contain.
std::size_t net_size(int dim, double delta);

}  // namespace sphereform
