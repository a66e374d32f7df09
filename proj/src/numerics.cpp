#include "sphereform/numerics.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace sphereform {

const char* method_name(IntervalMethod m) {
  switch (m) {
    case IntervalMethod::net: return "net";
    case IntervalMethod::witness: return "witness";
    case IntervalMethod::sample: return "sample";
  }
  return "?";
}

TangentVector make_unit_tangent(const SpherePoint& p, const Vec& w) {
  require_finite(w, "make_unit_tangent");
  Vec t = w - p.coords * p.coords.dot(w);
  double n = t.norm();
  require(n > 1e-12, "make_unit_tangent: direction parallel to base point");
  return TangentVector(p, t / n);
}

int rank_tol(const Mat& m, double tol) {
  require(tol > 0.0, "rank_tol: tol must be positive");
  require_finite(m, "rank_tol");
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 0;
  double smax = s(0);
  if (smax <= 0.0) return 0;
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > tol * smax) ++r;
  return r;
}

SpherePoint geodesic(const SpherePoint& p, const TangentVector& v, double t) {
  require((v.base.coords - p.coords).norm() <= 1e-9, "geodesic: tangent not based at p");
  require(std::abs(v.dir.norm() - 1.0) <= 1e-9, "geodesic: direction must be unit");
  return SpherePoint(std::cos(t) * p.coords + std::sin(t) * v.dir);
}

namespace {

// Band layout for the recursive net on S^dim.
//   S^1: N = ceil(2π/δ) equally spaced points (covering radius π/N <= δ/2).
//   S^d: polar bands φ_i = (i+1/2)h, h = π/K <= δ; each band carries a net of
//        S^{d-1} at resolution (δ/2)/sin(φ_i) (single pole point when that
//        exceeds π). A point (φ, ω) is then within h/2 + sin(φ_i)·δ_sub <= δ
//        of some net point, which certifies the covering radius.
int circle_count(double delta) {
  int n = static_cast<int>(std::ceil(2.0 * kPi / delta));
  return std::max(n, 2);
}

std::size_t count_rec(int dim, double delta) {
  if (dim == 1) return static_cast<std::size_t>(circle_count(delta));
  int bands = std::max(1, static_cast<int>(std::ceil(kPi / delta)));
  double h = kPi / bands;
  std::size_t total = 0;
  for (int i = 0; i < bands; ++i) {
    double phi = (i + 0.5) * h;
    double s = std::sin(phi);
    double sub = (s > 1e-12) ? (delta / 2.0) / s : 2.0 * kPi;
    if (sub >= kPi)
      total += 1;
    else
      total += count_rec(dim - 1, sub);
  }
  return total;
}

// buf[0..dim] receives the point; scale multiplies the trailing block.
void emit_rec(int dim, double delta, double* buf, double scale,
              const std::function<void(const double*, int)>& f, double* root, int root_len) {
  if (dim == 1) {
    int n = circle_count(delta);
    for (int k = 0; k < n; ++k) {
      double th = (2.0 * kPi * k) / n;
      buf[0] = scale * std::cos(th);
      buf[1] = scale * std::sin(th);
      f(root, root_len);
    }
    return;
  }
  int bands = std::max(1, static_cast<int>(std::ceil(kPi / delta)));
  double h = kPi / bands;
  for (int i = 0; i < bands; ++i) {
    double phi = (i + 0.5) * h;
    double c = std::cos(phi), s = std::sin(phi);
    buf[0] = scale * c;
    double sub = (s > 1e-12) ? (delta / 2.0) / s : 2.0 * kPi;
    if (sub >= kPi) {
      // single pole point of the sub-sphere
      buf[1] = scale * s;
      for (int j = 2; j <= dim; ++j) buf[j] = 0.0;
      f(root, root_len);
    } else {
      emit_rec(dim - 1, sub, buf + 1, scale * s, f, root, root_len);
    }
  }
}

}  // namespace

std::size_t net_size(int dim, double delta) {
  require(dim >= 1, "net_size: dim >= 1");
  require(delta > 0, "net_size: delta > 0");
  return count_rec(dim, delta);
}

void for_each_net_point(int dim, double delta,
                        const std::function<void(const double*, int)>& f) {
  require(dim >= 1, "for_each_net_point: dim >= 1");
  require(delta > 0, "for_each_net_point: delta > 0");
  std::vector<double> buf(dim + 1, 0.0);
  emit_rec(dim, delta, buf.data(), 1.0, f, buf.data(), dim + 1);
}

double net_audit(const SphericalNet& net, int probes, Rng& rng) {
  double worst = 0.0;
  const int n = net.dim + 1;
  for (int p = 0; p < probes; ++p) {
    Vec x = rng.unit_vector(n);
    double best = -1.0;
    for (const Vec& q : net.points) best = std::max(best, x.dot(q));
    worst = std::max(worst, std::acos(clamp_unit(best)));
  }
  return worst;
}

SphericalNet build_net(int dim, double delta, bool require_certified,
                       std::uint64_t sample_seed) {
  require(dim >= 1, "build_net: dim >= 1");
  require(delta >= 0.01, "build_net: delta >= 0.01");

  SphericalNet net;
  net.dim = dim;
  Rng rng(0xbadcafe ^ sample_seed);

  if (dim > 4) {
    if (require_certified)
      throw Unsupported("build_net: certified nets supported only for dim <= 4");
    // sampled fallback: uniform random points, empirical covering radius
    std::size_t n = std::min<std::size_t>(
        200000, 100 + static_cast<std::size_t>(40.0 / std::pow(delta, 3)));
    net.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) net.points.push_back(rng.unit_vector(dim + 1));
    net.certified = false;
    net.audited_gap = net_audit(net, 10000, rng);
    net.covering_radius = net.audited_gap * 1.1;
    return net;
  }

  std::size_t n = net_size(dim, delta);
  require(n < 60'000'000, "build_net: net too large to materialize; use a coarser delta");
  net.points.reserve(n);
  for_each_net_point(dim, delta, [&](const double* c, int len) {
    net.points.emplace_back(Eigen::Map<const Vec>(c, len));
  });
  net.covering_radius = delta;
  net.certified = true;
  // randomized audit backs up the construction proof
  int probes = net.points.size() > 2'000'000 ? 2000 : 10000;
  net.audited_gap = net_audit(net, probes, rng);
  if (net.audited_gap > delta)
    throw GeometryError("build_net: covering audit failed");
  return net;
}

double quadrature(const std::function<double(double)>& f, double a, double b, int n) {
  require(n >= 16, "quadrature: n >= 16");
  require(n % 2 == 0, "quadrature: n must be even");
  require(std::isfinite(a) && std::isfinite(b), "quadrature: bad interval");
  double h = (b - a) / n;
  double acc = 0.0;
  for (int i = 0; i <= n; ++i) {
    double x = a + i * h;
    double fx = f(x);
    if (!std::isfinite(fx)) throw InvalidInput("quadrature: integrand not finite");
    double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    acc += w * fx;
  }
  return acc * h / 3.0;
}

}  // namespace sphereform
