#include "sphereform/quotients.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

namespace sphereform {

QuotientSpace::QuotientSpace(Representation r) : rep(std::move(r)) {
  rep.validate();
  if (!is_fixed_point_free(*rep.group) || !is_fixed_point_free(rep))
    throw InvalidInput("QuotientSpace: representation is not fixed point free");
}

Mat QuotientSpace::orbit(const Vec& x) const {
  const int deg = rep.degree();
  Mat o(deg, rep.order());
  for (int i = 0; i < rep.order(); ++i) o.col(i) = rep.at(i) * x;
  return o;
}

double quotient_distance(const QuotientSpace& q, const Vec& x, const Vec& y) {
  require(std::abs(x.norm() - 1.0) <= 1e-9 && std::abs(y.norm() - 1.0) <= 1e-9,
          "quotient_distance: points must be unit");
  double best = -1.0;
  for (const Mat& g : q.rep.matrices) best = std::max(best, x.dot(g * y));
  return std::acos(clamp_unit(best));
}

namespace {

// f_x(y) = min over orbit columns of angle(o_i, y); every evaluation is an
// exact lower bound for the eccentricity of [x].
double covering_value(const Mat& orbit, const Vec& y) {
  double best = -1.0;
  for (int i = 0; i < orbit.cols(); ++i) best = std::max(best, orbit.col(i).dot(y));
  return std::acos(clamp_unit(best));
}

// subgradient ascent on y -> f_x(y); returns the best value found
double ascend_covering(const Mat& orbit, Vec& y, int iters) {
  double step = 0.35;
  double fy = covering_value(orbit, y);
  for (int it = 0; it < iters && step > 1e-9; ++it) {
    // move away from the closest orbit point
    int active = 0;
    double bd = -2.0;
    for (int i = 0; i < orbit.cols(); ++i) {
      double d = orbit.col(i).dot(y);
      if (d > bd) { bd = d; active = i; }
    }
    Vec g = orbit.col(active) - bd * y;  // tangential direction toward the active point
    double gn = g.norm();
    if (gn < 1e-14) break;
    Vec cand = (y - (step / gn) * g).normalized();
    double fc = covering_value(orbit, cand);
    if (fc > fy) {
      y = cand;
      fy = fc;
    } else {
      step *= 0.5;
    }
  }
  return fy;
}

// Orthonormal basis of span(orbit) by modified Gram-Schmidt with column
// pivoting; returns number of columns kept.
int orbit_span_basis(const Mat& orbit, Mat& q, double tol = 1e-9) {
  const int deg = static_cast<int>(orbit.rows());
  Mat work = orbit;
  q.resize(deg, std::min<int>(deg, static_cast<int>(orbit.cols())));
  int r = 0;
  for (int pass = 0; pass < q.cols(); ++pass) {
    int best = -1;
    double bn = tol;
    for (int c = 0; c < work.cols(); ++c) {
      double n = work.col(c).norm();
      if (n > bn) { bn = n; best = c; }
    }
    if (best < 0) break;
    Vec v = work.col(best) / work.col(best).norm();
    q.col(r++) = v;
    for (int c = 0; c < work.cols(); ++c) work.col(c) -= v * v.dot(work.col(c));
    if (r == deg) break;
  }
  q.conservativeResize(deg, r);
  return r;
}

// Exact eccentricity lower bound at x. Fast paths:
//   |orbit| = 1        -> antipode, value pi
//   orbit spans a proper subspace -> orthogonal-complement witness, value pi/2
//   otherwise          -> warm-started subgradient ascent
struct LowerBoundEngine {
  const QuotientSpace& q;
  bool antipodal_pair;  // group == {I, -I}
  Vec warm;             // carried between nearby outer-net points
  Rng rng;
  int ascent_iters;
  int calls = 0;

  LowerBoundEngine(const QuotientSpace& qq, std::uint64_t seed, int iters)
      : q(qq), rng(seed), ascent_iters(iters) {
    const int deg = q.ambient_dim();
    antipodal_pair =
        q.rep.order() == 2 &&
        (q.rep.at(1) + Mat::Identity(deg, deg)).cwiseAbs().maxCoeff() <= 1e-12;
    warm = rng.unit_vector(deg);
  }

  double lower(const Vec& x) {
    const int deg = q.ambient_dim();
    if (q.trivial_group()) return kPi;
    if (antipodal_pair) {
      // orbit = {x, -x}; any unit y orthogonal to x gives exactly pi/2
      return kPi / 2.0;
    }
    Mat orbit = q.orbit(x);
    Mat span;
    int r = orbit_span_basis(orbit, span);
    if (r < deg) {
      // complement witness: y orthogonal to every orbit point
      int j = 0;
      double bm = std::numeric_limits<double>::max();
      for (int c = 0; c < deg; ++c) {
        double m = span.row(c).cwiseAbs().sum();
        if (m < bm) { bm = m; j = c; }
      }
      Vec y = Vec::Zero(deg);
      y(j) = 1.0;
      y -= span * (span.transpose() * y);
      double n = y.norm();
      if (n > 1e-6) {
        y /= n;
        double val = covering_value(orbit, y);  // exact verification
        if (val >= kPi / 2.0 - 1e-9) return val;
      }
      // fall through to ascent if the complement construction degraded
    }
    // warm-started ascent; an occasional fresh restart re-anchors the witness
    ++calls;
    double best = ascend_covering(orbit, warm, ascent_iters / 2);
    if (calls % 64 == 1) {
      Vec fresh = rng.unit_vector(deg);
      double alt = ascend_covering(orbit, fresh, ascent_iters);
      if (alt > best) {
        best = alt;
        warm = fresh;
      }
    }
    return best;
  }
};

// max over the S^dim net of f_x (blocked dot-product sweep); also reports the
// argmax for ascent refinement.
double net_max_covering(const Mat& orbit, int dim, double delta, Vec* argmax) {
  const int n = dim + 1;
  double best_dot = 2.0;  // minimize the max orbit dot
  Vec best_pt = Vec::Zero(n);
  const int ncols = static_cast<int>(orbit.cols());
  for_each_net_point(dim, delta, [&](const double* c, int len) {
    double m = -2.0;
    for (int i = 0; i < ncols; ++i) {
      const double* o = orbit.col(i).data();
      double d = 0.0;
      for (int k = 0; k < len; ++k) d += o[k] * c[k];
      if (d > m) m = d;
    }
    if (m < best_dot) {
      best_dot = m;
      for (int k = 0; k < len; ++k) best_pt(k) = c[k];
    }
  });
  if (argmax) *argmax = best_pt;
  return std::acos(clamp_unit(best_dot));
}

double upper_cap(const QuotientSpace& q) {
  // min(angle(y, p), angle(y, -p)) <= pi/2, so -I in the group caps ecc at pi/2
  if (q.trivial_group()) return kPi;
  return q.rep.group->contains_minus_identity() ? kPi / 2.0 : kPi;
}

}  // namespace

CertifiedInterval eccentricity(const QuotientSpace& q, const Vec& x, double delta,
                               const SweepOptions& opts) {
  require(std::abs(x.norm() - 1.0) <= 1e-9, "eccentricity: x must be unit");
  require(delta >= 0.01, "eccentricity: delta >= 0.01");
  Mat orbit = q.orbit(x);
  const int dim = q.sphere_dim();
  double cap = upper_cap(q);
  Rng rng(opts.seed);

  if (dim <= 4) {
    Vec arg;
    double L = net_max_covering(orbit, dim, delta, &arg);
    double refined = ascend_covering(orbit, arg, opts.ascent_iters);
    CertifiedInterval out;
    out.lower = std::max(L, refined);
    out.upper = std::min(cap, L + delta);
    out.upper = std::max(out.upper, out.lower);  // ascent can graze the cap
    out.certified = true;
    out.method = IntervalMethod::net;
    return out;
  }

  // uncertified sampled estimate, flagged
  double L = 0.0;
  for (int s = 0; s < opts.sample_count; ++s)
    L = std::max(L, covering_value(orbit, rng.unit_vector(dim + 1)));
  for (int r = 0; r < opts.ascent_restarts; ++r) {
    Vec y = rng.unit_vector(dim + 1);
    L = std::max(L, ascend_covering(orbit, y, opts.ascent_iters));
  }
  CertifiedInterval out;
  out.lower = L;
  out.upper = std::min(cap, L + delta);
  out.certified = false;
  out.method = IntervalMethod::sample;
  return out;
}

CertifiedInterval radius(const QuotientSpace& q, double delta, const RadiusOptions& opts) {
  require(delta >= 0.01, "radius: delta >= 0.01");
  const int dim = q.sphere_dim();
  const int n = dim + 1;

  if (dim > 4) {
    // sampled: min of sampled eccentricities, flagged
    Rng r2(opts.sweep.seed + 17);
    double best_lower = std::numeric_limits<double>::max();
    double best_upper = std::numeric_limits<double>::max();
    for (int t = 0; t < 64; ++t) {
      Vec x = r2.unit_vector(n);
      CertifiedInterval e = eccentricity(q, x, delta, opts.sweep);
      best_lower = std::min(best_lower, e.lower);
      best_upper = std::min(best_upper, e.upper);
    }
    return {std::max(0.0, best_lower - delta), best_upper, false, IntervalMethod::sample};
  }

  // Lower pass: min over the outer net of certified eccentricity lower bounds,
  // widened by the outer-net covering radius (eccentricity is 1-Lipschitz).
  LowerBoundEngine eng(q, opts.sweep.seed, opts.sweep.ascent_iters);
  double min_lower = std::numeric_limits<double>::max();
  struct Cand { double val; Vec x; };
  std::vector<Cand> cands;
  Vec xbuf(n);
  for_each_net_point(dim, delta, [&](const double* c, int len) {
    for (int k = 0; k < len; ++k) xbuf(k) = c[k];
    double l = eng.lower(xbuf);
    if (l < min_lower) min_lower = l;
    if (static_cast<int>(cands.size()) < opts.upper_candidates) {
      cands.push_back({l, xbuf});
      std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.val < b.val; });
    } else if (l < cands.back().val) {
      cands.back() = {l, xbuf};
      std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.val < b.val; });
    }
  });

  // Upper pass: full certified inner sweep at the best candidates; the minimum
  // of per-point upper bounds is an upper bound for the min over all points.
  double upper = std::numeric_limits<double>::max();
  for (const Cand& c : cands) {
    CertifiedInterval e = eccentricity(q, c.x, delta, opts.sweep);
    upper = std::min(upper, e.upper);
  }

  CertifiedInterval out;
  out.lower = std::max(0.0, min_lower - delta);
  out.upper = upper;
  out.certified = true;
  out.method = IntervalMethod::net;
  return out;
}

CertifiedInterval diameter(const QuotientSpace& q, double delta, const RadiusOptions& opts) {
  require(delta >= 0.01, "diameter: delta >= 0.01");
  const int dim = q.sphere_dim();
  const int n = dim + 1;
  Rng rng(opts.sweep.seed + 41);

  if (q.trivial_group()) {
    // antipodal pair realizes pi exactly; quotient distances never exceed pi
    return {kPi, kPi, true, IntervalMethod::witness};
  }

  if (q.rep.group->contains_minus_identity()) {
    // uniform upper bound pi/2 (each orbit contains antipodal pairs)
    double best = 0.0;
    for (int t = 0; t < 32; ++t) {
      Vec x = rng.unit_vector(n);
      Mat orbit = q.orbit(x);
      Mat span;
      int r = orbit_span_basis(orbit, span);
      if (r < n) {
        Vec y = rng.unit_vector(n);
        y -= span * (span.transpose() * y);
        if (y.norm() > 1e-6) {
          y.normalize();
          best = std::max(best, covering_value(orbit, y));
        }
      } else {
        Vec y = rng.unit_vector(n);
        best = std::max(best, ascend_covering(orbit, y, opts.sweep.ascent_iters));
      }
      if (best >= kPi / 2.0 - 1e-12) break;
    }
    return {best, kPi / 2.0, true, IntervalMethod::witness};
  }

  if (dim <= 2) {
    // certified double sweep: diam <= max over net pairs + 2 delta
    SphericalNet net = build_net(dim, delta);
    double best = 0.0;
    for (const Vec& x : net.points) {
      Mat orbit = q.orbit(x);
      for (const Vec& y : net.points) best = std::max(best, covering_value(orbit, y));
    }
    return {best, std::min(kPi, best + 2.0 * delta), true, IntervalMethod::net};
  }

  // sampled fallback for dim 3-4 without -I: random pairs plus ascent, flagged
  double best = 0.0;
  for (int t = 0; t < opts.sweep.sample_count; ++t) {
    Vec x = rng.unit_vector(n);
    Vec y = rng.unit_vector(n);
    Mat orbit = q.orbit(x);
    best = std::max(best, covering_value(orbit, y));
  }
  for (int t = 0; t < 16; ++t) {
    Vec x = rng.unit_vector(n);
    Mat orbit = q.orbit(x);
    Vec y = rng.unit_vector(n);
    best = std::max(best, ascend_covering(orbit, y, opts.sweep.ascent_iters));
  }
  return {best, std::min(kPi, best + 2.0 * delta), false, IntervalMethod::sample};
}

std::optional<Vec> halfspace_witness(const std::vector<Vec>& points, Rng& rng,
                                     const HalfspaceOptions& opts) {
  require(!points.empty(), "halfspace_witness: empty point list");
  const int n = static_cast<int>(points[0].size());
  for (const Vec& p : points) require(p.size() == n, "halfspace_witness: dimension mismatch");

  Mat pmat(n, static_cast<int>(points.size()));
  for (int i = 0; i < pmat.cols(); ++i) pmat.col(i) = points[i];

  auto margin = [&](const Vec& y) {
    double worst = std::numeric_limits<double>::max();
    for (int i = 0; i < pmat.cols(); ++i) worst = std::min(worst, -pmat.col(i).dot(y));
    return worst;  // >= 0 iff all <p, y> <= 0
  };
  auto verified = [&](const Vec& y) {
    for (int i = 0; i < pmat.cols(); ++i)
      if (pmat.col(i).dot(y) > opts.accept_tol) return false;
    return true;
  };

  // smart seeds: orthogonal complement of the point span (exact margin-0
  // witnesses when the span is proper), then the negated centroid
  std::vector<Vec> seeds;
  {
    Mat span;
    int r = orbit_span_basis(pmat, span);
    if (r < n) {
      for (int j = 0; j < n && static_cast<int>(seeds.size()) < 4; ++j) {
        Vec y = Vec::Zero(n);
        y(j) = 1.0;
        y -= span * (span.transpose() * y);
        if (y.norm() > 1e-8) seeds.push_back(y.normalized());
      }
    }
    Vec c = pmat.rowwise().sum();
    if (c.norm() > 1e-10) seeds.push_back((-c).normalized());
  }

  Vec best_y;
  double best_m = -std::numeric_limits<double>::max();
  for (int restart = 0; restart < opts.restarts; ++restart) {
    Vec y = restart < static_cast<int>(seeds.size()) ? seeds[restart] : rng.unit_vector(n);
    double step = opts.step;
    double my = margin(y);
    for (int it = 0; it < opts.iters && step > 1e-12; ++it) {
      // steepest active constraint
      int active = 0;
      double worst = std::numeric_limits<double>::max();
      for (int i = 0; i < pmat.cols(); ++i) {
        double v = -pmat.col(i).dot(y);
        if (v < worst) { worst = v; active = i; }
      }
      Vec cand = (y - step * pmat.col(active)).normalized();
      double mc = margin(cand);
      if (mc > my) {
        y = cand;
        my = mc;
      } else {
        step *= 0.5;
      }
    }
    if (my > best_m) {
      best_m = my;
      best_y = y;
    }
    if (best_m >= 0.0) break;
  }
  if (best_y.size() == n && verified(best_y)) return best_y;
  return std::nullopt;
}

bool has_cyclic_vector(const Representation& rep, int trials, Rng& rng) {
  require(trials >= 8, "has_cyclic_vector: trials >= 8");
  const int deg = rep.degree();
  for (int t = 0; t < trials; ++t) {
    Vec x = rng.unit_vector(deg);
    Mat orbit(deg, rep.order());
    for (int i = 0; i < rep.order(); ++i) orbit.col(i) = rep.at(i) * x;
    if (rank_tol(orbit, 1e-8) == deg) return true;
  }
  return false;
}

bool decide_radius_half_pi(const QuotientSpace& q, Rng& rng) {
  if (q.trivial_group())
    throw NotApplicable("decide_radius_half_pi: trivial group (radius is pi)");
  return !has_cyclic_vector(q.rep, 8, rng);
}

namespace {

// Orbit expansion of a seed set. When -I is in the group the orbit splits
// into antipodal pairs; keeping one of each and taking |dot| halves the
// sweep work.
struct TargetCloud {
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows;  // M x n
  bool symmetric = false;
};

TargetCloud orbit_targets(const QuotientSpace& q, const std::vector<Vec>& B) {
  const int n = q.ambient_dim();
  const int order = q.rep.order();
  const auto& grp = *q.rep.group;

  std::vector<int> keep;
  bool symmetric = false;
  int minus_idx = -1;
  const Mat minus_id = -Mat::Identity(n, n);
  for (int i = 0; i < order; ++i)
    if ((q.rep.at(i) - minus_id).cwiseAbs().maxCoeff() <= 1e-12) minus_idx = i;
  if (minus_idx >= 0) {
    symmetric = true;
    for (int i = 0; i < order; ++i)
      if (i <= grp.mul(minus_idx, i)) keep.push_back(i);
  } else {
    for (int i = 0; i < order; ++i) keep.push_back(i);
  }

  TargetCloud out;
  out.symmetric = symmetric;
  out.rows.resize(static_cast<int>(B.size() * keep.size()), n);
  int row = 0;
  for (const Vec& b : B) {
    require(std::abs(b.norm() - 1.0) <= 1e-9, "orbit_targets: seed points must be unit");
    for (int i : keep) out.rows.row(row++) = (q.rep.at(i) * b).transpose();
  }
  return out;
}

}  // namespace

DualSetEstimate dual_set(const QuotientSpace& q, const std::vector<Vec>& B, double delta,
                         double band_tol) {
  require(!B.empty(), "dual_set: B must be nonempty");
  require(delta >= 0.005, "dual_set: delta too small");
  if (band_tol <= 0.0) band_tol = delta;
  const int dim = q.sphere_dim();
  require(dim <= 4, "dual_set: supported for sphere dimension <= 4");
  const int n = dim + 1;

  TargetCloud cloud = orbit_targets(q, B);
  const auto& tgt_t = cloud.rows;

  DualSetEstimate out;
  out.tolerance = band_tol;

  // blocked sweep: stream net points into a block, chunk the target columns to
  // keep the product buffer small, track the running max dot per point
  constexpr int kBlock = 1024;
  constexpr int kChunk = 4096;
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> block(kBlock, n);
  Mat prods(kBlock, std::min<int>(kChunk, static_cast<int>(tgt_t.rows())));
  Vec running(kBlock);
  std::vector<Vec> pending(kBlock, Vec(n));
  int fill = 0;
  const double lo = std::cos(kPi / 2.0 - band_tol);  // dot above this is too close
  const double hi = std::cos(kPi / 2.0 + band_tol);  // dot below this is too far
  auto flush = [&]() {
    if (fill == 0) return;
    running.head(fill).setConstant(-2.0);
    const int m_total = static_cast<int>(tgt_t.rows());
    for (int c0 = 0; c0 < m_total; c0 += kChunk) {
      int cw = std::min(kChunk, m_total - c0);
      prods.topLeftCorner(fill, cw).noalias() =
          block.topRows(fill) * tgt_t.middleRows(c0, cw).transpose();
      if (cloud.symmetric)
        running.head(fill) = running.head(fill).cwiseMax(
            prods.topLeftCorner(fill, cw).cwiseAbs().rowwise().maxCoeff());
      else
        running.head(fill) =
            running.head(fill).cwiseMax(prods.topLeftCorner(fill, cw).rowwise().maxCoeff());
    }
    for (int i = 0; i < fill; ++i)
      if (running(i) <= lo && running(i) >= hi) out.samples.push_back(pending[i]);
    fill = 0;
  };
  for_each_net_point(dim, delta, [&](const double* c, int len) {
    for (int k = 0; k < len; ++k) {
      block(fill, k) = c[k];
      pending[fill](k) = c[k];
    }
    if (++fill == kBlock) flush();
  });
  flush();
  return out;
}

double hausdorff_distance(const QuotientSpace& q, const std::vector<Vec>& A,
                          const std::vector<Vec>& B) {
  require(!A.empty() && !B.empty(), "hausdorff_distance: empty set");
  auto one_sided = [&](const std::vector<Vec>& from, const std::vector<Vec>& to) {
    TargetCloud cloud = orbit_targets(q, to);
    double worst = 0.0;
    for (const Vec& a : from) {
      Vec dots = cloud.rows * a;
      double m = cloud.symmetric ? dots.cwiseAbs().maxCoeff() : dots.maxCoeff();
      worst = std::max(worst, std::acos(clamp_unit(m)));
    }
    return worst;
  };
  return std::max(one_sided(A, B), one_sided(B, A));
}

}  // namespace sphereform
