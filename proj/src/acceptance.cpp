#include "sphereform/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sphereform/catalog.hpp"
#include "sphereform/quotients.hpp"
#include "sphereform/variational.hpp"

namespace sphereform {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_s(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

struct Ctx {
  SuiteOptions opts;
  CsvReport csv;
  explicit Ctx(const SuiteOptions& o) : opts(o), csv(o.include_timing) {}

  Rng rng(std::uint64_t salt) const { return Rng(opts.seed * 0x9e3779b97f4a7c15ull + salt); }
};

bool within(double value, double target, double tol) {
  return std::abs(value - target) <= tol;
}

// greedy maximin thinning; keeps iterated dual sweeps affordable
void thin_maximin(const std::vector<Vec>& pts, std::size_t cap, std::vector<Vec>& out) {
  out.clear();
  if (pts.size() <= cap) {
    out = pts;
    return;
  }
  std::vector<double> best_dot(pts.size(), -2.0);
  std::size_t pick = 0;
  for (std::size_t k = 0; k < cap; ++k) {
    out.push_back(pts[pick]);
    double worst = 2.0;
    std::size_t next = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      double d = std::abs(pts[pick].dot(pts[i]));  // quotient-aware for {±I} groups
      if (d > best_dot[i]) best_dot[i] = d;
      if (best_dot[i] < worst) {
        worst = best_dot[i];
        next = i;
      }
    }
    pick = next;
  }
}

// ---------------------------------------------------------------------------

CheckResult criterion1(Ctx& ctx) {
  CheckResult res{1, "round sphere and RP^n radii (certified, < 60 s each)", true, {}};
  const double tol = 0.02, delta = 0.018;

  struct Case {
    std::string name;
    Representation rep;
    double target;
  };
  std::vector<Case> cases;
  cases.push_back({"sphere2", Representation::defining(trivial_group(2)), kPi});
  cases.push_back({"rp2", Representation::defining(antipodal_group(2)), kPi / 2});
  cases.push_back({"rp3", Representation::defining(antipodal_group(3)), kPi / 2});

  for (Case& c : cases) {
    QuotientSpace q(std::move(c.rep));
    RadiusOptions opts;
    opts.sweep.seed = ctx.opts.seed + 11;

    auto t0 = Clock::now();
    CertifiedInterval r = radius(q, delta, opts);
    double rt = elapsed_s(t0);
    bool ok = r.certified && within(r.lower, c.target, tol) && within(r.upper, c.target, tol) &&
              rt < 60.0;
    res.pass = res.pass && ok;
    res.details.push_back(c.name + " radius [" + format17(r.lower) + ", " + format17(r.upper) +
                          "] " + fmt("target %.6f, %.1fs", c.target, rt) +
                          (ok ? "" : "  <-- out of tolerance"));
    ctx.csv.add_interval(c.name + "_radius", r, delta, ctx.opts.seed);

    t0 = Clock::now();
    CertifiedInterval d = diameter(q, delta, opts);
    double dt = elapsed_s(t0);
    double dtarget = q.trivial_group() ? kPi : c.target;
    bool dok = d.certified && within(d.lower, dtarget, tol) && within(d.upper, dtarget, tol) &&
               dt < 60.0;
    res.pass = res.pass && dok;
    res.details.push_back(c.name + " diameter [" + format17(d.lower) + ", " + format17(d.upper) +
                          "] " + fmt("%.1fs", dt) + (dok ? "" : "  <-- out of tolerance"));
    ctx.csv.add_interval(c.name + "_diameter", d, delta, ctx.opts.seed);
  }
  return res;
}

CheckResult criterion2(Ctx& ctx) {
  CheckResult res{2, "Z5 lens spaces: equivalent-pair radius pi/2, inequivalent pair below",
                  true, {}};
  GroupPtr z5 = cyclic_group(5);
  Rng rng = ctx.rng(2);

  {
    QuotientSpace q(cyclic_rep(z5, {1, 1}));
    bool decide = decide_radius_half_pi(q, rng);
    RadiusOptions opts;
    opts.sweep.seed = ctx.opts.seed + 21;
    CertifiedInterval r = radius(q, 0.02, opts);
    bool ok = decide && r.certified && r.contains(kPi / 2) && r.width() <= 0.05;
    res.pass = res.pass && ok;
    res.details.push_back("r1+r1: decide=" + std::string(decide ? "true" : "false") +
                          " interval [" + format17(r.lower) + ", " + format17(r.upper) +
                          fmt("] width %.4f (<= 0.05)", r.width()) + (ok ? "" : "  <-- FAIL"));
    ctx.csv.add_interval("z5_r1r1_radius", r, 0.02, ctx.opts.seed);
  }
  {
    QuotientSpace q(cyclic_rep(z5, {1, 2}));
    bool cyclic = has_cyclic_vector(q.rep, 8, rng);
    RadiusOptions opts;
    opts.sweep.seed = ctx.opts.seed + 22;
    CertifiedInterval r = radius(q, 0.05, opts);
    // margin fixture from the optimization oracle: interval sits inside [1.15, 1.45]
    bool fixture_ok = r.lower >= 1.15 && r.upper <= 1.45;
    bool ok = cyclic && r.upper < kPi / 2 - 0.05 && fixture_ok;
    res.pass = res.pass && ok;
    res.details.push_back("r1+r2: cyclic=" + std::string(cyclic ? "true" : "false") +
                          " interval [" + format17(r.lower) + ", " + format17(r.upper) +
                          fmt("] upper < %.4f", kPi / 2 - 0.05) + (ok ? "" : "  <-- FAIL"));
    ctx.csv.add_interval("z5_r1r2_radius", r, 0.05, ctx.opts.seed);
  }
  return res;
}

CheckResult criterion3(Ctx& ctx) {
  CheckResult res{3, "Q8 doubled irreducible: cyclic vector and eccentricity below pi/2", true,
                  {}};
  Rng rng = ctx.rng(3);
  Representation q8 = Representation::defining(quaternion_group());
  Representation doubled = direct_sum(q8, q8);

  bool cyclic = has_cyclic_vector(doubled, 8, rng);
  Vec x = rng.unit_vector(8);
  Mat orbit(8, 8);
  for (int i = 0; i < 8; ++i) orbit.col(i) = doubled.at(i) * x;
  int rank = rank_tol(orbit);

  QuotientSpace q(doubled);
  SweepOptions sopts;
  sopts.seed = ctx.opts.seed + 31;
  double best_upper = 1e30;
  for (int t = 0; t < 16; ++t) {
    CertifiedInterval e = eccentricity(q, rng.unit_vector(8), 0.02, sopts);
    best_upper = std::min(best_upper, e.upper);
  }
  bool ecc_ok = best_upper < kPi / 2;

  res.pass = cyclic && ecc_ok;
  res.details.push_back(std::string("cyclic vector in 8 trials: ") +
                        (cyclic ? "found" : "NOT FOUND") +
                        fmt(" (observed orbit rank %.0f of 8)", static_cast<double>(rank)));
  res.details.push_back(
      fmt("best sampled eccentricity upper bound %.6f vs pi/2 = %.6f", best_upper, kPi / 2) +
      (ecc_ok ? ""
              : "  (never below: every orbit of this representation lies in a proper"
                " invariant 4-dim subspace, so eccentricity is exactly pi/2 everywhere)"));
  ctx.csv.add_value("q8_doubled_orbit_rank", rank, ctx.opts.seed);
  ctx.csv.add_value("q8_doubled_best_ecc_upper", best_upper, ctx.opts.seed);
  return res;
}

CheckResult criterion4(Ctx& ctx) {
  CheckResult res{4, "direct sums preserve the pi/2 decision; small groups decide true", true,
                  {}};
  Rng rng = ctx.rng(4);
  GroupPtr z5 = cyclic_group(5);
  Representation rho = cyclic_rep(z5, {1, 1});
  require(decide_radius_half_pi(QuotientSpace(rho), rng), "fixture must decide true");

  int checked = 0;
  for (const std::vector<int>& w :
       {std::vector<int>{1}, {2}, {3}, {4}, {1, 2}, {2, 3}, {1, 1}}) {
    Representation sigma = cyclic_rep(z5, w);
    bool ok = decide_radius_half_pi(QuotientSpace(direct_sum(rho, sigma)), rng);
    res.pass = res.pass && ok;
    ++checked;
  }
  Representation q8 = Representation::defining(quaternion_group());
  Representation q8d = direct_sum(q8, q8);
  require(decide_radius_half_pi(QuotientSpace(q8d), rng), "q8 doubled decides true");
  bool q8ok = decide_radius_half_pi(QuotientSpace(direct_sum(q8d, q8)), rng);
  res.pass = res.pass && q8ok;
  ++checked;
  res.details.push_back(fmt("%g direct-sum fixtures all decide true", checked));

  for (const std::vector<int>& w : {std::vector<int>{1, 2, 3}, {1, 2, 4}}) {
    QuotientSpace q(cyclic_rep(z5, w));
    bool ok = q.rep.order() < q.ambient_dim() && decide_radius_half_pi(q, rng);
    res.pass = res.pass && ok;
  }
  res.details.push_back("|Gamma| < degree fixtures decide true");
  return res;
}

CheckResult criterion5(Ctx& ctx) {
  CheckResult res{5, "fibration suite: T = 0, unit A, curvatures, wiedersehen, antipodal", true,
                  {}};
  Rng rng = ctx.rng(5);
  auto t0 = Clock::now();
  const int samples = ctx.opts.quick ? 8 : 32;

  std::vector<Fibration> fibs = {Fibration::complex_hopf(1), Fibration::complex_hopf(2),
                                 Fibration::quaternionic_hopf(1), Fibration::octonionic_hopf()};
  for (const Fibration& f : fibs) {
    double max_t = 0.0, max_av_dev = 0.0, min_k = 1e30, max_k = -1e30, max_anti = 0.0;
    for (int s = 0; s < samples; ++s) {
      Vec z = rng.unit_vector(f.ambient_dim());
      FrameSplit sp = f.split(z);
      Vec xh = sp.horizontal * rng.unit_vector(f.horizontal_dim());
      Vec v = sp.vertical * rng.unit_vector(f.fiber_dim());
      Vec e = sp.vertical * rng.unit_vector(f.fiber_dim());
      max_t = std::max(max_t, t_tensor(f, z, v, e).norm());
      max_t = std::max(max_t, t_tensor(f, z, v, xh).norm());
      max_av_dev = std::max(max_av_dev, std::abs(a_tensor(f, z, xh, v).norm() - 1.0));
      Vec y = sp.horizontal * rng.unit_vector(f.horizontal_dim());
      y = (y - xh * xh.dot(y)).normalized();
      double k = oneill_base_curvature(f, z, xh, y);
      min_k = std::min(min_k, k);
      max_k = std::max(max_k, k);
      max_anti = std::max(max_anti, f.fiber_residual(f.project(z), f.project(Vec(-z))));
    }
    bool ok = max_t <= 1e-6 && max_av_dev <= 1e-5 && max_anti <= 1e-9;
    if (f.kind() == FibKind::octonionic_hopf)
      ok = ok && within(min_k, 4.0, 1e-5) && within(max_k, 4.0, 1e-5);
    if (f.kind() == FibKind::complex_hopf)
      ok = ok && min_k >= 1.0 - 1e-5 && max_k <= 4.0 + 1e-5;
    res.pass = res.pass && ok;
    res.details.push_back(std::string(f.name()) + fmt("-%g", static_cast<double>(f.n())) +
                          fmt(": max|T| %.2e, max|1-|A_XV|| %.2e", max_t, max_av_dev) +
                          fmt(", K in [%.6f, %.6f]", min_k, max_k) +
                          fmt(", antipodal %.2e", max_anti) + (ok ? "" : "  <-- FAIL"));
    ctx.csv.add_value(std::string(f.name()) + std::to_string(f.n()) + "_max_t_norm", max_t,
                      ctx.opts.seed);
    ctx.csv.add_value(std::string(f.name()) + std::to_string(f.n()) + "_max_av_dev", max_av_dev,
                      ctx.opts.seed);
  }

  {
    Fibration f = Fibration::complex_hopf(2);
    Vec z = rng.unit_vector(6);
    FrameSplit sp = f.split(z);
    Vec xh = sp.horizontal * rng.unit_vector(4);
    Vec ix = f.apply_complex_structure(xh);
    double k_hol = oneill_base_curvature(f, z, xh, ix);
    Vec y = sp.horizontal * rng.unit_vector(4);
    y = (y - xh * xh.dot(y) - ix * ix.dot(y)).normalized();
    double k_real = oneill_base_curvature(f, z, xh, y);
    bool ok = within(k_hol, 4.0, 1e-5) && within(k_real, 1.0, 1e-5);
    res.pass = res.pass && ok;
    res.details.push_back(fmt("complex-2 holomorphic plane K = %.8f, totally real K = %.8f",
                              k_hol, k_real) +
                          (ok ? "" : "  <-- FAIL"));
  }

  for (const Fibration& f : fibs) {
    BasePoint x = f.project(rng.unit_vector(f.ambient_dim()));
    if (f.sphere_base()) {
      double spread = wiedersehen_spread(f, x, 8, rng);
      bool ok = spread <= 1e-6;
      res.pass = res.pass && ok;
      res.details.push_back(std::string(f.name()) + fmt("-%g", static_cast<double>(f.n())) +
                            fmt(" wiedersehen spread %.2e", spread) + (ok ? "" : "  <-- FAIL"));
      ctx.csv.add_value(std::string(f.name()) + std::to_string(f.n()) + "_wiedersehen", spread,
                        ctx.opts.seed);
    } else {
      double resid = halfway_distance_residual(f, x, 8, rng);
      bool ok = resid <= 1e-6;
      res.pass = res.pass && ok;
      res.details.push_back(std::string(f.name()) + fmt("-%g", static_cast<double>(f.n())) +
                            fmt(" cut-locus distance residual %.2e", resid) +
                            (ok ? "" : "  <-- FAIL"));
    }
  }
  double rt = elapsed_s(t0);
  bool time_ok = rt < 300.0;
  res.pass = res.pass && time_ok;
  res.details.push_back(fmt("runtime %.1fs (< 300s)", rt));
  return res;
}

CheckResult criterion6(Ctx& ctx) {
  CheckResult res{6, "averaged inequalities: Ricci 28 pi, A-tensor integrals 7 pi", true, {}};
  Fibration f = Fibration::octonionic_hopf();
  Rng rng = ctx.rng(6);
  const int geodesics = ctx.opts.quick ? 2 : 8;
  double worst_ric = 0.0, worst_h = 0.0, worst_v = 0.0;
  bool windows = true;
  for (int g = 0; g < geodesics; ++g) {
    BaseGeodesic gamma = make_base_geodesic(f, rng.unit_vector(16), rng);
    AveragesReport rep = averages_report(f, gamma, 128);
    worst_ric = std::max(worst_ric, std::abs(rep.ricci_integral - 28.0 * kPi) / (28.0 * kPi));
    worst_h = std::max(worst_h, std::abs(rep.horizontal_sum - 7.0 * kPi) / (7.0 * kPi));
    worst_v = std::max(worst_v, std::abs(rep.vertical_sum - 7.0 * kPi) / (7.0 * kPi));
    windows = windows && rep.window_checks_pass && rep.ricci_bound_ok;
    if (g == 0) {
      ctx.csv.add_value("ricci_integral", rep.ricci_integral, ctx.opts.seed);
      ctx.csv.add_value("a_horizontal_integral", rep.horizontal_sum, ctx.opts.seed);
      ctx.csv.add_value("a_vertical_integral", rep.vertical_sum, ctx.opts.seed);
    }
  }
  res.pass = worst_ric <= 1e-3 && worst_h <= 1e-3 && worst_v <= 1e-3 && windows;
  res.details.push_back(fmt("relative deviations: Ricci %.2e, horizontal %.2e, vertical %.2e",
                            worst_ric, worst_h, worst_v));
  res.details.push_back(std::string("window checks: ") + (windows ? "all pass" : "FAIL"));
  return res;
}

CheckResult criterion7(Ctx& ctx) {
  CheckResult res{7, "appendix structure: singular pairing and basis independence", true, {}};
  Fibration f = Fibration::octonionic_hopf();
  Rng rng = ctx.rng(7);
  double worst_pair = 0.0, worst_spread = 0.0;
  for (int t = 0; t < 4; ++t) {
    Vec z = rng.unit_vector(16);
    FrameSplit sp = f.split(z);
    Vec x = sp.horizontal * rng.unit_vector(8);
    AppendixReport rep = appendix_structure_check(f, z, x, rng, 8);
    worst_pair = std::max(worst_pair, rep.pairing_residual);
    worst_spread = std::max(worst_spread, rep.basis_sum_spread);
  }
  res.pass = worst_pair <= 1e-5 && worst_spread <= 1e-8;
  res.details.push_back(fmt("max pairing residual %.2e (<= 1e-5)", worst_pair));
  res.details.push_back(fmt("max basis-sum spread %.2e (<= 1e-8)", worst_spread));
  ctx.csv.add_value("appendix_pairing_residual", worst_pair, ctx.opts.seed);
  ctx.csv.add_value("appendix_basis_sum_spread", worst_spread, ctx.opts.seed);
  return res;
}

CheckResult criterion8(Ctx& ctx) {
  CheckResult res{8, "index forms: closed-form cases and the negative index", true, {}};
  auto sine_index = [](double c, double l) {
    double k = kPi / l;
    return index_form(
        CurvatureProfile::constant(c), [k](double t) { return std::sin(k * t); },
        [k](double t) { return k * std::cos(k * t); }, 0.0, l, 256);
  };
  double i1 = index_form(
      CurvatureProfile::constant(4.0), [](double t) { return std::sin(2 * t); },
      [](double t) { return 2 * std::cos(2 * t); }, 0.0, kPi / 2, 256);
  double i2 = index_form(
      CurvatureProfile::constant(1.0), [](double t) { return std::sin(t); },
      [](double t) { return std::cos(t); }, 0.0, kPi, 256);
  double i3 = sine_index(4.0, kPi / 4);
  double i4 = sine_index(4.0, 0.6 * kPi);
  res.pass = std::abs(i1) <= 1e-6 && std::abs(i2) <= 1e-6 &&
             std::abs(i3 - 3.0 * kPi / 2) <= 1e-6 && i4 < 0.0;
  res.details.push_back(fmt("K=4 l=pi/2: %.2e, K=1 l=pi: %.2e", i1, i2));
  res.details.push_back(fmt("K=4 l=pi/4: %.8f (expect %.8f)", i3, 3.0 * kPi / 2));
  res.details.push_back(fmt("K=4 l=0.6pi: %.6f (strictly negative)", i4));
  ctx.csv.add_value("index_k4_quarter", i3, ctx.opts.seed);
  ctx.csv.add_value("index_k4_past_conjugate", i4, ctx.opts.seed);
  return res;
}

CheckResult criterion9(Ctx& ctx) {
  CheckResult res{9, "CP^3 involution quotient: free isometric involution at distance pi/2",
                  true, {}};
  ProjectiveInvolutionQuotient q(2);
  Rng rng = ctx.rng(9);
  const int samples = ctx.opts.quick ? 1000 : 10000;

  double sq = cp_involution_square_residual(q, samples, rng);
  double disp = cp_min_displacement(q, samples, rng);
  double worst_ecc = kPi;
  const int points = ctx.opts.quick ? 20 : 100;
  for (int t = 0; t < points; ++t)
    worst_ecc = std::min(worst_ecc, cp_eccentricity_lower(q, rng.unit_complex_vector(4), rng));
  double diam = cp_diameter_sampled(q, 4000, rng);

  bool ok_sq = sq <= 1e-12;
  bool ok_disp = disp > 0.01;
  bool ok_ecc = worst_ecc >= kPi / 2 - 1e-3;
  bool ok_diam = diam <= kPi / 2 + 1e-3;
  res.pass = ok_sq && ok_disp && ok_ecc && ok_diam;
  res.details.push_back(fmt("sigma^2 identity residual %.2e (<= 1e-12)", sq));
  res.details.push_back(fmt("min displacement %.6f (> 0.01)", disp));
  res.details.push_back(
      fmt("min eccentricity lower bound %.6f (>= %.6f)", worst_ecc, kPi / 2 - 1e-3));
  res.details.push_back(fmt("sampled diameter %.6f (<= %.6f)", diam, kPi / 2 + 1e-3));
  ctx.csv.add_value("cp3_min_displacement", disp, ctx.opts.seed);
  ctx.csv.add_value("cp3_min_ecc_lower", worst_ecc, ctx.opts.seed);
  ctx.csv.add_value("cp3_diameter_sampled", diam, ctx.opts.seed);
  return res;
}

CheckResult criterion10(Ctx& ctx) {
  CheckResult res{
      10, "dual-set properties on RP2 and RP3 (B in B'', Hausdorff(B', B''') <= 2 delta)", true,
      {}};
  const double delta = 0.05;
  Rng rng = ctx.rng(10);
  const int seeds = ctx.opts.quick ? 2 : 5;

  for (int dim : {2, 3}) {
    QuotientSpace q(Representation::defining(antipodal_group(dim)));
    double worst_contain = 0.0, worst_haus = 0.0;
    for (int s = 0; s < seeds; ++s) {
      std::vector<Vec> B;
      int nb = 1 + static_cast<int>(rng.next_u64() % 2);
      for (int b = 0; b < nb; ++b) B.push_back(rng.unit_vector(dim + 1));

      DualSetEstimate b1 = dual_set(q, B, delta);
      std::vector<Vec> b1_thin;
      thin_maximin(b1.samples, 4000, b1_thin);
      DualSetEstimate b2 = dual_set(q, b1_thin, delta, 2.0 * delta);
      std::vector<Vec> b2_thin;
      thin_maximin(b2.samples, 4000, b2_thin);
      DualSetEstimate b3 = dual_set(q, b2_thin, delta, 2.0 * delta);

      for (const Vec& b : B) {
        double nearest = kPi;
        for (const Vec& x : b2.samples) nearest = std::min(nearest, quotient_distance(q, b, x));
        worst_contain = std::max(worst_contain, nearest);
      }
      std::vector<Vec> b3_thin;
      thin_maximin(b3.samples, 4000, b3_thin);
      worst_haus = std::max(worst_haus, hausdorff_distance(q, b1_thin, b3_thin));
    }
    bool ok = worst_contain <= 2.0 * delta && worst_haus <= 2.0 * delta;
    res.pass = res.pass && ok;
    res.details.push_back(fmt("RP%g: max dist(B, B'') = %.4f, max Hausdorff(B', B''') = %.4f",
                              static_cast<double>(dim), worst_contain, worst_haus) +
                          (ok ? "" : "  <-- FAIL"));
    ctx.csv.add_value(dim == 2 ? "rp2_dual_hausdorff" : "rp3_dual_hausdorff", worst_haus,
                      ctx.opts.seed);
  }
  return res;
}

// deterministic probe rows shared by criterion 11 and re-run comparisons
std::string determinism_probe(std::uint64_t seed) {
  CsvReport csv(false);
  Rng rng(seed);

  QuotientSpace rp2(Representation::defining(antipodal_group(2)));
  RadiusOptions ropts;
  ropts.sweep.seed = seed + 1;
  csv.add_interval("probe_rp2_radius", radius(rp2, 0.04, ropts), 0.04, seed);

  SweepOptions sopts;
  sopts.seed = seed + 2;
  csv.add_interval("probe_rp2_ecc", eccentricity(rp2, rng.unit_vector(3), 0.04, sopts), 0.04,
                   seed);

  DualSetEstimate ds = dual_set(rp2, {rng.unit_vector(3)}, 0.05);
  csv.add_value("probe_dual_size", static_cast<double>(ds.samples.size()), seed);

  Fibration f = Fibration::complex_hopf(1);
  Vec z = rng.unit_vector(4);
  FrameSplit sp = f.split(z);
  Vec x = sp.horizontal * rng.unit_vector(2);
  Vec v = sp.vertical * rng.unit_vector(1);
  csv.add_value("probe_av_norm", a_tensor(f, z, x, v).norm(), seed);

  ProjectiveInvolutionQuotient cp(2);
  csv.add_value("probe_cp_disp", cp_min_displacement(cp, 500, rng), seed);
  return csv.to_string();
}

CheckResult criterion11(Ctx& ctx) {
  CheckResult res{11, "determinism: repeated runs with a fixed seed emit identical CSV bytes",
                  true, {}};
  std::string a = determinism_probe(ctx.opts.seed);
  std::string b = determinism_probe(ctx.opts.seed);
  res.pass = (a == b) && !a.empty();
  res.details.push_back(fmt("probe battery of %g rows compared byte-for-byte",
                            static_cast<double>(std::count(a.begin(), a.end(), '\n') - 1)));
  if (!res.pass) res.details.push_back("probe outputs differ");
  return res;
}

CheckResult supplementary_type1(Ctx& ctx) {
  CheckResult res{12, "supplementary: order-24 type-1 group doubles with a cyclic vector", true,
                  {}};
  Rng rng = ctx.rng(12);
  Representation base = Representation::defining(type1_group_24());
  Representation doubled = direct_sum(base, base);
  bool cyclic = has_cyclic_vector(doubled, 8, rng);
  bool decide = decide_radius_half_pi(QuotientSpace(doubled), rng);
  WitnessVectors w = paper_witness_vectors(type1_params_24());
  bool ranks = rank_tol(w.stacked.transpose()) == 3 &&
               rank_tol(Mat(w.stacked.topRows(2)).transpose()) == 2;
  res.pass = cyclic && !decide && ranks;
  res.details.push_back(std::string("doubled cyclic vector: ") +
                        (cyclic ? "found" : "missing") + "; decision: radius < pi/2");
  res.details.push_back(std::string("witness-vector ranks d+1 / d: ") +
                        (ranks ? "confirmed" : "FAIL"));
  ctx.csv.add_value("type1_24_doubled_cyclic", cyclic ? 1.0 : 0.0, ctx.opts.seed);
  return res;
}

}  // namespace

SuiteResult run_suite(const SuiteOptions& opts) {
  Ctx ctx(opts);
  SuiteResult out;
  out.checks.push_back(criterion1(ctx));
  out.checks.push_back(criterion2(ctx));
  out.checks.push_back(criterion3(ctx));
  out.checks.push_back(criterion4(ctx));
  out.checks.push_back(criterion5(ctx));
  out.checks.push_back(criterion6(ctx));
  out.checks.push_back(criterion7(ctx));
  out.checks.push_back(criterion8(ctx));
  out.checks.push_back(criterion9(ctx));
  out.checks.push_back(criterion10(ctx));
  out.checks.push_back(criterion11(ctx));
  out.checks.push_back(supplementary_type1(ctx));

  for (const CheckResult& c : out.checks)
    if (c.id <= 11) out.all_pass = out.all_pass && c.pass;
  out.csv = ctx.csv.to_string();

  if (!opts.out_dir.empty()) {
    std::filesystem::create_directories(opts.out_dir);
    std::ofstream csv(opts.out_dir + "/suite.csv", std::ios::binary);
    csv << out.csv;
    nlohmann::json j;
    j["seed"] = opts.seed;
    j["all_pass"] = out.all_pass;
    nlohmann::json checks = nlohmann::json::array();
    for (const CheckResult& c : out.checks) {
      nlohmann::json jc;
      jc["id"] = c.id;
      jc["name"] = c.name;
      jc["pass"] = c.pass;
      jc["details"] = c.details;
      checks.push_back(jc);
    }
    j["checks"] = checks;
    std::ofstream js(opts.out_dir + "/suite_summary.json");
    js << j.dump(1) << "\n";
  }
  return out;
}

void print_suite(const SuiteResult& r) {
  for (const CheckResult& c : r.checks) {
    std::printf("[%s] %2d: %s\n", c.pass ? "PASS" : "FAIL", c.id, c.name.c_str());
    for (const std::string& d : c.details) std::printf("        %s\n", d.c_str());
  }
  std::printf("suite: %s\n", r.all_pass ? "ALL PASS" : "FAILURES PRESENT");
}

}  // namespace sphereform
