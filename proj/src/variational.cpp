#include "sphereform/variational.hpp"

#include <cmath>

#include "sphereform/numerics.hpp"

namespace sphereform {

double index_form(const CurvatureProfile& k, const std::function<double(double)>& w,
                  const std::function<double(double)>& dw, double a, double b, int steps) {
  require(steps >= 64, "index_form: steps >= 64");
  if (std::abs(w(a)) > 1e-9 || std::abs(w(b)) > 1e-9)
    throw InvalidInput("index_form: field must vanish at the interval endpoints");
  auto integrand = [&](double t) {
    double d = dw(t), v = w(t);
    return d * d - k.k(t) * v * v;
  };
  return quadrature(integrand, a, b, steps);
}

namespace {
double weight_value(AverageWeight w, double t) {
  double s = (w == AverageWeight::sin_sq_2t) ? std::sin(2.0 * t) : std::cos(2.0 * t);
  return s * s;
}
}  // namespace

WindowCheck weighted_average_check(const CurvatureProfile& k, AverageWeight weight, double a,
                                   double b, int steps) {
  WindowCheck out;
  out.lhs = quadrature([&](double t) { return k.k(t) * weight_value(weight, t); }, a, b, steps);
  out.rhs = 4.0 * quadrature([&](double t) { return weight_value(weight, t); }, a, b, steps);
  out.pass = out.lhs <= out.rhs + 1e-6;
  return out;
}

std::vector<std::pair<std::pair<double, double>, AverageWeight>> average_windows() {
  return {
      {{0.0, kPi / 2.0}, AverageWeight::sin_sq_2t},
      {{kPi / 4.0, 3.0 * kPi / 4.0}, AverageWeight::cos_sq_2t},
      {{kPi / 2.0, kPi}, AverageWeight::sin_sq_2t},
      {{3.0 * kPi / 4.0, 5.0 * kPi / 4.0}, AverageWeight::cos_sq_2t},
  };
}

namespace {

double simpson_from_samples(const std::vector<double>& v, double h) {
  const int n = static_cast<int>(v.size()) - 1;
  require(n >= 2 && n % 2 == 0, "simpson_from_samples: even interval count required");
  double acc = v.front() + v.back();
  for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * v[i];
  return acc * h / 3.0;
}

}  // namespace

AveragesReport averages_report(const Fibration& f, const BaseGeodesic& gamma, int steps) {
  require(f.kind() == FibKind::octonionic_hopf,
          "averages_report: octonionic fibration required (7 normal directions)");
  require(steps % 2 == 0, "averages_report: steps must be even");
  require(std::abs(gamma.length - kPi) <= 1e-12, "averages_report: geodesics run over [0, pi]");

  LiftFrames frames = transport_frames(f, gamma, steps);
  AveragesReport rep;
  rep.vertical_frame_residual = frames.vertical_residual;
  rep.horizontal_frame_residual = frames.horizontal_residual;

  const int nodes = steps + 1;
  std::vector<double> ricci(nodes), hsum(nodes), vsum(nodes);
  std::vector<double> kprofile(nodes);  // mean radial curvature, for the window checks
  for (int k = 0; k < nodes; ++k) {
    TensorBatch batch(f, frames.z[k], frames.xdot[k]);
    const FrameSplit& sp = batch.split();
    double rc = 0.0, hs = 0.0;
    for (int i = 0; i < frames.horizontal[k].cols(); ++i) {
      Vec a = sp.vert_part(batch.extension_derivative(frames.horizontal[k].col(i), true));
      double a2 = a.squaredNorm();
      rc += 1.0 + 3.0 * a2;
      hs += a2;
    }
    double vs = 0.0;
    Vec lambdas2 = Vec::Zero(f.fiber_dim());
    for (int i = 0; i < frames.vertical[k].cols(); ++i) {
      Vec a = sp.horiz_part(batch.extension_derivative(frames.vertical[k].col(i), false));
      vs += a.squaredNorm();
      lambdas2(i) = a.squaredNorm();
    }
    ricci[k] = rc;
    hsum[k] = hs;
    vsum[k] = vs;
    kprofile[k] = rc / 7.0;
    // Eq 5.4: horizontal frame sum equals the vertical (adapted basis) sum
    rep.eq54_residual = std::max(rep.eq54_residual, std::abs(hs - lambdas2.sum()));
  }

  const double h = frames.step;
  rep.ricci_integral = simpson_from_samples(ricci, h);
  rep.ricci_bound_ok = rep.ricci_integral <= 28.0 * kPi + 1e-3;
  rep.horizontal_sum = simpson_from_samples(hsum, h);
  rep.vertical_sum = simpson_from_samples(vsum, h);

  // Eq 1.10 window checks on the fibration-computed radial curvature profile
  CurvatureProfile prof;
  prof.source = CurvatureProfile::Source::fibration;
  prof.k = [kp = std::move(kprofile), h](double t) {
    double idx = t / h;
    int k0 = std::max(0, std::min(static_cast<int>(idx), static_cast<int>(kp.size()) - 2));
    double frac = idx - k0;
    return kp[k0] * (1.0 - frac) + kp[k0 + 1] * frac;
  };
  rep.window_checks_pass = true;
  rep.window_margin = 1e30;
  for (const auto& [window, weight] : average_windows()) {
    // base geodesics are pi-periodic, so the window past pi wraps around
    CurvatureProfile wrapped;
    wrapped.k = [&prof](double t) { return prof.k(std::fmod(t, kPi)); };
    WindowCheck chk = weighted_average_check(wrapped, weight, window.first, window.second, 256);
    rep.window_checks_pass = rep.window_checks_pass && chk.pass;
    rep.window_margin = std::min(rep.window_margin, chk.rhs - chk.lhs);
  }
  return rep;
}

double ricci_average(const Fibration& f, const BaseGeodesic& gamma, int steps) {
  return averages_report(f, gamma, steps).ricci_integral;
}

std::pair<double, double> a_tensor_averages(const Fibration& f, const BaseGeodesic& gamma,
                                            int steps) {
  AveragesReport rep = averages_report(f, gamma, steps);
  return {rep.horizontal_sum, rep.vertical_sum};
}

}  // namespace sphereform
