#include <cmath>

#include "doctest.h"
#include "sphereform/variational.hpp"

using namespace sphereform;

namespace {

// I(w E, w E) for w = sin(pi t / l) against constant curvature c:
// (pi^2/l^2 - c) * l / 2
double sine_field_index(double c, double l, int steps = 256) {
  double k = kPi / l;
  return index_form(CurvatureProfile::constant(c),
                    [k](double t) { return std::sin(k * t); },
                    [k](double t) { return k * std::cos(k * t); }, 0.0, l, steps);
}

}  // namespace

TEST_CASE("index form closed-form cases") {
  // conjugate-point boundary cases vanish
  CHECK(std::abs(index_form(CurvatureProfile::constant(4.0),
                            [](double t) { return std::sin(2 * t); },
                            [](double t) { return 2 * std::cos(2 * t); }, 0.0, kPi / 2, 256)) <=
        1e-8);
  CHECK(std::abs(index_form(CurvatureProfile::constant(1.0),
                            [](double t) { return std::sin(t); },
                            [](double t) { return std::cos(t); }, 0.0, kPi, 256)) <= 1e-8);
  // K = 4, l = pi/4: (pi^2/l^2 - 4) l/2 = 12 pi / 8
  CHECK(std::abs(sine_field_index(4.0, kPi / 4) - 3.0 * kPi / 2) <= 1e-8);
}

TEST_CASE("index form matches the closed form across c and l") {
  for (double c : {1.0, 4.0}) {
    for (double l : {kPi / 4, kPi / 2, kPi}) {
      double expect = (kPi * kPi / (l * l) - c) * l / 2.0;
      CHECK(std::abs(sine_field_index(c, l) - expect) <= 1e-6);
    }
  }
}

TEST_CASE("index form turns negative past the conjugate point") {
  // the contradiction mechanism: K = 4 with l > pi/2 admits a negative index
  CHECK(sine_field_index(4.0, 0.6 * kPi) < -1e-3);
}

TEST_CASE("index form contracts") {
  CurvatureProfile k = CurvatureProfile::constant(1.0);
  auto w = [](double t) { return std::cos(t); };  // w(0) != 0
  auto dw = [](double t) { return -std::sin(t); };
  CHECK_THROWS_AS(index_form(k, w, dw, 0.0, kPi, 256), InvalidInput);
  auto ws = [](double t) { return std::sin(t); };
  auto dws = [](double t) { return std::cos(t); };
  CHECK_THROWS_AS(index_form(k, ws, dws, 0.0, kPi, 32), InvalidInput);
}

TEST_CASE("weighted average checks on constant profiles") {
  for (const auto& [window, weight] : average_windows()) {
    WindowCheck eq = weighted_average_check(CurvatureProfile::constant(4.0), weight,
                                            window.first, window.second);
    CHECK(eq.pass);
    CHECK(std::abs(eq.lhs - eq.rhs) <= 1e-8);

    WindowCheck low = weighted_average_check(CurvatureProfile::constant(1.0), weight,
                                             window.first, window.second);
    CHECK(low.pass);
    CHECK(low.lhs == doctest::Approx(low.rhs / 4.0));
  }
}

TEST_CASE("a constant curvature-1 profile integrates to 7 pi over seven directions") {
  double one_direction = quadrature([](double) { return 1.0; }, 0.0, kPi, 64);
  CHECK(std::abs(7.0 * one_direction - 7.0 * kPi) <= 1e-10);
}

TEST_CASE("averaged integrals at the octonionic model") {
  Fibration f = Fibration::octonionic_hopf();
  Rng rng(31);
  BaseGeodesic gamma = make_base_geodesic(f, rng.unit_vector(16), rng);
  AveragesReport rep = averages_report(f, gamma, 128);

  CHECK(std::abs(rep.ricci_integral - 28.0 * kPi) <= 0.001 * 28.0 * kPi);
  CHECK(rep.ricci_bound_ok);
  CHECK(std::abs(rep.horizontal_sum - 7.0 * kPi) <= 0.001 * 7.0 * kPi);
  CHECK(std::abs(rep.vertical_sum - 7.0 * kPi) <= 0.001 * 7.0 * kPi);
  CHECK(rep.eq54_residual <= 1e-6);
  CHECK(rep.window_checks_pass);
  CHECK(rep.vertical_frame_residual <= 1e-5);
  CHECK(rep.horizontal_frame_residual <= 1e-5);
}

TEST_CASE("ricci_average and a_tensor_averages wrap the report") {
  Fibration f = Fibration::octonionic_hopf();
  Rng rng(33);
  BaseGeodesic gamma = make_base_geodesic(f, rng.unit_vector(16), rng);
  CHECK(std::abs(ricci_average(f, gamma, 64) - 28.0 * kPi) <= 0.001 * 28.0 * kPi);
  auto [h, v] = a_tensor_averages(f, gamma, 64);
  CHECK(std::abs(h - 7.0 * kPi) <= 0.001 * 7.0 * kPi);
  CHECK(std::abs(v - 7.0 * kPi) <= 0.001 * 7.0 * kPi);
}

TEST_CASE("averages are restricted to the octonionic fibration") {
  Fibration f = Fibration::complex_hopf(2);
  Rng rng(32);
  BaseGeodesic gamma = make_base_geodesic(f, rng.unit_vector(6), rng);
  CHECK_THROWS_AS(averages_report(f, gamma, 64), InvalidInput);
}
