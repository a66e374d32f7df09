#include <cmath>

#include "doctest.h"
#include "sphereform/catalog.hpp"
#include "sphereform/quotients.hpp"

using namespace sphereform;

namespace {

Vec unit(std::initializer_list<double> v) {
  Vec x(static_cast<int>(v.size()));
  int i = 0;
  for (double d : v) x(i++) = d;
  x.normalize();
  return x;
}

QuotientSpace z3_circle() { return QuotientSpace(Representation::defining(cyclic_group(3))); }

}  // namespace

TEST_CASE("quotient distance basics") {
  QuotientSpace sphere(Representation::defining(trivial_group(2)));
  Vec x = unit({1, 0, 0}), y = unit({0, 1, 0});
  CHECK(quotient_distance(sphere, x, y) == doctest::Approx(kPi / 2));

  QuotientSpace rp2(Representation::defining(antipodal_group(2)));
  CHECK(quotient_distance(rp2, x, Vec(-x)) == doctest::Approx(0.0));

  // Z3 on the circle: three equally spaced orbit points, max distance pi/3
  QuotientSpace q = z3_circle();
  Rng rng(1);
  double worst = 0.0;
  for (int t = 0; t < 2000; ++t)
    worst = std::max(worst, quotient_distance(q, rng.unit_vector(2), rng.unit_vector(2)));
  CHECK(worst <= kPi / 3 + 1e-12);
  CHECK(worst > kPi / 3 - 1e-3);
}

TEST_CASE("quotient distance is a metric on orbits") {
  QuotientSpace q(cyclic_rep(cyclic_group(5), {1, 2}));
  Rng rng(2);
  for (int t = 0; t < 1000; ++t) {
    Vec x = rng.unit_vector(4), y = rng.unit_vector(4), z = rng.unit_vector(4);
    double dxy = quotient_distance(q, x, y);
    double dyx = quotient_distance(q, y, x);
    CHECK(std::abs(dxy - dyx) <= 1e-12);
    CHECK(quotient_distance(q, x, z) <= dxy + quotient_distance(q, y, z) + 1e-12);
  }
  // identification: orbit mates are at distance zero
  Vec x = rng.unit_vector(4);
  CHECK(quotient_distance(q, x, Vec(q.rep.at(2) * x)) <= 1e-12);
}

TEST_CASE("fixed point free quotients separate distinct orbits") {
  QuotientSpace q(cyclic_rep(cyclic_group(5), {1, 2}));
  Rng rng(3);
  for (int t = 0; t < 32; ++t) {
    double d = quotient_distance(q, rng.unit_vector(4), rng.unit_vector(4));
    CHECK(d > 1e-4);  // random pairs land on distinct orbits
  }
}

TEST_CASE("quotient construction rejects reps with fixed points") {
  Mat refl = Mat::Identity(3, 3);
  refl(2, 2) = -1.0;
  GroupPtr g = close_group_ptr({refl});
  CHECK_THROWS_AS(QuotientSpace(Representation::defining(g)), InvalidInput);
  // non-faithful image: Z4 acting through rotation by pi has a kernel
  CHECK_THROWS_AS(QuotientSpace(cyclic_rep(cyclic_group(4), {2})), InvalidInput);
}

TEST_CASE("eccentricity of model quotients") {
  SweepOptions opts;
  QuotientSpace sphere(Representation::defining(trivial_group(2)));
  CertifiedInterval e = eccentricity(sphere, unit({0.3, -0.5, 1.0}), 0.05, opts);
  CHECK(e.certified);
  CHECK(e.lower <= kPi);
  CHECK(e.lower > kPi - 1e-6);  // the antipode witness is found by ascent
  CHECK(e.upper >= kPi - 1e-12);

  QuotientSpace rp2(Representation::defining(antipodal_group(2)));
  CertifiedInterval e2 = eccentricity(rp2, unit({1, 0, 0}), 0.05, opts);
  CHECK(e2.contains(kPi / 2));
  CHECK(e2.width() <= 0.05 + 1e-12);

  QuotientSpace z3 = z3_circle();
  CertifiedInterval e3 = eccentricity(z3, unit({1, 0}), 0.02, opts);
  CHECK(e3.contains(kPi / 3));
  CHECK(e3.lower > kPi / 3 - 1e-6);
}

TEST_CASE("eccentricity is 1-Lipschitz in the base point") {
  QuotientSpace q(cyclic_rep(cyclic_group(5), {1, 2}));
  Rng rng(4);
  SweepOptions opts;
  for (int t = 0; t < 4; ++t) {
    Vec x = rng.unit_vector(4);
    Vec y = (x + 0.2 * rng.unit_vector(4)).normalized();
    CertifiedInterval ex = eccentricity(q, x, 0.05, opts);
    CertifiedInterval ey = eccentricity(q, y, 0.05, opts);
    double mid_gap = std::abs(0.5 * (ex.lower + ex.upper) - 0.5 * (ey.lower + ey.upper));
    CHECK(mid_gap <= angle_between(x, y) + ex.width() + ey.width());
  }
}

TEST_CASE("radius and diameter of the round sphere") {
  QuotientSpace sphere(Representation::defining(trivial_group(2)));
  CertifiedInterval r = radius(sphere, 0.05);
  CHECK(r.certified);
  CHECK(r.lower >= kPi - 0.05 - 1e-9);
  CHECK(r.upper <= kPi + 0.05);
  CertifiedInterval d = diameter(sphere, 0.05);
  CHECK(d.certified);
  CHECK(d.lower == doctest::Approx(kPi));
  CHECK(d.upper == doctest::Approx(kPi));
}

TEST_CASE("radius and diameter of RP2") {
  QuotientSpace rp2(Representation::defining(antipodal_group(2)));
  CertifiedInterval r = radius(rp2, 0.04);
  CHECK(r.certified);
  CHECK(r.contains(kPi / 2));
  CHECK(r.width() <= 0.08 + 1e-9);
  CertifiedInterval d = diameter(rp2, 0.04);
  CHECK(d.certified);
  CHECK(d.contains(kPi / 2));
  CHECK(d.width() <= 1e-9);
}

TEST_CASE("radius of the Z3 circle quotient") {
  CertifiedInterval r = radius(z3_circle(), 0.02);
  CHECK(r.certified);
  CHECK(r.contains(kPi / 3));
  CHECK(r.width() <= 0.05);
}

TEST_CASE("halfspace witness: single point and spanning orbits") {
  Rng rng(5);
  auto w1 = halfspace_witness({unit({1, 0, 0})}, rng);
  REQUIRE(w1.has_value());
  CHECK(w1->dot(unit({1, 0, 0})) <= 1e-9);
  CHECK(std::abs(w1->norm() - 1.0) <= 1e-12);

  // cross polytope vertices admit no half-space: <±e_i, y> <= 0 forces y = 0
  std::vector<Vec> cross;
  for (int i = 0; i < 3; ++i) {
    Vec e = Vec::Zero(3);
    e(i) = 1.0;
    cross.push_back(e);
    cross.push_back(-e);
  }
  CHECK_FALSE(halfspace_witness(cross, rng).has_value());

  // Z5 r1+r1 orbit spans only a plane; its orthogonal complement gives margin 0
  Representation rep = cyclic_rep(cyclic_group(5), {1, 1});
  Vec x = unit({1, 0, 0, 0});
  std::vector<Vec> orbit;
  for (int i = 0; i < 5; ++i) orbit.push_back(rep.at(i) * x);
  auto w2 = halfspace_witness(orbit, rng);
  REQUIRE(w2.has_value());
  for (const Vec& p : orbit) CHECK(p.dot(*w2) <= 1e-9);
}

TEST_CASE("cyclic vector detection") {
  Rng rng(6);
  CHECK_FALSE(has_cyclic_vector(Representation::defining(trivial_group(2)), 8, rng));
  CHECK_FALSE(has_cyclic_vector(cyclic_rep(cyclic_group(5), {1, 1}), 8, rng));
  CHECK(has_cyclic_vector(cyclic_rep(cyclic_group(5), {1, 2}), 8, rng));
  CHECK_THROWS_AS(has_cyclic_vector(z3_circle().rep, 4, rng), InvalidInput);
}

TEST_CASE("orbit spans of the doubled quaternion representation stay rank 4") {
  // The commutant of the quaternion left action is H itself, so every orbit of
  // the doubled representation lies in {(a u, a v) : a in H}: rank 4 of 8,
  // never cyclic, and the quotient radius is exactly pi/2 via the
  // complement-witness mechanism.
  Representation q8 = Representation::defining(quaternion_group());
  Representation doubled = direct_sum(q8, q8);
  Rng rng(7);
  for (int t = 0; t < 8; ++t) {
    Vec x = rng.unit_vector(8);
    Mat orbit(8, 8);
    for (int i = 0; i < 8; ++i) orbit.col(i) = doubled.at(i) * x;
    CHECK(rank_tol(orbit) == 4);
  }
  CHECK_FALSE(has_cyclic_vector(doubled, 16, rng));
  CHECK(decide_radius_half_pi(QuotientSpace(doubled), rng));
}

TEST_CASE("the order-24 type-1 group realizes the doubled cyclic-vector mechanism") {
  Representation base = Representation::defining(type1_group_24());
  Representation doubled = direct_sum(base, base);
  Rng rng(8);
  CHECK(has_cyclic_vector(doubled, 8, rng));
  CHECK_FALSE(decide_radius_half_pi(QuotientSpace(doubled), rng));
}

TEST_CASE("decide_radius_half_pi on the model cases") {
  Rng rng(9);
  CHECK(decide_radius_half_pi(QuotientSpace(Representation::defining(antipodal_group(3))), rng));
  CHECK_FALSE(decide_radius_half_pi(QuotientSpace(cyclic_rep(cyclic_group(5), {1, 2})), rng));
  // small groups: order below the degree forces proper orbit spans
  QuotientSpace small(cyclic_rep(cyclic_group(5), {1, 2, 3}));
  CHECK(small.rep.order() < small.ambient_dim());
  CHECK(decide_radius_half_pi(small, rng));
  CHECK_THROWS_AS(
      decide_radius_half_pi(QuotientSpace(Representation::defining(trivial_group(2))), rng),
      NotApplicable);
}

TEST_CASE("direct sums with a pi/2 factor keep the decision") {
  Rng rng(10);
  GroupPtr z5 = cyclic_group(5);
  Representation rho = cyclic_rep(z5, {1, 1});
  CHECK(decide_radius_half_pi(QuotientSpace(rho), rng));
  for (const std::vector<int>& w : {std::vector<int>{1}, {2}, {1, 2}, {3}}) {
    Representation sigma = cyclic_rep(z5, w);
    CHECK(decide_radius_half_pi(QuotientSpace(direct_sum(rho, sigma)), rng));
  }
}

TEST_CASE("decision agrees with certified radius intervals") {
  Rng rng(11);
  // interval excludes pi/2 -> decision must be false
  QuotientSpace lens(cyclic_rep(cyclic_group(5), {1, 2}));
  CertifiedInterval r = radius(lens, 0.05);
  CHECK(r.certified);
  CHECK(r.upper < kPi / 2);
  CHECK_FALSE(decide_radius_half_pi(lens, rng));

  QuotientSpace rp2(Representation::defining(antipodal_group(2)));
  CertifiedInterval r2 = radius(rp2, 0.04);
  CHECK(r2.contains(kPi / 2));
  CHECK(decide_radius_half_pi(rp2, rng));
}

TEST_CASE("dual set of a point on the round sphere is its equator band") {
  QuotientSpace sphere(Representation::defining(trivial_group(2)));
  Vec p = unit({0, 0, 1});
  double delta = 0.05;
  DualSetEstimate ds = dual_set(sphere, {p}, delta);
  CHECK(!ds.samples.empty());
  double max_polar = 0.0;
  for (const Vec& s : ds.samples) {
    CHECK(std::abs(angle_between(s, p) - kPi / 2) <= delta + 1e-12);
    max_polar = std::max(max_polar, std::abs(s.dot(p)));
  }
  // the band hugs the great circle orthogonal to p; the antipode -p is at
  // distance pi from p and therefore not in the set
  CHECK(max_polar <= std::sin(delta) + 1e-12);
  for (const Vec& s : ds.samples) CHECK(angle_between(s, Vec(-p)) < kPi - 1.0);
}

TEST_CASE("dual set on RP2: equator band and B inside B''") {
  QuotientSpace rp2(Representation::defining(antipodal_group(2)));
  Vec e1 = unit({1, 0, 0});
  double delta = 0.05;
  DualSetEstimate b1 = dual_set(rp2, {e1}, delta);
  CHECK(!b1.samples.empty());
  for (const Vec& s : b1.samples) CHECK(std::abs(s.dot(e1)) <= std::sin(delta) + 1e-12);

  // iterated duals of sampled clouds carry the first layer's slack
  DualSetEstimate b2 = dual_set(rp2, b1.samples, delta, 2.0 * delta);
  CHECK(!b2.samples.empty());
  double to_b2 = kPi;
  for (const Vec& s : b2.samples) to_b2 = std::min(to_b2, quotient_distance(rp2, e1, s));
  CHECK(to_b2 <= 2.0 * delta);
}

TEST_CASE("cp involution quotient: basic structure") {
  ProjectiveInvolutionQuotient q(2);  // CP^3
  Rng rng(12);
  CHECK_THROWS_AS(ProjectiveInvolutionQuotient(1), InvalidParams);

  // sigma^2 = -id acts as the identity on projective classes
  CHECK(cp_involution_square_residual(q, 2000, rng) <= 1e-12);
  CVec zc = rng.unit_complex_vector(4);
  CHECK((q.involution(q.involution(zc)) + zc).norm() <= 1e-15);

  // the involution moves every sample by exactly pi/2: <z, sigma z> = 0
  double disp = cp_min_displacement(q, 2000, rng);
  CHECK(disp > 0.01);
  CHECK(disp == doctest::Approx(kPi / 2).epsilon(1e-9));

  // quotient distance of z to sigma^2 z is zero up to arccos rounding
  CVec z = rng.unit_complex_vector(4);
  CHECK(q.quotient_distance(z, q.involution(q.involution(z))) <= 1e-7);
}

TEST_CASE("cp involution quotient generalizes to d = 3") {
  ProjectiveInvolutionQuotient q(3);  // CP^5
  Rng rng(14);
  CHECK(cp_involution_square_residual(q, 500, rng) <= 1e-12);
  CHECK(cp_min_displacement(q, 500, rng) == doctest::Approx(kPi / 2).epsilon(1e-9));
  CVec z = rng.unit_complex_vector(6);
  CHECK(cp_eccentricity_lower(q, z, rng) >= kPi / 2 - 1e-3);
}

TEST_CASE("cp quotient eccentricity and diameter bounds") {
  ProjectiveInvolutionQuotient q(2);
  Rng rng(13);
  for (int t = 0; t < 8; ++t) {
    CVec z = rng.unit_complex_vector(4);
    CHECK(cp_eccentricity_lower(q, z, rng) >= kPi / 2 - 1e-3);
  }
  CHECK(cp_diameter_sampled(q, 4000, rng) <= kPi / 2 + 1e-3);
}
