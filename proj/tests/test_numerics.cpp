#include <cmath>

#include "doctest.h"
#include "sphereform/catalog.hpp"
#include "sphereform/numerics.hpp"

using namespace sphereform;

namespace {

Vec unit(std::initializer_list<double> v) {
  Vec x(static_cast<int>(v.size()));
  int i = 0;
  for (double d : v) x(i++) = d;
  return x;
}

// independent rank oracle: count of Gram-matrix eigenvalues above tolerance
int gram_rank(const Mat& m, double tol = 1e-10) {
  Mat g = m.transpose() * m;
  Eigen::SelfAdjointEigenSolver<Mat> eig(g);
  double scale = std::max(1.0, eig.eigenvalues().maxCoeff());
  int r = 0;
  for (int i = 0; i < eig.eigenvalues().size(); ++i)
    if (eig.eigenvalues()(i) > tol * scale) ++r;
  return r;
}

}  // namespace

TEST_CASE("rank_tol on identity and zero") {
  CHECK(rank_tol(Mat::Identity(3, 3), 1e-8) == 3);
  CHECK(rank_tol(Mat::Zero(3, 3), 1e-8) == 0);
}

TEST_CASE("rank_tol on a Z5 simultaneous-rotation orbit") {
  // orbit of (1,0,0,0) under the r1+r1 representation spans exactly the plane
  // carried by the first rotation block
  Representation rep = cyclic_rep(cyclic_group(5), {1, 1});
  Vec x = unit({1, 0, 0, 0});
  Mat orbit(4, 5);
  for (int i = 0; i < 5; ++i) orbit.col(i) = rep.at(i) * x;
  CHECK(gram_rank(orbit) == 2);  // oracle
  CHECK(rank_tol(orbit) == 2);
}

TEST_CASE("rank_tol rejects non-finite input") {
  Mat m = Mat::Identity(2, 2);
  m(0, 1) = std::nan("");
  CHECK_THROWS_AS(rank_tol(m), InvalidInput);
  CHECK_THROWS_AS(rank_tol(Mat::Identity(2, 2), -1.0), InvalidInput);
}

TEST_CASE("rank_tol is invariant under orthogonal column mixing") {
  Rng rng(7);
  for (int t = 0; t < 8; ++t) {
    Mat m = rng.gaussian_matrix(5, 4);
    if (t % 2) m.col(3) = m.col(0) + 2.0 * m.col(1);  // force rank deficiency
    Mat q = rng.random_orthogonal(4);
    CHECK(rank_tol(m) == rank_tol(m * q));
  }
}

TEST_CASE("geodesic endpoints") {
  SpherePoint e1(unit({1, 0, 0}));
  TangentVector v(e1, unit({0, 1, 0}));
  CHECK((geodesic(e1, v, 0.0).coords - unit({1, 0, 0})).norm() == doctest::Approx(0.0));
  CHECK((geodesic(e1, v, kPi / 2).coords - unit({0, 1, 0})).norm() < 1e-15);
  CHECK((geodesic(e1, v, kPi).coords - unit({-1, 0, 0})).norm() < 1e-15);
}

TEST_CASE("geodesic has period 2 pi") {
  Rng rng(3);
  for (int t = 0; t < 16; ++t) {
    SpherePoint p(rng.unit_vector(4));
    TangentVector v = make_unit_tangent(p, rng.unit_vector(4));
    double s = rng.uniform(0.0, 2.0 * kPi);
    CHECK((geodesic(p, v, s + 2.0 * kPi).coords - geodesic(p, v, s).coords).norm() < 1e-10);
  }
}

TEST_CASE("geodesic requires a unit direction") {
  SpherePoint e1(unit({1, 0, 0}));
  CHECK_THROWS_AS(geodesic(e1, TangentVector(e1, unit({0, 2, 0}) * 2.0), 1.0), InvalidInput);
}

TEST_CASE("tangent vectors must be orthogonal to the base") {
  SpherePoint e1(unit({1, 0, 0}));
  Vec bad(3);
  bad << 0.5, 1.0, 0.0;
  CHECK_THROWS_AS(TangentVector(e1, bad), InvalidInput);
}

TEST_CASE("circle net at pi/4 has at least 8 equally spaced points") {
  SphericalNet net = build_net(1, kPi / 4);
  CHECK(net.points.size() >= 8);
  CHECK(net.certified);
  CHECK(net.covering_radius == doctest::Approx(kPi / 4));
  // equally spaced: all successive angles equal
  double step = 2.0 * kPi / static_cast<double>(net.points.size());
  for (std::size_t i = 0; i < net.points.size(); ++i) {
    double th = std::atan2(net.points[i](1), net.points[i](0));
    double expect = step * static_cast<double>(i);
    double diff = std::remainder(th - expect, 2.0 * kPi);
    CHECK(std::abs(diff) < 1e-12);
  }
}

TEST_CASE("sphere net audit passes at the declared covering radius") {
  SphericalNet net = build_net(2, 0.2);
  Rng rng(99);
  double gap = net_audit(net, 10000, rng);
  CHECK(gap <= 0.2);
  CHECK(net.certified);
}

TEST_CASE("dim 5 certified nets are unsupported; sampled fallback is flagged") {
  CHECK_THROWS_AS(build_net(5, 0.3), Unsupported);
  SphericalNet net = build_net(5, 0.3, /*require_certified=*/false);
  CHECK_FALSE(net.certified);
  CHECK(net.covering_radius > 0.0);
}

TEST_CASE("build_net rejects delta below 0.01") {
  CHECK_THROWS_AS(build_net(2, 0.005), InvalidInput);
}

TEST_CASE("streamed net enumeration matches the materialized net") {
  SphericalNet net = build_net(3, 0.4);
  std::size_t count = 0;
  for_each_net_point(3, 0.4, [&](const double* c, int len) {
    REQUIRE(len == 4);
    CHECK((Eigen::Map<const Vec>(c, len) - net.points[count]).norm() < 1e-15);
    ++count;
  });
  CHECK(count == net.points.size());
  CHECK(count == net_size(3, 0.4));
}

TEST_CASE("quadrature closed forms") {
  double sin2 = quadrature([](double t) { return std::sin(2 * t) * std::sin(2 * t); }, 0.0,
                           kPi / 2, 64);
  CHECK(std::abs(sin2 - kPi / 4) < 1e-10);
  CHECK(std::abs(quadrature([](double) { return 1.0; }, 0.0, kPi, 64) - kPi) < 1e-12);
  // the Ricci equality case: constant 28 integrates to 28 pi
  CHECK(std::abs(quadrature([](double) { return 28.0; }, 0.0, kPi, 64) - 28.0 * kPi) < 1e-10);
}

TEST_CASE("quadrature input contracts") {
  auto f = [](double t) { return t; };
  CHECK_THROWS_AS(quadrature(f, 0.0, 1.0, 15), InvalidInput);
  CHECK_THROWS_AS(quadrature(f, 0.0, 1.0, 33), InvalidInput);
  CHECK_THROWS_AS(quadrature([](double) { return std::nan(""); }, 0.0, 1.0, 16), InvalidInput);
}
