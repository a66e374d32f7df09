#include <cmath>

#include "doctest.h"
#include "sphereform/common.hpp"
#include "sphereform/octonion.hpp"

using namespace sphereform;

namespace {

Octonion random_oct(Rng& rng) {
  std::array<double, 8> a;
  for (double& d : a) d = rng.normal();
  return Octonion::from_array(a);
}

Octonion basis(int i) {
  std::array<double, 8> a{};
  a[i] = 1.0;
  return Octonion::from_array(a);
}

double dist(const Octonion& a, const Octonion& b) { return (a - b).norm(); }

}  // namespace

TEST_CASE("quaternion multiplication table") {
  Quaternion one(1, 0, 0, 0), i(0, 1, 0, 0), j(0, 0, 1, 0), k(0, 0, 0, 1);
  CHECK((i * j - k).norm() == 0.0);
  CHECK((j * k - i).norm() == 0.0);
  CHECK((k * i - j).norm() == 0.0);
  CHECK((i * i + one).norm() == 0.0);
  CHECK((j * j + one).norm() == 0.0);
  CHECK((i * j + j * i).norm() == 0.0);
}

TEST_CASE("octonion basis squares and identity") {
  Octonion one = basis(0);
  for (int i = 1; i < 8; ++i) {
    CHECK(dist(basis(i) * basis(i), -one) < 1e-15);
    CHECK(dist(one * basis(i), basis(i)) < 1e-15);
    CHECK(dist(basis(i) * one, basis(i)) < 1e-15);
  }
}

TEST_CASE("octonion norm is multiplicative") {
  Rng rng(11);
  for (int t = 0; t < 64; ++t) {
    Octonion x = random_oct(rng), y = random_oct(rng);
    CHECK(std::abs((x * y).norm() - x.norm() * y.norm()) < 1e-12 * x.norm() * y.norm());
  }
}

TEST_CASE("octonions are alternative but not associative") {
  Rng rng(12);
  for (int t = 0; t < 32; ++t) {
    Octonion x = random_oct(rng), y = random_oct(rng);
    CHECK(dist(x * (x * y), (x * x) * y) < 1e-12);
    CHECK(dist((y * x) * x, y * (x * x)) < 1e-12);
  }
  // a genuine associativity failure certifies we are not in a quaternion algebra
  Octonion a = basis(1), b = basis(2), c = basis(4);
  CHECK(dist((a * b) * c, a * (b * c)) > 1.0);
}

TEST_CASE("conjugation gives the norm form") {
  Rng rng(13);
  for (int t = 0; t < 16; ++t) {
    Octonion x = random_oct(rng);
    Octonion xx = x * x.conj();
    CHECK(std::abs(xx.a.w - x.norm2()) < 1e-12 * x.norm2());
    CHECK(dist(xx, basis(0) * x.norm2()) < 1e-12 * x.norm2());
  }
}
