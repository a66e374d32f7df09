#include <cmath>
#include <cstdio>

#include "doctest.h"
#include "sphereform/catalog.hpp"
#include "sphereform/groups.hpp"

using namespace sphereform;

TEST_CASE("closure of the antipodal map has order 2") {
  FiniteMatrixGroup g = close_group({-Mat::Identity(3, 3)});
  CHECK(g.order() == 2);
  CHECK(g.contains_minus_identity());
}

TEST_CASE("closure of a doubled 2 pi / 5 rotation has order 5") {
  Mat r = Mat::Zero(4, 4);
  r.block(0, 0, 2, 2) = rotation2(2.0 * kPi / 5);
  r.block(2, 2, 2, 2) = rotation2(2.0 * kPi / 5);
  FiniteMatrixGroup g = close_group({r});
  CHECK(g.order() == 5);
}

TEST_CASE("closure blows up past max_order") {
  CHECK_THROWS_AS(close_group({rotation2(0.01)}, 100), GroupTooLarge);
}

TEST_CASE("non-orthogonal generators are rejected") {
  Mat bad = Mat::Identity(3, 3) * 1.5;
  CHECK_THROWS_AS(close_group({bad}), InvalidInput);
}

TEST_CASE("group invariants hold for q8") {
  GroupPtr q8 = quaternion_group();
  CHECK(q8->order() == 8);
  Rng rng(5);
  q8->validate(rng);
  CHECK(q8->contains_minus_identity());
  CHECK(is_fixed_point_free(*q8));
}

TEST_CASE("type-1 closure order and audit") {
  GroupPtr g = type1_group_24();
  CHECK(g->order() == 24);
  CHECK(is_fixed_point_free(*g));

  // closure oracle: re-close from a different generating set (AB and B)
  auto [a, b] = type1_generators(type1_params_24());
  FiniteMatrixGroup g2 = close_group({Mat(a * b), b}, 64);
  CHECK(g2.order() == 24);
}

TEST_CASE("fixed point free checks") {
  CHECK(is_fixed_point_free(*antipodal_group(2)));
  Mat refl = Mat::Identity(3, 3);
  refl(2, 2) = -1.0;
  CHECK_FALSE(is_fixed_point_free(close_group({refl})));
  // Z5 acting by r1+r2 has eigenvalues e^{±2 pi i k/5} != 1
  Representation rep = cyclic_rep(cyclic_group(5), {1, 2});
  FiniteMatrixGroup image = close_group({rep.at(rep.group->generator_indices[0])});
  CHECK(is_fixed_point_free(image));
}

TEST_CASE("type-1 generators: realification is orthogonal, B^d is the twist scalar") {
  Type1Params p = type1_params_24();
  auto [ac, bc] = type1_generators_complex(p);
  auto [ar, br] = type1_generators(p);
  check_orthogonal(ar, 1e-12);
  check_orthogonal(br, 1e-12);

  // matrix multiplication oracle: B^d == e^{2 pi i l / n'} I
  CMat bd = CMat::Identity(p.d, p.d);
  for (long i = 0; i < p.d; ++i) bd = bc * bd;
  std::complex<double> twist = std::exp(std::complex<double>(0, 2.0 * kPi * p.l / p.n_prime));
  CHECK((bd - twist * CMat::Identity(p.d, p.d)).cwiseAbs().maxCoeff() < 1e-12);

  // A is diagonal with the r-power phases
  CHECK(std::abs(ac(0, 0) - std::exp(std::complex<double>(0, 2.0 * kPi / 3.0))) < 1e-12);
  CHECK(std::abs(ac(1, 1) - std::exp(std::complex<double>(0, 4.0 * kPi / 3.0))) < 1e-12);
}

TEST_CASE("type-1 parameter validation") {
  Type1Params p = type1_params_24();
  p.d = 3;  // order of 2 mod 3 is 2
  CHECK_THROWS_AS(type1_generators(p), InvalidParams);
  Type1Params q = type1_params_24();
  q.r = 3;  // not invertible mod 3
  CHECK_THROWS_AS(type1_generators(q), InvalidParams);
}

TEST_CASE("realification commutes with multiplication") {
  Rng rng(21);
  for (int t = 0; t < 8; ++t) {
    CMat x(3, 3), y(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        x(i, j) = {rng.normal(), rng.normal()};
        y(i, j) = {rng.normal(), rng.normal()};
      }
    CHECK((realify(CMat(x * y)) - realify(x) * realify(y)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("paper witness vectors: ranks d+1 and d") {
  Type1Params p = type1_params_24();
  WitnessVectors w = paper_witness_vectors(p);
  CHECK((w.words[0] * w.u - w.u).norm() == 0.0);  // g1(u) = u
  CHECK(rank_tol(w.stacked.transpose()) == p.d + 1);
  Mat dropped = w.stacked.topRows(p.d);
  CHECK(rank_tol(dropped.transpose()) == p.d);
}

TEST_CASE("paper witness vectors require even d") {
  Type1Params p;  // m=7, r=2 has order 3
  p.m = 7;
  p.k = 1;
  p.r = 2;
  p.d = 3;
  p.n_prime = 3;
  p.l = 1;
  CHECK_THROWS_AS(paper_witness_vectors(p), InvalidParams);
}

TEST_CASE("a larger type-1 pair: order 160, even d = 4") {
  Type1Params p;  // m=5, r=2 has order 4 mod 5
  p.m = 5;
  p.k = 1;
  p.r = 2;
  p.d = 4;
  p.n_prime = 8;
  p.l = 1;
  auto [a, b] = type1_generators(p);
  FiniteMatrixGroup g = close_group({a, b}, 512);
  CHECK(g.order() == 160);
  CHECK(is_fixed_point_free(g));
  WitnessVectors w = paper_witness_vectors(p);
  CHECK(rank_tol(w.stacked.transpose()) == 5);
  Mat dropped = w.stacked.topRows(4);
  CHECK(rank_tol(dropped.transpose()) == 4);
}

TEST_CASE("group JSON round trip") {
  GroupPtr q8 = quaternion_group();
  std::string path = "q8_roundtrip.json";
  save_group(*q8, path);
  FiniteMatrixGroup back = load_group(path);
  CHECK(back.order() == q8->order());
  for (const Mat& e : q8->elements) {
    bool found = false;
    for (const Mat& f : back.elements)
      if ((e - f).cwiseAbs().maxCoeff() < 1e-12) found = true;
    CHECK(found);
  }
  std::remove(path.c_str());
}
