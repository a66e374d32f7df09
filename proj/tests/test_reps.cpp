#include <cmath>

#include "doctest.h"
#include "sphereform/catalog.hpp"
#include "sphereform/reps.hpp"

using namespace sphereform;

namespace {

// Independent irreducibility oracle: the dimension of the symmetric commutant
// {S = S^T : S rho(g) = rho(g) S for all generators}, found as the null space
// of the exact commutation operator. Real-irreducible iff dimension 1.
int symmetric_commutant_dim(const Representation& rep) {
  const int d = rep.degree();
  const int nsym = d * (d + 1) / 2;
  std::vector<Mat> basis;
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      Mat e = Mat::Zero(d, d);
      e(i, j) = e(j, i) = 1.0;
      basis.push_back(e);
    }
  const auto& gens = rep.group->generator_indices;
  Mat sys(static_cast<int>(gens.size()) * d * d, nsym);
  for (int b = 0; b < nsym; ++b) {
    int row = 0;
    for (int gi : gens) {
      Mat comm = basis[b] * rep.at(gi) - rep.at(gi) * basis[b];
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) sys(row++, b) = comm(i, j);
    }
  }
  Eigen::JacobiSVD<Mat> svd(sys);
  int rank = 0;
  double smax = svd.singularValues()(0);
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-9 * std::max(1.0, smax)) ++rank;
  return nsym - rank;
}

double invariance_residual(const Representation& rep, const Mat& basis) {
  double worst = 0.0;
  for (const Mat& g : rep.matrices) {
    Mat gb = g * basis;
    worst = std::max(worst, (gb - basis * (basis.transpose() * gb)).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace

TEST_CASE("trivial group on R^2 decomposes into two lines") {
  Representation rep = Representation::defining(trivial_group(1));
  Rng rng(1);
  auto blocks = decompose(rep, rng);
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0].dim() == 1);
  CHECK(blocks[1].dim() == 1);
}

TEST_CASE("Z5 r1+r2 decomposes into two plane irreducibles") {
  Representation rep = cyclic_rep(cyclic_group(5), {1, 2});
  Rng rng(2);
  auto blocks = decompose(rep, rng);
  REQUIRE(blocks.size() == 2);
  for (const auto& b : blocks) {
    CHECK(b.dim() == 2);
    CHECK(b.irreducible);
    CHECK(invariance_residual(rep, b.basis) < 1e-8);
    // oracle: restricted rep has scalar symmetric commutant
    CHECK(symmetric_commutant_dim(restrict_to(rep, b.basis)) == 1);
  }
}

TEST_CASE("q8 defining representation is a single irreducible block") {
  Representation rep = Representation::defining(quaternion_group());
  CHECK(symmetric_commutant_dim(rep) == 1);  // oracle
  Rng rng(3);
  auto blocks = decompose(rep, rng);
  REQUIRE(blocks.size() == 1);
  CHECK(blocks[0].dim() == 4);
  CHECK(blocks[0].irreducible);
}

TEST_CASE("decomposition blocks span with orthogonal projectors summing to I") {
  Representation rep = cyclic_rep(cyclic_group(8), {1, 3, 2});
  Rng rng(4);
  auto blocks = decompose(rep, rng);
  int total = 0;
  Mat proj = Mat::Zero(rep.degree(), rep.degree());
  for (const auto& b : blocks) {
    total += b.dim();
    proj += b.basis * b.basis.transpose();
  }
  CHECK(total == rep.degree());
  CHECK((proj - Mat::Identity(rep.degree(), rep.degree())).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("equivalence: reflexive, and Z5 weights 1 vs 2 differ") {
  GroupPtr z5 = cyclic_group(5);
  Representation r1 = cyclic_rep(z5, {1});
  Representation r2 = cyclic_rep(z5, {2});
  Rng rng(5);
  CHECK(are_equivalent(r1, r1, rng));
  // character oracle: the generator traces differ
  int gen = z5->generator_indices[0];
  CHECK(std::abs(r1.at(gen).trace() - r2.at(gen).trace()) > 0.5);
  CHECK_FALSE(are_equivalent(r1, r2, rng));
  // conjugate rotations are equivalent over R (intertwiner diag(1,-1))
  Representation r4 = cyclic_rep(z5, {4});
  CHECK(are_equivalent(r1, r4, rng));
}

TEST_CASE("two copies of the same block are equivalent") {
  GroupPtr z5 = cyclic_group(5);
  Representation r1 = cyclic_rep(z5, {1});
  Rng rng(6);
  Representation doubled = direct_sum(r1, r1);
  auto blocks = decompose(doubled, rng);
  REQUIRE(blocks.size() == 2);
  CHECK(are_equivalent(restrict_to(doubled, blocks[0].basis),
                       restrict_to(doubled, blocks[1].basis), rng));
}

TEST_CASE("direct sum degrees add and group mismatch throws") {
  GroupPtr z5 = cyclic_group(5);
  Representation r1 = cyclic_rep(z5, {1});
  Representation r2 = cyclic_rep(z5, {2});
  CHECK(direct_sum(r1, r2).degree() == 4);
  Representation other = Representation::defining(cyclic_group(3));
  CHECK_THROWS_AS(direct_sum(r1, other), InvalidInput);

  // summing with a degree-0 representation is the identity operation
  Representation zero;
  zero.group = z5;
  zero.matrices.assign(z5->order(), Mat::Zero(0, 0));
  Representation same = direct_sum(r1, zero);
  CHECK(same.degree() == r1.degree());
  for (int i = 0; i < z5->order(); ++i)
    CHECK((same.at(i) - r1.at(i)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("homomorphism validation rejects inconsistent generator images") {
  GroupPtr z5 = cyclic_group(5);
  // rotation by 2 pi / 7 is not an image of a Z5 generator
  CHECK_THROWS_AS(Representation::from_generator_images(z5, {rotation2(2.0 * kPi / 7)}),
                  InvalidInput);
}

TEST_CASE("multiplicity profiles") {
  GroupPtr z5 = cyclic_group(5);
  Rng rng(7);

  MultiplicityProfile p11 = multiplicity_profile(cyclic_rep(z5, {1, 1}), rng);
  REQUIRE(p11.classes.size() == 1);
  CHECK(p11.classes[0].second == 2);

  MultiplicityProfile p12 = multiplicity_profile(cyclic_rep(z5, {1, 2}), rng);
  REQUIRE(p12.classes.size() == 2);
  CHECK(p12.classes[0].second == 1);
  CHECK(p12.classes[1].second == 1);

  Representation q8d = Representation::defining(quaternion_group());
  MultiplicityProfile pq = multiplicity_profile(direct_sum(q8d, q8d), rng);
  REQUIRE(pq.classes.size() == 1);
  CHECK(pq.classes[0].second == 2);
  CHECK(pq.equal_dims);
}

TEST_CASE("equivalence is an equivalence relation on decomposed blocks") {
  GroupPtr z8 = cyclic_group(8);
  Representation rep = cyclic_rep(z8, {1, 3, 1});
  Rng rng(8);
  auto blocks = decompose(rep, rng);
  REQUIRE(blocks.size() == 3);
  std::vector<Representation> rs;
  for (const auto& b : blocks) rs.push_back(restrict_to(rep, b.basis));
  for (std::size_t i = 0; i < rs.size(); ++i) {
    CHECK(are_equivalent(rs[i], rs[i], rng));
    for (std::size_t j = 0; j < rs.size(); ++j) {
      CHECK(are_equivalent(rs[i], rs[j], rng) == are_equivalent(rs[j], rs[i], rng));
      for (std::size_t k = 0; k < rs.size(); ++k) {
        if (are_equivalent(rs[i], rs[j], rng) && are_equivalent(rs[j], rs[k], rng))
          CHECK(are_equivalent(rs[i], rs[k], rng));
      }
    }
  }
}
