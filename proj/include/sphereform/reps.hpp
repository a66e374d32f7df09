#pragma once
// Orthogonal representations of finite matrix groups: decomposition into
// irreducibles by randomized commutant averaging, equivalence testing by
// averaged intertwiners, direct sums, multiplicity profiles.

#include <vector>

#include "sphereform/groups.hpp"

namespace sphereform {

struct Representation {
  GroupPtr group;
  std::vector<Mat> matrices;  // aligned with group->elements

  int degree() const { return matrices.empty() ? 0 : static_cast<int>(matrices[0].rows()); }
  int order() const { return group ? group->order() : 0; }
  const Mat& at(int i) const { return matrices[i]; }

  // the group acting by its own matrices
  static Representation defining(GroupPtr g);

  // propagate generator images through the BFS word structure; validates the
  // homomorphism property on the full multiplication table (1e-9)
  static Representation from_generator_images(GroupPtr g, const std::vector<Mat>& images);

  void validate(double tol = 1e-9) const;
};

struct InvariantSubspace {
  Mat basis;          // degree x k, orthonormal columns
  bool irreducible = false;

  int dim() const { return static_cast<int>(basis.cols()); }
};

struct DecomposeOptions {
  int irreducibility_trials = 32;  // scalar averages required to declare irreducible
  int max_attempts = 8;            // fresh-randomness retries on ambiguous spectra
  double scalar_tol = 1e-8;
  double invariance_tol = 1e-8;
};

// Pairwise orthogonal irreducible invariant subspaces spanning R^degree.
// Averages random symmetric matrices over the action, splits along eigenspace
// clusters, recurses. Throws DecompositionUnstable after max_attempts.
std::vector<InvariantSubspace> decompose(const Representation& rep, Rng& rng,
                                         const DecomposeOptions& opts = {});

// rep restricted to an invariant subspace (matrices Q^T rho(g) Q)
Representation restrict_to(const Representation& rep, const Mat& basis);

// Averaged-intertwiner equivalence over R. Different degrees -> false.
bool are_equivalent(const Representation& a, const Representation& b, Rng& rng,
                    int trials = 16);

Representation direct_sum(const Representation& a, const Representation& b);

struct MultiplicityProfile {
  std::vector<InvariantSubspace> blocks;
  std::vector<int> class_of_block;                  // class id per block
  std::vector<std::pair<int, int>> classes;         // (class id, multiplicity)
  bool equal_dims = true;                           // Wolf 7.2.18 audit for fpf reps
};

MultiplicityProfile multiplicity_profile(const Representation& rep, Rng& rng);

// The image of every non-identity element must move every point: no +1
// eigenvalue anywhere (this also rules out non-faithful images).
bool is_fixed_point_free(const Representation& rep, double tol = 1e-8);

}  // namespace sphereform
