#pragma once
// Metric geometry of spherical space forms S^n / Gamma and the CP^{2d-1}
// involution quotient: distances, eccentricity, radius, diameter, dual sets,
// half-space witnesses, and the radius-=-pi/2 decision procedure.
//
// The central reduction: the eccentricity of [x] equals the covering radius
// of the finite orbit Gamma.x on S^n, so radius = min over x of a max-min of
// finitely many angles. Upper bounds come from certified net sweeps (the map
// y -> min_g angle(gx, y) is 1-Lipschitz); lower bounds come from exact
// witness evaluations (every f(y) is a true lower bound).

#include <optional>
#include <vector>

#include "sphereform/numerics.hpp"
#include "sphereform/reps.hpp"

namespace sphereform {

struct QuotientSpace {
  Representation rep;

  explicit QuotientSpace(Representation r);

  int ambient_dim() const { return rep.degree(); }
  int sphere_dim() const { return rep.degree() - 1; }
  bool trivial_group() const { return rep.order() == 1; }

  // columns rho(g) x over the group
  Mat orbit(const Vec& x) const;
};

// min over g of angle(x, rho(g) y)
double quotient_distance(const QuotientSpace& q, const Vec& x, const Vec& y);

struct SweepOptions {
  int sample_count = 20000;      // uncertified fallback sample size
  int ascent_restarts = 8;
  int ascent_iters = 120;
  std::uint64_t seed = 1;
};

// Certified interval for max_y quotient_distance(x, y) when sphere_dim <= 4
// (net method); sampled and flagged otherwise.
CertifiedInterval eccentricity(const QuotientSpace& q, const Vec& x, double delta,
                               const SweepOptions& opts = {});

struct RadiusOptions {
  SweepOptions sweep;
  int upper_candidates = 3;  // points given a full inner-net eccentricity sweep
};

CertifiedInterval radius(const QuotientSpace& q, double delta, const RadiusOptions& opts = {});
CertifiedInterval diameter(const QuotientSpace& q, double delta, const RadiusOptions& opts = {});

struct HalfspaceOptions {
  int restarts = 50;
  int iters = 500;
  double step = 0.1;
  double accept_tol = 1e-9;
};

// A unit y with <p, y> <= accept_tol for every input point, if the maximum
// margin search finds one; verified by exact dot products before returning.
std::optional<Vec> halfspace_witness(const std::vector<Vec>& points, Rng& rng,
                                     const HalfspaceOptions& opts = {});

// True iff some random unit x has full-rank orbit span (trials >= 8).
bool has_cyclic_vector(const Representation& rep, int trials, Rng& rng);

// NOT has_cyclic_vector: the exact Boolean answer to "radius >= pi/2" for
// nontrivial space forms. Throws NotApplicable for the trivial group (the
// round sphere has radius pi). Relies on the classification fact that a
// nontrivial quotient has radius <= pi/2; the numeric interval cross-checks.
bool decide_radius_half_pi(const QuotientSpace& q, Rng& rng);

struct DualSetEstimate {
  std::vector<Vec> samples;
  double tolerance = 0.0;
};

// All net points x with |min_b quotient_distance(x, b) - pi/2| <= band_tol
// (band_tol defaults to delta, the net resolution). Iterated duals of sampled
// clouds need band_tol = 2*delta to absorb the first layer's slack.
DualSetEstimate dual_set(const QuotientSpace& q, const std::vector<Vec>& B, double delta,
                         double band_tol = 0.0);

// max over a of min over b of quotient_distance, symmetrized
double hausdorff_distance(const QuotientSpace& q, const std::vector<Vec>& A,
                          const std::vector<Vec>& B);

// ---------------------------------------------------------------------------
// CP^{2d-1} / involution quotient (paper Theorem 3(ii))

struct ProjectiveInvolutionQuotient {
  int d = 0;

  explicit ProjectiveInvolutionQuotient(int d_);

  int ambient_complex_dim() const { return 2 * d; }

  // [z_1..z_{2d}] -> [conj(z_{d+1})..conj(z_{2d}), -conj(z_1)..-conj(z_d)]
  CVec involution(const CVec& z) const;

  // Fubini-Study distance arccos|<z,w>|
  double fs_distance(const CVec& z, const CVec& w) const;

  // min(fs(z,w), fs(z, sigma(w)))
  double quotient_distance(const CVec& z, const CVec& w) const;
};

// Exact lower bound for the eccentricity of [z], from witness ascent
// (subgradient ascent on w -> quotient_distance(z, w), null-space seeded).
double cp_eccentricity_lower(const ProjectiveInvolutionQuotient& q, const CVec& z, Rng& rng,
                             int restarts = 8, int iters = 200);

// max over random pairs of quotient_distance (sampled estimate)
double cp_diameter_sampled(const ProjectiveInvolutionQuotient& q, int pairs, Rng& rng);

// min over random samples of fs(z, sigma(z)); positive iff no fixed point seen
double cp_min_displacement(const ProjectiveInvolutionQuotient& q, int samples, Rng& rng);

// max over random samples of the projective distance between z and sigma^2(z)
double cp_involution_square_residual(const ProjectiveInvolutionQuotient& q, int samples,
                                     Rng& rng);

}  // namespace sphereform
