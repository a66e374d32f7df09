#pragma once
// The three Hopf Riemannian submersions with O'Neill tensor evaluation,
// holonomy displacement, and fiber-geometry checks.
//
// Each fibration is realized through an invariant embedding map F whose
// fibers are exactly the submersion fibers:
//   complex      S^{2n+1} -> CP^n        F(z) = z z^H   (Hermitian projector)
//   quaternionic S^{4n+3} -> HP^n        F(z) = z z^H   (quaternionic)
//   octonionic   S^15     -> S^8(1/2)    F(x,y) = (2 x conj(y), |x|^2 - |y|^2)
// Vertical spaces are kernels of the analytic Jacobian dF restricted to the
// tangent space; O'Neill tensors come from projected central differences of
// canonical subbundle extensions (tensoriality makes the result
// extension-independent).

#include <vector>

#include "sphereform/numerics.hpp"
#include "sphereform/octonion.hpp"

namespace sphereform {

enum class FibKind { complex_hopf, quaternionic_hopf, octonionic_hopf };

const char* fib_kind_name(FibKind k);

// Base point: a representative total-space vector for complex/quaternionic
// (the class is gauge-free; compare with base_distance), or the R^9 image of
// the octonionic Hopf map.
struct BasePoint {
  FibKind kind;
  int n;
  Vec data;
};

struct FrameSplit {
  Vec z;
  Mat vertical;    // N x fiber_dim, orthonormal
  Mat horizontal;  // N x (N - 1 - fiber_dim), orthonormal

  Vec vert_part(const Vec& w) const { return vertical * (vertical.transpose() * w); }
  Vec horiz_part(const Vec& w) const { return horizontal * (horizontal.transpose() * w); }
  Vec tangent_part(const Vec& w) const { return w - z * z.dot(w); }
};

class Fibration {
 public:
  static Fibration complex_hopf(int n);        // S^{2n+1} -> CP^n
  static Fibration quaternionic_hopf(int n);   // S^{4n+3} -> HP^n
  static Fibration octonionic_hopf();          // S^15 -> S^8(1/2)

  FibKind kind() const { return kind_; }
  int n() const { return n_; }
  int ambient_dim() const;       // N: real dimension of the embedding space
  int total_sphere_dim() const { return ambient_dim() - 1; }
  int fiber_dim() const;         // 1 | 3 | 7
  int horizontal_dim() const { return total_sphere_dim() - fiber_dim(); }
  bool sphere_base() const;      // wiedersehen fibrations: complex-1, quat-1, oct
  const char* name() const { return fib_kind_name(kind_); }

  BasePoint project(const Vec& z) const;
  double base_distance(const BasePoint& a, const BasePoint& b) const;

  // embedding-level residual: exact 0 iff same fiber. Distances computed via
  // arccos lose half the mantissa near 0; this does not.
  double fiber_residual(const BasePoint& a, const BasePoint& b) const;

  // embedding map and its analytic Jacobian (m x N)
  Vec embed(const Vec& z) const;
  Mat embed_jacobian(const Vec& z) const;

  FrameSplit split(const Vec& z) const;

  // a total-space point in the fiber over x
  Vec fiber_point(const BasePoint& x) const;

  // another point of the same fiber, reached by a vertical geodesic
  Vec random_fiber_point(const Vec& z, Rng& rng) const;

  // multiplication by i on the interleaved real coordinates (complex kind)
  Vec apply_complex_structure(const Vec& v) const;

 private:
  Fibration(FibKind k, int n) : kind_(k), n_(n) {}
  FibKind kind_;
  int n_;
};

// Shares the three splits (z and the two finite-difference neighbors) across
// many tensor evaluations with the same base point and derivative direction.
class TensorBatch {
 public:
  // direction must be a unit tangent vector at z
  TensorBatch(const Fibration& f, const Vec& z, const Vec& direction, double h = 1e-5);

  // sphere covariant derivative at z of the canonical extension of E
  // (q -> subbundle projection of the constant vector E), tangentially projected
  Vec extension_derivative(const Vec& e, bool horizontal_bundle) const;

  const FrameSplit& split() const { return sp_; }
  const Vec& direction() const { return dir_; }

 private:
  FrameSplit sp_, sp_plus_, sp_minus_;
  Vec dir_;
  double h_;
};

// O'Neill A tensor: X horizontal unit; E horizontal (result vertical) or
// vertical (result horizontal). InvalidInput on wrongly typed arguments.
Vec a_tensor(const Fibration& f, const Vec& z, const Vec& x, const Vec& e, double h = 1e-5);

// O'Neill T tensor: V vertical unit; E vertical (result horizontal) or
// horizontal (result vertical). Identically zero for totally geodesic fibers.
Vec t_tensor(const Fibration& f, const Vec& z, const Vec& v, const Vec& e, double h = 1e-5);

// K_base(d pi X, d pi Y) = 1 + 3 ||A_X Y||^2 for orthonormal horizontal X, Y
double oneill_base_curvature(const Fibration& f, const Vec& z, const Vec& x, const Vec& y);

// |1 - ||A_X V||^2| with T == 0 checked separately
double vertizontal_check(const Fibration& f, const Vec& z, const Vec& x, const Vec& v);

struct BijectivityReport {
  Vec singular_values;   // of v -> A_X v on the vertical space
  Mat adapted_vertical;  // right singular vectors u_i (ambient coords)
  Mat adapted_horizontal;  // paired y_i = A_X u_i / lambda_i
  double min_sv = 0.0, max_sv = 0.0;
  double pair_orthogonality;   // max |<A_X u_i, A_X u_j>| for i != j
};

BijectivityReport bijectivity_check(const Fibration& f, const Vec& z, const Vec& x);

struct AppendixReport {
  Vec lambdas;                 // singular values, descending
  Vec greedy_lambdas;          // greedy-maximization route (oracle: SVD)
  double pairing_residual;     // max_i ||A_X y_i + lambda_i u_i||
  double skew_residual;        // max |<A_X y, v> + <y, A_X v>| over random pairs
  double basis_sum_value;      // sum ||A_X V_i||^2 on the vertical basis
  double basis_sum_spread;     // max deviation across random vertical bases
  double horizontal_frame_sum; // sum ||A_X E_i||^2 over a horizontal frame
};

AppendixReport appendix_structure_check(const Fibration& f, const Vec& z, const Vec& x,
                                        Rng& rng, int random_bases = 8);

// Base geodesic through project(z0) with horizontal direction u0; all lifts
// are great circles.
struct BaseGeodesic {
  Vec z0, u0;
  double length = kPi;

  Vec lift_at(double t) const { return std::cos(t) * z0 + std::sin(t) * u0; }
  Vec lift_velocity(double t) const { return -std::sin(t) * z0 + std::cos(t) * u0; }
};

BaseGeodesic make_base_geodesic(const Fibration& f, const Vec& z0, Rng& rng,
                                double length = kPi);

struct LiftedGeodesic {
  Vec z, u;    // start point and horizontal unit velocity
  double s0;   // base time at the start

  Vec at_base_time(double t) const {
    return std::cos(t - s0) * z + std::sin(t - s0) * u;
  }
};

// Horizontal lift of gamma through z over gamma(s); InvalidInput if z does not
// project to gamma(s) within 1e-8.
LiftedGeodesic horizontal_lift(const Fibration& f, const BaseGeodesic& gamma, double s,
                               const Vec& z);

// Holonomy displacement psi_{s,t}(z): endpoint of the lift through z
Vec holonomy(const Fibration& f, const BaseGeodesic& gamma, double s, double t, const Vec& z);

// generic RK4 lift (horizontal projection of the required velocity); used as
// an oracle against the exact great-circle lift
Vec ode_lift_rk4(const Fibration& f, const BaseGeodesic& gamma, double s, double t,
                 const Vec& z, int steps = 512);

// dual point a(x): common base point of horizontal geodesics from the fiber
// over x at time pi/2 (fibers are antipodal invariant, so project(-z) = x;
// the paper's a(x) is the time-pi/2 endpoint)
BasePoint dual_point(const Fibration& f, const BasePoint& x);

// max ||T|| over sampled (fiber point, vertical pair) arguments <= 1e-5
bool is_good_point(const Fibration& f, const BasePoint& x, Rng& rng, int samples = 64,
                   double tol = 1e-5);

double good_point_t_norm(const Fibration& f, const BasePoint& x, Rng& rng, int samples = 64);

// max pairwise base distance of time-pi/2 endpoints of horizontal geodesics
// emanating from the fiber over x
double wiedersehen_spread(const Fibration& f, const BasePoint& x, int count, Rng& rng);

// max |base_distance(x, endpoint) - pi/2| over the same family
double halfway_distance_residual(const Fibration& f, const BasePoint& x, int count, Rng& rng);

// Frames along a lifted geodesic: horizontal frame with (nabla E)^h = 0 and
// vertical frame with (nabla V)^v = 0, by RK4 on y' = P'(t) y.
struct LiftFrames {
  double step = 0.0;
  std::vector<Vec> z, xdot;
  std::vector<Mat> horizontal;  // N x (horizontal_dim - 1), orthogonal to xdot
  std::vector<Mat> vertical;    // N x fiber_dim
  double max_gram_defect = 0.0;
  double vertical_residual = 0.0;    // 5-point estimate of ||(nabla V)^v||
  double horizontal_residual = 0.0;  // same for the horizontal condition
};

LiftFrames transport_frames(const Fibration& f, const BaseGeodesic& gamma, int steps);

}  // namespace sphereform
