#include "sphereform/fibrations.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <complex>

namespace sphereform {

namespace {

using Cplx = std::complex<double>;

Cplx cx(const Vec& v, int k) { return {v(2 * k), v(2 * k + 1)}; }

Quaternion qt(const Vec& v, int k) {
  return {v(4 * k), v(4 * k + 1), v(4 * k + 2), v(4 * k + 3)};
}

Octonion oct_head(const Vec& v) { return Octonion::from_ptr(v.data()); }
Octonion oct_tail(const Vec& v) { return Octonion::from_ptr(v.data() + 8); }

Mat tangent_basis(const Vec& z) {
  const int n = static_cast<int>(z.size());
  Mat col(n, 1);
  col.col(0) = z;
  Eigen::HouseholderQR<Mat> qr(col);
  Mat q = qr.householderQ();
  return q.rightCols(n - 1);
}

Mat orthonormalize_cols(const Mat& b) {
  Eigen::HouseholderQR<Mat> qr(b);
  Mat q = qr.householderQ();
  return q.leftCols(b.cols());
}

}  // namespace

const char* fib_kind_name(FibKind k) {
  switch (k) {
    case FibKind::complex_hopf: return "complex";
    case FibKind::quaternionic_hopf: return "quaternionic";
    case FibKind::octonionic_hopf: return "octonionic";
  }
  return "?";
}

Fibration Fibration::complex_hopf(int n) {
  require(n >= 1, "complex_hopf: n >= 1");
  return Fibration(FibKind::complex_hopf, n);
}
Fibration Fibration::quaternionic_hopf(int n) {
  require(n >= 1, "quaternionic_hopf: n >= 1");
  return Fibration(FibKind::quaternionic_hopf, n);
}
Fibration Fibration::octonionic_hopf() { return Fibration(FibKind::octonionic_hopf, 1); }

int Fibration::ambient_dim() const {
  switch (kind_) {
    case FibKind::complex_hopf: return 2 * (n_ + 1);
    case FibKind::quaternionic_hopf: return 4 * (n_ + 1);
    case FibKind::octonionic_hopf: return 16;
  }
  return 0;
}

int Fibration::fiber_dim() const {
  switch (kind_) {
    case FibKind::complex_hopf: return 1;
    case FibKind::quaternionic_hopf: return 3;
    case FibKind::octonionic_hopf: return 7;
  }
  return 0;
}

bool Fibration::sphere_base() const {
  return kind_ == FibKind::octonionic_hopf || n_ == 1;
}

Vec Fibration::embed(const Vec& z) const {
  const int nc = n_ + 1;
  switch (kind_) {
    case FibKind::complex_hopf: {
      Vec out(nc * nc);
      int p = 0;
      for (int i = 0; i < nc; ++i) out(p++) = std::norm(cx(z, i));
      for (int i = 0; i < nc; ++i)
        for (int j = i + 1; j < nc; ++j) {
          Cplx e = cx(z, i) * std::conj(cx(z, j));
          out(p++) = e.real();
          out(p++) = e.imag();
        }
      return out;
    }
    case FibKind::quaternionic_hopf: {
      Vec out(nc + 4 * nc * (nc - 1) / 2);
      int p = 0;
      for (int i = 0; i < nc; ++i) out(p++) = qt(z, i).norm2();
      for (int i = 0; i < nc; ++i)
        for (int j = i + 1; j < nc; ++j) {
          Quaternion e = qt(z, i) * qt(z, j).conj();
          out(p++) = e.w;
          out(p++) = e.x;
          out(p++) = e.y;
          out(p++) = e.z;
        }
      return out;
    }
    case FibKind::octonionic_hopf: {
      Octonion x = oct_head(z), y = oct_tail(z);
      Octonion xy = (x * y.conj()) * 2.0;
      Vec out(9);
      auto arr = xy.to_array();
      for (int i = 0; i < 8; ++i) out(i) = arr[i];
      out(8) = x.norm2() - y.norm2();
      return out;
    }
  }
  throw GeometryError("embed: unknown kind");
}

Mat Fibration::embed_jacobian(const Vec& z) const {
  const int nc = n_ + 1;
  const int N = ambient_dim();
  switch (kind_) {
    case FibKind::complex_hopf: {
      const int m = nc * nc;
      Mat jac(m, N);
      for (int k = 0; k < N; ++k) {
        Vec u = Vec::Zero(N);
        u(k) = 1.0;
        int p = 0;
        // d(z z^H)(u) = u z^H + z u^H
        for (int i = 0; i < nc; ++i)
          jac(p++, k) = 2.0 * (cx(u, i) * std::conj(cx(z, i))).real();
        for (int i = 0; i < nc; ++i)
          for (int j = i + 1; j < nc; ++j) {
            Cplx e = cx(u, i) * std::conj(cx(z, j)) + cx(z, i) * std::conj(cx(u, j));
            jac(p++, k) = e.real();
            jac(p++, k) = e.imag();
          }
      }
      return jac;
    }
    case FibKind::quaternionic_hopf: {
      const int m = nc + 4 * nc * (nc - 1) / 2;
      Mat jac(m, N);
      for (int k = 0; k < N; ++k) {
        Vec u = Vec::Zero(N);
        u(k) = 1.0;
        int p = 0;
        for (int i = 0; i < nc; ++i) {
          Quaternion e = qt(u, i) * qt(z, i).conj();
          jac(p++, k) = 2.0 * e.w;
        }
        for (int i = 0; i < nc; ++i)
          for (int j = i + 1; j < nc; ++j) {
            Quaternion e = qt(u, i) * qt(z, j).conj() + qt(z, i) * qt(u, j).conj();
            jac(p++, k) = e.w;
            jac(p++, k) = e.x;
            jac(p++, k) = e.y;
            jac(p++, k) = e.z;
          }
      }
      return jac;
    }
    case FibKind::octonionic_hopf: {
      Mat jac(9, 16);
      Octonion x = oct_head(z), y = oct_tail(z);
      for (int k = 0; k < 16; ++k) {
        Vec u = Vec::Zero(16);
        u(k) = 1.0;
        Octonion du = oct_head(u), dv = oct_tail(u);
        Octonion top = (du * y.conj() + x * dv.conj()) * 2.0;
        auto arr = top.to_array();
        for (int i = 0; i < 8; ++i) jac(i, k) = arr[i];
        jac(8, k) = 2.0 * (x.dot(du) - y.dot(dv));
      }
      return jac;
    }
  }
  throw GeometryError("embed_jacobian: unknown kind");
}

BasePoint Fibration::project(const Vec& z) const {
  require(std::abs(z.norm() - 1.0) <= 1e-9, "project: z must be unit");
  require(static_cast<int>(z.size()) == ambient_dim(), "project: wrong dimension");
  if (kind_ == FibKind::octonionic_hopf) return {kind_, n_, embed(z)};
  return {kind_, n_, z};
}

double Fibration::base_distance(const BasePoint& a, const BasePoint& b) const {
  require(a.kind == kind_ && b.kind == kind_, "base_distance: kind mismatch");
  switch (kind_) {
    case FibKind::complex_hopf: {
      Cplx s = 0.0;
      for (int i = 0; i <= n_; ++i) s += std::conj(cx(a.data, i)) * cx(b.data, i);
      return std::acos(clamp_unit(std::abs(s)));
    }
    case FibKind::quaternionic_hopf: {
      Quaternion s{0, 0, 0, 0};
      for (int i = 0; i <= n_; ++i) s = s + qt(a.data, i).conj() * qt(b.data, i);
      return std::acos(clamp_unit(s.norm()));
    }
    case FibKind::octonionic_hopf:
      // base sphere S^8(1/2): half the unit-sphere angle of the h-images
      return 0.5 * std::acos(clamp_unit(a.data.dot(b.data)));
  }
  throw GeometryError("base_distance: unknown kind");
}

double Fibration::fiber_residual(const BasePoint& a, const BasePoint& b) const {
  require(a.kind == kind_ && b.kind == kind_, "fiber_residual: kind mismatch");
  if (kind_ == FibKind::octonionic_hopf) return (a.data - b.data).cwiseAbs().maxCoeff();
  return (embed(a.data) - embed(b.data)).cwiseAbs().maxCoeff();
}

FrameSplit Fibration::split(const Vec& z) const {
  require(std::abs(z.norm() - 1.0) <= 1e-9, "split: z must be unit");
  const int N = ambient_dim();
  require(static_cast<int>(z.size()) == N, "split: wrong dimension");

  Mat T = tangent_basis(z);
  Mat M = embed_jacobian(z) * T;  // m x (N-1)
  Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeFullV);
  const Vec& s = svd.singularValues();
  double smax = s.size() ? s(0) : 0.0;
  double tol = 1e-8 * std::max(1.0, smax);

  int kernel = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) <= tol) ++kernel;
  // columns of V beyond the number of computed singular values are kernel too
  kernel += (N - 1) - static_cast<int>(s.size());
  if (kernel != fiber_dim())
    throw GeometryError("split: Jacobian kernel dimension does not match the fiber dimension");

  FrameSplit out;
  out.z = z;
  const Mat& V = svd.matrixV();
  out.vertical = T * V.rightCols(fiber_dim());
  out.horizontal = T * V.leftCols(N - 1 - fiber_dim());
  return out;
}

Vec Fibration::fiber_point(const BasePoint& x) const {
  require(x.kind == kind_, "fiber_point: kind mismatch");
  if (kind_ != FibKind::octonionic_hopf) return x.data;

  // invert h: |b|^2 = (1-t)/2, a = p b / (2 |b|^2) with b chosen real
  Vec p8 = x.data.head(8);
  double t = x.data(8);
  Vec z(16);
  if (t > 1.0 - 1e-12) {
    z.setZero();
    z(0) = 1.0;  // (a, 0) with a = 1
    return z;
  }
  if (t < -1.0 + 1e-12) {
    z.setZero();
    z(8) = 1.0;  // (0, b)
    return z;
  }
  double beta = std::sqrt((1.0 - t) / 2.0);
  Octonion p = Octonion::from_ptr(p8.data());
  Octonion a = p * (1.0 / (2.0 * beta));
  auto arr = a.to_array();
  for (int i = 0; i < 8; ++i) z(i) = arr[i];
  z(8) = beta;
  for (int i = 9; i < 16; ++i) z(i) = 0.0;
  double nrm = z.norm();
  if (std::abs(nrm - 1.0) > 1e-9) z /= nrm;
  if ((embed(z) - x.data).cwiseAbs().maxCoeff() > 1e-9)
    throw GeometryError("fiber_point: reconstruction failed");
  return z;
}

Vec Fibration::random_fiber_point(const Vec& z, Rng& rng) const {
  FrameSplit sp = split(z);
  Vec v = sp.vertical * rng.unit_vector(fiber_dim());
  double th = rng.uniform(0.0, 2.0 * kPi);
  Vec out = std::cos(th) * z + std::sin(th) * v;
  out.normalize();
  if (base_distance(project(out), project(z)) > 1e-6)
    throw GeometryError("random_fiber_point: vertical geodesic left the fiber");
  return out;
}

Vec Fibration::apply_complex_structure(const Vec& v) const {
  require(kind_ == FibKind::complex_hopf, "apply_complex_structure: complex kind only");
  Vec out(v.size());
  for (int k = 0; 2 * k < v.size(); ++k) {
    out(2 * k) = -v(2 * k + 1);
    out(2 * k + 1) = v(2 * k);
  }
  return out;
}

// ---------------------------------------------------------------------------

TensorBatch::TensorBatch(const Fibration& f, const Vec& z, const Vec& direction, double h)
    : dir_(direction), h_(h) {
  require(std::abs(direction.norm() - 1.0) <= 1e-8, "TensorBatch: direction must be unit");
  require(std::abs(z.dot(direction)) <= 1e-8, "TensorBatch: direction must be tangent");
  sp_ = f.split(z);
  Vec zp = (std::cos(h) * z + std::sin(h) * direction).normalized();
  Vec zm = (std::cos(h) * z - std::sin(h) * direction).normalized();
  sp_plus_ = f.split(zp);
  sp_minus_ = f.split(zm);
}

Vec TensorBatch::extension_derivative(const Vec& e, bool horizontal_bundle) const {
  Vec fp = horizontal_bundle ? sp_plus_.horiz_part(e) : sp_plus_.vert_part(e);
  Vec fm = horizontal_bundle ? sp_minus_.horiz_part(e) : sp_minus_.vert_part(e);
  Vec d = (fp - fm) / (2.0 * h_);
  return sp_.tangent_part(d);
}

namespace {

enum class ArgType { horizontal, vertical };

ArgType classify(const FrameSplit& sp, const Vec& e, const char* who) {
  double n = e.norm();
  require(n > 1e-12, std::string(who) + ": zero argument");
  double zc = std::abs(sp.z.dot(e)) / n;
  require(zc <= 1e-7, std::string(who) + ": argument is not tangent");
  double v = sp.vert_part(e).norm() / n;
  double h = sp.horiz_part(e).norm() / n;
  if (v <= 1e-7) return ArgType::horizontal;
  if (h <= 1e-7) return ArgType::vertical;
  throw InvalidInput(std::string(who) + ": argument is neither horizontal nor vertical");
}

}  // namespace

Vec a_tensor(const Fibration& f, const Vec& z, const Vec& x, const Vec& e, double h) {
  TensorBatch batch(f, z, x, h);
  require(batch.split().vert_part(x).norm() <= 1e-8, "a_tensor: X must be horizontal");
  ArgType t = classify(batch.split(), e, "a_tensor");
  if (t == ArgType::horizontal)
    return batch.split().vert_part(batch.extension_derivative(e, true));
  return batch.split().horiz_part(batch.extension_derivative(e, false));
}

Vec t_tensor(const Fibration& f, const Vec& z, const Vec& v, const Vec& e, double h) {
  TensorBatch batch(f, z, v, h);
  require(batch.split().horiz_part(v).norm() <= 1e-8, "t_tensor: V must be vertical");
  ArgType t = classify(batch.split(), e, "t_tensor");
  if (t == ArgType::vertical)
    return batch.split().horiz_part(batch.extension_derivative(e, false));
  return batch.split().vert_part(batch.extension_derivative(e, true));
}

double oneill_base_curvature(const Fibration& f, const Vec& z, const Vec& x, const Vec& y) {
  require(std::abs(x.norm() - 1.0) <= 1e-8 && std::abs(y.norm() - 1.0) <= 1e-8,
          "oneill_base_curvature: arguments must be unit");
  require(std::abs(x.dot(y)) <= 1e-8, "oneill_base_curvature: arguments must be orthogonal");
  Vec axy = a_tensor(f, z, x, y);
  return 1.0 + 3.0 * axy.squaredNorm();
}

double vertizontal_check(const Fibration& f, const Vec& z, const Vec& x, const Vec& v) {
  require(std::abs(x.norm() - 1.0) <= 1e-8, "vertizontal_check: X must be unit");
  require(std::abs(v.norm() - 1.0) <= 1e-8, "vertizontal_check: V must be unit");
  Vec axv = a_tensor(f, z, x, v);
  return std::abs(1.0 - axv.squaredNorm());
}

BijectivityReport bijectivity_check(const Fibration& f, const Vec& z, const Vec& x) {
  TensorBatch batch(f, z, x);
  const FrameSplit& sp = batch.split();
  require(sp.vert_part(x).norm() <= 1e-8, "bijectivity_check: X must be horizontal");
  const int fd = f.fiber_dim();

  Mat cols(f.ambient_dim(), fd);
  for (int i = 0; i < fd; ++i)
    cols.col(i) = sp.horiz_part(batch.extension_derivative(sp.vertical.col(i), false));

  Eigen::JacobiSVD<Mat> svd(cols, Eigen::ComputeFullV | Eigen::ComputeThinU);
  BijectivityReport rep;
  rep.singular_values = svd.singularValues();
  rep.min_sv = rep.singular_values.minCoeff();
  rep.max_sv = rep.singular_values.maxCoeff();
  rep.adapted_vertical = sp.vertical * svd.matrixV();
  Mat images = cols * svd.matrixV();  // columns A_X u_i = lambda_i y_i
  rep.adapted_horizontal = Mat(f.ambient_dim(), fd);
  for (int i = 0; i < fd; ++i) {
    double s = rep.singular_values(i);
    rep.adapted_horizontal.col(i) = s > 1e-12 ? Vec(images.col(i) / s) : Vec(images.col(i));
  }
  rep.pair_orthogonality = 0.0;
  for (int i = 0; i < fd; ++i)
    for (int j = i + 1; j < fd; ++j)
      rep.pair_orthogonality =
          std::max(rep.pair_orthogonality, std::abs(images.col(i).dot(images.col(j))));
  return rep;
}

AppendixReport appendix_structure_check(const Fibration& f, const Vec& z, const Vec& x,
                                        Rng& rng, int random_bases) {
  TensorBatch batch(f, z, x);
  const FrameSplit& sp = batch.split();
  require(sp.vert_part(x).norm() <= 1e-8, "appendix_structure_check: X must be horizontal");
  const int fd = f.fiber_dim();
  const int N = f.ambient_dim();

  auto a_of_vertical = [&](const Vec& v) {
    return Vec(sp.horiz_part(batch.extension_derivative(v, false)));
  };
  auto a_of_horizontal = [&](const Vec& y) {
    return Vec(sp.vert_part(batch.extension_derivative(y, true)));
  };

  AppendixReport rep;
  BijectivityReport bij = bijectivity_check(f, z, x);
  rep.lambdas = bij.singular_values;

  // Prop 5.1 pairing: A_X y_i = -lambda_i u_i
  rep.pairing_residual = 0.0;
  for (int i = 0; i < fd; ++i) {
    Vec ay = a_of_horizontal(bij.adapted_horizontal.col(i));
    Vec resid = ay + rep.lambdas(i) * bij.adapted_vertical.col(i);
    rep.pairing_residual = std::max(rep.pairing_residual, resid.norm());
  }

  // alternation <A_X y, v> = -<y, A_X v> on random arguments
  rep.skew_residual = 0.0;
  for (int t = 0; t < 16; ++t) {
    Vec y = sp.horizontal * rng.unit_vector(static_cast<int>(sp.horizontal.cols()));
    Vec v = sp.vertical * rng.unit_vector(fd);
    double lhs = a_of_horizontal(y).dot(v);
    double rhs = y.dot(a_of_vertical(v));
    rep.skew_residual = std::max(rep.skew_residual, std::abs(lhs + rhs));
  }

  // Eq 5.5: sum ||A_X V_i||^2 is basis independent
  auto basis_sum = [&](const Mat& basis) {
    double s = 0.0;
    for (int i = 0; i < basis.cols(); ++i) s += a_of_vertical(basis.col(i)).squaredNorm();
    return s;
  };
  rep.basis_sum_value = basis_sum(sp.vertical);
  rep.basis_sum_spread = 0.0;
  for (int b = 0; b < random_bases; ++b) {
    Mat o = rng.random_orthogonal(fd);
    double s = basis_sum(sp.vertical * o);
    rep.basis_sum_spread = std::max(rep.basis_sum_spread, std::abs(s - rep.basis_sum_value));
  }

  // Eq 5.4: the horizontal-frame sum matches the adapted-basis sum
  {
    // orthonormal basis of H intersect X-perp
    Mat hb = sp.horizontal;
    Mat frame(N, hb.cols() - 1);
    int c = 0;
    for (int i = 0; i < hb.cols() && c < frame.cols(); ++i) {
      Vec w = hb.col(i) - x * x.dot(hb.col(i));
      for (int j = 0; j < c; ++j) w -= frame.col(j) * frame.col(j).dot(w);
      double nw = w.norm();
      if (nw > 1e-8) frame.col(c++) = w / nw;
    }
    require(c == frame.cols(), "appendix_structure_check: frame construction failed");
    rep.horizontal_frame_sum = 0.0;
    for (int i = 0; i < frame.cols(); ++i)
      rep.horizontal_frame_sum += a_of_horizontal(frame.col(i)).squaredNorm();
  }

  // greedy route (the paper's construction); SVD is the oracle
  {
    rep.greedy_lambdas = Vec(fd);
    Mat remaining = sp.vertical;
    for (int pick = 0; pick < fd; ++pick) {
      const int k = static_cast<int>(remaining.cols());
      Vec best_c;
      double best_val = -1.0;
      for (int restart = 0; restart < 3; ++restart) {
        Vec c = rng.unit_vector(k);
        double val = a_of_vertical(remaining * c).norm();
        double step = 0.5;
        for (int it = 0; it < 60 && step > 1e-7; ++it) {
          // finite-difference gradient in frame coordinates
          Vec grad(k);
          for (int j = 0; j < k; ++j) {
            Vec cp = c;
            cp(j) += 1e-5;
            cp.normalize();
            grad(j) = (a_of_vertical(remaining * cp).norm() - val) / 1e-5;
          }
          Vec cand = (c + step * grad).normalized();
          double vc = a_of_vertical(remaining * cand).norm();
          if (vc > val + 1e-14) {
            c = cand;
            val = vc;
          } else {
            step *= 0.5;
          }
        }
        if (val > best_val) {
          best_val = val;
          best_c = c;
        }
      }
      rep.greedy_lambdas(pick) = best_val;
      if (k > 1) {
        // deflate: orthonormal complement of the chosen direction
        Vec u = remaining * best_c;
        Mat next(N, k - 1);
        int c2 = 0;
        for (int i = 0; i < k && c2 < k - 1; ++i) {
          Vec w = remaining.col(i) - u * u.dot(remaining.col(i));
          for (int j = 0; j < c2; ++j) w -= next.col(j) * next.col(j).dot(w);
          double nw = w.norm();
          if (nw > 1e-8) next.col(c2++) = w / nw;
        }
        require(c2 == k - 1, "appendix_structure_check: deflation failed");
        remaining = next;
      }
    }
    std::sort(rep.greedy_lambdas.data(), rep.greedy_lambdas.data() + fd,
              std::greater<double>());
  }
  return rep;
}

// ---------------------------------------------------------------------------

BaseGeodesic make_base_geodesic(const Fibration& f, const Vec& z0, Rng& rng, double length) {
  FrameSplit sp = f.split(z0);
  Vec u0 = sp.horizontal * rng.unit_vector(static_cast<int>(sp.horizontal.cols()));
  return {z0, u0, length};
}

LiftedGeodesic horizontal_lift(const Fibration& f, const BaseGeodesic& gamma, double s,
                               const Vec& z) {
  BasePoint over = f.project(gamma.lift_at(s).normalized());
  if (f.base_distance(f.project(z), over) > 1e-8)
    throw InvalidInput("horizontal_lift: z is not over gamma(s)");

  Vec ref = gamma.lift_at(s);
  Vec rhs = f.embed_jacobian(ref) * gamma.lift_velocity(s);
  FrameSplit sp = f.split(z);
  Mat m = f.embed_jacobian(z) * sp.horizontal;
  Vec coords = m.colPivHouseholderQr().solve(rhs);
  Vec u = sp.horizontal * coords;
  if ((m * coords - rhs).norm() > 1e-6 * std::max(1.0, rhs.norm()))
    throw GeometryError("horizontal_lift: velocity matching failed");
  double un = u.norm();
  if (std::abs(un - 1.0) > 1e-6)
    throw GeometryError("horizontal_lift: lifted velocity is not unit");
  return {z, u / un, s};
}

Vec holonomy(const Fibration& f, const BaseGeodesic& gamma, double s, double t, const Vec& z) {
  return horizontal_lift(f, gamma, s, z).at_base_time(t);
}

Vec ode_lift_rk4(const Fibration& f, const BaseGeodesic& gamma, double s, double t,
                 const Vec& z, int steps) {
  require(steps >= 1, "ode_lift_rk4: steps >= 1");
  auto hvel = [&](double tau, const Vec& y) {
    Vec yn = y.normalized();
    Vec rhs = f.embed_jacobian(gamma.lift_at(tau)) * gamma.lift_velocity(tau);
    FrameSplit sp = f.split(yn);
    Mat m = f.embed_jacobian(yn) * sp.horizontal;
    Vec coords = m.colPivHouseholderQr().solve(rhs);
    return Vec(sp.horizontal * coords);
  };
  Vec y = z;
  double h = (t - s) / steps;
  for (int k = 0; k < steps; ++k) {
    double tau = s + k * h;
    Vec k1 = hvel(tau, y);
    Vec k2 = hvel(tau + h / 2, y + (h / 2) * k1);
    Vec k3 = hvel(tau + h / 2, y + (h / 2) * k2);
    Vec k4 = hvel(tau + h, y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    y.normalize();
  }
  return y;
}

BasePoint dual_point(const Fibration& f, const BasePoint& x) {
  Vec z = f.fiber_point(x);
  FrameSplit sp = f.split(z);
  Vec endpoint = sp.horizontal.col(0);  // cos(pi/2) z + sin(pi/2) u
  BasePoint a = f.project(endpoint);
  if (std::abs(f.base_distance(x, a) - kPi / 2.0) > 1e-6)
    throw GeometryError("dual_point: endpoint is not at distance pi/2");
  return a;
}

double good_point_t_norm(const Fibration& f, const BasePoint& x, Rng& rng, int samples) {
  Vec z0 = f.fiber_point(x);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    Vec zs = (s == 0) ? z0 : f.random_fiber_point(z0, rng);
    FrameSplit sp = f.split(zs);
    Vec v = sp.vertical * rng.unit_vector(f.fiber_dim());
    Vec e = sp.vertical * rng.unit_vector(f.fiber_dim());
    TensorBatch batch(f, zs, v);
    Vec tv = sp.horiz_part(batch.extension_derivative(e, false));
    worst = std::max(worst, tv.norm());
  }
  return worst;
}

bool is_good_point(const Fibration& f, const BasePoint& x, Rng& rng, int samples, double tol) {
  return good_point_t_norm(f, x, rng, samples) <= tol;
}

double wiedersehen_spread(const Fibration& f, const BasePoint& x, int count, Rng& rng) {
  Vec z0 = f.fiber_point(x);
  std::vector<BasePoint> ends;
  for (int i = 0; i < count; ++i) {
    Vec z = (i == 0) ? z0 : f.random_fiber_point(z0, rng);
    FrameSplit sp = f.split(z);
    Vec u = sp.horizontal * rng.unit_vector(static_cast<int>(sp.horizontal.cols()));
    ends.push_back(f.project(u));  // time-pi/2 endpoint of the lift
  }
  double spread = 0.0;
  for (std::size_t i = 0; i < ends.size(); ++i)
    for (std::size_t j = i + 1; j < ends.size(); ++j)
      spread = std::max(spread, f.base_distance(ends[i], ends[j]));
  return spread;
}

double halfway_distance_residual(const Fibration& f, const BasePoint& x, int count, Rng& rng) {
  Vec z0 = f.fiber_point(x);
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    Vec z = (i == 0) ? z0 : f.random_fiber_point(z0, rng);
    FrameSplit sp = f.split(z);
    Vec u = sp.horizontal * rng.unit_vector(static_cast<int>(sp.horizontal.cols()));
    worst = std::max(worst, std::abs(f.base_distance(x, f.project(u)) - kPi / 2.0));
  }
  return worst;
}

// ---------------------------------------------------------------------------

namespace {

struct ProjectorPath {
  const Fibration* f;
  const BaseGeodesic* gamma;

  // vertical projector and "horizontal minus flow direction" projector at t
  void projectors(double t, Mat& pv, Mat& pe) const {
    Vec z = gamma->lift_at(t).normalized();
    FrameSplit sp = f->split(z);
    pv = sp.vertical * sp.vertical.transpose();
    Vec xd = gamma->lift_velocity(t);
    xd -= z * z.dot(xd);
    xd.normalize();
    pe = sp.horizontal * sp.horizontal.transpose() - xd * xd.transpose();
  }

  void derivative(double t, double dh, Mat& pv_dot, Mat& pe_dot) const {
    Mat pvp, pep, pvm, pem;
    projectors(t + dh, pvp, pep);
    projectors(t - dh, pvm, pem);
    pv_dot = (pvp - pvm) / (2.0 * dh);
    pe_dot = (pep - pem) / (2.0 * dh);
  }
};

Mat align_and_orthonormalize(const Mat& projected, const Mat& previous) {
  Mat q = orthonormalize_cols(projected);
  // keep column signs continuous with the previous frame
  for (int i = 0; i < q.cols(); ++i)
    if (q.col(i).dot(previous.col(i)) < 0) q.col(i) = -q.col(i);
  return q;
}

}  // namespace

LiftFrames transport_frames(const Fibration& f, const BaseGeodesic& gamma, int steps) {
  require(steps >= 16, "transport_frames: steps >= 16");
  const int N = f.ambient_dim();
  const double h = gamma.length / steps;
  const double dh = 1e-5;
  ProjectorPath path{&f, &gamma};

  LiftFrames out;
  out.step = h;
  out.z.reserve(steps + 1);
  out.xdot.reserve(steps + 1);

  // initial frames
  FrameSplit sp0 = f.split(gamma.z0);
  Mat vert = sp0.vertical;
  Mat horiz(N, f.horizontal_dim() - 1);
  {
    int c = 0;
    for (int i = 0; i < sp0.horizontal.cols() && c < horiz.cols(); ++i) {
      Vec w = sp0.horizontal.col(i) - gamma.u0 * gamma.u0.dot(sp0.horizontal.col(i));
      for (int j = 0; j < c; ++j) w -= horiz.col(j) * horiz.col(j).dot(w);
      double nw = w.norm();
      if (nw > 1e-8) horiz.col(c++) = w / nw;
    }
    require(c == horiz.cols(), "transport_frames: initial horizontal frame failed");
  }

  auto store = [&](double t, const Mat& hframe, const Mat& vframe) {
    Vec z = gamma.lift_at(t).normalized();
    Vec xd = gamma.lift_velocity(t);
    xd -= z * z.dot(xd);
    xd.normalize();
    out.z.push_back(z);
    out.xdot.push_back(xd);
    out.horizontal.push_back(hframe);
    out.vertical.push_back(vframe);
  };
  store(0.0, horiz, vert);

  for (int k = 0; k < steps; ++k) {
    double t = k * h;
    // RK4 on Y' = P'(t) Y for both frames, sharing projector evaluations
    Mat pv1, pe1, pv2, pe2, pv3, pe3;
    path.derivative(t, dh, pv1, pe1);
    path.derivative(t + h / 2, dh, pv2, pe2);
    path.derivative(t + h, dh, pv3, pe3);

    auto rk4 = [&](const Mat& y, const Mat& d1, const Mat& d2, const Mat& d3) {
      Mat k1 = d1 * y;
      Mat k2 = d2 * (y + (h / 2) * k1);
      Mat k3 = d2 * (y + (h / 2) * k2);
      Mat k4 = d3 * (y + h * k3);
      return Mat(y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
    };
    Mat vert_next = rk4(vert, pv1, pv2, pv3);
    Mat horiz_next = rk4(horiz, pe1, pe2, pe3);

    // clean: project back onto the subbundles and re-orthonormalize
    Mat pv_end, pe_end;
    path.projectors(t + h, pv_end, pe_end);
    out.max_gram_defect = std::max(
        out.max_gram_defect,
        (vert_next.transpose() * vert_next - Mat::Identity(vert.cols(), vert.cols()))
            .cwiseAbs()
            .maxCoeff());
    Mat vert_proj = pv_end * vert_next;
    Mat horiz_proj = pe_end * horiz_next;
    double gram_det = (horiz_proj.transpose() * horiz_proj).determinant() *
                      (vert_proj.transpose() * vert_proj).determinant();
    if (gram_det < 1e-6) throw FrameError("transport_frames: frame degenerated");
    vert = align_and_orthonormalize(vert_proj, vert_next);
    horiz = align_and_orthonormalize(horiz_proj, horiz_next);
    store(t + h, horiz, vert);
  }

  // condition residuals via a 5-point stencil on the stored samples
  auto stencil_residual = [&](const std::vector<Mat>& frames, bool vertical_bundle) {
    double worst = 0.0;
    for (int k = 2; k + 2 < static_cast<int>(frames.size()); ++k) {
      Mat dot = (frames[k - 2] - 8.0 * frames[k - 1] + 8.0 * frames[k + 1] - frames[k + 2]) /
                (12.0 * h);
      for (int c = 0; c < dot.cols(); ++c) {
        Vec d = dot.col(c);
        d -= out.z[k] * out.z[k].dot(d);  // sphere covariant derivative
        double r;
        if (vertical_bundle) {
          r = (frames[k].transpose() * d).norm();
        } else {
          Vec hpart = d - out.z[k] * out.z[k].dot(d);
          hpart -= out.vertical[k] * (out.vertical[k].transpose() * d);
          r = hpart.norm();
        }
        worst = std::max(worst, r);
      }
    }
    return worst;
  };
  out.vertical_residual = stencil_residual(out.vertical, true);
  out.horizontal_residual = stencil_residual(out.horizontal, false);
  return out;
}

}  // namespace sphereform
