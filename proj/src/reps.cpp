#include "sphereform/reps.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace sphereform {

Representation Representation::defining(GroupPtr g) {
  Representation r;
  r.group = std::move(g);
  r.matrices = r.group->elements;
  return r;
}

Representation Representation::from_generator_images(GroupPtr g,
                                                     const std::vector<Mat>& images) {
  require(g != nullptr, "from_generator_images: null group");
  require(images.size() == g->generator_indices.size(),
          "from_generator_images: one image per generator required");
  for (const Mat& m : images) check_orthogonal(m, 1e-8);

  Representation r;
  r.group = std::move(g);
  const int order = r.group->order();
  const int deg = static_cast<int>(images.empty() ? 0 : images[0].rows());
  r.matrices.assign(order, Mat());
  r.matrices[0] = Mat::Identity(deg, deg);
  // elements are stored in BFS order: element[i] = element[parent] * gen
  for (int i = 1; i < order; ++i) {
    int p = r.group->word_parent[i];
    int gi = r.group->word_gen[i];
    r.matrices[i] = r.matrices[p] * images[gi];
  }
  r.validate(1e-9);
  return r;
}

void Representation::validate(double tol) const {
  require(group != nullptr, "representation: null group");
  const int order = group->order();
  require(static_cast<int>(matrices.size()) == order, "representation: size mismatch");
  const int deg = degree();
  if (deg > 0)
    require((matrices[0] - Mat::Identity(deg, deg)).cwiseAbs().maxCoeff() <= tol,
            "representation: identity image is not I");
  for (const Mat& m : matrices) check_orthogonal(m, 1e-8);
  // homomorphism on the full table for small groups, sampled above
  auto check = [&](int i, int j) {
    double resid = (matrices[i] * matrices[j] - matrices[group->mul(i, j)]).cwiseAbs().maxCoeff();
    if (resid > tol) throw InvalidInput("representation: homomorphism residual too large");
  };
  if (order <= 128) {
    for (int i = 0; i < order; ++i)
      for (int j = 0; j < order; ++j) check(i, j);
  } else {
    Rng rng(0x5eedu + order);
    for (int t = 0; t < 4096; ++t)
      check(static_cast<int>(rng.next_u64() % order), static_cast<int>(rng.next_u64() % order));
  }
}

Representation restrict_to(const Representation& rep, const Mat& basis) {
  Representation r;
  r.group = rep.group;
  r.matrices.reserve(rep.matrices.size());
  for (const Mat& m : rep.matrices) r.matrices.push_back(basis.transpose() * m * basis);
  return r;
}

namespace {

// average of rho(g) M rho(g)^T over the group, restricted to a subspace
Mat averaged_symmetric(const Representation& rep, const Mat& basis, Rng& rng) {
  const int k = static_cast<int>(basis.cols());
  Mat m = rng.symmetric_gaussian(k);
  Mat acc = Mat::Zero(k, k);
  for (const Mat& g : rep.matrices) {
    Mat gb = basis.transpose() * g * basis;  // restricted action
    acc += gb * m * gb.transpose();
  }
  acc /= static_cast<double>(rep.matrices.size());
  return 0.5 * (acc + acc.transpose());
}

double deviation_from_scalar(const Mat& s) {
  const int k = static_cast<int>(s.rows());
  double mean = s.trace() / k;
  return (s - mean * Mat::Identity(k, k)).cwiseAbs().maxCoeff();
}

Mat orthonormalize(const Mat& b) {
  Eigen::HouseholderQR<Mat> qr(b);
  Mat q = qr.householderQ();
  return q.leftCols(b.cols());
}

void check_invariant(const Representation& rep, const Mat& basis, double tol) {
  for (const Mat& g : rep.matrices) {
    Mat gb = g * basis;
    Mat resid = gb - basis * (basis.transpose() * gb);
    if (resid.cwiseAbs().maxCoeff() > tol)
      throw DecompositionUnstable("decompose: produced a non-invariant subspace");
  }
}

void decompose_rec(const Representation& rep, const Mat& basis, Rng& rng,
                   const DecomposeOptions& opts, std::vector<InvariantSubspace>& out) {
  const int k = static_cast<int>(basis.cols());
  if (k == 0) return;
  if (k == 1) {
    check_invariant(rep, basis, opts.invariance_tol);
    out.push_back({basis, true});
    return;
  }

  for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
    int scalar_streak = 0;
    for (int trial = 0; trial < opts.irreducibility_trials; ++trial) {
      Mat s = averaged_symmetric(rep, basis, rng);
      double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
      if (deviation_from_scalar(s) <= opts.scalar_tol * scale) {
        ++scalar_streak;
        continue;
      }
      // non-scalar average: split along eigenvalue clusters
      Eigen::SelfAdjointEigenSolver<Mat> eig(s);
      Vec ev = eig.eigenvalues();
      double ev_scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
      double split_gap = 1e-6 * ev_scale;
      double merge_gap = 1e-8 * ev_scale;
      std::vector<int> cuts;  // cluster boundary after index i
      bool ambiguous = false;
      for (int i = 0; i + 1 < k; ++i) {
        double gap = ev(i + 1) - ev(i);
        if (gap > split_gap)
          cuts.push_back(i);
        else if (gap > merge_gap)
          ambiguous = true;  // spacing in the unsafe band: retry with fresh randomness
      }
      if (cuts.empty() || ambiguous) break;  // fresh attempt
      int lo = 0;
      cuts.push_back(k - 1);
      for (int cut : cuts) {
        Mat sub = orthonormalize(basis * eig.eigenvectors().middleCols(lo, cut - lo + 1));
        decompose_rec(rep, sub, rng, opts, out);
        lo = cut + 1;
      }
      return;
    }
    if (scalar_streak == opts.irreducibility_trials) {
      check_invariant(rep, basis, opts.invariance_tol);
      out.push_back({basis, true});
      return;
    }
  }
  throw DecompositionUnstable("decompose: eigenvalue spacing stayed ambiguous");
}

}  // namespace

std::vector<InvariantSubspace> decompose(const Representation& rep, Rng& rng,
                                         const DecomposeOptions& opts) {
  rep.validate();
  std::vector<InvariantSubspace> out;
  decompose_rec(rep, Mat::Identity(rep.degree(), rep.degree()), rng, opts, out);
  int total = 0;
  for (const auto& s : out) total += s.dim();
  if (total != rep.degree())
    throw DecompositionUnstable("decompose: subspace dimensions do not sum to the degree");
  return out;
}

bool are_equivalent(const Representation& a, const Representation& b, Rng& rng, int trials) {
  if (a.degree() != b.degree()) return false;
  require(a.group != nullptr && b.group != nullptr, "are_equivalent: null group");
  require(a.group->order() == b.group->order() &&
              a.group->mul_table == b.group->mul_table,
          "are_equivalent: representations of different groups");
  const int deg = a.degree();
  const int order = a.order();
  for (int t = 0; t < trials; ++t) {
    Mat m = rng.gaussian_matrix(deg, deg);
    Mat acc = Mat::Zero(deg, deg);
    for (int i = 0; i < order; ++i) acc += b.at(i) * m * a.at(i).transpose();
    acc /= static_cast<double>(order);
    double tnorm = acc.norm();
    if (tnorm <= 1e-6 * m.norm()) continue;
    // verify the intertwining residual on the generators
    Mat tn = acc / tnorm;
    double resid = 0.0;
    for (int gi : a.group->generator_indices)
      resid = std::max(resid, (tn * a.at(gi) - b.at(gi) * tn).cwiseAbs().maxCoeff());
    if (resid <= 1e-8) return true;
  }
  return false;
}

Representation direct_sum(const Representation& a, const Representation& b) {
  require(a.group != nullptr && b.group != nullptr, "direct_sum: null group");
  if (a.group != b.group &&
      !(a.group->order() == b.group->order() && a.group->mul_table == b.group->mul_table))
    throw InvalidInput("direct_sum: group mismatch");
  Representation r;
  r.group = a.group;
  const int da = a.degree(), db = b.degree();
  r.matrices.reserve(a.matrices.size());
  for (std::size_t i = 0; i < a.matrices.size(); ++i) {
    Mat m = Mat::Zero(da + db, da + db);
    m.topLeftCorner(da, da) = a.matrices[i];
    m.bottomRightCorner(db, db) = b.matrices[i];
    r.matrices.push_back(std::move(m));
  }
  return r;
}

bool is_fixed_point_free(const Representation& rep, double tol) {
  const Mat id = Mat::Identity(rep.degree(), rep.degree());
  for (std::size_t i = 1; i < rep.matrices.size(); ++i) {
    Eigen::JacobiSVD<Mat> svd(rep.matrices[i] - id);
    if (svd.singularValues()(svd.singularValues().size() - 1) <= tol) return false;
  }
  return true;
}

MultiplicityProfile multiplicity_profile(const Representation& rep, Rng& rng) {
  MultiplicityProfile prof;
  prof.blocks = decompose(rep, rng);
  const int nb = static_cast<int>(prof.blocks.size());
  prof.class_of_block.assign(nb, -1);

  std::vector<Representation> restricted;
  restricted.reserve(nb);
  for (const auto& b : prof.blocks) restricted.push_back(restrict_to(rep, b.basis));

  int next_class = 0;
  for (int i = 0; i < nb; ++i) {
    if (prof.class_of_block[i] >= 0) continue;
    prof.class_of_block[i] = next_class;
    for (int j = i + 1; j < nb; ++j) {
      if (prof.class_of_block[j] >= 0) continue;
      if (are_equivalent(restricted[i], restricted[j], rng))
        prof.class_of_block[j] = next_class;
    }
    ++next_class;
  }
  for (int c = 0; c < next_class; ++c) {
    int count = 0;
    for (int i = 0; i < nb; ++i)
      if (prof.class_of_block[i] == c) ++count;
    prof.classes.emplace_back(c, count);
  }
  if (is_fixed_point_free(*rep.group)) {
    for (int i = 1; i < nb; ++i)
      if (prof.blocks[i].dim() != prof.blocks[0].dim()) prof.equal_dims = false;
  }
  return prof;
}

}  // namespace sphereform
