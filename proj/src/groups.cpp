#include "sphereform/groups.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace sphereform {

void check_orthogonal(const Mat& q, double tol) {
  require_finite(q, "check_orthogonal");
  require(q.rows() == q.cols(), "check_orthogonal: matrix not square");
  if (q.rows() == 0) return;  // the empty matrix is vacuously orthogonal
  double ortho = (q.transpose() * q - Mat::Identity(q.rows(), q.cols())).cwiseAbs().maxCoeff();
  if (ortho > tol) throw InvalidInput("matrix is not orthogonal within tolerance");
  double det = q.determinant();
  if (std::abs(std::abs(det) - 1.0) > 100 * tol)
    throw InvalidInput("matrix determinant is not ±1");
}

namespace {

constexpr double kDedupTol = 1e-8;

int find_element(const std::vector<Mat>& els, const Mat& m) {
  const int n = static_cast<int>(m.rows());
  for (int i = 0; i < static_cast<int>(els.size()); ++i) {
    // cheap first-column screen, then full check
    double d0 = (els[i].col(0) - m.col(0)).cwiseAbs().maxCoeff();
    if (d0 > kDedupTol) continue;
    double d = (els[i] - m).cwiseAbs().maxCoeff();
    if (d <= kDedupTol * std::sqrt(static_cast<double>(n))) return i;
  }
  return -1;
}

}  // namespace

FiniteMatrixGroup close_group(const std::vector<Mat>& generators, int max_order) {
  require(!generators.empty(), "close_group: no generators");
  require(max_order >= 1, "close_group: max_order >= 1");
  const int n = static_cast<int>(generators[0].rows());
  for (const Mat& g : generators) {
    require(g.rows() == n && g.cols() == n, "close_group: generator size mismatch");
    check_orthogonal(g, 1e-8);
  }

  FiniteMatrixGroup grp;
  grp.elements.push_back(Mat::Identity(n, n));
  grp.word_parent.push_back(-1);
  grp.word_gen.push_back(-1);

  // BFS closure: new = current * generator
  for (std::size_t head = 0; head < grp.elements.size(); ++head) {
    for (int gi = 0; gi < static_cast<int>(generators.size()); ++gi) {
      Mat prod = grp.elements[head] * generators[gi];
      if (find_element(grp.elements, prod) >= 0) continue;
      if (static_cast<int>(grp.elements.size()) >= max_order)
        throw GroupTooLarge("close_group: closure exceeds max_order");
      grp.elements.push_back(std::move(prod));
      grp.word_parent.push_back(static_cast<int>(head));
      grp.word_gen.push_back(gi);
    }
  }

  for (const Mat& g : generators) {
    int idx = find_element(grp.elements, g);
    grp.generator_indices.push_back(idx);
  }

  const int order = grp.order();
  grp.mul_table.assign(order, std::vector<int>(order, -1));
  for (int i = 0; i < order; ++i) {
    for (int j = 0; j < order; ++j) {
      int k = find_element(grp.elements, grp.elements[i] * grp.elements[j]);
      if (k < 0) throw GeometryError("close_group: multiplication left the closure");
      grp.mul_table[i][j] = k;
    }
  }

  grp.inverse_index.assign(order, -1);
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j)
      if (grp.mul_table[i][j] == 0) grp.inverse_index[i] = j;

  return grp;
}

GroupPtr close_group_ptr(const std::vector<Mat>& generators, int max_order) {
  return std::make_shared<FiniteMatrixGroup>(close_group(generators, max_order));
}

void FiniteMatrixGroup::validate(Rng& rng) const {
  const int n = order();
  require(n >= 1, "group: empty");
  require((elements[0] - Mat::Identity(degree(), degree())).cwiseAbs().maxCoeff() <= 1e-10,
          "group: identity not at index 0");
  std::vector<char> seen(n);
  for (int i = 0; i < n; ++i) {
    require(inverse_index[i] >= 0, "group: missing inverse");
    // left multiplication permutes the element list
    std::fill(seen.begin(), seen.end(), 0);
    for (int j = 0; j < n; ++j) {
      int k = mul_table[i][j];
      require(k >= 0 && k < n && !seen[k], "group: row is not a permutation");
      seen[k] = 1;
    }
  }
  int triples = std::min(256, n * n);
  for (int t = 0; t < triples; ++t) {
    int i = static_cast<int>(rng.next_u64() % n);
    int j = static_cast<int>(rng.next_u64() % n);
    int k = static_cast<int>(rng.next_u64() % n);
    require(mul_table[mul_table[i][j]][k] == mul_table[i][mul_table[j][k]],
            "group: associativity violated");
  }
}

bool FiniteMatrixGroup::contains_minus_identity() const {
  const Mat mi = -Mat::Identity(degree(), degree());
  for (const Mat& g : elements)
    if ((g - mi).cwiseAbs().maxCoeff() <= 1e-10) return true;
  return false;
}

bool is_fixed_point_free(const FiniteMatrixGroup& g, double tol) {
  const Mat id = Mat::Identity(g.degree(), g.degree());
  for (int i = 1; i < g.order(); ++i) {
    Eigen::JacobiSVD<Mat> svd(g.elements[i] - id);
    double smin = svd.singularValues()(svd.singularValues().size() - 1);
    if (smin <= tol) return false;
  }
  return true;
}

long multiplicative_order(long r, long m) {
  require(m >= 2 && r >= 1, "multiplicative_order: need m >= 2, r >= 1");
  if (std::gcd(r % m, m) != 1)
    throw InvalidParams("multiplicative_order: r is not invertible mod m");
  long acc = r % m;
  for (long j = 1; j <= m; ++j) {
    if (acc == 1) return j;
    acc = (acc * (r % m)) % m;
  }
  throw InvalidParams("multiplicative_order: no order found");
}

std::pair<CMat, CMat> type1_generators_complex(const Type1Params& p) {
  require(p.m >= 2 && p.n_prime >= 1 && p.r >= 1 && p.k >= 1 && p.l >= 1 && p.d >= 2,
          "type1_generators: parameters must be positive, d >= 2");
  long ord = multiplicative_order(p.r, p.m);
  if (ord != p.d)
    throw InvalidParams("type1_generators: d must equal the multiplicative order of r mod m");

  const std::complex<double> I(0.0, 1.0);
  CMat A = CMat::Zero(p.d, p.d);
  long rj = 1;
  for (long j = 0; j < p.d; ++j) {
    A(j, j) = std::exp(2.0 * kPi * I * (static_cast<double>(p.k) * rj / p.m));
    rj = (rj * (p.r % p.m)) % p.m;
  }
  CMat B = CMat::Zero(p.d, p.d);
  for (long j = 0; j + 1 < p.d; ++j) B(j, j + 1) = 1.0;
  B(p.d - 1, 0) = std::exp(2.0 * kPi * I * (static_cast<double>(p.l) / p.n_prime));
  return {A, B};
}

std::pair<Mat, Mat> type1_generators(const Type1Params& p) {
  auto [A, B] = type1_generators_complex(p);
  Mat ra = realify(A), rb = realify(B);
  check_orthogonal(ra, 1e-10);
  check_orthogonal(rb, 1e-10);
  return {ra, rb};
}

Mat realify(const CMat& c) {
  Mat r = Mat::Zero(2 * c.rows(), 2 * c.cols());
  for (int i = 0; i < c.rows(); ++i)
    for (int j = 0; j < c.cols(); ++j) {
      double a = c(i, j).real(), b = c(i, j).imag();
      r(2 * i, 2 * j) = a;
      r(2 * i, 2 * j + 1) = -b;
      r(2 * i + 1, 2 * j) = b;
      r(2 * i + 1, 2 * j + 1) = a;
    }
  return r;
}

Vec realify_vector(const CVec& v) {
  Vec r(2 * v.size());
  for (int i = 0; i < v.size(); ++i) {
    r(2 * i) = v(i).real();
    r(2 * i + 1) = v(i).imag();
  }
  return r;
}

WitnessVectors paper_witness_vectors(const Type1Params& p) {
  if (p.d % 2 != 0) throw InvalidParams("paper_witness_vectors: d must be even");
  auto [A, B] = type1_generators_complex(p);
  WitnessVectors w;
  w.u = CVec::Zero(p.d);
  w.v = CVec::Zero(p.d);
  w.u(0) = 1.0;
  w.v(1) = 1.0;

  // g1 = Id, g2 = A, g3 = BA, g4 = ABA, ..., g_{d+1} = (BA)^{d/2}
  w.words.push_back(CMat::Identity(p.d, p.d));
  for (long i = 2; i <= p.d + 1; ++i) {
    const CMat& prev = w.words.back();
    w.words.push_back((i % 2 == 0 ? A : B) * prev);
  }
  CMat ba_pow = CMat::Identity(p.d, p.d);
  for (long i = 0; i < p.d / 2; ++i) ba_pow = B * A * ba_pow;
  if ((w.words.back() - ba_pow).cwiseAbs().maxCoeff() > 1e-10)
    throw GeometryError("paper_witness_vectors: word recursion mismatch");

  w.stacked = Mat::Zero(p.d + 1, 4 * p.d);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (long i = 0; i <= p.d; ++i) {
    CVec gu = w.words[i] * w.u, gv = w.words[i] * w.v;
    CVec stacked(2 * p.d);
    stacked << gu, gv;
    w.stacked.row(i) = inv_sqrt2 * realify_vector(stacked).transpose();
  }
  return w;
}

namespace {
std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}
}  // namespace

std::string group_to_json(const FiniteMatrixGroup& g) {
  nlohmann::json j;
  j["degree"] = g.degree();
  j["order"] = g.order();
  j["generator_indices"] = g.generator_indices;
  nlohmann::json els = nlohmann::json::array();
  for (const Mat& m : g.elements) {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c) rows.push_back(fmt17(m(r, c)));
    els.push_back(rows);
  }
  j["elements_row_major"] = els;
  return j.dump(1);
}

FiniteMatrixGroup group_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  int degree = j.at("degree").get<int>();
  std::vector<Mat> gens;
  // rebuild from the stored generator set so the table/provenance are fresh
  auto els = j.at("elements_row_major");
  std::vector<int> gidx = j.at("generator_indices").get<std::vector<int>>();
  for (int gi : gidx) {
    Mat m(degree, degree);
    const auto& flat = els.at(gi);
    for (int r = 0; r < degree; ++r)
      for (int c = 0; c < degree; ++c)
        m(r, c) = std::stod(flat.at(r * degree + c).get<std::string>());
    gens.push_back(m);
  }
  int order = j.at("order").get<int>();
  FiniteMatrixGroup g = close_group(gens, std::max(order, 1));
  if (g.order() != order)
    throw InvalidInput("group_from_json: closure order does not match stored order");
  return g;
}

void save_group(const FiniteMatrixGroup& g, const std::string& path) {
  std::ofstream out(path);
  require(out.good(), "save_group: cannot open " + path);
  out << group_to_json(g);
}

FiniteMatrixGroup load_group(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "load_group: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return group_from_json(ss.str());
}

}  // namespace sphereform
