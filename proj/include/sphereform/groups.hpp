#pragma once
// Finite orthogonal matrix groups: closure from generators, fixed-point-free
// test, and the "type 1" generator pairs (complex diagonal + twisted shift).

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "sphereform/common.hpp"

namespace sphereform {

// Validates Q^T Q = I and det = ±1 within tolerance; throws InvalidInput.
void check_orthogonal(const Mat& q, double tol = 1e-8);

struct FiniteMatrixGroup {
  std::vector<Mat> elements;                 // elements[0] = identity
  std::vector<std::vector<int>> mul_table;   // mul_table[i][j] = index of elements[i]*elements[j]
  std::vector<int> generator_indices;
  std::vector<int> inverse_index;
  // BFS provenance: elements[i] = elements[word_parent[i]] * generator[word_gen[i]]
  std::vector<int> word_parent, word_gen;

  int order() const { return static_cast<int>(elements.size()); }
  int degree() const { return elements.empty() ? 0 : static_cast<int>(elements[0].rows()); }

  int mul(int i, int j) const { return mul_table[i][j]; }

  // invariant audit: identity at 0, table total, rows/cols are permutations,
  // inverses present, associativity on sampled triples
  void validate(Rng& rng) const;

  bool contains_minus_identity() const;
};

using GroupPtr = std::shared_ptr<const FiniteMatrixGroup>;

// Breadth-first closure under multiplication with deduplication at Frobenius
// distance 1e-8. Throws GroupTooLarge past max_order.
FiniteMatrixGroup close_group(const std::vector<Mat>& generators, int max_order = 1024);

GroupPtr close_group_ptr(const std::vector<Mat>& generators, int max_order = 1024);

// True iff no non-identity element has an eigenvalue within 1e-8 of +1.
// Orthogonal matrices are normal, so the singular values of g - I are the
// distances |lambda_i - 1|.
bool is_fixed_point_free(const FiniteMatrixGroup& g, double tol = 1e-8);

struct Type1Params {
  long m = 0, n_prime = 0, r = 0, k = 0, l = 0, d = 0;
};

// order of r mod m (throws InvalidParams if gcd(r, m) != 1)
long multiplicative_order(long r, long m);

// A = diag(e^{2πi k r^j / m}), j = 0..d-1; B = shift with corner e^{2πi l/n'}.
std::pair<CMat, CMat> type1_generators_complex(const Type1Params& p);

// Realified 2d x 2d orthogonal pair.
std::pair<Mat, Mat> type1_generators(const Type1Params& p);

// a+bi -> [[a,-b],[b,a]] blocks; realify(XY) = realify(X) realify(Y).
Mat realify(const CMat& c);
Vec realify_vector(const CVec& v);

struct WitnessVectors {
  CVec u, v;                       // u = e1, v = e2 in C^d
  std::vector<CMat> words;         // Id, A, BA, ABA, ..., (BA)^{d/2}
  Mat stacked;                     // (d+1) realified rows (g_i u, g_i v)/sqrt(2) in R^{4d}
};

// The §4 witness data: words g_1..g_{d+1} alternating in A and B applied to
// u = e1, v = e2. Requires d even (InvalidParams otherwise).
WitnessVectors paper_witness_vectors(const Type1Params& p);

// JSON round trip (matrix entries row-major, 17 significant digits).
std::string group_to_json(const FiniteMatrixGroup& g);
FiniteMatrixGroup group_from_json(const std::string& text);
void save_group(const FiniteMatrixGroup& g, const std::string& path);
FiniteMatrixGroup load_group(const std::string& path);

}  // namespace sphereform
