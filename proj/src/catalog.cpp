#include "sphereform/catalog.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace sphereform {

Mat rotation2(double angle) {
  Mat r(2, 2);
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return r;
}

GroupPtr cyclic_group(int k) {
  require(k >= 1, "cyclic_group: k >= 1");
  if (k == 1) return trivial_group(1);
  return close_group_ptr({rotation2(2.0 * kPi / k)}, k + 1);
}

Representation cyclic_rep(GroupPtr zk, const std::vector<int>& weights) {
  require(!weights.empty(), "cyclic_rep: weights required");
  const int k = zk->order();
  const int d = 2 * static_cast<int>(weights.size());
  Mat image = Mat::Zero(d, d);
  for (std::size_t i = 0; i < weights.size(); ++i)
    image.block(2 * i, 2 * i, 2, 2) = rotation2(2.0 * kPi * weights[i] / k);
  return Representation::from_generator_images(std::move(zk), {image});
}

GroupPtr antipodal_group(int sphere_dim) {
  require(sphere_dim >= 1, "antipodal_group: sphere_dim >= 1");
  return close_group_ptr({-Mat::Identity(sphere_dim + 1, sphere_dim + 1)}, 4);
}

GroupPtr trivial_group(int sphere_dim) {
  require(sphere_dim >= 1, "trivial_group: sphere_dim >= 1");
  return close_group_ptr({Mat::Identity(sphere_dim + 1, sphere_dim + 1)}, 2);
}

GroupPtr quaternion_group() {
  // left multiplication by i and j on basis (1, i, j, k)
  Mat li(4, 4), lj(4, 4);
  li << 0, -1, 0, 0,
        1,  0, 0, 0,
        0,  0, 0, -1,
        0,  0, 1, 0;
  lj << 0, 0, -1, 0,
        0, 0,  0, 1,
        1, 0,  0, 0,
        0, -1, 0, 0;
  return close_group_ptr({li, lj}, 16);
}

Type1Params type1_params_24() {
  Type1Params p;
  p.m = 3;
  p.k = 1;
  p.r = 2;
  p.d = 2;
  p.n_prime = 4;
  p.l = 1;
  return p;
}

GroupPtr type1_group_24() {
  auto [a, b] = type1_generators(type1_params_24());
  return close_group_ptr({a, b}, 64);
}

namespace {

std::vector<std::string> split_string(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(tok);
  return out;
}

bool has_prefix(const std::string& s, const std::string& p) {
  return s.size() >= p.size() && s.compare(0, p.size(), p) == 0;
}

GroupPtr parse_group(const std::string& spec) {
  if (has_prefix(spec, "trivial")) {
    int n = 2;
    auto parts = split_string(spec, ':');
    if (parts.size() > 1) n = std::atoi(parts[1].c_str());
    return trivial_group(n);
  }
  if (has_prefix(spec, "antipodal")) {
    int n = 2;
    auto parts = split_string(spec, ':');
    if (parts.size() > 1) n = std::atoi(parts[1].c_str());
    return antipodal_group(n);
  }
  if (spec == "q8") return quaternion_group();
  if (spec == "type1-24" || spec == "g24") return type1_group_24();
  if (has_prefix(spec, "type1:")) {
    auto nums = split_string(spec.substr(6), ',');
    require(nums.size() == 6, "type1 spec: type1:m,k,r,d,np,l");
    Type1Params p;
    p.m = std::atol(nums[0].c_str());
    p.k = std::atol(nums[1].c_str());
    p.r = std::atol(nums[2].c_str());
    p.d = std::atol(nums[3].c_str());
    p.n_prime = std::atol(nums[4].c_str());
    p.l = std::atol(nums[5].c_str());
    auto [a, b] = type1_generators(p);
    return close_group_ptr({a, b});
  }
  if (spec.size() > 1 && spec[0] == 'z') {
    int k = std::atoi(spec.c_str() + 1);
    require(k >= 1, "cyclic group spec: z<k>");
    return cyclic_group(k);
  }
  if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json")
    return std::make_shared<FiniteMatrixGroup>(load_group(spec));
  throw InvalidInput("unknown group spec: " + spec);
}

}  // namespace

Representation parse_rep_spec(const std::string& group_spec, const std::string& rep_spec) {
  GroupPtr g = parse_group(group_spec);
  std::string rs = rep_spec.empty() ? "defining" : rep_spec;
  if (rs == "defining") return Representation::defining(g);
  if (rs == "double") {
    Representation d = Representation::defining(g);
    return direct_sum(d, d);
  }
  // cyclic weights: r1+r2+...
  std::vector<int> weights;
  for (const std::string& tok : split_string(rs, '+')) {
    require(tok.size() >= 2 && tok[0] == 'r', "rep spec: defining | double | r<i>+r<j>");
    weights.push_back(std::atoi(tok.c_str() + 1));
  }
  require(g->degree() == 2, "weight rep specs require a cyclic rotation group");
  return cyclic_rep(g, weights);
}

Fibration parse_fibration(const std::string& name) {
  if (name == "octonionic") return Fibration::octonionic_hopf();
  auto parts = split_string(name, '-');
  require(parts.size() == 2, "fibration spec: complex-<n> | quaternionic-<n> | octonionic");
  int n = std::atoi(parts[1].c_str());
  if (parts[0] == "complex") return Fibration::complex_hopf(n);
  if (parts[0] == "quaternionic") return Fibration::quaternionic_hopf(n);
  throw InvalidInput("unknown fibration: " + name);
}

}  // namespace sphereform
