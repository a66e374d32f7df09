#pragma once
// Named groups, representations, and fibrations shared by the CLI and tests.
//
// Group specs:   trivial:<n> | antipodal:<n> | z<k> | q8 | type1:m,k,r,d,np,l
//                | a .json file produced by the group serializer
// Rep specs:     defining | double | r<i>+r<j>+...   (cyclic weights)
// Fibration:     complex-<n> | quaternionic-<n> | octonionic

#include <string>

#include "sphereform/fibrations.hpp"
#include "sphereform/quotients.hpp"

namespace sphereform {

// 2x2 rotation by angle
Mat rotation2(double angle);

// cyclic group Z_k acting on R^2 by rotation 2*pi/k
GroupPtr cyclic_group(int k);

// weights rep of Z_k: block diag of rotations by 2*pi*w_i/k
Representation cyclic_rep(GroupPtr zk, const std::vector<int>& weights);

// {±I} acting on R^{n+1}
GroupPtr antipodal_group(int sphere_dim);

// trivial group on R^{n+1}
GroupPtr trivial_group(int sphere_dim);

// Q8 = {±1, ±i, ±j, ±k} by left multiplication on R^4
GroupPtr quaternion_group();

// the order-24 type-1 group (m=3, k=1, r=2, d=2, n'=4, l=1), realified in O(4)
GroupPtr type1_group_24();
Type1Params type1_params_24();

// parse "groupspec[/repspec]" into a representation
Representation parse_rep_spec(const std::string& group_spec, const std::string& rep_spec);

Fibration parse_fibration(const std::string& name);

}  // namespace sphereform
