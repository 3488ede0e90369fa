#pragma once

#include <string>
#include <vector>

#include "ctxdim/hermitian.hpp"
#include "ctxdim/membership.hpp"

namespace ctxdim::fixtures {

/// Behaviors p1..p4 on the nine-vertex graph graphs::gkk(). p3 is the
/// midpoint of p1 and p2.
std::vector<double> gkk_behavior(int index);
Behavior gkk(int index);

/// Looks up "p1".."p4"; throws std::invalid_argument for other names.
Behavior named_behavior(const std::string& name);

/// Default parameter of the zero-vector witness below.
inline constexpr double kWitnessA = 0.5121;

/// Qutrit vectors on graphs::gkk() with psi_8 = 0 and phi the top
/// eigenvector of sum_i |psi_i><psi_i|. allow_zero is set.
VectorSystem gkk_zero_witness(double a = kWitnessA);

/// Gram matrix of (phi, <psi_1|phi> psi_1, ..., <psi_n|phi> psi_n): the
/// ray-scaled Gram whose diagonal equals its first row.
CMatrix ray_gram(const VectorSystem& v);

}  // namespace ctxdim::fixtures
