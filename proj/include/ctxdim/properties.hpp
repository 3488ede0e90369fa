#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ctxdim/graph.hpp"
#include "ctxdim/membership.hpp"

namespace ctxdim {

/// A random graph together with a behavior realized by explicit vectors.
struct PlantedInstance {
  Behavior behavior;
  int dim = 0;
  VectorSystem vectors;
};

/// Builds vectors in C^d one vertex at a time, joining each new vertex to a
/// random subset of earlier ones (each with probability `edge_prob`) as long
/// as their span stays a proper subspace, then drawing the new vector from
/// its orthogonal complement. The handle is a random unit vector.
PlantedInstance planted_instance(int n, int d, double edge_prob, std::mt19937_64& rng);

struct PropertyConfig {
  std::uint64_t seed = 1;
  int instances = 100;
  int max_vertices = 8;
  /// Every `ppt_stride`-th instance with at most `ppt_max_vertices`
  /// vertices also runs the two-copy relaxations.
  int ppt_stride = 10;
  int ppt_max_vertices = 6;
};

struct PropertyCheck {
  std::string tag;
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string first_failure;
};

struct PropertySummary {
  std::vector<PropertyCheck> checks;
};

/// Randomized invariants: planted members are certified, membership paths
/// never contradict each other, lower <= upper on every instance, bounds at
/// d = n + 1 meet the Lovasz number, and truncation beats random search.
PropertySummary property_suite(const PropertyConfig& cfg = {});

}  // namespace ctxdim
