#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ctxdim {

/// Largest vertex count accepted by the exact combinatorial routines.
inline constexpr int kMaxVertices = 64;

/// Sorted list of distinct 1-based vertex labels.
struct VertexSubset {
  std::vector<int> members;

  VertexSubset() = default;
  VertexSubset(std::initializer_list<int> labels);
  explicit VertexSubset(std::vector<int> labels);

  int size() const { return static_cast<int>(members.size()); }
  bool contains(int v) const;
  bool operator==(const VertexSubset&) const = default;
};

/// Simple undirected exclusivity graph on vertices 1..n.
///
/// Immutable after construction. Edges are stored as pairs (u, v) with
/// u < v in lexicographic order; adjacency is kept as bitmasks, which is why
/// the vertex count is capped at kMaxVertices.
class Graph {
 public:
  Graph() = default;
  /// Throws std::invalid_argument on self-loops, duplicate edges or labels
  /// outside 1..n.
  Graph(int n, std::vector<std::pair<int, int>> edges);

  int size() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  bool adjacent(int i, int j) const;
  /// Neighbourhood of vertex i as a bitmask; bit k stands for vertex k+1.
  std::uint64_t neighbour_mask(int i) const { return adj_[i - 1]; }
  int degree(int i) const;

  bool operator==(const Graph& other) const { return n_ == other.n_ && edges_ == other.edges_; }

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::uint64_t> adj_;
};

/// Exact independence number by branch and bound.
int independence_number(const Graph& g);
/// A maximum independent set (lexicographically smallest among those found first).
VertexSubset maximum_independent_set(const Graph& g);

/// All k-cliques in lexicographic order.
std::vector<VertexSubset> enumerate_cliques(const Graph& g, int k);

struct InducedSubgraph {
  Graph graph;
  /// original_label[new_label - 1] is the label of that vertex in the parent graph.
  std::vector<int> original_label;
};

InducedSubgraph induced_subgraph(const Graph& g, const VertexSubset& s);

bool is_independent_set(const Graph& g, const VertexSubset& s);

/// Throws std::invalid_argument if some member lies outside 1..n.
void validate_subset(const Graph& g, const VertexSubset& s);

namespace graphs {

/// Nine-vertex graph of Kurzynski and Kaszlikowski: triangles {1,2,3} and
/// {4,7,8}, independence number 3.
Graph gkk();
Graph cycle(int n);
Graph path(int n);
Graph complete(int n);
Graph edgeless(int n);

}  // namespace graphs

/// Parses either the JSON form {"n": .., "edges": [[i,j], ...]} or a plain
/// edge list (first line n, then "i j" per line, '#' starts a comment).
Graph parse_graph(std::string_view text);
std::string graph_to_json(const Graph& g);

}  // namespace ctxdim
