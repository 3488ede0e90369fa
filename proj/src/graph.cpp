#include "ctxdim/graph.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ctxdim {

namespace {

using Mask = std::uint64_t;

Mask bit(int v) { return Mask{1} << (v - 1); }

// Branch and bound over bitmasks. `cand` holds vertices still allowed.
void mis_search(const std::vector<Mask>& adj, Mask cand, Mask current, int current_size, Mask& best,
                int& best_size) {
  if (cand == 0) {
    if (current_size > best_size) {
      best_size = current_size;
      best = current;
    }
    return;
  }
  if (current_size + std::popcount(cand) <= best_size) return;

  // Vertices with at most one candidate neighbour can always be taken.
  Mask rest = cand;
  while (rest) {
    int v = std::countr_zero(rest) + 1;
    rest &= rest - 1;
    if (std::popcount(adj[v - 1] & cand) <= 1) {
      mis_search(adj, cand & ~bit(v) & ~adj[v - 1], current | bit(v), current_size + 1, best, best_size);
      return;
    }
  }

  int pivot = 0;
  int pivot_degree = -1;
  rest = cand;
  while (rest) {
    int v = std::countr_zero(rest) + 1;
    rest &= rest - 1;
    int deg = std::popcount(adj[v - 1] & cand);
    if (deg > pivot_degree) {
      pivot_degree = deg;
      pivot = v;
    }
  }
  mis_search(adj, cand & ~bit(pivot) & ~adj[pivot - 1], current | bit(pivot), current_size + 1, best,
             best_size);
  mis_search(adj, cand & ~bit(pivot), current, current_size, best, best_size);
}

void clique_search(const Graph& g, int k, std::vector<int>& stack, int next, std::vector<VertexSubset>& out) {
  if (static_cast<int>(stack.size()) == k) {
    out.emplace_back(stack);
    return;
  }
  for (int v = next; v <= g.size(); ++v) {
    bool ok = std::all_of(stack.begin(), stack.end(), [&](int u) { return g.adjacent(u, v); });
    if (!ok) continue;
    stack.push_back(v);
    clique_search(g, k, stack, v + 1, out);
    stack.pop_back();
  }
}

}  // namespace

VertexSubset::VertexSubset(std::initializer_list<int> labels) : VertexSubset(std::vector<int>(labels)) {}

VertexSubset::VertexSubset(std::vector<int> labels) : members(std::move(labels)) {
  std::sort(members.begin(), members.end());
  if (std::adjacent_find(members.begin(), members.end()) != members.end())
    throw std::invalid_argument("vertex subset contains a repeated label");
}

bool VertexSubset::contains(int v) const { return std::binary_search(members.begin(), members.end(), v); }

Graph::Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n), adj_(static_cast<std::size_t>(std::max(n, 0)), 0) {
  if (n < 0) throw std::invalid_argument("graph: negative vertex count");
  if (n > kMaxVertices)
    throw std::invalid_argument("graph: " + std::to_string(n) + " vertices exceeds the cap of " +
                                std::to_string(kMaxVertices));
  for (auto& [u, v] : edges) {
    if (u < 1 || u > n || v < 1 || v > n)
      throw std::invalid_argument("graph: edge {" + std::to_string(u) + "," + std::to_string(v) +
                                  "} has an endpoint outside 1.." + std::to_string(n));
    if (u == v) throw std::invalid_argument("graph: self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
    if (adj_[u - 1] & bit(v))
      throw std::invalid_argument("graph: duplicate edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
    adj_[u - 1] |= bit(v);
    adj_[v - 1] |= bit(u);
  }
  std::sort(edges.begin(), edges.end());
  edges_ = std::move(edges);
}

bool Graph::adjacent(int i, int j) const { return (adj_[i - 1] & bit(j)) != 0; }

int Graph::degree(int i) const { return std::popcount(adj_[i - 1]); }

VertexSubset maximum_independent_set(const Graph& g) {
  const int n = g.size();
  std::vector<Mask> adj(n);
  for (int v = 1; v <= n; ++v) adj[v - 1] = g.neighbour_mask(v);
  Mask all = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
  Mask best = 0;
  int best_size = 0;
  mis_search(adj, all, 0, 0, best, best_size);
  std::vector<int> members;
  for (int v = 1; v <= n; ++v)
    if (best & bit(v)) members.push_back(v);
  return VertexSubset(std::move(members));
}

int independence_number(const Graph& g) { return maximum_independent_set(g).size(); }

std::vector<VertexSubset> enumerate_cliques(const Graph& g, int k) {
  if (k < 1 || k > g.size())
    throw std::invalid_argument("enumerate_cliques: k must lie in 1..n");
  std::vector<VertexSubset> out;
  std::vector<int> stack;
  clique_search(g, k, stack, 1, out);
  return out;
}

void validate_subset(const Graph& g, const VertexSubset& s) {
  for (int v : s.members)
    if (v < 1 || v > g.size())
      throw std::invalid_argument("vertex " + std::to_string(v) + " is not in 1.." + std::to_string(g.size()));
}

InducedSubgraph induced_subgraph(const Graph& g, const VertexSubset& s) {
  validate_subset(g, s);
  std::vector<int> new_label(g.size() + 1, 0);
  for (int k = 0; k < s.size(); ++k) new_label[s.members[k]] = k + 1;
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : g.edges())
    if (new_label[u] && new_label[v]) edges.emplace_back(new_label[u], new_label[v]);
  return {Graph(s.size(), std::move(edges)), s.members};
}

bool is_independent_set(const Graph& g, const VertexSubset& s) {
  validate_subset(g, s);
  Mask m = 0;
  for (int v : s.members) m |= bit(v);
  return std::none_of(s.members.begin(), s.members.end(), [&](int v) { return g.neighbour_mask(v) & m; });
}

namespace graphs {

Graph gkk() {
  return Graph(9, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 5}, {3, 6}, {4, 7}, {4, 8}, {5, 7}, {5, 9}, {6, 8}, {6, 9}, {7, 8}});
}

Graph cycle(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i <= n; ++i) e.emplace_back(i, i % n + 1);
  return Graph(n, std::move(e));
}

Graph path(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, std::move(e));
}

Graph complete(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) e.emplace_back(i, j);
  return Graph(n, std::move(e));
}

Graph edgeless(int n) { return Graph(n, {}); }

}  // namespace graphs

Graph parse_graph(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw std::invalid_argument(std::string("graph JSON: ") + e.what());
    }
    if (!j.contains("n") || !j["n"].is_number_integer())
      throw std::invalid_argument("graph JSON: field \"n\" must be an integer");
    if (!j.contains("edges") || !j["edges"].is_array())
      throw std::invalid_argument("graph JSON: field \"edges\" must be an array of pairs");
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
        throw std::invalid_argument("graph JSON: every entry of \"edges\" must be a pair of integers");
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return Graph(j["n"].get<int>(), std::move(edges));
  }

  std::istringstream in{std::string(text)};
  std::string line;
  int n = -1;
  int line_no = 0;
  std::vector<std::pair<int, int>> edges;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<long> nums;
    long v;
    while (ls >> v) nums.push_back(v);
    if (!ls.eof()) throw std::invalid_argument("edge list line " + std::to_string(line_no) + ": not an integer");
    if (nums.empty()) continue;
    if (n < 0) {
      if (nums.size() != 1) throw std::invalid_argument("edge list: first line must hold the vertex count");
      n = static_cast<int>(nums[0]);
      continue;
    }
    if (nums.size() != 2)
      throw std::invalid_argument("edge list line " + std::to_string(line_no) + ": expected \"i j\"");
    edges.emplace_back(static_cast<int>(nums[0]), static_cast<int>(nums[1]));
  }
  if (n < 0) throw std::invalid_argument("edge list: missing vertex count");
  return Graph(n, std::move(edges));
}

std::string graph_to_json(const Graph& g) {
  nlohmann::json j;
  j["n"] = g.size();
  j["edges"] = nlohmann::json::array();
  for (auto [u, v] : g.edges()) j["edges"].push_back({u, v});
  return j.dump();
}

}  // namespace ctxdim
