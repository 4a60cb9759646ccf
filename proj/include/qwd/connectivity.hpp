#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <istream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qwd/clifford.hpp"

// Hardware coupling graphs, shortest-path-with-specified-nodes solving, and
// SWAP-inserting step-2 routing. Two-qubit gates are only ever emitted on
// graph edges.

namespace qwd::connectivity {

using clifford::Gate;

class ConnectivityGraph {
public:
  ConnectivityGraph() = default;

  explicit ConnectivityGraph(std::size_t vertices) : adj_(vertices) {}

  std::size_t size() const { return adj_.size(); }

  void add_edge(std::size_t u, std::size_t v) {
    if (u >= size() || v >= size()) {
      throw std::out_of_range("add_edge: vertex out of range");
    }
    if (u == v) {
      throw std::invalid_argument("add_edge: self loop");
    }
    if (has_edge(u, v)) return;
    adj_[u].push_back(static_cast<std::uint32_t>(v));
    adj_[v].push_back(static_cast<std::uint32_t>(u));
    edges_.insert({std::min(u, v), std::max(u, v)});
  }

  bool has_edge(std::size_t u, std::size_t v) const {
    return edges_.count({std::min(u, v), std::max(u, v)}) > 0;
  }

  const std::vector<std::uint32_t>& neighbors(std::size_t v) const {
    return adj_[v];
  }

  const std::set<std::pair<std::size_t, std::size_t>>& edges() const {
    return edges_;
  }

  bool connected() const {
    if (size() == 0) return true;
    std::vector<bool> seen(size(), false);
    std::deque<std::size_t> q{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop_front();
      for (auto v : adj_[u]) {
        if (!seen[v]) {
          seen[v] = true;
          ++count;
          q.push_back(v);
        }
      }
    }
    return count == size();
  }

  static ConnectivityGraph complete(std::size_t n) {
    ConnectivityGraph g(n);
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) g.add_edge(u, v);
    }
    return g;
  }

  static ConnectivityGraph line(std::size_t n) {
    ConnectivityGraph g(n);
    for (std::size_t u = 0; u + 1 < n; ++u) g.add_edge(u, u + 1);
    return g;
  }

  static ConnectivityGraph ring(std::size_t n) {
    ConnectivityGraph g = line(n);
    if (n > 2) g.add_edge(n - 1, 0);
    return g;
  }

  static ConnectivityGraph grid(std::size_t rows, std::size_t cols) {
    ConnectivityGraph g(rows * cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        const std::size_t v = r * cols + c;
        if (c + 1 < cols) g.add_edge(v, v + 1);
        if (r + 1 < rows) g.add_edge(v, v + cols);
      }
    }
    return g;
  }

  // Presets: line:<n>, ring:<n>, grid:<rows>x<cols>, full:<n>.
  static ConnectivityGraph from_preset(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("graph preset '" + spec +
                                  "': expected name:<size>");
    }
    const std::string name = spec.substr(0, colon);
    const std::string arg = spec.substr(colon + 1);
    auto parse_count = [&](const std::string& s) {
      std::size_t pos = 0;
      const unsigned long v = std::stoul(s, &pos);
      if (pos != s.size() || v == 0) {
        throw std::invalid_argument("graph preset '" + spec +
                                    "': bad size '" + s + "'");
      }
      return static_cast<std::size_t>(v);
    };
    if (name == "line") return line(parse_count(arg));
    if (name == "ring") return ring(parse_count(arg));
    if (name == "full") return complete(parse_count(arg));
    if (name == "grid") {
      const auto x = arg.find('x');
      if (x == std::string::npos) {
        throw std::invalid_argument("graph preset '" + spec +
                                    "': expected grid:<rows>x<cols>");
      }
      return grid(parse_count(arg.substr(0, x)),
                  parse_count(arg.substr(x + 1)));
    }
    throw std::invalid_argument("unknown graph preset '" + name + "'");
  }

  // Edge-list format: one 'u v' pair per line, '#' comments.
  static ConnectivityGraph from_edge_list(std::istream& in) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::size_t max_v = 0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string::npos) {
        line.erase(hash);
      }
      std::istringstream ls(line);
      std::size_t u, v;
      if (!(ls >> u)) continue;
      if (!(ls >> v)) {
        throw std::runtime_error("graph line " + std::to_string(lineno) +
                                 ": expected 'u v'");
      }
      edges.emplace_back(u, v);
      max_v = std::max({max_v, u, v});
    }
    if (edges.empty()) {
      throw std::runtime_error("graph file: no edges");
    }
    ConnectivityGraph g(max_v + 1);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
  }

private:
  std::vector<std::vector<std::uint32_t>> adj_;
  std::set<std::pair<std::size_t, std::size_t>> edges_;
};

inline constexpr std::size_t kUnreachable =
    std::numeric_limits<std::size_t>::max();

inline std::vector<std::size_t> bfs_distances(const ConnectivityGraph& g,
                                              std::size_t src) {
  std::vector<std::size_t> dist(g.size(), kUnreachable);
  std::deque<std::size_t> q{src};
  dist[src] = 0;
  while (!q.empty()) {
    const std::size_t u = q.front();
    q.pop_front();
    for (auto v : g.neighbors(u)) {
      if (dist[v] == kUnreachable) {
        dist[v] = dist[u] + 1;
        q.push_back(v);
      }
    }
  }
  return dist;
}

inline std::vector<std::vector<std::size_t>> all_pairs_distances(
    const ConnectivityGraph& g) {
  if (!g.connected()) {
    throw std::invalid_argument("all_pairs_distances: disconnected graph");
  }
  std::vector<std::vector<std::size_t>> d(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) d[v] = bfs_distances(g, v);
  return d;
}

// Shortest path src..dst inclusive. Deterministic: ties resolve toward the
// lowest-index predecessor.
inline std::vector<std::size_t> shortest_path(const ConnectivityGraph& g,
                                              std::size_t src,
                                              std::size_t dst) {
  std::vector<std::size_t> prev(g.size(), kUnreachable);
  std::vector<std::size_t> dist(g.size(), kUnreachable);
  std::deque<std::size_t> q{src};
  dist[src] = 0;
  while (!q.empty()) {
    const std::size_t u = q.front();
    q.pop_front();
    if (u == dst) break;
    for (auto v : g.neighbors(u)) {
      if (dist[v] == kUnreachable) {
        dist[v] = dist[u] + 1;
        prev[v] = u;
        q.push_back(v);
      }
    }
  }
  if (dist[dst] == kUnreachable) {
    throw std::invalid_argument("shortest_path: vertices disconnected");
  }
  std::vector<std::size_t> path;
  for (std::size_t v = dst; v != src; v = prev[v]) path.push_back(v);
  path.push_back(src);
  std::reverse(path.begin(), path.end());
  return path;
}

struct SppsnResult {
  std::vector<std::size_t> visit_order;  // required vertices, visit order
  std::vector<std::size_t> walk;         // full vertex sequence
  std::size_t length = 0;                // edge count of the walk
  bool exact = false;
};

inline constexpr std::size_t kSppsnExactLimit = 12;

// Shortest walk visiting every required vertex at least once. Exact
// subset dynamic programming over the BFS metric up to kSppsnExactLimit
// required vertices; nearest-neighbor plus 2-opt beyond.
inline SppsnResult sppsn(const ConnectivityGraph& g,
                         const std::vector<std::size_t>& required) {
  if (required.empty()) {
    throw std::invalid_argument("sppsn: empty required set");
  }
  std::vector<std::size_t> req = required;
  std::sort(req.begin(), req.end());
  req.erase(std::unique(req.begin(), req.end()), req.end());
  for (auto v : req) {
    if (v >= g.size()) {
      throw std::out_of_range("sppsn: required vertex outside graph");
    }
  }

  SppsnResult out;
  const std::size_t k = req.size();
  if (k == 1) {
    out.visit_order = req;
    out.walk = req;
    out.exact = true;
    return out;
  }

  // Pairwise metric over the required vertices.
  std::vector<std::vector<std::size_t>> d(k, std::vector<std::size_t>(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    const auto dist = bfs_distances(g, req[i]);
    for (std::size_t j = 0; j < k; ++j) {
      if (dist[req[j]] == kUnreachable) {
        throw std::invalid_argument("sppsn: required vertices disconnected");
      }
      d[i][j] = dist[req[j]];
    }
  }

  std::vector<std::size_t> order;  // indices into req
  if (k <= kSppsnExactLimit) {
    const std::size_t full = (std::size_t{1} << k) - 1;
    std::vector<std::vector<std::size_t>> dp(
        full + 1, std::vector<std::size_t>(k, kUnreachable));
    std::vector<std::vector<std::size_t>> parent(
        full + 1, std::vector<std::size_t>(k, k));
    for (std::size_t j = 0; j < k; ++j) dp[std::size_t{1} << j][j] = 0;
    for (std::size_t s = 1; s <= full; ++s) {
      for (std::size_t j = 0; j < k; ++j) {
        if (!(s >> j & 1) || dp[s][j] == kUnreachable) continue;
        for (std::size_t m = 0; m < k; ++m) {
          if (s >> m & 1) continue;
          const std::size_t ns = s | (std::size_t{1} << m);
          const std::size_t cost = dp[s][j] + d[j][m];
          if (cost < dp[ns][m]) {
            dp[ns][m] = cost;
            parent[ns][m] = j;
          }
        }
      }
    }
    std::size_t best_end = 0;
    for (std::size_t j = 1; j < k; ++j) {
      if (dp[full][j] < dp[full][best_end]) best_end = j;
    }
    std::size_t s = full, j = best_end;
    while (j != k) {
      order.push_back(j);
      const std::size_t pj = parent[s][j];
      s ^= std::size_t{1} << j;
      j = pj;
    }
    std::reverse(order.begin(), order.end());
    out.exact = true;
  } else {
    // Nearest neighbor from vertex 0 of the required list, then 2-opt.
    std::vector<bool> used(k, false);
    order.push_back(0);
    used[0] = true;
    while (order.size() < k) {
      const std::size_t last = order.back();
      std::size_t best = k;
      for (std::size_t m = 0; m < k; ++m) {
        if (!used[m] && (best == k || d[last][m] < d[last][best])) best = m;
      }
      order.push_back(best);
      used[best] = true;
    }
    auto path_cost = [&](const std::vector<std::size_t>& o) {
      std::size_t c = 0;
      for (std::size_t i = 0; i + 1 < o.size(); ++i) c += d[o[i]][o[i + 1]];
      return c;
    };
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t i = 0; i + 1 < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
          std::vector<std::size_t> cand = order;
          std::reverse(cand.begin() + static_cast<std::ptrdiff_t>(i),
                       cand.begin() + static_cast<std::ptrdiff_t>(j) + 1);
          if (path_cost(cand) < path_cost(order)) {
            order = cand;
            improved = true;
          }
        }
      }
    }
    out.exact = false;
  }

  out.visit_order.reserve(k);
  for (auto idx : order) out.visit_order.push_back(req[idx]);
  out.walk.push_back(out.visit_order[0]);
  for (std::size_t i = 0; i + 1 < k; ++i) {
    const auto seg =
        shortest_path(g, out.visit_order[i], out.visit_order[i + 1]);
    out.walk.insert(out.walk.end(), seg.begin() + 1, seg.end());
    out.length += seg.size() - 1;
  }
  return out;
}

struct RoutedStage {
  std::vector<std::size_t> visit_order;  // support qubits in fold order
  std::vector<Gate> gates;               // SWAPs and CNOTs interleaved
  std::size_t swap_count = 0;
  std::size_t cnot_count = 0;
  std::size_t target = 0;  // physical vertex diagonalized by this stage
  bool exact_route = false;
};

// Folds the support columns into the walk's median support qubit. Each fold
// SWAPs the source column along a shortest path until adjacent to its
// successor, then emits one CNOT; every emitted gate lies on a graph edge.
// Exactly |support|-1 CNOTs are used, matching the unconstrained step 2.
inline RoutedStage route_step2(const std::vector<std::size_t>& support,
                               const ConnectivityGraph& g) {
  if (support.empty()) {
    throw std::invalid_argument("route_step2: empty support");
  }
  if (!g.connected()) {
    throw std::invalid_argument("route_step2: disconnected graph");
  }
  RoutedStage out;
  if (support.size() == 1) {
    out.visit_order = support;
    out.target = support[0];
    out.exact_route = true;
    return out;
  }

  const SppsnResult walk = sppsn(g, support);
  out.visit_order = walk.visit_order;
  out.exact_route = walk.exact;
  const std::size_t k = walk.visit_order.size();
  const std::size_t median = (k - 1) / 2;

  // pos[label] = current physical vertex of support label; label_at inverts
  // it so SWAPs that displace other tracked columns stay consistent.
  std::vector<std::size_t> pos = walk.visit_order;
  std::vector<std::size_t> label_at(g.size(), k);
  for (std::size_t l = 0; l < k; ++l) label_at[pos[l]] = l;

  auto do_swap = [&](std::size_t u, std::size_t v) {
    out.gates.push_back(Gate::swap(static_cast<std::uint32_t>(u),
                                   static_cast<std::uint32_t>(v)));
    ++out.swap_count;
    const std::size_t lu = label_at[u], lv = label_at[v];
    label_at[u] = lv;
    label_at[v] = lu;
    if (lu != k) pos[lu] = v;
    if (lv != k) pos[lv] = u;
  };

  // Moves label src adjacent to label dst, then folds src into dst.
  auto fold = [&](std::size_t src, std::size_t dst) {
    const auto path = shortest_path(g, pos[src], pos[dst]);
    for (std::size_t step = 0; step + 2 < path.size(); ++step) {
      do_swap(path[step], path[step + 1]);
    }
    out.gates.push_back(
        Gate::cnot(static_cast<std::uint32_t>(pos[src]),
                   static_cast<std::uint32_t>(pos[dst])));
    ++out.cnot_count;
  };

  for (std::size_t j = 0; j < median; ++j) fold(j, j + 1);
  for (std::size_t j = k - 1; j > median; --j) fold(j, j - 1);
  out.target = pos[median];
  return out;
}

}  // namespace qwd::connectivity
