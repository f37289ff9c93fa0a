#include "addmatch/bipartite.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace addmatch {

namespace {

constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

struct HopcroftKarp {
  const BipartiteGraph& g;
  MaximumMatching& m;
  std::vector<std::uint32_t> dist;

  bool bfs() {
    std::deque<std::uint32_t> queue;
    dist.assign(g.left, kInf);
    for (std::uint32_t u = 0; u < g.left; ++u) {
      if (m.left_mate[u] == kUnmatched) {
        dist[u] = 0;
        queue.push_back(u);
      }
    }
    bool found = false;
    while (!queue.empty()) {
      const auto u = queue.front();
      queue.pop_front();
      for (auto v : g.adjacency[u]) {
        const auto w = m.right_mate[v];
        if (w == kUnmatched) {
          found = true;
        } else if (dist[w] == kInf) {
          dist[w] = dist[u] + 1;
          queue.push_back(static_cast<std::uint32_t>(w));
        }
      }
    }
    return found;
  }

  bool dfs(std::uint32_t u) {
    for (auto v : g.adjacency[u]) {
      const auto w = m.right_mate[v];
      if (w == kUnmatched || (dist[w] == dist[u] + 1 && dfs(static_cast<std::uint32_t>(w)))) {
        m.left_mate[u] = static_cast<std::int32_t>(v);
        m.right_mate[v] = static_cast<std::int32_t>(u);
        return true;
      }
    }
    dist[u] = kInf;
    return false;
  }
};

}  // namespace

MaximumMatching maximum_matching(const BipartiteGraph& graph) {
  MaximumMatching m;
  m.left_mate.assign(graph.left, kUnmatched);
  m.right_mate.assign(graph.right, kUnmatched);
  HopcroftKarp hk{graph, m, {}};
  while (hk.bfs()) {
    for (std::uint32_t u = 0; u < graph.left; ++u) {
      if (m.left_mate[u] == kUnmatched && hk.dfs(u)) ++m.size;
    }
  }
  return m;
}

AlternatingReach alternating_reach(const BipartiteGraph& graph, const MaximumMatching& m) {
  std::vector<char> seen_left(graph.left, 0), seen_right(graph.right, 0);
  std::deque<std::uint32_t> queue;
  for (std::uint32_t u = 0; u < graph.left; ++u) {
    if (m.left_mate[u] == kUnmatched) {
      seen_left[u] = 1;
      queue.push_back(u);
    }
  }
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    for (auto v : graph.adjacency[u]) {
      if (seen_right[v]) continue;
      seen_right[v] = 1;
      const auto w = m.right_mate[v];
      if (w != kUnmatched && !seen_left[w]) {
        seen_left[w] = 1;
        queue.push_back(static_cast<std::uint32_t>(w));
      }
    }
  }
  AlternatingReach out;
  for (std::uint32_t u = 0; u < graph.left; ++u) {
    if (seen_left[u]) out.left.push_back(u);
  }
  for (std::uint32_t v = 0; v < graph.right; ++v) {
    if (seen_right[v]) out.right.push_back(v);
  }
  return out;
}

}  // namespace addmatch
