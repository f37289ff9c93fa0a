#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace addmatch {

inline constexpr std::int32_t kUnmatched = -1;

struct BipartiteGraph {
  std::size_t left = 0;
  std::size_t right = 0;
  std::vector<std::vector<std::uint32_t>> adjacency;  // left vertex -> right neighbours

  BipartiteGraph(std::size_t l, std::size_t r) : left(l), right(r), adjacency(l) {}
  void add_edge(std::uint32_t u, std::uint32_t v) { adjacency[u].push_back(v); }
};

struct MaximumMatching {
  std::vector<std::int32_t> left_mate;
  std::vector<std::int32_t> right_mate;
  std::size_t size = 0;
};

// Hopcroft-Karp.
MaximumMatching maximum_matching(const BipartiteGraph& graph);

// Vertices reachable from unmatched left vertices along alternating paths.
// When the matching is maximum, |left| - |right| of the result equals the
// deficiency and right == N(left), which is the Hall violator.
struct AlternatingReach {
  std::vector<std::uint32_t> left;
  std::vector<std::uint32_t> right;
};

AlternatingReach alternating_reach(const BipartiteGraph& graph, const MaximumMatching& m);

}  // namespace addmatch
