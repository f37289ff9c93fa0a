#pragma once

// Seeded, budgeted scans. An instance space is materialized as an indexed
// list, shards take index residues, and results are merged back by index,
// so the report does not depend on the thread count.

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "addmatch/field.hpp"
#include "addmatch/group.hpp"
#include "addmatch/report.hpp"

namespace addmatch {

struct SearchBudget {
  std::uint64_t max_instances = 10'000'000;
  std::uint64_t seed = 1;
  std::chrono::milliseconds time_limit{0};  // zero: no limit
  bool exhaustive = true;
  unsigned threads = 1;
};

struct ScanReport {
  std::string scan;
  Json parameters = Json::object();
  std::uint64_t instances_checked = 0;
  bool exhausted = false;
  std::vector<std::string> flags;
  std::string orbit_reduction = "none";
  std::vector<Json> records;  // one per counterexample or hit, re-verified

  bool has_flag(const std::string& f) const;
  Json summary() const;
  /// One line per record, then the summary line.
  std::string to_jsonl() const;
};

/// Dimension bound for Conjecture 5.1 instances: A and B range over nonzero
/// subspaces of dimension <= max_dim.
ScanReport conjecture_5_1_scan(const FieldExtension& e, std::uint32_t max_dim, const SearchBudget& budget);

/// Pairs (A, B) of n-dimensional subspaces with B Chowla; A is taken up to
/// multiplication by L*, which does not change matchability.
ScanReport conjecture_5_2_scan(const FieldExtension& e, std::uint32_t n, const SearchBudget& budget);

struct ChowlaMaxResult {
  std::uint32_t dimension = 0;
  Subspace witness;
  bool exhaustive = false;
  std::uint32_t lower_bound = 0;  // m - largest proper divisor of m
  bool meets_lower_bound = false;
  std::uint64_t subspaces_checked = 0;
};

ChowlaMaxResult max_chowla_dimension(const FieldExtension& e, const SearchBudget& budget);

struct GroupSearchOptions {
  std::uint32_t min_order = 2;
  std::uint32_t max_order = 10;
  std::uint32_t max_size = 4;
  std::uint32_t min_progression_length = 2;
  // Enumerate A only up to translation and multiplication by units.
  bool orbit_reduction = false;
};

ScanReport unmatchable_group_search(const GroupSearchOptions& options, const SearchBudget& budget);

/// n-dimensional pairs with 1 ∉ B, A up to multiplication by L*.
ScanReport unmatchable_field_search(const FieldExtension& e, std::uint32_t n, const SearchBudget& budget);

}  // namespace addmatch
