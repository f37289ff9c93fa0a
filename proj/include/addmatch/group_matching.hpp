#pragma once

// Matchings between equal-size subsets of a finite abelian group: a bijection
// f: A -> B with a + f(a) not in A for every a.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "addmatch/group.hpp"

namespace addmatch {

struct MatchingCertificate {
  std::vector<std::pair<Element, Element>> pairs;

  bool operator==(const MatchingCertificate&) const = default;
};

/// A subset S of A whose common non-neighbours V_S = {b in B : S+b ⊆ A}
/// satisfy |V_S| > |A| - |S|.
struct HallViolator {
  Subset subset;
  Subset common_non_neighbours;
};

struct ConditionResult {
  int part = 0;
  bool holds = false;
  std::string evidence;
  // Coset-count threshold used by parts (2) and (3).
  std::optional<std::size_t> l;
  // Largest l for which the coset-cover hypothesis of parts (2)/(3) holds;
  // absent when there is no nontrivial proper subgroup.
  std::optional<std::size_t> max_l;
  // Set when part (3)'s |{n*a}| > 2 requirement is decided by the boundary
  // case |{n*a}| == 2.
  std::optional<std::string> note;
};

using ConditionReport = std::vector<ConditionResult>;

struct StructureWitness {
  Subset s;
  Subset w;            // V_S ∪ {0}
  Subset sumset;       // S + W
  std::string classification;  // "quasi-periodic", "progression" or "unclassified-at-min-length"
  std::uint32_t min_length = 3;
  std::optional<QuasiPeriodicWitness> quasi_periodic;
  std::optional<ProgressionWitness> progression;
};

struct PropertyScanResult {
  bool holds = true;
  std::uint64_t pairs_checked = 0;
  std::optional<std::pair<Subset, Subset>> counterexample;
};

inline constexpr std::uint64_t kMaxPropertyScanPairs = 50'000'000;

/// {b in B : s+b in A for every s in S}.
Subset common_non_neighbours(const Group& g, const Subset& a, const Subset& b, const Subset& s);

bool has_matching(const Group& g, const Subset& a, const Subset& b);

/// Lexicographically least certificate: pairs listed by increasing a, each
/// a receiving the least b that still leaves a perfect matching.
std::optional<MatchingCertificate> find_matching(const Group& g, const Subset& a, const Subset& b);

bool verify_certificate(const Group& g, const Subset& a, const Subset& b,
                        const MatchingCertificate& cert);

std::optional<HallViolator> hall_violator(const Group& g, const Subset& a, const Subset& b);

/// Sufficient conditions (1)-(7) for A to be matched to B.
ConditionResult check_condition(const Group& g, const Subset& a, const Subset& b, int part);
ConditionReport check_conditions(const Group& g, const Subset& a, const Subset& b);

StructureWitness structure_witness(const Group& g, const Subset& a, const Subset& b,
                                   std::uint32_t min_length = 3);

PropertyScanResult matching_property_scan(const Group& g, std::size_t max_size);

bool semicoset_representative_check(const Group& g, const Subgroup& h, const Subset& a);

}  // namespace addmatch
