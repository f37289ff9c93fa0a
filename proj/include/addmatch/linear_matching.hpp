#pragma once

// Linear matchings between n-dimensional GF(p)-subspaces A, B of GF(p^m).
// An ordered basis a_1..a_n of A is matched to a basis b_1..b_n of B when
// a_i^{-1}A ∩ B lies in the span of the b_j with j != i, for every i.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "addmatch/field.hpp"

namespace addmatch {

struct OrderedBasis {
  std::vector<FieldElem> vectors;

  std::size_t size() const { return vectors.size(); }
  bool operator==(const OrderedBasis&) const = default;
};

struct MatchedBasisCertificate {
  OrderedBasis basis_a;
  OrderedBasis basis_b;
};

/// Outcome of the dimension criterion on one ordered basis. When it fails,
/// violating_j lists 0-based indices i in J and v_j = ∩_{i∈J} a_i^{-1}A ∩ B.
struct CriterionResult {
  bool holds = true;
  std::vector<std::size_t> violating_j;
  Subspace v_j;
};

inline constexpr std::size_t kMaxCriterionDimension = 20;
inline constexpr std::uint64_t kDefaultBasisBudget = 1'000'000;

/// Throws invalid-argument unless the vectors are linearly independent.
OrderedBasis make_ordered_basis(const FieldExtension& e, std::vector<FieldElem> vectors);
/// The canonical rows of A, as an ordered basis.
OrderedBasis canonical_basis(const Subspace& a);

/// a_i^{-1}A ∩ B for every i.
std::vector<Subspace> local_intersections(const FieldExtension& e, const OrderedBasis& basis_a,
                                          const Subspace& b);

/// Scans J by decreasing size, then lexicographically; stops at the first
/// violation.
CriterionResult evaluate_basis_criterion(const FieldExtension& e, const OrderedBasis& basis_a,
                                         const Subspace& b);
bool basis_matched_criterion(const FieldExtension& e, const OrderedBasis& basis_a, const Subspace& b);
/// Every violating J, in scan order.
std::vector<CriterionResult> violating_subsets(const FieldExtension& e, const OrderedBasis& basis_a,
                                               const Subspace& b);

std::optional<MatchedBasisCertificate> find_matched_basis(const FieldExtension& e,
                                                          const OrderedBasis& basis_a,
                                                          const Subspace& b);
bool verify_matched_basis(const FieldExtension& e, const Subspace& b,
                          const MatchedBasisCertificate& cert);

enum class Verdict { Matched, MatchedSampled, Unmatched };
std::string to_string(Verdict v);

struct MatchMode {
  bool exhaustive = true;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t budget = kDefaultBasisBudget;

  static MatchMode exhaustive_mode(std::uint64_t budget = kDefaultBasisBudget) {
    return {true, 0, 0, budget};
  }
  static MatchMode sampled(std::uint64_t k, std::uint64_t seed) { return {false, k, seed, 0}; }
};

struct SpaceMatchResult {
  Verdict verdict = Verdict::Matched;
  std::uint64_t bases_checked = 0;
  std::optional<OrderedBasis> failing_basis;
  CriterionResult failure;
};

/// Number of bases of an n-dimensional GF(p)-space counted as unordered sets
/// of lines, saturating.
std::uint64_t unordered_line_basis_count(std::uint32_t n, std::uint32_t p);

/// Exhaustive mode visits every unordered set of n independent lines of A;
/// the criterion is blind to both the order of the a_i and their scaling.
SpaceMatchResult space_matchable(const FieldExtension& e, const Subspace& a, const Subspace& b,
                                 const MatchMode& mode = MatchMode::exhaustive_mode());

struct LinearConditionResult {
  int part = 0;
  bool holds = false;
  std::string evidence;
};

using LinearConditionReport = std::vector<LinearConditionResult>;

LinearConditionResult check_linear_condition(const FieldExtension& e, const Subspace& a,
                                             const Subspace& b, int part);
LinearConditionReport check_linear_conditions(const FieldExtension& e, const Subspace& a,
                                              const Subspace& b);

struct SubfieldAtomWitness {
  OrderedBasis failing_basis;
  std::vector<std::size_t> j;
  Subspace v_j;
  Subspace w_j;  // K ⊕ V_J
  Subspace s_j;  // span of a_i, i in J
  AtomReport report;
  Subspace atom;
  std::uint32_t atom_degree = 0;
  bool atom_is_field = false;
  bool atom_properly_contains_k = false;
  // dim⟨S_J W_J⟩ < dim S_J + dim W_J - 1 < m
  bool premise_holds = false;
};

/// Uses the given failing basis, or searches one exhaustively. Among the
/// violating J it prefers the first one satisfying the atom premise.
SubfieldAtomWitness subfield_atom_witness(const FieldExtension& e, const Subspace& a, const Subspace& b,
                                          std::optional<OrderedBasis> failing_basis = std::nullopt);

}  // namespace addmatch
