#pragma once

// Brute-force deciders kept independent of the main algorithms. They are
// exponential and only meant for cross-checking at small scale.

#include "addmatch/field.hpp"
#include "addmatch/group.hpp"
#include "addmatch/linear_matching.hpp"

namespace addmatch::oracle {

/// Tries every bijection A -> B (|A| <= 10).
bool permutation_matching_exists(const Group& g, const Subset& a, const Subset& b);

/// Scans every nonempty J ⊆ A for |∩_{x∈J} ((A - x) ∩ B)| > |A| - |J|.
bool hall_scan_matchable(const Group& g, const Subset& a, const Subset& b);

/// Tries every ordered basis of B against the given basis of A, testing the
/// matched-basis condition element by element.
bool ordered_basis_match_exists(const FieldExtension& e, const OrderedBasis& basis_a, const Subspace& b);

}  // namespace addmatch::oracle
