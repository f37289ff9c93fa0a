#pragma once

// Finite abelian groups Z_{n1} x ... x Z_{nk}, written additively.
//
// Translation from multiplicative notation: a product set AB is the sumset
// A+B, the neutral element e is 0, a^k is k*a, a coset aH is a+H and a
// progression {a, ad, ..., ad^(k-1)} is {a, a+d, ..., a+(k-1)d}.
//
// Elements are encoded as a single mixed-radix index with the first factor
// most significant, so the natural integer order on encodings is the
// lexicographic order on coordinate tuples. For a cyclic group Z_n the
// encoding of x is x itself.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace addmatch {

using Element = std::uint32_t;

inline constexpr std::uint64_t kDefaultMaxGroupOrder = std::uint64_t{1} << 20;
// Subgroup lattices of non-cyclic groups are built by closure; beyond this
// order the enumeration refuses with scale-exceeded.
inline constexpr std::uint64_t kMaxLatticeOrder = 4096;

class Group {
 public:
  explicit Group(std::vector<std::uint32_t> invariant_factors,
                 std::uint64_t max_order = kDefaultMaxGroupOrder);

  static Group cyclic(std::uint32_t n) { return Group({n}); }

  const std::vector<std::uint32_t>& factors() const { return factors_; }
  std::uint32_t order() const { return order_; }
  bool is_single_cyclic() const { return factors_.size() == 1; }

  Element neutral() const { return 0; }
  bool contains(Element x) const { return x < order_; }

  Element add(Element x, Element y) const;
  Element sub(Element x, Element y) const;
  Element neg(Element x) const;
  Element times(std::uint64_t k, Element x) const;

  std::vector<std::uint32_t> coords(Element x) const;
  // Reduces every coordinate modulo its factor.
  Element from_coords(std::span<const std::int64_t> coords) const;

  std::string to_string() const;
  std::string element_to_string(Element x) const;

  bool operator==(const Group& other) const { return factors_ == other.factors_; }

 private:
  std::vector<std::uint32_t> factors_;
  std::vector<std::uint32_t> strides_;
  std::uint32_t order_ = 1;
};

/// Canonical finite subset: strictly increasing encodings.
class Subset {
 public:
  Subset() = default;
  // Sorts and deduplicates; throws element-out-of-range for foreign encodings.
  Subset(const Group& group, std::vector<Element> elements);

  static Subset from_sorted(std::vector<Element> sorted_unique) {
    Subset s;
    s.elements_ = std::move(sorted_unique);
    return s;
  }

  std::span<const Element> elements() const { return elements_; }
  const std::vector<Element>& vec() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  bool contains(Element x) const;
  Element operator[](std::size_t i) const { return elements_[i]; }
  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

  std::string to_string(const Group& group) const;

  bool operator==(const Subset&) const = default;
  auto operator<=>(const Subset&) const = default;

 private:
  std::vector<Element> elements_;
};

struct Subgroup {
  std::vector<Element> generators;
  Subset elements;

  std::size_t order() const { return elements.size(); }
  bool operator==(const Subgroup& other) const { return elements == other.elements; }
};

struct ProgressionWitness {
  Element initial = 0;
  Element ratio = 0;
  std::uint32_t length = 0;

  bool operator==(const ProgressionWitness&) const = default;
};

struct QuasiPeriodicWitness {
  Subgroup period;
  Subset periodic_part;
  Subset remainder;
};

std::uint32_t element_order(const Group& g, Element x);

Subset product_set(const Group& g, const Subset& a, const Subset& b);
Subset translate(const Group& g, const Subset& a, Element t);
Subset set_union(const Subset& a, const Subset& b);
Subset set_difference(const Subset& a, const Subset& b);
Subset set_intersection(const Subset& a, const Subset& b);

Subgroup generated_subgroup(const Group& g, std::span<const Element> generators);
Subgroup stabilizer(const Group& g, const Subset& s);
Subgroup trivial_subgroup(const Group& g);
Subgroup whole_group(const Group& g);

/// All subgroups, ordered by order and then by element list.
std::vector<Subgroup> subgroups(const Group& g);

/// Smallest cardinality of a nontrivial subgroup, i.e. the least prime
/// divisor of |G|.
std::uint32_t p_of_group(const Group& g);

/// Canonical name of the coset x+H: its least element.
Element coset_key(const Group& g, Element x, const Subgroup& h);
std::size_t coset_cover_count(const Group& g, const Subset& a, const Subgroup& h);
/// max over x of |(x+H) ∩ A|.
std::size_t max_coset_intersection(const Group& g, const Subset& a, const Subgroup& h);
bool is_coset_of(const Group& g, const Subset& a, const Subgroup& h);

bool is_sidon_subset(const Group& g, const Subset& a);
bool is_chowla_subset(const Group& g, const Subset& b);

/// Longest progression {a, a+d, ..., a+(k-1)d} of k distinct elements
/// inside A, provided k >= min_length. Ties go to the smallest (a, d).
std::optional<ProgressionWitness> find_progression(const Group& g, const Subset& a,
                                                   std::uint32_t min_length = 3);
/// True iff A itself equals a progression of length |A|.
bool is_progression(const Group& g, const Subset& a);

/// Scans nontrivial subgroups by decreasing order and returns the first one
/// for which A contains at least one full coset.
std::optional<QuasiPeriodicWitness> quasi_periodic_witness(const Group& g, const Subset& a);

std::size_t multiplicity(const Group& g, const Subset& a, const Subset& b, Element x);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Calls fn(subset) for every k-subset of `pool` in lexicographic order;
/// stops early when fn returns false. Returns false iff stopped early.
template <typename Fn>
bool for_each_combination(std::span<const Element> pool, std::size_t k, Fn&& fn) {
  const std::size_t n = pool.size();
  if (k > n) return true;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  std::vector<Element> chosen(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) chosen[i] = pool[idx[i]];
    if (!fn(static_cast<const std::vector<Element>&>(chosen))) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace addmatch
