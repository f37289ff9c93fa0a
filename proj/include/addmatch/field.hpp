#pragma once

// GF(p) ⊂ GF(p^m) in a polynomial basis, with GF(p)-subspaces kept in a
// canonical reduced row-echelon form.
//
// A field element is encoded as the integer sum c_i * p^i of its coefficient
// vector, c_i being the coefficient of g^i where g is the class of x modulo the
// defining polynomial. So 0 and 1 encode themselves and g encodes p (m > 1).

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace addmatch {

using FieldElem = std::uint32_t;

inline constexpr std::uint32_t kMaxFieldSize = 1u << 16;

class FieldExtension {
 public:
  /// Without a modulus, the first monic irreducible polynomial of degree m
  /// when the lower coefficients are read as a base-p integer.
  static FieldExtension make(std::uint32_t p, std::uint32_t m,
                             std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

  std::uint32_t p() const { return p_; }
  std::uint32_t m() const { return m_; }
  std::uint32_t size() const { return q_; }
  /// Coefficients from the constant term upwards; monic, length m+1.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  FieldElem zero() const { return 0; }
  FieldElem one() const { return 1; }
  FieldElem generator() const { return generator_; }

  std::uint32_t digit(FieldElem x, std::uint32_t i) const {
    return p_ == 2 ? (x >> i) & 1u : (x / pow_p_[i]) % p_;
  }
  std::uint32_t place(std::uint32_t i) const { return pow_p_[i]; }

  FieldElem add(FieldElem x, FieldElem y) const;
  FieldElem sub(FieldElem x, FieldElem y) const;
  FieldElem neg(FieldElem x) const;
  /// c * x for c in GF(p).
  FieldElem scale(std::uint32_t c, FieldElem x) const;
  FieldElem mul(FieldElem x, FieldElem y) const {
    if (x == 0 || y == 0) return 0;
    std::uint32_t e = log_[x] + log_[y];
    if (e >= q_ - 1) e -= q_ - 1;
    return exp_[e];
  }
  FieldElem inv(FieldElem x) const;
  FieldElem pow(FieldElem x, std::uint64_t e) const;
  /// x^(p^k).
  FieldElem frobenius(FieldElem x, std::uint32_t k) const;

  std::uint32_t prime_inv(std::uint32_t c) const;

  std::string to_string() const;
  std::string modulus_to_string() const;
  std::string element_to_string(FieldElem x) const;

  bool operator==(const FieldExtension& o) const {
    return p_ == o.p_ && m_ == o.m_ && modulus_ == o.modulus_;
  }

 private:
  FieldExtension() = default;
  FieldElem slow_mul(FieldElem x, FieldElem y) const;

  std::uint32_t p_ = 2;
  std::uint32_t m_ = 1;
  std::uint32_t q_ = 2;
  FieldElem generator_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> pow_p_;
  std::vector<FieldElem> exp_;
  std::vector<std::uint32_t> log_;
};

bool is_prime(std::uint64_t n);
/// Trial division by every monic polynomial of degree <= deg/2.
bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& poly);

/// Canonical GF(p)-subspace: reduced row-echelon rows, pivot of a row being
/// its lowest nonzero coordinate, pivots strictly increasing, pivot entry 1.
class Subspace {
 public:
  Subspace() = default;

  static Subspace from_canonical_rows(std::vector<FieldElem> rows) {
    Subspace s;
    s.rows_ = std::move(rows);
    return s;
  }

  std::span<const FieldElem> basis() const { return rows_; }
  const std::vector<FieldElem>& rows() const { return rows_; }
  std::size_t dim() const { return rows_.size(); }
  bool is_zero() const { return rows_.empty(); }

  bool operator==(const Subspace&) const = default;
  std::strong_ordering operator<=>(const Subspace& o) const {
    if (auto c = rows_.size() <=> o.rows_.size(); c != 0) return c;
    return rows_ <=> o.rows_;
  }

 private:
  std::vector<FieldElem> rows_;
};

std::uint32_t pivot_of(const FieldExtension& e, FieldElem x);
/// Scales x so its pivot coordinate is 1.
FieldElem normalize(const FieldExtension& e, FieldElem x);

Subspace span(const FieldExtension& e, std::span<const FieldElem> generators);
inline Subspace span(const FieldExtension& e, std::initializer_list<FieldElem> generators) {
  return span(e, std::span<const FieldElem>(generators.begin(), generators.size()));
}
/// Residue of x after eliminating the pivots of U; zero iff x ∈ U.
FieldElem reduce(const FieldExtension& e, const Subspace& u, FieldElem x);
bool contains(const FieldExtension& e, const Subspace& u, FieldElem x);
bool is_subspace_of(const FieldExtension& e, const Subspace& u, const Subspace& v);
Subspace sum(const FieldExtension& e, const Subspace& u, const Subspace& v);
Subspace intersection(const FieldExtension& e, const Subspace& u, const Subspace& v);
/// x·U.
Subspace scale(const FieldExtension& e, FieldElem x, const Subspace& u);
/// ⟨AB⟩, the span of all products.
Subspace span_product(const FieldExtension& e, const Subspace& a, const Subspace& b);
/// Every element of U, p^dim of them.
std::vector<FieldElem> elements(const FieldExtension& e, const Subspace& u);
/// One normalized representative per 1-dimensional subspace, ascending.
std::vector<FieldElem> line_representatives(const FieldExtension& e, const Subspace& u);
Subspace whole_space(const FieldExtension& e);
Subspace base_field(const FieldExtension& e);
/// Coordinates of x ∈ U with respect to U's canonical rows.
std::vector<std::uint32_t> coordinates(const FieldExtension& e, const Subspace& u, FieldElem x);
FieldElem combine(const FieldExtension& e, std::span<const FieldElem> basis,
                  std::span<const std::uint32_t> coords);

std::string subspace_to_string(const FieldExtension& e, const Subspace& u);

/// Gaussian binomial [n choose k]_p, saturating at UINT64_MAX.
std::uint64_t gaussian_binomial(std::uint32_t n, std::uint32_t k, std::uint32_t p);
std::uint64_t total_subspace_count(std::uint32_t n, std::uint32_t p);

/// Enumerates every k-dimensional subspace of U in canonical order.
/// fn returns false to stop; the function returns false iff stopped.
template <typename Fn>
bool for_each_subspace_of(const FieldExtension& e, const Subspace& u, std::uint32_t k, Fn&& fn);

struct IntermediateField {
  std::uint32_t degree = 1;
  Subspace space;
  bool multiplicatively_closed = false;
};

bool is_subfield(const FieldExtension& e, const Subspace& u);
std::uint32_t element_degree(const FieldExtension& e, FieldElem a);
/// One per divisor d of m, ascending; each is the fixed space of x -> x^(p^d).
std::vector<IntermediateField> intermediate_fields(const FieldExtension& e);
IntermediateField stabilizer_subfield(const FieldExtension& e, const Subspace& s);
std::uint32_t p_of_extension(const FieldExtension& e);

bool is_sidon_subspace(const FieldExtension& e, const Subspace& a);
bool is_chowla_subspace(const FieldExtension& e, const Subspace& a);
bool is_primitive_subspace(const FieldExtension& e, const Subspace& a);

inline constexpr std::uint64_t kSubspaceEnumerationBudget = 1'000'000;

struct AtomReport {
  bool psi_nonempty = false;
  std::optional<std::int64_t> kappa;
  Subspace fragment;  // a largest fragment, least canonical matrix among those
  Subspace atom;      // a smallest fragment, preferring one that contains 1
  std::uint64_t fragment_count = 0;
  std::uint64_t subspaces_scanned = 0;
};

/// Exhaustive scan of the nonzero subspaces X of L with ⟨XA⟩ ≠ L.
AtomReport atom_report(const FieldExtension& e, const Subspace& a,
                       std::uint64_t budget = kSubspaceEnumerationBudget);

// ---------------------------------------------------------------------------

template <typename Fn>
bool for_each_subspace_of(const FieldExtension& e, const Subspace& u, std::uint32_t k, Fn&& fn) {
  const auto n = static_cast<std::uint32_t>(u.dim());
  if (k > n) return true;
  if (k == 0) return fn(Subspace{});
  const std::uint32_t p = e.p();
  std::vector<std::uint32_t> pivots(k);
  for (std::uint32_t i = 0; i < k; ++i) pivots[i] = i;
  std::vector<FieldElem> rows(k);
  std::vector<std::vector<std::uint32_t>> coords(k, std::vector<std::uint32_t>(n));
  while (true) {
    // Free positions: for row i, columns after its pivot that are not pivots.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> free;
    for (std::uint32_t i = 0; i < k; ++i) {
      for (std::uint32_t c = pivots[i] + 1; c < n; ++c) {
        bool is_pivot = false;
        for (auto pc : pivots) is_pivot |= (pc == c);
        if (!is_pivot) free.emplace_back(i, c);
      }
    }
    std::vector<std::uint32_t> counter(free.size(), 0);
    while (true) {
      for (std::uint32_t i = 0; i < k; ++i) {
        std::fill(coords[i].begin(), coords[i].end(), 0);
        coords[i][pivots[i]] = 1;
      }
      for (std::size_t f = 0; f < free.size(); ++f) coords[free[f].first][free[f].second] = counter[f];
      for (std::uint32_t i = 0; i < k; ++i) rows[i] = combine(e, u.basis(), coords[i]);
      if (!fn(span(e, rows))) return false;
      std::size_t f = free.size();
      while (f > 0) {
        if (++counter[f - 1] < p) break;
        counter[f - 1] = 0;
        --f;
      }
      if (f == 0) break;
    }
    std::uint32_t i = k;
    while (i > 0 && pivots[i - 1] == n - k + i - 1) --i;
    if (i == 0) return true;
    ++pivots[i - 1];
    for (std::uint32_t j = i; j < k; ++j) pivots[j] = pivots[j - 1] + 1;
  }
}

}  // namespace addmatch
