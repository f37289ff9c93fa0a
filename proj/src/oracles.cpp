#include "addmatch/oracles.hpp"

#include <algorithm>
#include <bit>

#include "addmatch/error.hpp"

namespace addmatch::oracle {

bool permutation_matching_exists(const Group& g, const Subset& a, const Subset& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::SizeMismatch, "|A| != |B|");
  if (a.size() > 10) throw Error(ErrorKind::ScaleExceeded, "permutation oracle limited to |A| <= 10");
  std::vector<Element> perm = b.vec();
  do {
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i) ok = !a.contains(g.add(a[i], perm[i]));
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

bool hall_scan_matchable(const Group& g, const Subset& a, const Subset& b) {
  const std::size_t n = a.size();
  if (n != b.size()) throw Error(ErrorKind::SizeMismatch, "|A| != |B|");
  if (n > 20) throw Error(ErrorKind::ScaleExceeded, "Hall scan limited to |A| <= 20");
  // good[i] has bit j set when a_i + b_j lies in A.
  std::vector<std::uint32_t> inside(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (a.contains(g.add(a[i], b[j]))) inside[i] |= 1u << j;
    }
  }
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::uint32_t common = (n == 32) ? ~0u : (1u << n) - 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) common &= inside[i];
    }
    if (static_cast<std::size_t>(std::popcount(common)) > n - std::popcount(mask)) return false;
  }
  return true;
}

namespace {

bool in_span(const FieldExtension& e, const std::vector<FieldElem>& gens, FieldElem x) {
  // Closure of the span by repeated addition, small dimensions only.
  std::vector<FieldElem> elems{0};
  for (auto v : gens) {
    const std::size_t k = elems.size();
    for (std::uint32_t c = 1; c < e.p(); ++c) {
      for (std::size_t i = 0; i < k; ++i) elems.push_back(e.add(elems[i], e.scale(c, v)));
    }
  }
  return std::find(elems.begin(), elems.end(), x) != elems.end();
}

}  // namespace

bool ordered_basis_match_exists(const FieldExtension& e, const OrderedBasis& basis_a, const Subspace& b) {
  const std::size_t n = basis_a.size();
  if (b.dim() != n) throw Error(ErrorKind::DimensionMismatch, "dim A != dim B");
  if (n > 4) throw Error(ErrorKind::ScaleExceeded, "ordered-basis oracle limited to dimension 4");
  const auto a_elems = elements(e, span(e, basis_a.vectors));
  const auto b_elems = elements(e, b);
  auto in_a = [&](FieldElem x) { return std::binary_search(a_elems.begin(), a_elems.end(), x); };
  // U_i = {x in B : a_i x in A}.
  std::vector<std::vector<FieldElem>> u(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto x : b_elems) {
      if (in_a(e.mul(basis_a.vectors[i], x))) u[i].push_back(x);
    }
  }
  std::vector<FieldElem> chosen;
  auto dfs = [&](auto&& self) -> bool {
    if (chosen.size() == n) {
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<FieldElem> others;
        for (std::size_t j = 0; j < n; ++j) {
          if (j != i) others.push_back(chosen[j]);
        }
        for (auto x : u[i]) {
          if (!in_span(e, others, x)) return false;
        }
      }
      return true;
    }
    for (auto x : b_elems) {
      if (x == 0 || in_span(e, chosen, x)) continue;
      chosen.push_back(x);
      const bool found = self(self);
      chosen.pop_back();
      if (found) return true;
    }
    return false;
  };
  return dfs(dfs);
}

}  // namespace addmatch::oracle
