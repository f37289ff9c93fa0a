#include "addmatch/linear_matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "addmatch/error.hpp"
#include "addmatch/gf_matrix.hpp"
#include "addmatch/group.hpp"

namespace addmatch {

namespace {

void require_pair(const FieldExtension& e, const Subspace& a, const Subspace& b) {
  if (a.is_zero() || b.is_zero()) throw Error(ErrorKind::ZeroSubspace, "A and B must be nonzero");
  if (a.dim() != b.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "dim A = " + std::to_string(a.dim()) +
                                                  " but dim B = " + std::to_string(b.dim()));
  }
  if (contains(e, b, e.one())) throw Error(ErrorKind::OneInB, "1 lies in B");
  if (a.dim() > kMaxCriterionDimension) {
    throw Error(ErrorKind::ScaleExceeded, "dimension above " + std::to_string(kMaxCriterionDimension));
  }
}

Subspace span_of(const FieldExtension& e, const OrderedBasis& basis) { return span(e, basis.vectors); }

Subspace intersect_all(const FieldExtension& e, const std::vector<Subspace>& u,
                       const std::vector<std::size_t>& j) {
  Subspace v = u[j[0]];
  for (std::size_t k = 1; k < j.size() && !v.is_zero(); ++k) v = intersection(e, v, u[j[k]]);
  return v;
}

// Visits J ⊆ {0..n-1} by decreasing size, lexicographically within a size.
template <typename Fn>
void for_each_index_subset(std::size_t n, Fn&& fn) {
  std::vector<Element> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = static_cast<Element>(i);
  for (std::size_t k = n; k >= 1; --k) {
    const bool go_on = for_each_combination(std::span<const Element>(pool), k,
                                            [&](const std::vector<Element>& c) {
                                              std::vector<std::size_t> j(c.begin(), c.end());
                                              return fn(j);
                                            });
    if (!go_on) return;
  }
}

}  // namespace

OrderedBasis make_ordered_basis(const FieldExtension& e, std::vector<FieldElem> vectors) {
  if (span(e, vectors).dim() != vectors.size()) {
    throw Error(ErrorKind::InvalidArgument, "basis vectors are linearly dependent");
  }
  return OrderedBasis{std::move(vectors)};
}

OrderedBasis canonical_basis(const Subspace& a) { return OrderedBasis{a.rows()}; }

std::vector<Subspace> local_intersections(const FieldExtension& e, const OrderedBasis& basis_a,
                                          const Subspace& b) {
  const Subspace a = span_of(e, basis_a);
  std::vector<Subspace> out;
  out.reserve(basis_a.size());
  for (auto ai : basis_a.vectors) out.push_back(intersection(e, scale(e, e.inv(ai), a), b));
  return out;
}

CriterionResult evaluate_basis_criterion(const FieldExtension& e, const OrderedBasis& basis_a,
                                         const Subspace& b) {
  const Subspace a = span_of(e, basis_a);
  if (a.dim() != basis_a.size()) throw Error(ErrorKind::InvalidArgument, "basis of A is dependent");
  require_pair(e, a, b);
  const std::size_t n = basis_a.size();
  const auto u = local_intersections(e, basis_a, b);
  CriterionResult res;
  for_each_index_subset(n, [&](const std::vector<std::size_t>& j) {
    Subspace v = intersect_all(e, u, j);
    if (v.dim() > n - j.size()) {
      res.holds = false;
      res.violating_j = j;
      res.v_j = std::move(v);
      return false;
    }
    return true;
  });
  return res;
}

bool basis_matched_criterion(const FieldExtension& e, const OrderedBasis& basis_a, const Subspace& b) {
  return evaluate_basis_criterion(e, basis_a, b).holds;
}

std::vector<CriterionResult> violating_subsets(const FieldExtension& e, const OrderedBasis& basis_a,
                                               const Subspace& b) {
  const Subspace a = span_of(e, basis_a);
  require_pair(e, a, b);
  const std::size_t n = basis_a.size();
  const auto u = local_intersections(e, basis_a, b);
  std::vector<CriterionResult> out;
  for_each_index_subset(n, [&](const std::vector<std::size_t>& j) {
    Subspace v = intersect_all(e, u, j);
    if (v.dim() > n - j.size()) out.push_back({false, j, std::move(v)});
    return true;
  });
  return out;
}

namespace {

// Nonzero vectors of the row space of `basis`, one per line, in a fixed order.
Matrix line_vectors(const PrimeField& f, const Matrix& basis, std::size_t cols) {
  Matrix out;
  const std::size_t k = basis.size();
  std::vector<std::uint32_t> c(k, 0);
  while (true) {
    std::size_t i = k;
    while (i > 0) {
      if (++c[i - 1] < f.p()) break;
      c[i - 1] = 0;
      --i;
    }
    if (i == 0) break;
    Row v(cols, 0);
    for (std::size_t r = 0; r < k; ++r) {
      if (!c[r]) continue;
      for (std::size_t t = 0; t < cols; ++t) v[t] = f.add(v[t], f.mul(c[r], basis[r][t]));
    }
    const auto lead = std::find_if(v.begin(), v.end(), [](auto x) { return x != 0; });
    if (lead == v.end() || *lead != 1) continue;  // keep only the normalized multiple
    out.push_back(std::move(v));
  }
  return out;
}

struct BasisSearch {
  const PrimeField& f;
  std::size_t n;
  const std::vector<Matrix>& ann;
  const std::vector<Matrix>& candidates;
  bool prune;
  Matrix chosen;

  // Rado: the remaining annihilators admit an independent transversal that
  // extends `chosen`.
  bool feasible(std::size_t from) const {
    const std::size_t rest = n - from;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << rest); ++mask) {
      Matrix m = chosen;
      std::size_t count = 0;
      for (std::size_t t = 0; t < rest; ++t) {
        if (!(mask >> t & 1)) continue;
        ++count;
        m.insert(m.end(), ann[from + t].begin(), ann[from + t].end());
      }
      if (m.empty() || rank(f, m) < chosen.size() + count) return false;
    }
    return true;
  }

  bool dfs(std::size_t i) {
    if (i == n) return true;
    for (const auto& v : candidates[i]) {
      chosen.push_back(v);
      if (rank(f, chosen) == chosen.size() && (!prune || feasible(i + 1)) && dfs(i + 1)) return true;
      chosen.pop_back();
    }
    return false;
  }
};

}  // namespace

std::optional<MatchedBasisCertificate> find_matched_basis(const FieldExtension& e,
                                                          const OrderedBasis& basis_a,
                                                          const Subspace& b) {
  if (!basis_matched_criterion(e, basis_a, b)) return std::nullopt;
  const std::size_t n = basis_a.size();
  const PrimeField f(e.p());
  const auto u = local_intersections(e, basis_a, b);
  // Work in coordinates of B: the b_j are the dual basis of functionals f_i
  // with f_i ∈ Ann(U_i).
  std::vector<Matrix> ann(n), candidates(n);
  for (std::size_t i = 0; i < n; ++i) {
    Matrix m;
    for (auto x : u[i].basis()) m.push_back(coordinates(e, b, x));
    ann[i] = m.empty() ? nullspace(f, Matrix{Row(n, 0)}, n) : nullspace(f, m, n);
    candidates[i] = line_vectors(f, ann[i], n);
  }
  BasisSearch search{f, n, ann, candidates, n <= 12, {}};
  if (!search.dfs(0)) return std::nullopt;
  const auto inv = inverse(f, search.chosen);
  if (!inv) return std::nullopt;
  MatchedBasisCertificate cert;
  cert.basis_a = basis_a;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::uint32_t> col(n);
    for (std::size_t k = 0; k < n; ++k) col[k] = (*inv)[k][j];
    cert.basis_b.vectors.push_back(combine(e, b.basis(), col));
  }
  return cert;
}

bool verify_matched_basis(const FieldExtension& e, const Subspace& b, const MatchedBasisCertificate& cert) {
  const std::size_t n = cert.basis_a.size();
  if (n == 0 || cert.basis_b.size() != n) return false;
  const Subspace a = span_of(e, cert.basis_a);
  const Subspace bb = span_of(e, cert.basis_b);
  if (a.dim() != n || bb.dim() != n || bb != b) return false;
  const auto u = local_intersections(e, cert.basis_a, b);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<FieldElem> others;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) others.push_back(cert.basis_b.vectors[j]);
    }
    if (!is_subspace_of(e, u[i], span(e, others))) return false;
  }
  return true;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Matched: return "matched";
    case Verdict::MatchedSampled: return "matched_sampled";
    case Verdict::Unmatched: return "unmatched";
  }
  return "unknown";
}

std::uint64_t unordered_line_basis_count(std::uint32_t n, std::uint32_t p) {
  constexpr long double kMax = static_cast<long double>(std::numeric_limits<std::uint64_t>::max());
  // Ordered bases up to scaling, prod_i (p^n - p^i) / (p - 1), then / n!.
  long double count = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    count *= (std::pow(static_cast<long double>(p), n) - std::pow(static_cast<long double>(p), i)) / (p - 1);
  }
  for (std::uint32_t k = 2; k <= n; ++k) count /= k;
  if (count >= kMax) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(std::llround(count));
}

SpaceMatchResult space_matchable(const FieldExtension& e, const Subspace& a, const Subspace& b,
                                 const MatchMode& mode) {
  require_pair(e, a, b);
  const auto n = static_cast<std::uint32_t>(a.dim());
  SpaceMatchResult res;
  auto test = [&](const OrderedBasis& basis) {
    ++res.bases_checked;
    auto cr = evaluate_basis_criterion(e, basis, b);
    if (cr.holds) return true;
    res.verdict = Verdict::Unmatched;
    res.failing_basis = basis;
    res.failure = std::move(cr);
    return false;
  };

  if (mode.exhaustive) {
    const std::uint64_t count = unordered_line_basis_count(n, e.p());
    if (count > mode.budget) {
      throw Error(ErrorKind::ScaleExceeded, std::to_string(count) + " bases exceed the budget " +
                                                std::to_string(mode.budget));
    }
    const auto lines = line_representatives(e, a);
    std::vector<FieldElem> chosen;
    std::vector<FieldElem> rows;  // canonical rows of span(chosen)
    auto dfs = [&](auto&& self, std::size_t start) -> bool {
      if (chosen.size() == n) return test(OrderedBasis{chosen});
      for (std::size_t i = start; i < lines.size(); ++i) {
        if (lines.size() - i < n - chosen.size()) break;
        const Subspace cur = Subspace::from_canonical_rows(rows);
        if (contains(e, cur, lines[i])) continue;
        const auto saved = rows;
        rows = sum(e, cur, span(e, {lines[i]})).rows();
        chosen.push_back(lines[i]);
        const bool go_on = self(self, i + 1);
        chosen.pop_back();
        rows = saved;
        if (!go_on) return false;
      }
      return true;
    };
    dfs(dfs, 0);
    if (res.verdict != Verdict::Unmatched) res.verdict = Verdict::Matched;
    return res;
  }

  std::mt19937_64 rng(mode.seed);
  for (std::uint64_t s = 0; s < mode.samples; ++s) {
    std::vector<FieldElem> vecs;
    std::vector<std::uint32_t> coords(n);
    while (vecs.size() < n) {
      for (auto& c : coords) c = static_cast<std::uint32_t>(rng() % e.p());
      const FieldElem x = combine(e, a.basis(), coords);
      vecs.push_back(x);
      if (span(e, vecs).dim() != vecs.size()) vecs.pop_back();
    }
    if (!test(OrderedBasis{vecs})) return res;
  }
  res.verdict = Verdict::MatchedSampled;
  return res;
}

LinearConditionResult check_linear_condition(const FieldExtension& e, const Subspace& a, const Subspace& b,
                                             int part) {
  if (part < 1 || part > 3) throw Error(ErrorKind::InvalidArgument, "part must be 1, 2 or 3");
  if (a.is_zero() || b.is_zero()) throw Error(ErrorKind::ZeroSubspace, "A and B must be nonzero");
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "dim A != dim B");
  LinearConditionResult r{part};
  if (contains(e, b, e.one())) {
    r.evidence = "1 lies in B";
    return r;
  }
  switch (part) {
    case 1: {
      for (const auto& m : intermediate_fields(e)) {
        if (m.degree == e.m()) continue;
        const Subspace meet = intersection(e, b, m.space);
        if (!meet.is_zero()) {
          r.evidence = "B meets GF(" + std::to_string(e.p()) + "^" + std::to_string(m.degree) + ") in " +
                       subspace_to_string(e, meet);
          return r;
        }
      }
      r.holds = true;
      r.evidence = "B meets every proper intermediate field in {0}";
      return r;
    }
    case 2: {
      if (e.m() == 1) {
        r.evidence = "no proper intermediate field";
        return r;
      }
      const std::uint32_t pk = p_of_extension(e);
      if (a.dim() != pk) {
        r.evidence = "n = " + std::to_string(a.dim()) + " differs from p(K,L) = " + std::to_string(pk);
        return r;
      }
      for (auto x : line_representatives(e, a)) {
        const Subspace t = scale(e, e.inv(x), a);
        if (is_subfield(e, t)) {
          r.evidence = "A = a*" + subspace_to_string(e, t) + " with a = " + e.element_to_string(x) +
                       ", a translate of an intermediate field";
          return r;
        }
      }
      r.holds = true;
      r.evidence = "n = p(K,L) = " + std::to_string(pk) + " and a^-1*A is never a field";
      return r;
    }
    default: {
      r.holds = is_sidon_subspace(e, a);
      r.evidence = r.holds ? "A is a Sidon subspace" : "some x outside K has dim(A ∩ xA) >= 2";
      return r;
    }
  }
}

LinearConditionReport check_linear_conditions(const FieldExtension& e, const Subspace& a, const Subspace& b) {
  LinearConditionReport out;
  for (int part = 1; part <= 3; ++part) out.push_back(check_linear_condition(e, a, b, part));
  return out;
}

SubfieldAtomWitness subfield_atom_witness(const FieldExtension& e, const Subspace& a, const Subspace& b,
                                          std::optional<OrderedBasis> failing_basis) {
  require_pair(e, a, b);
  if (!failing_basis) {
    auto r = space_matchable(e, a, b);
    if (r.verdict != Verdict::Unmatched) throw Error(ErrorKind::NotUnmatchable, "A is matched to B");
    failing_basis = r.failing_basis;
  } else if (span_of(e, *failing_basis) != a) {
    throw Error(ErrorKind::InvalidArgument, "failing basis does not span A");
  }
  const auto violations = violating_subsets(e, *failing_basis, b);
  if (violations.empty()) throw Error(ErrorKind::NotUnmatchable, "the given basis of A is matched to B");

  SubfieldAtomWitness w;
  w.failing_basis = *failing_basis;
  bool picked = false;
  for (const auto& v : violations) {
    std::vector<FieldElem> gens(v.v_j.rows());
    gens.push_back(e.one());
    const Subspace w_j = span(e, gens);
    std::vector<FieldElem> sg;
    for (auto i : v.violating_j) sg.push_back(failing_basis->vectors[i]);
    const Subspace s_j = span(e, sg);
    const std::size_t bound = s_j.dim() + w_j.dim() - 1;
    const bool premise = span_product(e, s_j, w_j).dim() < bound && bound < e.m();
    if (!picked || premise) {
      w.j = v.violating_j;
      w.v_j = v.v_j;
      w.w_j = w_j;
      w.s_j = s_j;
      w.premise_holds = premise;
      picked = true;
    }
    if (premise) break;
  }
  w.report = atom_report(e, w.w_j);
  w.atom = w.report.atom;
  w.atom_degree = static_cast<std::uint32_t>(w.atom.dim());
  w.atom_is_field = !w.atom.is_zero() && is_subfield(e, w.atom);
  w.atom_properly_contains_k = w.atom_is_field && w.atom_degree > 1;
  return w;
}

}  // namespace addmatch
