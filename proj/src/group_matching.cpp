#include "addmatch/group_matching.hpp"

#include <algorithm>
#include <stdexcept>

#include "addmatch/bipartite.hpp"
#include "addmatch/error.hpp"

namespace addmatch {

namespace {

void validate_pair(const Subset& a, const Subset& b) {
  if (a.empty() || b.empty()) throw Error(ErrorKind::EmptyInput, "A and B must be nonempty");
  if (a.size() != b.size()) {
    throw Error(ErrorKind::SizeMismatch, "|A| = " + std::to_string(a.size()) +
                                             " but |B| = " + std::to_string(b.size()));
  }
}

// Edge (i, j) iff a_i + b_j is not in A.
BipartiteGraph matching_graph(const Group& g, const Subset& a, const Subset& b) {
  BipartiteGraph graph(a.size(), b.size());
  for (std::uint32_t i = 0; i < a.size(); ++i) {
    for (std::uint32_t j = 0; j < b.size(); ++j) {
      if (!a.contains(g.add(a[i], b[j]))) graph.add_edge(i, j);
    }
  }
  return graph;
}

bool has_perfect_on(const BipartiteGraph& full, const std::vector<std::uint32_t>& lefts,
                    const std::vector<char>& right_free) {
  std::vector<std::int32_t> right_index(full.right, -1);
  std::uint32_t r = 0;
  for (std::uint32_t v = 0; v < full.right; ++v) {
    if (right_free[v]) right_index[v] = static_cast<std::int32_t>(r++);
  }
  BipartiteGraph sub(lefts.size(), r);
  for (std::uint32_t i = 0; i < lefts.size(); ++i) {
    for (auto v : full.adjacency[lefts[i]]) {
      if (right_index[v] >= 0) sub.add_edge(i, static_cast<std::uint32_t>(right_index[v]));
    }
  }
  return maximum_matching(sub).size == lefts.size();
}

bool violates(const Group& g, const Subset& a, const Subset& b, const Subset& s) {
  return common_non_neighbours(g, a, b, s).size() + s.size() > a.size();
}

using Lattice = std::vector<Subgroup>;

bool is_nontrivial_proper(const Group& g, const Subgroup& h) {
  return h.order() > 1 && h.order() < g.order();
}

std::string subgroup_str(const Group& g, const Subgroup& h) { return h.elements.to_string(g); }

ConditionResult part_one(const Group& g, const Subset& b, const Lattice& lattice) {
  ConditionResult r{1};
  std::size_t proper = 0;
  for (const auto& h : lattice) {
    if (h.order() == g.order()) continue;
    ++proper;
    const Subset meet = set_intersection(b, h.elements);
    if (!meet.empty()) {
      r.evidence = "B meets the proper subgroup " + subgroup_str(g, h) + " in " + meet.to_string(g);
      return r;
    }
  }
  r.holds = true;
  r.evidence = "B avoids all " + std::to_string(proper) + " proper subgroups (trivial one included)";
  return r;
}

ConditionResult coset_cover_part(const Group& g, const Subset& a, const Subset& b,
                                 const Lattice& lattice, int part) {
  const auto n = static_cast<long long>(a.size());
  const long long threshold = std::max(0LL, part == 2 ? n - 1 : n - 2);
  ConditionResult r{part};
  r.l = static_cast<std::size_t>(threshold);

  std::optional<std::size_t> min_cover;
  std::string covers;
  std::string failure;
  for (const auto& h : lattice) {
    if (!is_nontrivial_proper(g, h)) continue;
    const std::size_t ca = coset_cover_count(g, a, h);
    const std::size_t cb = coset_cover_count(g, b, h);
    const std::size_t m = std::min(ca, cb);
    min_cover = min_cover ? std::min(*min_cover, m) : m;
    if (!covers.empty()) covers += "; ";
    covers += subgroup_str(g, h) + ": A needs " + std::to_string(ca) + ", B needs " + std::to_string(cb);
    if (failure.empty() && static_cast<long long>(m) <= threshold) {
      failure = (ca <= static_cast<std::size_t>(threshold) ? "A" : "B") +
                std::string(" lies in ") + std::to_string(m) + " cosets of " + subgroup_str(g, h);
    }
  }
  if (min_cover) r.max_l = *min_cover - 1;
  const bool covers_ok = failure.empty();
  std::string evidence = "l=" + std::to_string(threshold) + ", n=" + std::to_string(n) + "; " +
                         (covers.empty() ? std::string("no nontrivial proper subgroup") : covers);

  if (part == 2) {
    r.holds = covers_ok;
    r.evidence = covers_ok ? evidence : failure + " (l=" + std::to_string(threshold) + ")";
    return r;
  }

  std::vector<Element> multiples;
  for (auto x : a) multiples.push_back(g.times(static_cast<std::uint64_t>(n), x));
  std::sort(multiples.begin(), multiples.end());
  multiples.erase(std::unique(multiples.begin(), multiples.end()), multiples.end());
  std::size_t high_order = 0;
  for (auto x : b) {
    if (element_order(g, x) > static_cast<std::uint32_t>(n)) ++high_order;
  }
  const bool multiples_ok = multiples.size() > 2;
  const bool orders_ok = high_order >= 2;
  if (multiples.size() == 2) {
    r.note = "|{n*a}| = 2: the strict reading (> 2) fails where >= 2 would pass";
  }
  r.holds = covers_ok && multiples_ok && orders_ok;
  evidence += "; |{n*a : a in A}| = " + std::to_string(multiples.size()) +
              "; elements of B with order > n: " + std::to_string(high_order);
  if (!covers_ok) evidence = failure + " (l=" + std::to_string(threshold) + "); " + evidence;
  r.evidence = evidence;
  return r;
}

ConditionResult part_four(const Group& g, const Subset& a, const Lattice& lattice) {
  ConditionResult r{4};
  const std::uint32_t p = p_of_group(g);
  if (a.size() != p) {
    r.evidence = "p(G) = " + std::to_string(p) + " differs from n = " + std::to_string(a.size());
    return r;
  }
  for (const auto& h : lattice) {
    if (h.order() > 1 && is_coset_of(g, a, h)) {
      r.evidence = "A is a coset of " + subgroup_str(g, h);
      return r;
    }
  }
  r.holds = true;
  r.evidence = "p(G) = n = " + std::to_string(p) + " and A is not a coset of a nontrivial subgroup";
  return r;
}

ConditionResult part_five(const Group& g, const Subset& a) {
  ConditionResult r{5};
  r.holds = is_sidon_subset(g, a);
  r.evidence = r.holds ? "A is a Sidon subset" : "A has a nontrivial solution of a+b=c+d";
  return r;
}

ConditionResult part_six(const Group& g, const Subset& a, const Subset& b) {
  ConditionResult r{6};
  const auto n = static_cast<std::uint32_t>(a.size());
  for (auto x : b) {
    const auto o = element_order(g, x);
    if (o < n) {
      r.evidence = "element " + g.element_to_string(x) + " of B has order " + std::to_string(o) +
                   " < n = " + std::to_string(n);
      return r;
    }
  }
  if (is_progression(g, a)) {
    r.evidence = "A is a progression";
    return r;
  }
  r.holds = true;
  r.evidence = "every element of B has order >= n and A is not a progression";
  return r;
}

ConditionResult part_seven(const Group& g, const Subset& a, const Subset& b, const Lattice& lattice) {
  ConditionResult r{7};
  std::string checked;
  for (const auto& h : lattice) {
    if (h.order() < 2) continue;
    const std::size_t ma = max_coset_intersection(g, a, h);
    const std::size_t mb = max_coset_intersection(g, b, h);
    if (ma + mb >= h.order() + 1) {
      r.evidence = "H = " + subgroup_str(g, h) + ": max |(a+H)∩A| + max |(b+H)∩B| = " +
                   std::to_string(ma) + " + " + std::to_string(mb) + " >= |H|+1 = " +
                   std::to_string(h.order() + 1);
      return r;
    }
    if (!checked.empty()) checked += "; ";
    checked += "H = " + subgroup_str(g, h) + ": " + std::to_string(ma) + " + " +
               std::to_string(mb) + " < " + std::to_string(h.order() + 1);
  }
  r.holds = true;
  r.evidence = checked;
  return r;
}

ConditionResult evaluate_part(const Group& g, const Subset& a, const Subset& b, int part,
                              const Lattice& lattice) {
  if (b.contains(g.neutral())) {
    ConditionResult r{part};
    r.evidence = "0 lies in B";
    return r;
  }
  switch (part) {
    case 1: return part_one(g, b, lattice);
    case 2:
    case 3: return coset_cover_part(g, a, b, lattice, part);
    case 4: return part_four(g, a, lattice);
    case 5: return part_five(g, a);
    case 6: return part_six(g, a, b);
    case 7: return part_seven(g, a, b, lattice);
    default: break;
  }
  throw Error(ErrorKind::InvalidArgument, "condition part must be in 1..7");
}

}  // namespace

Subset common_non_neighbours(const Group& g, const Subset& a, const Subset& b, const Subset& s) {
  std::vector<Element> out;
  for (auto y : b) {
    bool all_inside = true;
    for (auto x : s) {
      if (!a.contains(g.add(x, y))) {
        all_inside = false;
        break;
      }
    }
    if (all_inside) out.push_back(y);
  }
  return Subset::from_sorted(std::move(out));
}

bool has_matching(const Group& g, const Subset& a, const Subset& b) {
  validate_pair(a, b);
  if (b.contains(g.neutral())) return false;
  return maximum_matching(matching_graph(g, a, b)).size == a.size();
}

std::optional<MatchingCertificate> find_matching(const Group& g, const Subset& a, const Subset& b) {
  if (!has_matching(g, a, b)) return std::nullopt;
  const BipartiteGraph graph = matching_graph(g, a, b);
  std::vector<char> right_free(b.size(), 1);
  MatchingCertificate cert;
  for (std::uint32_t i = 0; i < a.size(); ++i) {
    std::vector<std::uint32_t> rest;
    for (std::uint32_t k = i + 1; k < a.size(); ++k) rest.push_back(k);
    auto neighbours = graph.adjacency[i];
    std::sort(neighbours.begin(), neighbours.end());
    bool placed = false;
    for (auto j : neighbours) {
      if (!right_free[j]) continue;
      right_free[j] = 0;
      if (has_perfect_on(graph, rest, right_free)) {
        cert.pairs.emplace_back(a[i], b[j]);
        placed = true;
        break;
      }
      right_free[j] = 1;
    }
    if (!placed) throw std::logic_error("find_matching: perfect matching lost during extraction");
  }
  return cert;
}

bool verify_certificate(const Group& g, const Subset& a, const Subset& b,
                        const MatchingCertificate& cert) {
  if (cert.pairs.size() != a.size() || a.size() != b.size()) return false;
  std::vector<Element> firsts, seconds;
  for (const auto& [x, y] : cert.pairs) {
    if (!g.contains(x) || !g.contains(y)) return false;
    if (a.contains(g.add(x, y))) return false;
    firsts.push_back(x);
    seconds.push_back(y);
  }
  std::sort(firsts.begin(), firsts.end());
  std::sort(seconds.begin(), seconds.end());
  return firsts == a.vec() && seconds == b.vec();
}

std::optional<HallViolator> hall_violator(const Group& g, const Subset& a, const Subset& b) {
  validate_pair(a, b);
  const BipartiteGraph graph = matching_graph(g, a, b);
  const MaximumMatching m = maximum_matching(graph);
  if (m.size == a.size()) return std::nullopt;
  const AlternatingReach reach = alternating_reach(graph, m);
  std::vector<Element> s;
  for (auto i : reach.left) s.push_back(a[i]);
  std::vector<char> neighbour(b.size(), 0);
  for (auto j : reach.right) neighbour[j] = 1;
  std::vector<Element> v;
  for (std::uint32_t j = 0; j < b.size(); ++j) {
    if (!neighbour[j]) v.push_back(b[j]);
  }
  HallViolator out{Subset::from_sorted(std::move(s)), Subset::from_sorted(std::move(v))};
  if (out.common_non_neighbours.size() + out.subset.size() <= a.size()) {
    throw std::logic_error("hall_violator: alternating cut is not deficient");
  }
  return out;
}

ConditionResult check_condition(const Group& g, const Subset& a, const Subset& b, int part) {
  validate_pair(a, b);
  if (part < 1 || part > 7) throw Error(ErrorKind::InvalidArgument, "condition part must be in 1..7");
  const Lattice lattice = (part == 5 || part == 6) ? Lattice{} : subgroups(g);
  return evaluate_part(g, a, b, part, lattice);
}

ConditionReport check_conditions(const Group& g, const Subset& a, const Subset& b) {
  validate_pair(a, b);
  const Lattice lattice = subgroups(g);
  ConditionReport report;
  for (int part = 1; part <= 7; ++part) report.push_back(evaluate_part(g, a, b, part, lattice));
  return report;
}

StructureWitness structure_witness(const Group& g, const Subset& a, const Subset& b,
                                   std::uint32_t min_length) {
  if (has_matching(g, a, b)) {
    throw Error(ErrorKind::NotUnmatchable, "A is matched to B; no structure witness exists");
  }
  const std::size_t n = a.size();
  std::optional<Subset> chosen;
  constexpr std::size_t kExhaustiveLimit = 16;
  if (n <= kExhaustiveLimit) {
    for (std::size_t k = 1; k <= n && !chosen; ++k) {
      for_each_combination(a.elements(), k, [&](const std::vector<Element>& pick) {
        const Subset s = Subset::from_sorted(pick);
        if (violates(g, a, b, s)) {
          chosen = s;
          return false;
        }
        return true;
      });
    }
  } else {
    Subset s = hall_violator(g, a, b)->subset;
    bool shrunk = true;
    while (shrunk) {
      shrunk = false;
      for (auto x : s) {
        const Subset smaller = set_difference(s, Subset::from_sorted({x}));
        if (!smaller.empty() && violates(g, a, b, smaller)) {
          s = smaller;
          shrunk = true;
          break;
        }
      }
    }
    chosen = s;
  }
  if (!chosen) throw std::logic_error("structure_witness: no violating subset found");

  StructureWitness w;
  w.min_length = min_length;
  w.s = *chosen;
  w.w = set_union(common_non_neighbours(g, a, b, w.s), Subset::from_sorted({g.neutral()}));
  w.sumset = product_set(g, w.s, w.w);
  const bool inside = std::includes(a.begin(), a.end(), w.sumset.begin(), w.sumset.end());
  if (!inside || w.sumset.size() + 1 >= w.s.size() + w.w.size() ||
      std::min(w.s.size(), w.w.size()) <= 1) {
    throw std::logic_error("structure_witness: witness invariants violated");
  }
  w.quasi_periodic = quasi_periodic_witness(g, w.sumset);
  w.progression = find_progression(g, w.sumset, min_length);
  if (w.quasi_periodic) {
    w.classification = "quasi-periodic";
  } else if (w.progression) {
    w.classification = "progression";
  } else {
    w.classification = "unclassified-at-min-length";
  }
  return w;
}

PropertyScanResult matching_property_scan(const Group& g, std::size_t max_size) {
  const std::size_t order = g.order();
  max_size = std::min(max_size, order - 1);
  std::uint64_t total = 0;
  for (std::size_t k = 1; k <= max_size; ++k) {
    total += binomial(order, k) * binomial(order - 1, k);
    if (total > kMaxPropertyScanPairs) {
      throw Error(ErrorKind::ScaleExceeded, "matching-property scan of " + g.to_string() +
                                                " exceeds " + std::to_string(kMaxPropertyScanPairs) +
                                                " pairs");
    }
  }
  std::vector<Element> all(order), nonzero;
  for (Element x = 0; x < order; ++x) {
    all[x] = x;
    if (x != g.neutral()) nonzero.push_back(x);
  }
  PropertyScanResult result;
  for (std::size_t k = 1; k <= max_size && result.holds; ++k) {
    for_each_combination(all, k, [&](const std::vector<Element>& av) {
      const Subset a = Subset::from_sorted(av);
      return for_each_combination(nonzero, k, [&](const std::vector<Element>& bv) {
        const Subset b = Subset::from_sorted(bv);
        ++result.pairs_checked;
        if (!has_matching(g, a, b)) {
          result.holds = false;
          result.counterexample = std::make_pair(a, b);
          return false;
        }
        return true;
      });
    });
  }
  return result;
}

bool semicoset_representative_check(const Group& g, const Subgroup& h, const Subset& a) {
  return !a.empty() && coset_cover_count(g, a, h) == a.size();
}

}  // namespace addmatch
