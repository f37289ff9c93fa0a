// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance          run every criterion
//   acceptance 3 7      run the listed criteria

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "addmatch/cli.hpp"
#include "addmatch/group_matching.hpp"
#include "addmatch/instance.hpp"
#include "addmatch/linear_matching.hpp"
#include "addmatch/oracles.hpp"
#include "addmatch/search.hpp"

using namespace addmatch;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? " ok" : " FAILED");
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

Subset set(const Group& g, std::vector<Element> v) { return Subset(g, std::move(v)); }

Subset random_subset(const Group& g, std::mt19937_64& rng, std::size_t k, bool avoid_zero) {
  std::vector<Element> pool;
  for (Element x = avoid_zero ? 1 : 0; x < g.order(); ++x) pool.push_back(x);
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(std::min(k, pool.size()));
  return Subset(g, pool);
}

Group random_group(std::mt19937_64& rng, std::uint32_t max_order) {
  static const std::vector<std::vector<std::uint32_t>> noncyclic = {
      {2, 2}, {2, 4}, {2, 6}, {3, 3}, {2, 8}, {3, 6}, {4, 4}, {2, 2, 2}, {2, 10}, {2, 2, 4}, {5, 5}, {2, 12}, {3, 9}, {2, 2, 6}};
  if (rng() % 4 == 0) {
    for (;;) {
      const auto& f = noncyclic[rng() % noncyclic.size()];
      const Group g(f);
      if (g.order() <= max_order) return g;
    }
  }
  return Group::cyclic(2 + static_cast<std::uint32_t>(rng() % (max_order - 1)));
}

std::vector<Subgroup> nontrivial_subgroups(const Group& g) {
  std::vector<Subgroup> out;
  for (auto& h : subgroups(g)) {
    if (h.order() > 1) out.push_back(std::move(h));
  }
  return out;
}

FieldExtension gf(std::uint32_t p, std::uint32_t m) { return FieldExtension::make(p, m); }

std::vector<Subspace> all_subspaces(const FieldExtension& e, std::uint32_t k) {
  std::vector<Subspace> out;
  for_each_subspace_of(e, whole_space(e), k, [&](const Subspace& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

Subspace random_subspace_of(const FieldExtension& e, std::mt19937_64& rng, const Subspace& u, std::size_t dim) {
  std::vector<FieldElem> gens;
  while (span(e, gens).dim() < dim) {
    std::vector<std::uint32_t> c(u.dim());
    for (auto& x : c) x = static_cast<std::uint32_t>(rng() % e.p());
    gens.push_back(combine(e, u.basis(), c));
  }
  return span(e, gens);
}

bool multiplicatively_closed(const FieldExtension& e, const Subspace& s) {
  const auto el = elements(e, s);
  for (auto x : el) {
    for (auto y : el) {
      if (!contains(e, s, e.mul(x, y))) return false;
    }
  }
  return true;
}

std::string str(std::uint64_t n) { return std::to_string(n); }

// --- criteria -------------------------------------------------------------

Outcome c1() {
  Outcome o;
  const auto z15 = Group::cyclic(15);
  {
    const auto a = set(z15, {5, 6, 7}), b = set(z15, {1, 2, 3});
    const auto h = generated_subgroup(z15, std::vector<Element>{5});
    const auto k = generated_subgroup(z15, std::vector<Element>{3});
    const auto p2 = check_condition(z15, a, b, 2);
    o.require(has_matching(z15, a, b), "Ex3.6 matched");
    o.require(p2.holds && p2.l == 2u, "Ex3.6 part(2) l=2");
    o.require(coset_cover_count(z15, a, h) == 3 && coset_cover_count(z15, a, k) == 3 &&
                  coset_cover_count(z15, b, h) == 3 && coset_cover_count(z15, b, k) == 3,
              "Ex3.6 cover counts 3");
  }
  {
    const auto a = set(z15, {1, 2, 3, 9, 14}), b = set(z15, {4, 5, 6, 10, 13});
    const auto p3 = check_condition(z15, a, b, 3);
    o.require(p3.holds && p3.l == 3u && a.size() == 5, "Ex3.7 part(3) l=3 n=5");
    o.require(has_matching(z15, a, b), "Ex3.7 matched");
  }
  {
    const auto z128 = Group::cyclic(128);
    const auto a = set(z128, {0, 1, 2, 4, 8, 16, 32, 64, 15, 60, 101, 87});
    const auto b = set(z128, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12});
    o.require(a.size() == 12 && is_sidon_subset(z128, a), "Ex3.8 Sidon");
    o.require(check_condition(z128, a, b, 5).holds, "Ex3.8 part(5)");
  }
  {
    const auto z35 = Group::cyclic(35);
    const auto a = set(z35, {1, 8, 15, 22, 30});
    o.require(p_of_group(z35) == 5, "Ex3.9 p(Z35)=5");
    o.require(check_condition(z35, a, set(z35, {1, 2, 3, 4, 5}), 4).holds, "Ex3.9 part(4)");
  }
  {
    const auto z9 = Group::cyclic(9);
    const auto a = set(z9, {0, 4, 8}), b = set(z9, {3, 6, 8});
    const auto proper = nontrivial_subgroups(z9);
    o.require(proper.size() == 2 && proper.front().elements == set(z9, {0, 3, 6}), "Z9 H={0,3,6}");
    o.require(check_condition(z9, a, b, 7).holds, "Z9 part(7)");
    o.require(has_matching(z9, a, b), "Z9 matched");
  }
  return o;
}

Outcome c2() {
  Outcome o;
  const auto z35 = Group::cyclic(35);
  const auto a = set(z35, {1, 8, 15, 22, 30});
  std::vector<Element> pool(34);
  std::iota(pool.begin(), pool.end(), 1);
  std::uint64_t count = 0, failures = 0;
  for_each_combination(std::span<const Element>(pool), 5, [&](const std::vector<Element>& b) {
    ++count;
    if (!has_matching(z35, a, Subset::from_sorted(b))) ++failures;
    return true;
  });
  o.require(count == 278256, "subsets=" + str(count));
  o.require(failures == 0, "failures=" + str(failures));
  return o;
}

Outcome c3() {
  Outcome o;
  const auto z128 = Group::cyclic(128);
  const auto a = set(z128, {0, 1, 2, 4, 8, 16, 32, 64, 15, 60, 101, 87});
  std::mt19937_64 rng(3);
  std::uint64_t failures = 0;
  for (int t = 0; t < 1000; ++t) {
    if (!has_matching(z128, a, random_subset(z128, rng, 12, true))) ++failures;
  }
  o.require(failures == 0, "1000 samples, failures=" + str(failures));
  return o;
}

Outcome c4() {
  Outcome o;
  for (std::uint32_t n : {5u, 7u}) {
    const auto r = matching_property_scan(Group::cyclic(n), n - 1);
    o.require(r.holds, "Z" + str(n) + " matching property (" + str(r.pairs_checked) + " pairs)");
  }
  for (std::uint32_t n : {4u, 6u, 8u, 9u}) {
    GroupSearchOptions opt;
    opt.min_order = opt.max_order = n;
    opt.max_size = n - 1;
    opt.min_progression_length = 2;
    const auto r = unmatchable_group_search(opt, SearchBudget{});
    std::uint64_t bad = 0;
    for (const auto& rec : r.records) {
      const auto inst = parse_instance(rec["group"].get<std::string>() + " A=" + rec["A"].get<std::string>() +
                                       " B=" + rec["B"].get<std::string>());
      const auto& g = *inst.group;
      const auto w = structure_witness(g, inst.subset("A"), inst.subset("B"), 2);
      const bool ok = w.sumset == product_set(g, w.s, w.w) && w.sumset.size() + 1 < w.s.size() + w.w.size() &&
                      std::min(w.s.size(), w.w.size()) > 1 &&
                      (w.classification == "progression" || w.classification == "quasi-periodic") &&
                      rec["oracle_verified"].get<bool>();
      if (!ok) ++bad;
    }
    o.require(!r.records.empty() && bad == 0 && r.exhausted,
              "Z" + str(n) + " unmatchable=" + str(r.records.size()) + " bad witnesses=" + str(bad));
  }
  return o;
}

Outcome c5() {
  Outcome o;
  std::mt19937_64 rng(5);
  std::uint64_t disagreements = 0, unmatched = 0;
  for (int t = 0; t < 10000; ++t) {
    const auto g = random_group(rng, 60);
    const std::size_t k = 1 + rng() % std::min<std::size_t>(8, g.order() - 1);
    const auto a = random_subset(g, rng, k, false);
    const auto b = random_subset(g, rng, k, true);
    const bool fast = has_matching(g, a, b);
    if (!fast) ++unmatched;
    if (fast != oracle::permutation_matching_exists(g, a, b) || fast != oracle::hall_scan_matchable(g, a, b)) {
      ++disagreements;
    }
  }
  o.require(disagreements == 0, "10000 instances (" + str(unmatched) + " unmatched), disagreements=" + str(disagreements));
  return o;
}

Outcome c6() {
  Outcome o;
  constexpr int kInstances = 10000;
  std::mt19937_64 rng(6);
  {  // Kneser
    std::uint64_t v = 0;
    for (int t = 0; t < kInstances; ++t) {
      const auto g = random_group(rng, 60);
      const auto a = random_subset(g, rng, 1 + rng() % 8, false);
      const auto b = random_subset(g, rng, 1 + rng() % 8, false);
      const auto ab = product_set(g, a, b);
      if (ab.size() + stabilizer(g, ab).order() < a.size() + b.size()) ++v;
    }
    o.require(v == 0, "Kneser violations=" + str(v));
  }
  {  // Thm 2.4: one nontrivial H stabilizes every small sumset of a fixed A
    std::uint64_t v = 0, small = 0;
    for (int t = 0; t < kInstances; ++t) {
      const auto g = random_group(rng, 40);
      const auto a = random_subset(g, rng, 2 + rng() % 6, false);
      std::optional<Subset> common;
      for (int i = 0; i < 20; ++i) {
        const auto b = random_subset(g, rng, 2 + rng() % 6, false);
        const auto ab = product_set(g, a, b);
        if (ab.size() + 1 >= a.size() + b.size()) continue;
        ++small;
        const auto h = stabilizer(g, ab).elements;
        common = common ? set_intersection(*common, h) : h;
      }
      if (common && common->size() < 2) ++v;
    }
    o.require(v == 0, "Thm2.4 violations=" + str(v) + " (" + str(small) + " small sumsets)");
  }
  {  // Multiplicity bound
    std::uint64_t v = 0;
    for (int t = 0; t < kInstances; ++t) {
      const auto g = random_group(rng, 40);
      const auto a = random_subset(g, rng, 1 + rng() % 8, false);
      const auto b = random_subset(g, rng, 1 + rng() % 8, false);
      const auto ab = product_set(g, a, b);
      if (ab.size() >= a.size() + b.size()) continue;
      const std::size_t k = a.size() + b.size() - ab.size();
      for (auto x : ab) {
        if (multiplicity(g, a, b, x) < k) ++v;
      }
    }
    o.require(v == 0, "multiplicity violations=" + str(v));
  }
  {  // Cor 2.8: A+B inside a Sidon set
    std::uint64_t v = 0;
    for (int t = 0; t < kInstances; ++t) {
      const auto g = random_group(rng, 60);
      std::vector<Element> order(g.order());
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      std::vector<Element> c;
      for (auto x : order) {
        c.push_back(x);
        if (!is_sidon_subset(g, Subset(g, c))) c.pop_back();
      }
      const Subset cs(g, c);
      const Element b0 = static_cast<Element>(rng() % g.order());
      std::vector<Element> shifted;
      for (auto x : cs) shifted.push_back(g.sub(x, b0));
      std::shuffle(shifted.begin(), shifted.end(), rng);
      shifted.resize(1 + rng() % std::min<std::size_t>(4, shifted.size()));
      const Subset a(g, shifted);
      std::vector<Element> bs;
      for (Element b = 0; b < g.order(); ++b) {
        if (b == b0 || (rng() % 2 && std::all_of(a.begin(), a.end(), [&](Element x) { return cs.contains(g.add(x, b)); }))) {
          bs.push_back(b);
        }
      }
      const Subset b(g, bs);
      const auto ab = product_set(g, a, b);
      if (!std::all_of(ab.begin(), ab.end(), [&](Element x) { return cs.contains(x); })) ++v;
      if (ab.size() + 1 < a.size() + b.size()) ++v;
    }
    o.require(v == 0, "Cor2.8 violations=" + str(v));
  }
  {  // Thm 2.5
    std::uint64_t v = 0;
    for (int t = 0; t < kInstances; ++t) {
      const auto g = random_group(rng, 60);
      std::vector<Element> av{0};
      for (Element x = 1; x < g.order(); ++x) {
        if (element_order(g, x) == g.order() && rng() % 3 == 0) av.push_back(x);
      }
      const Subset a(g, av);
      bool hyp = true;
      for (const auto& h : subgroups(g)) {
        if (h.order() == g.order()) continue;
        if (set_intersection(a, h.elements).size() != 1) hyp = false;
      }
      if (!hyp) ++v;  // the construction must satisfy the hypothesis
      const auto s = random_subset(g, rng, 1 + rng() % g.order(), false);
      if (product_set(g, a, s).size() < std::min<std::size_t>(g.order(), a.size() + s.size() - 1)) ++v;
    }
    o.require(v == 0, "Thm2.5 violations=" + str(v));
  }
  {  // Thm 2.9
    std::uint64_t v = 0, applicable = 0;
    for (int t = 0; t < kInstances; ++t) {
      const auto g = random_group(rng, 60);
      const auto a = random_subset(g, rng, 1 + rng() % (g.order() - 1), false);
      const auto b = random_subset(g, rng, 1 + rng() % std::min<std::uint32_t>(8, g.order() - 1), false);
      const auto ab = product_set(g, a, b);
      const auto lhs = set_union(a, ab);
      const auto gen = generated_subgroup(g, b.elements());
      if (lhs == product_set(g, a, gen.elements)) continue;
      ++applicable;
      std::uint32_t vb = g.order();
      for (auto x : b) vb = std::min(vb, element_order(g, x));
      if (lhs.size() < a.size() + std::min<std::size_t>(b.size(), vb)) ++v;
    }
    o.require(v == 0, "Thm2.9 violations=" + str(v) + " (" + str(applicable) + " applicable)");
  }
  {  // Prop 2.3, exhaustive over subsets with |A|,|B| <= 6 in Z_n
    std::uint64_t v = 0, tried = 0;
    int held = 0;
    while (held < kInstances && tried < 50ull * kInstances) {
      ++tried;
      const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng() % 59);
      const auto g = Group::cyclic(n);
      const auto a = random_subset(g, rng, 1 + rng() % 6, false);
      const auto b = random_subset(g, rng, 1 + rng() % 6, false);
      bool hyp = true;
      for (const auto& h : nontrivial_subgroups(g)) {
        if (max_coset_intersection(g, a, h) + max_coset_intersection(g, b, h) > h.order() + 1) hyp = false;
      }
      if (!hyp) continue;
      ++held;
      const std::uint64_t full = n == 64 ? ~0ull : (1ull << n) - 1;
      auto rotate = [&](std::uint64_t m, Element s) { return s == 0 ? m : ((m << s) | (m >> (n - s))) & full; };
      for (std::uint32_t sm = 1; sm < (1u << a.size()); ++sm) {
        std::uint64_t smask = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
          if (sm >> i & 1) smask |= 1ull << a[i];
        }
        for (std::uint32_t tm = 1; tm < (1u << b.size()); ++tm) {
          std::uint64_t sum = 0;
          for (std::size_t j = 0; j < b.size(); ++j) {
            if (tm >> j & 1) sum |= rotate(smask, b[j]);
          }
          if (std::popcount(sum) + 1 < std::popcount(sm) + std::popcount(tm)) ++v;
        }
      }
    }
    o.require(v == 0 && held == kInstances, "Prop2.3 violations=" + str(v) + " over " + str(held) + " instances");
  }
  {  // Prop 2.12
    std::uint64_t v = 0;
    int held = 0;
    while (held < kInstances) {
      const auto g = random_group(rng, 60);
      const auto subs = subgroups(g);
      const auto& k = subs[rng() % subs.size()];
      std::vector<Element> av;
      const std::size_t cosets = 1 + rng() % 3;
      for (std::size_t i = 0; i < cosets; ++i) {
        const Element t = static_cast<Element>(rng() % g.order());
        for (auto x : k.elements) av.push_back(g.add(x, t));
      }
      const Subset a(g, av);
      const auto st = stabilizer(g, a).elements;
      std::vector<Element> bv(st.begin(), st.end());
      std::shuffle(bv.begin(), bv.end(), rng);
      if (rng() % 2) bv.resize(1 + rng() % bv.size());
      const Subset b(g, bv);
      if (product_set(g, a, b) != a || a.size() > b.size()) continue;
      ++held;
      const auto gen = generated_subgroup(g, b.elements());
      if (gen.elements != b || !is_coset_of(g, a, gen)) ++v;
    }
    o.require(v == 0, "Prop2.12 violations=" + str(v) + " over " + str(held) + " instances");
  }
  return o;
}

Outcome c7() {
  Outcome o;
  for (const auto& e : {gf(2, 3), gf(2, 5)}) {
    std::uint64_t pairs = 0, unmatched = 0;
    for (std::uint32_t n = 1; n <= 2; ++n) {
      const auto pool = all_subspaces(e, n);
      for (const auto& a : pool) {
        for (const auto& b : pool) {
          if (contains(e, b, 1)) continue;
          ++pairs;
          if (space_matchable(e, a, b).verdict != Verdict::Matched) ++unmatched;
        }
      }
    }
    o.require(unmatched == 0, e.to_string() + " pairs=" + str(pairs) + " unmatched=" + str(unmatched));
  }
  const auto e = gf(2, 4);
  const auto gf4 = intermediate_fields(e)[1].space;
  std::uint64_t hits = 0, good = 0;
  const auto pool = all_subspaces(e, 2);
  for (const auto& a : pool) {
    for (const auto& b : pool) {
      if (contains(e, b, 1)) continue;
      const auto r = space_matchable(e, a, b);
      if (r.verdict != Verdict::Unmatched) continue;
      ++hits;
      const auto w = subfield_atom_witness(e, a, b, r.failing_basis);
      if (w.atom == gf4 && w.atom_is_field && multiplicatively_closed(e, w.atom) && w.atom_properly_contains_k) ++good;
    }
  }
  o.require(hits > 0 && good == hits, "GF(2^4) unmatched=" + str(hits) + " atom=GF(4) in " + str(good));
  return o;
}

Outcome c8() {
  Outcome o;
  for (const auto& e : {gf(2, 3), gf(2, 4)}) {
    std::uint64_t bases = 0, disagree = 0, bad_cert = 0;
    const auto pool = all_subspaces(e, 2);
    for (const auto& a : pool) {
      const auto el = elements(e, a);
      for (auto x : el) {
        for (auto y : el) {
          if (x == 0 || y == 0 || span(e, {x, y}).dim() != 2) continue;
          const OrderedBasis basis{{x, y}};
          for (const auto& b : pool) {
            if (contains(e, b, 1)) continue;
            ++bases;
            const bool crit = basis_matched_criterion(e, basis, b);
            if (crit != oracle::ordered_basis_match_exists(e, basis, b)) ++disagree;
            const auto cert = find_matched_basis(e, basis, b);
            if (cert.has_value() != crit) ++disagree;
            if (!cert) continue;
            bool ok = verify_matched_basis(e, b, *cert);
            for (std::size_t i = 0; i < 2; ++i) {
              ok = ok && !contains(e, a, e.mul(cert->basis_a.vectors[i], cert->basis_b.vectors[i]));
            }
            if (!ok) ++bad_cert;
          }
        }
      }
    }
    o.require(disagree == 0 && bad_cert == 0, e.to_string() + " checks=" + str(bases) + " disagreements=" +
                                                   str(disagree) + " bad certificates=" + str(bad_cert));
  }
  return o;
}

Outcome c9() {
  Outcome o;
  for (const auto& e : {gf(2, 6), gf(3, 4)}) {
    std::mt19937_64 rng(9 + e.size());
    std::vector<IntermediateField> mids;
    for (auto& f : intermediate_fields(e)) {
      if (f.degree > 1 && f.degree < e.m()) mids.push_back(f);
    }
    const auto whole = whole_space(e);
    std::map<Subspace, AtomReport> atoms;
    std::uint64_t kneser = 0, dichotomy = 0, atom_bad = 0, small = 0, premises = 0;
    for (int t = 0; t < 5000; ++t) {
      Subspace a, b;
      if (t % 2 == 0 || mids.empty()) {
        a = random_subspace_of(e, rng, whole, 1 + rng() % 3);
        b = random_subspace_of(e, rng, whole, 1 + rng() % 3);
      } else {
        // Subspaces of M and of a coset bM, where small products are common.
        const auto& m = mids[rng() % mids.size()];
        a = random_subspace_of(e, rng, m.space, 1 + rng() % m.degree);
        const FieldElem u = static_cast<FieldElem>(1 + rng() % (e.size() - 1));
        b = random_subspace_of(e, rng, scale(e, u, m.space), 1 + rng() % m.degree);
      }
      const auto ab = span_product(e, a, b);
      const auto st = stabilizer_subfield(e, ab);
      if (ab.dim() + st.degree < a.dim() + b.dim()) ++kneser;
      if (ab.dim() + 1 < a.dim() + b.dim()) {
        ++small;
        if (st.degree <= 1 || span_product(e, st.space, ab) != ab) ++dichotomy;
      }
      // Thm 2.18 with S = a^{-1}A for a nonzero a in A, so that 1 ∈ S.
      const FieldElem a0 = a.basis().front();
      const auto s = scale(e, e.inv(a0), a);
      const auto sb = span_product(e, s, b);
      if (sb.dim() + 1 < s.dim() + b.dim() && s.dim() + b.dim() - 1 < e.m()) {
        ++premises;
        auto it = atoms.find(s);
        if (it == atoms.end()) it = atoms.emplace(s, atom_report(e, s)).first;
        const auto& atom = it->second.atom;
        if (!(multiplicatively_closed(e, atom) && is_subfield(e, atom) && atom.dim() > 1)) ++atom_bad;
      }
    }
    o.require(kneser == 0 && dichotomy == 0 && atom_bad == 0,
              e.to_string() + " 5000 pairs: Kneser=" + str(kneser) + " Thm2.17=" + str(dichotomy) + "/" + str(small) +
                  " Thm2.18=" + str(atom_bad) + "/" + str(premises));
  }
  return o;
}

Outcome c10() {
  Outcome o;
  const auto run51 = [] { return conjecture_5_1_scan(gf(2, 4), 2, SearchBudget{}); };
  const auto r51 = run51();
  o.require(r51.records.empty() && r51.exhausted && r51.to_jsonl() == run51().to_jsonl(),
            "5.1 GF(2^4) dims<=2 checked=" + str(r51.instances_checked));
  for (std::uint32_t m : {4u, 5u}) {
    const auto run52 = [m] { return conjecture_5_2_scan(gf(2, m), 2, SearchBudget{}); };
    const auto r = run52();
    o.require(r.records.empty() && r.exhausted && r.to_jsonl() == run52().to_jsonl(),
              "5.2 GF(2^" + str(m) + ") n=2 checked=" + str(r.instances_checked));
  }
  for (std::uint32_t m : {4u, 6u, 5u}) {
    const auto r = max_chowla_dimension(gf(2, m), SearchBudget{});
    o.require(r.meets_lower_bound && is_chowla_subspace(gf(2, m), r.witness),
              "Chowla max GF(2^" + str(m) + ")=" + str(r.dimension) + (r.exhaustive ? " exact" : " lower") +
                  " bound " + str(r.lower_bound));
  }
  return o;
}

Outcome c11() {
  Outcome o;
  const std::vector<std::vector<std::string>> cmds = {
      {"match", "Z15", "A={5,6,7}", "B={1,2,3}"},
      {"match", "Z4", "A={0,2}", "B={1,2}"},
      {"certify", "Z15", "A={1,2,3,9,14}", "B={4,5,6,10,13}"},
      {"conditions", "Z9", "A={0,4,8}", "B={3,6,8}"},
      {"witness", "Z8", "A={0,4}", "B={4,5}", "--min-progression-length", "2"},
      {"scan-property", "Z7"},
      {"linear-match", "GF(2^4)", "A=<1,g^5>", "B=<g,g^6>"},
      {"linear-match", "GF(2^6)", "A=<1,g,g^2>", "B=<g^3,g^4,g^11>", "--samples", "40", "--seed", "11"},
      {"certify", "GF(2^4)", "A=<1,g^2+g>", "B=<g,g^2>"},
      {"linear-conditions", "GF(2^6)", "A=<1,g,g^7>", "B=<g,g^2,g^5>"},
      {"atom", "GF(3^3)", "A=<1,g>"},
      {"witness", "GF(2^4)", "A=<1,g^2+g>", "B=<g,g^2>"},
      {"conjecture1", "GF(2^6)", "dims=3", "--samples", "300", "--seed", "1", "--threads", "4"},
      {"conjecture2", "GF(2^4)", "n=2"},
      {"chowla-max", "GF(2^6)"},
      {"search-unmatchable", "Z4..Z10", "sizes=4", "--threads", "4"},
      {"search-unmatchable", "GF(2^4)", "n=2"},
  };
  std::uint64_t differing = 0;
  for (const auto& c : cmds) {
    const auto a = cli::run(c), b = cli::run(c);
    if (a.output != b.output || a.exit_code != b.exit_code || a.output.empty()) {
      ++differing;
      o.note("differs: " + c.front());
    }
  }
  o.require(differing == 0, str(cmds.size()) + " commands byte-identical");
  return o;
}

struct Criterion {
  int id;
  double limit_seconds;  // 0: none
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, 1, c1},   {2, 120, c2}, {3, 5, c3},   {4, 60, c4},  {5, 0, c5},    {6, 120, c6},
      {7, 300, c7}, {8, 0, c8},   {9, 0, c9},   {10, 600, c10}, {11, 0, c11},
  };
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::stoi(argv[i]));
  bool ok = true;
  for (const auto& c : all) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& ex) {
      out.pass = false;
      out.note(std::string("exception: ") + ex.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_seconds > 0 && secs > c.limit_seconds) {
      out.pass = false;
      out.note("over time limit " + std::to_string(static_cast<int>(c.limit_seconds)) + " s");
    }
    std::printf("criterion %d: %s  %s  (%.2f s)\n", c.id, out.pass ? "PASS" : "FAIL", out.detail.c_str(), secs);
    ok = ok && out.pass;
  }
  return ok ? 0 : 1;
}
