#include <gtest/gtest.h>

#include <random>

#include "addmatch/error.hpp"
#include "addmatch/linear_matching.hpp"
#include "addmatch/oracles.hpp"

using namespace addmatch;

namespace {

FieldExtension gf(std::uint32_t p, std::uint32_t m) { return FieldExtension::make(p, m); }

Subspace random_subspace(const FieldExtension& e, std::mt19937_64& rng, std::size_t dim) {
  std::vector<FieldElem> gens;
  while (span(e, gens).dim() < dim) gens.push_back(static_cast<FieldElem>(1 + rng() % (e.size() - 1)));
  return span(e, gens);
}

Subspace random_b(const FieldExtension& e, std::mt19937_64& rng, std::size_t dim) {
  while (true) {
    auto b = random_subspace(e, rng, dim);
    if (!contains(e, b, 1)) return b;
  }
}

OrderedBasis random_basis(const FieldExtension& e, std::mt19937_64& rng, const Subspace& a) {
  std::vector<FieldElem> v;
  while (v.size() < a.dim()) {
    std::vector<std::uint32_t> c(a.dim());
    for (auto& x : c) x = static_cast<std::uint32_t>(rng() % e.p());
    v.push_back(combine(e, a.basis(), c));
    if (span(e, v).dim() != v.size()) v.pop_back();
  }
  return OrderedBasis{v};
}

std::vector<Subspace> all_subspaces(const FieldExtension& e, std::uint32_t k) {
  std::vector<Subspace> out;
  for_each_subspace_of(e, whole_space(e), k, [&](const Subspace& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

}  // namespace

TEST(Criterion, SpecInstances) {
  const auto e8 = gf(2, 3);
  const FieldElem g = e8.generator();
  const auto a = span(e8, {g, e8.mul(g, g)});
  EXPECT_TRUE(basis_matched_criterion(e8, OrderedBasis{{g, e8.mul(g, g)}}, a));

  const auto e16 = gf(2, 4);
  const FieldElem h = e16.generator();
  const FieldElem h5 = e16.pow(h, 5);
  const auto f4 = span(e16, {1, h5});
  const auto b = scale(e16, h, f4);
  EXPECT_TRUE(basis_matched_criterion(e16, OrderedBasis{{1, h5}}, b));
  for (const auto& u : local_intersections(e16, OrderedBasis{{1, h5}}, b)) EXPECT_TRUE(u.is_zero());

  EXPECT_TRUE(basis_matched_criterion(e16, OrderedBasis{{h}}, span(e16, {h5})));
}

TEST(Criterion, Errors) {
  const auto e = gf(2, 4);
  const FieldElem g = e.generator();
  const auto a = span(e, {1, g});
  try {
    space_matchable(e, a, a);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::OneInB);
  }
  try {
    basis_matched_criterion(e, OrderedBasis{{g}}, span(e, {g, e.mul(g, g)}));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::DimensionMismatch);
  }
  EXPECT_THROW(make_ordered_basis(e, {g, g}), Error);
}

TEST(FindMatchedBasis, Cases) {
  const auto e8 = gf(2, 3);
  const FieldElem g = e8.generator();
  const auto a = span(e8, {g, e8.mul(g, g)});
  const auto cert = find_matched_basis(e8, OrderedBasis{{g, e8.mul(g, g)}}, a);
  ASSERT_TRUE(cert.has_value());
  EXPECT_TRUE(verify_matched_basis(e8, a, *cert));

  const auto one = find_matched_basis(e8, OrderedBasis{{g}}, span(e8, {3}));
  ASSERT_TRUE(one.has_value());
  EXPECT_EQ(one->basis_b.vectors, (std::vector<FieldElem>{3}));
}

TEST(FindMatchedBasis, NoneWhenCriterionFails) {
  const auto e = gf(2, 4);
  std::size_t failures = 0;
  for (const auto& a : all_subspaces(e, 2)) {
    for (const auto& b : all_subspaces(e, 2)) {
      if (contains(e, b, 1)) continue;
      const auto r = space_matchable(e, a, b);
      if (r.verdict != Verdict::Unmatched) continue;
      ++failures;
      EXPECT_FALSE(find_matched_basis(e, *r.failing_basis, b).has_value());
    }
  }
  EXPECT_GT(failures, 0u);
}

TEST(SpaceMatchable, PrimeDegreeIsMatched) {
  const auto e = gf(2, 3);
  for (const auto& a : all_subspaces(e, 2)) {
    for (const auto& b : all_subspaces(e, 2)) {
      if (contains(e, b, 1)) continue;
      EXPECT_EQ(space_matchable(e, a, b).verdict, Verdict::Matched);
    }
  }
}

TEST(SpaceMatchable, SampledModeIsLabelled) {
  const auto e = gf(2, 3);
  const FieldElem g = e.generator();
  const auto a = span(e, {g, e.mul(g, g)});
  const auto r = space_matchable(e, a, a, MatchMode::sampled(20, 7));
  EXPECT_EQ(r.verdict, Verdict::MatchedSampled);
  EXPECT_EQ(r.bases_checked, 20u);
}

TEST(SpaceMatchable, BasisCount) {
  EXPECT_EQ(unordered_line_basis_count(2, 2), 3u);
  EXPECT_EQ(unordered_line_basis_count(3, 2), 28u);
  EXPECT_EQ(unordered_line_basis_count(2, 3), 6u);
  EXPECT_EQ(unordered_line_basis_count(1, 5), 1u);
}

TEST(SubfieldAtomWitness, Gf16) {
  const auto e = gf(2, 4);
  bool found = false;
  for (const auto& a : all_subspaces(e, 2)) {
    for (const auto& b : all_subspaces(e, 2)) {
      if (contains(e, b, 1)) continue;
      if (space_matchable(e, a, b).verdict != Verdict::Unmatched) continue;
      const auto w = subfield_atom_witness(e, a, b);
      EXPECT_EQ(w.atom, intermediate_fields(e)[1].space);
      EXPECT_TRUE(w.atom_is_field);
      EXPECT_TRUE(w.atom_properly_contains_k);
      EXPECT_TRUE(contains(e, w.w_j, 1));
      found = true;
    }
  }
  EXPECT_TRUE(found);
  const auto e8 = gf(2, 3);
  const FieldElem g = e8.generator();
  const auto a = span(e8, {g, e8.mul(g, g)});
  try {
    subfield_atom_witness(e8, a, a);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::NotUnmatchable);
  }
}

TEST(LinearConditions, SpecInstances) {
  const auto e = gf(2, 6);
  const FieldElem g = e.generator();
  // <g, g^2, g^3> meets GF(8) under x^6+x+1 (and meets GF(4) or GF(8)
  // under every other modulus), so part (1) fails on it.
  const auto b3 = span(e, {g, e.pow(g, 2), e.pow(g, 3)});
  EXPECT_FALSE(intersection(e, b3, intermediate_fields(e)[2].space).is_zero());
  EXPECT_FALSE(check_linear_condition(e, span(e, {1, g, e.pow(g, 7)}), b3, 1).holds);
  const auto b = span(e, {g, e.pow(g, 2), e.pow(g, 5)});
  EXPECT_TRUE(intersection(e, b, intermediate_fields(e)[1].space).is_zero());
  EXPECT_TRUE(intersection(e, b, intermediate_fields(e)[2].space).is_zero());
  EXPECT_TRUE(check_linear_condition(e, span(e, {1, g, e.pow(g, 7)}), b, 1).holds);

  const auto a2 = span(e, {1, g});
  const auto b2 = span(e, {g, e.pow(g, 2)});
  EXPECT_TRUE(check_linear_condition(e, a2, b2, 2).holds);
  EXPECT_FALSE(check_linear_condition(e, intermediate_fields(e)[1].space, b2, 2).holds);

  EXPECT_TRUE(check_linear_condition(e, span(e, {g}), span(e, {e.pow(g, 5)}), 3).holds);
  EXPECT_FALSE(check_linear_condition(e, a2, a2, 1).holds);
}

TEST(LinearProperty, CriterionMatchesOrderedBasisOracle) {
  std::mt19937_64 rng(41);
  for (const auto& e : {gf(2, 3), gf(2, 4), gf(3, 3)}) {
    for (int t = 0; t < 150; ++t) {
      const auto a = random_subspace(e, rng, 2);
      const auto b = random_b(e, rng, 2);
      const auto basis = random_basis(e, rng, a);
      const bool crit = basis_matched_criterion(e, basis, b);
      ASSERT_EQ(crit, oracle::ordered_basis_match_exists(e, basis, b));
      const auto cert = find_matched_basis(e, basis, b);
      ASSERT_EQ(crit, cert.has_value());
      if (!cert) continue;
      EXPECT_TRUE(verify_matched_basis(e, b, *cert));
      for (std::size_t i = 0; i < basis.size(); ++i) {
        EXPECT_FALSE(contains(e, a, e.mul(cert->basis_a.vectors[i], cert->basis_b.vectors[i])));
      }
    }
  }
}

TEST(LinearProperty, ScalingInvariance) {
  std::mt19937_64 rng(42);
  const auto e = gf(3, 3);
  for (int t = 0; t < 200; ++t) {
    const auto a = random_subspace(e, rng, 2);
    const auto b = random_b(e, rng, 2);
    auto basis = random_basis(e, rng, a);
    const bool before = basis_matched_criterion(e, basis, b);
    const std::size_t i = rng() % 2;
    basis.vectors[i] = e.scale(2, basis.vectors[i]);
    EXPECT_EQ(before, basis_matched_criterion(e, basis, b));
  }
}

TEST(LinearProperty, SufficientConditionsAreSound) {
  for (const auto& e : {gf(2, 4), gf(3, 2), gf(2, 6)}) {
    std::mt19937_64 rng(e.size());
    for (int t = 0; t < 120; ++t) {
      const std::size_t n = e.m() == 2 ? 1 : 2 + (e.m() == 6 ? rng() % 2 : 0);
      const auto a = random_subspace(e, rng, n);
      const auto b = random_b(e, rng, n);
      const bool matched = space_matchable(e, a, b).verdict == Verdict::Matched;
      for (const auto& r : check_linear_conditions(e, a, b)) {
        if (r.holds) EXPECT_TRUE(matched) << "part " << r.part;
      }
    }
  }
}
