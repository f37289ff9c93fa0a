#include "addmatch/search.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

#include "addmatch/error.hpp"
#include "addmatch/group_matching.hpp"
#include "addmatch/instance.hpp"
#include "addmatch/linear_matching.hpp"
#include "addmatch/oracles.hpp"

namespace addmatch {

bool ScanReport::has_flag(const std::string& f) const {
  return std::find(flags.begin(), flags.end(), f) != flags.end();
}

Json ScanReport::summary() const {
  Json j = report_header("scan", scan);
  j["parameters"] = parameters;
  j["orbit_reduction"] = orbit_reduction;
  j["instances_checked"] = instances_checked;
  j["exhausted"] = exhausted;
  j["flags"] = flags;
  j["hits"] = records.size();
  return j;
}

std::string ScanReport::to_jsonl() const {
  std::string out;
  for (const auto& r : records) out += r.dump() + "\n";
  out += summary().dump() + "\n";
  return out;
}

namespace {

struct JobResult {
  std::uint64_t checked = 0;
  std::vector<Json> records;
};

struct RunResult {
  std::uint64_t checked = 0;
  bool completed = true;
  std::vector<Json> records;
};

// Runs job(i) for every i < jobs on budget.threads threads, residue i mod t
// on thread t. The deadline is checked between jobs only.
template <typename Job>
RunResult run_jobs(std::uint64_t jobs, const SearchBudget& budget, Job&& job) {
  const unsigned threads = std::max(1u, budget.threads);
  const auto start = std::chrono::steady_clock::now();
  std::vector<JobResult> results(jobs);
  std::vector<char> done(jobs, 0);
  std::atomic<bool> stop{false};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&](unsigned t) {
    try {
      for (std::uint64_t i = t; i < jobs; i += threads) {
        if (stop.load()) return;
        if (budget.time_limit.count() > 0 && std::chrono::steady_clock::now() - start > budget.time_limit) {
          stop = true;
          return;
        }
        results[i] = job(i);
        done[i] = 1;
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      stop = true;
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  RunResult out;
  for (std::uint64_t i = 0; i < jobs; ++i) {
    if (!done[i]) {
      out.completed = false;
      continue;
    }
    out.checked += results[i].checked;
    for (auto& r : results[i].records) out.records.push_back(std::move(r));
  }
  return out;
}

std::mt19937_64 instance_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

Json budget_json(const SearchBudget& b) {
  Json j;
  j["max_instances"] = b.max_instances;
  j["seed"] = b.seed;
  j["exhaustive"] = b.exhaustive;
  return j;
}

std::vector<Subspace> subspaces_of_dim(const FieldExtension& e, const Subspace& u, std::uint32_t k) {
  std::vector<Subspace> out;
  for_each_subspace_of(e, u, k, [&](const Subspace& s) {
    out.push_back(s);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

// Least subspace in the orbit of X under multiplication by L*.
Subspace orbit_canonical(const FieldExtension& e, const Subspace& x) {
  Subspace best = x;
  for (FieldElem u = 2; u < e.size(); ++u) {
    if (normalize(e, u) != u) continue;
    Subspace y = scale(e, u, x);
    if (y < best) best = std::move(y);
  }
  return best;
}

std::vector<Subspace> orbit_representatives(const FieldExtension& e, const std::vector<Subspace>& pool) {
  std::vector<Subspace> reps;
  for (const auto& x : pool) {
    if (orbit_canonical(e, x) == x) reps.push_back(x);
  }
  return reps;
}

Subspace random_subspace(const FieldExtension& e, std::mt19937_64& rng, std::size_t dim) {
  std::vector<FieldElem> gens;
  while (span(e, gens).dim() < dim) gens.push_back(static_cast<FieldElem>(1 + rng() % (e.size() - 1)));
  return span(e, gens);
}

std::vector<Subspace> all_nonzero_subspaces(const FieldExtension& e, const Subspace& u) {
  std::vector<Subspace> out;
  for (std::uint32_t k = 1; k <= u.dim(); ++k) {
    for_each_subspace_of(e, u, k, [&](const Subspace& s) {
      out.push_back(s);
      return true;
    });
  }
  return out;
}

// dim⟨ST⟩ through element lists, independent of span_product.
std::size_t product_dim_by_elements(const FieldExtension& e, const Subspace& s, const Subspace& t) {
  std::vector<FieldElem> products;
  for (auto x : elements(e, s)) {
    for (auto y : elements(e, t)) products.push_back(e.mul(x, y));
  }
  return span(e, products).dim();
}

}  // namespace

// ---------------------------------------------------------------------------

ScanReport conjecture_5_1_scan(const FieldExtension& e, std::uint32_t max_dim, const SearchBudget& budget) {
  ScanReport rep;
  rep.scan = "conjecture1";
  rep.parameters = {{"field", e.to_string()}, {"max_dim", max_dim}, {"budget", budget_json(budget)}};
  if (max_dim < 1) throw Error(ErrorKind::InvalidArgument, "max_dim must be >= 1");
  max_dim = std::min(max_dim, e.m());

  std::vector<IntermediateField> fields;
  for (auto& f : intermediate_fields(e)) {
    if (f.degree > 1 && f.degree < e.m()) fields.push_back(std::move(f));
  }
  if (fields.empty()) {
    rep.flags.push_back("vacuous");
    rep.exhausted = true;
    return rep;
  }
  const auto lines = line_representatives(e, whole_space(e));
  // max over a of dim(aM ∩ X), for every intermediate M.
  auto coset_profile = [&](const Subspace& x) {
    std::vector<std::size_t> prof;
    for (const auto& f : fields) {
      std::size_t best = 0;
      for (auto a : lines) best = std::max(best, intersection(e, scale(e, a, f.space), x).dim());
      prof.push_back(best);
    }
    return prof;
  };
  auto hypothesis = [&](const std::vector<std::size_t>& pa, const std::vector<std::size_t>& pb) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (pa[i] + pb[i] > fields[i].degree + 1) return false;
    }
    return true;
  };
  std::atomic<std::uint64_t> hypothesis_count{0};
  auto check_pair = [&](const Subspace& a, const Subspace& b, const std::vector<std::size_t>& pa,
                        const std::vector<std::size_t>& pb) {
    JobResult r;
    r.checked = 1;
    if (!hypothesis(pa, pb)) return r;
    ++hypothesis_count;
    const auto ss = all_nonzero_subspaces(e, a);
    const auto ts = all_nonzero_subspaces(e, b);
    for (const auto& s : ss) {
      for (const auto& t : ts) {
        const std::size_t d = span_product(e, s, t).dim();
        if (d + 1 >= s.dim() + t.dim()) continue;
        if (product_dim_by_elements(e, s, t) != d) throw std::logic_error("span_product disagrees with oracle");
        Json rec;
        rec["field"] = e.to_string();
        rec["A"] = subspace_to_string(e, a);
        rec["B"] = subspace_to_string(e, b);
        rec["S"] = subspace_to_string(e, s);
        rec["T"] = subspace_to_string(e, t);
        rec["dim_ST"] = d;
        r.records.push_back(std::move(rec));
        return r;
      }
    }
    return r;
  };

  RunResult run;
  if (budget.exhaustive) {
    rep.orbit_reduction = "A and B up to multiplication by L*";
    std::vector<Subspace> reps;
    for (std::uint32_t d = 1; d <= max_dim; ++d) {
      const auto r = orbit_representatives(e, subspaces_of_dim(e, whole_space(e), d));
      reps.insert(reps.end(), r.begin(), r.end());
    }
    std::vector<std::vector<std::size_t>> profiles;
    for (const auto& x : reps) profiles.push_back(coset_profile(x));
    const std::uint64_t total = std::uint64_t{reps.size()} * reps.size();
    const std::uint64_t jobs = std::min(total, budget.max_instances);
    run = run_jobs(jobs, budget, [&](std::uint64_t i) {
      const std::size_t ia = i / reps.size(), ib = i % reps.size();
      return check_pair(reps[ia], reps[ib], profiles[ia], profiles[ib]);
    });
    rep.exhausted = run.completed && jobs == total;
  } else {
    run = run_jobs(budget.max_instances, budget, [&](std::uint64_t i) {
      auto rng = instance_rng(budget.seed, i);
      const auto a = random_subspace(e, rng, 1 + rng() % max_dim);
      const auto b = random_subspace(e, rng, 1 + rng() % max_dim);
      return check_pair(a, b, coset_profile(a), coset_profile(b));
    });
  }
  rep.instances_checked = run.checked;
  rep.records = std::move(run.records);
  rep.parameters["hypothesis_holds"] = hypothesis_count.load();
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

Json linear_record(const FieldExtension& e, const Subspace& a, const Subspace& b, const SpaceMatchResult& r) {
  Json rec;
  rec["field"] = e.to_string();
  rec["A"] = subspace_to_string(e, a);
  rec["B"] = subspace_to_string(e, b);
  rec["verdict"] = to_string(r.verdict);
  if (r.failing_basis) {
    rec["failing_basis"] = basis_json(e, *r.failing_basis);
    Json jj = Json::array();
    for (auto i : r.failure.violating_j) jj.push_back(i + 1);
    rec["J"] = jj;
    rec["V_J"] = subspace_to_string(e, r.failure.v_j);
  }
  return rec;
}

// Unmatched verdicts are confirmed by the ordered-basis oracle when small.
void confirm_unmatched(const FieldExtension& e, const Subspace& b, const SpaceMatchResult& r, Json& rec) {
  if (b.dim() <= 3) {
    if (oracle::ordered_basis_match_exists(e, *r.failing_basis, b)) {
      throw std::logic_error("criterion and ordered-basis oracle disagree");
    }
    rec["oracle_verified"] = true;
  } else {
    rec["oracle_verified"] = false;
  }
}

}  // namespace

ScanReport conjecture_5_2_scan(const FieldExtension& e, std::uint32_t n, const SearchBudget& budget) {
  ScanReport rep;
  rep.scan = "conjecture2";
  rep.parameters = {{"field", e.to_string()}, {"n", n}, {"budget", budget_json(budget)}};
  if (n < 1 || n > e.m()) throw Error(ErrorKind::InvalidArgument, "n must satisfy 1 <= n <= m");
  if (n == 1) rep.flags.push_back("trivial-n");

  auto check_pair = [&](const Subspace& a, const Subspace& b) {
    JobResult r;
    r.checked = 1;
    const auto m = space_matchable(e, a, b);
    if (m.verdict == Verdict::Unmatched) {
      Json rec = linear_record(e, a, b, m);
      confirm_unmatched(e, b, m, rec);
      r.records.push_back(std::move(rec));
    }
    return r;
  };

  RunResult run;
  if (budget.exhaustive) {
    rep.orbit_reduction = "A up to multiplication by L*";
    const auto pool = subspaces_of_dim(e, whole_space(e), n);
    const auto reps = orbit_representatives(e, pool);
    std::vector<Subspace> chowla;
    for (const auto& b : pool) {
      if (is_chowla_subspace(e, b)) chowla.push_back(b);
    }
    rep.parameters["chowla_subspaces"] = chowla.size();
    rep.parameters["a_orbits"] = reps.size();
    if (chowla.empty()) rep.flags.push_back("no-chowla-subspace");
    const std::uint64_t total = std::uint64_t{reps.size()} * chowla.size();
    const std::uint64_t jobs = std::min(total, budget.max_instances);
    run = run_jobs(jobs, budget, [&](std::uint64_t i) {
      return check_pair(reps[i / chowla.size()], chowla[i % chowla.size()]);
    });
    rep.exhausted = run.completed && jobs == total;
  } else {
    run = run_jobs(budget.max_instances, budget, [&](std::uint64_t i) {
      auto rng = instance_rng(budget.seed, i);
      const auto a = random_subspace(e, rng, n);
      for (int tries = 0; tries < 1000; ++tries) {
        const auto b = random_subspace(e, rng, n);
        if (is_chowla_subspace(e, b)) return check_pair(a, b);
      }
      return JobResult{};
    });
  }
  rep.instances_checked = run.checked;
  rep.records = std::move(run.records);
  return rep;
}

// ---------------------------------------------------------------------------

ChowlaMaxResult max_chowla_dimension(const FieldExtension& e, const SearchBudget& budget) {
  if (e.m() < 2) throw Error(ErrorKind::TrivialExtension, "GF(p)/GF(p) has no proper intermediate field");
  if (budget.max_instances == 0) throw Error(ErrorKind::ScaleExceeded, "zero budget");
  ChowlaMaxResult res;
  std::uint32_t largest_divisor = 1;
  for (std::uint32_t d = 1; d < e.m(); ++d) {
    if (e.m() % d == 0) largest_divisor = d;
  }
  res.lower_bound = e.m() - largest_divisor;

  std::uint64_t total = 0;
  for (std::uint32_t d = 1; d < e.m(); ++d) {
    const auto c = gaussian_binomial(e.m(), d, e.p());
    total = (c > budget.max_instances || total + c > budget.max_instances) ? budget.max_instances + 1 : total + c;
  }
  if (budget.exhaustive && total <= budget.max_instances) {
    // Subspaces of a Chowla subspace are Chowla, so the first dimension
    // (from the top) with a Chowla subspace is the maximum.
    for (std::uint32_t d = e.m() - 1; d >= 1 && res.dimension == 0; --d) {
      for_each_subspace_of(e, whole_space(e), d, [&](const Subspace& s) {
        ++res.subspaces_checked;
        if (!is_chowla_subspace(e, s)) return true;
        res.dimension = d;
        res.witness = s;
        return false;
      });
    }
    res.exhaustive = true;
  } else {
    // Greedy lower bound: grow a Chowla subspace from seeded random elements.
    std::mt19937_64 rng(budget.seed);
    std::vector<FieldElem> order;
    for (FieldElem x = 1; x < e.size(); ++x) order.push_back(x);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<FieldElem> gens;
    for (auto x : order) {
      if (res.subspaces_checked >= budget.max_instances) break;
      gens.push_back(x);
      const Subspace s = span(e, gens);
      ++res.subspaces_checked;
      if (s.dim() == gens.size() && is_chowla_subspace(e, s)) {
        res.witness = s;
        res.dimension = static_cast<std::uint32_t>(s.dim());
      } else {
        gens.pop_back();
      }
    }
  }
  res.meets_lower_bound = res.dimension >= res.lower_bound;
  return res;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Element> nonzero_elements(const Group& g) {
  std::vector<Element> v;
  for (Element x = 1; x < g.order(); ++x) v.push_back(x);
  return v;
}

// A is canonical when no image u*A + t (u a unit) is lexicographically smaller.
bool is_canonical_cyclic(const Group& g, const std::vector<Element>& a, const std::vector<Element>& units) {
  std::vector<Element> img(a.size());
  for (auto u : units) {
    for (Element t = 0; t < g.order(); ++t) {
      for (std::size_t i = 0; i < a.size(); ++i) img[i] = g.add(g.times(u, a[i]), t);
      std::sort(img.begin(), img.end());
      if (img < a) return false;
    }
  }
  return true;
}

}  // namespace

ScanReport unmatchable_group_search(const GroupSearchOptions& opt, const SearchBudget& budget) {
  ScanReport rep;
  rep.scan = "search-unmatchable";
  rep.parameters = {{"domain", "Z" + std::to_string(opt.min_order) + "..Z" + std::to_string(opt.max_order)},
                    {"max_size", opt.max_size},
                    {"min_progression_length", opt.min_progression_length},
                    {"budget", budget_json(budget)}};
  if (opt.orbit_reduction) rep.orbit_reduction = "A up to translation and multiplication by units";
  if (opt.min_order < 2 || opt.max_order < opt.min_order) {
    throw Error(ErrorKind::InvalidArgument, "group order range must satisfy 2 <= lo <= hi");
  }

  struct Job {
    std::uint32_t n;
    std::vector<Element> a;
  };
  std::vector<Job> jobs;
  std::uint64_t planned = 0;
  bool truncated = false;
  for (std::uint32_t n = opt.min_order; n <= opt.max_order && !truncated; ++n) {
    const auto g = Group::cyclic(n);
    std::vector<Element> all(n), units;
    for (Element x = 0; x < n; ++x) {
      all[x] = x;
      if (std::gcd(x, n) == 1) units.push_back(x);
    }
    for (std::uint32_t k = 1; k <= std::min(opt.max_size, n - 1) && !truncated; ++k) {
      const std::uint64_t per_a = binomial(n - 1, k);
      for_each_combination(std::span<const Element>(all), k, [&](const std::vector<Element>& a) {
        if (opt.orbit_reduction && !is_canonical_cyclic(g, a, units)) return true;
        if (planned + per_a > budget.max_instances) {
          truncated = true;
          return false;
        }
        planned += per_a;
        jobs.push_back({n, a});
        return true;
      });
    }
  }

  auto run = run_jobs(jobs.size(), budget, [&](std::uint64_t i) {
    const auto& job = jobs[i];
    const auto g = Group::cyclic(job.n);
    const Subset a = Subset::from_sorted(job.a);
    const auto pool = nonzero_elements(g);
    JobResult r;
    for_each_combination(std::span<const Element>(pool), a.size(), [&](const std::vector<Element>& bv) {
      ++r.checked;
      const Subset b = Subset::from_sorted(bv);
      if (has_matching(g, a, b)) return true;
      if (oracle::permutation_matching_exists(g, a, b) || oracle::hall_scan_matchable(g, a, b)) {
        throw std::logic_error("matching decider and oracles disagree");
      }
      Json rec;
      rec["group"] = g.to_string();
      rec["A"] = a.to_string(g);
      rec["B"] = b.to_string(g);
      rec["matched"] = false;
      rec["violator"] = violator_json(g, *hall_violator(g, a, b));
      rec["witness"] = structure_witness_json(g, structure_witness(g, a, b, opt.min_progression_length));
      rec["oracle_verified"] = true;
      r.records.push_back(std::move(rec));
      return true;
    });
    return r;
  });
  rep.instances_checked = run.checked;
  rep.exhausted = run.completed && !truncated;
  rep.records = std::move(run.records);
  return rep;
}

ScanReport unmatchable_field_search(const FieldExtension& e, std::uint32_t n, const SearchBudget& budget) {
  ScanReport rep;
  rep.scan = "search-unmatchable";
  rep.parameters = {{"field", e.to_string()}, {"n", n}, {"budget", budget_json(budget)}};
  if (n < 1 || n > e.m()) throw Error(ErrorKind::InvalidArgument, "n must satisfy 1 <= n <= m");

  auto check_pair = [&](const Subspace& a, const Subspace& b) {
    JobResult r;
    r.checked = 1;
    const auto m = space_matchable(e, a, b);
    if (m.verdict != Verdict::Unmatched) return r;
    Json rec = linear_record(e, a, b, m);
    confirm_unmatched(e, b, m, rec);
    try {
      rec["witness"] = subfield_witness_json(e, subfield_atom_witness(e, a, b, m.failing_basis));
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::ScaleExceeded) throw;
      rec["witness_error"] = std::string(to_string(err.kind()));
    }
    r.records.push_back(std::move(rec));
    return r;
  };

  RunResult run;
  if (budget.exhaustive) {
    rep.orbit_reduction = "A up to multiplication by L*";
    const auto pool = subspaces_of_dim(e, whole_space(e), n);
    const auto reps = orbit_representatives(e, pool);
    std::vector<Subspace> bs;
    for (const auto& b : pool) {
      if (!contains(e, b, e.one())) bs.push_back(b);
    }
    const std::uint64_t total = std::uint64_t{reps.size()} * bs.size();
    const std::uint64_t jobs = std::min(total, budget.max_instances);
    run = run_jobs(jobs, budget, [&](std::uint64_t i) { return check_pair(reps[i / bs.size()], bs[i % bs.size()]); });
    rep.exhausted = run.completed && jobs == total;
  } else {
    run = run_jobs(budget.max_instances, budget, [&](std::uint64_t i) {
      auto rng = instance_rng(budget.seed, i);
      const auto a = random_subspace(e, rng, n);
      for (int tries = 0; tries < 1000; ++tries) {
        const auto b = random_subspace(e, rng, n);
        if (!contains(e, b, e.one())) return check_pair(a, b);
      }
      return JobResult{};
    });
  }
  rep.instances_checked = run.checked;
  rep.records = std::move(run.records);
  return rep;
}

}  // namespace addmatch
