#include "addmatch/group.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>

#include "addmatch/error.hpp"

namespace addmatch {

Group::Group(std::vector<std::uint32_t> invariant_factors, std::uint64_t max_order)
    : factors_(std::move(invariant_factors)) {
  if (factors_.empty()) {
    throw Error(ErrorKind::InvalidArgument, "group needs at least one factor");
  }
  std::uint64_t order = 1;
  for (auto n : factors_) {
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "every factor must be >= 2");
    order *= n;
    if (order > max_order) {
      throw Error(ErrorKind::ScaleExceeded,
                  "group order exceeds bound " + std::to_string(max_order));
    }
  }
  order_ = static_cast<std::uint32_t>(order);
  strides_.assign(factors_.size(), 1);
  for (std::size_t i = factors_.size() - 1; i > 0; --i) {
    strides_[i - 1] = strides_[i] * factors_[i];
  }
}

Element Group::add(Element x, Element y) const {
  if (factors_.size() == 1) {
    const std::uint32_t s = x + y;
    return s >= order_ ? s - order_ : s;
  }
  Element out = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const std::uint32_t n = factors_[i];
    const std::uint32_t cx = (x / strides_[i]) % n;
    const std::uint32_t cy = (y / strides_[i]) % n;
    std::uint32_t c = cx + cy;
    if (c >= n) c -= n;
    out += c * strides_[i];
  }
  return out;
}

Element Group::neg(Element x) const {
  if (factors_.size() == 1) return x == 0 ? 0 : order_ - x;
  Element out = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const std::uint32_t n = factors_[i];
    const std::uint32_t c = (x / strides_[i]) % n;
    out += (c == 0 ? 0 : n - c) * strides_[i];
  }
  return out;
}

Element Group::sub(Element x, Element y) const { return add(x, neg(y)); }

Element Group::times(std::uint64_t k, Element x) const {
  Element out = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const std::uint64_t n = factors_[i];
    const std::uint64_t c = (x / strides_[i]) % n;
    out += static_cast<Element>(((k % n) * c) % n) * strides_[i];
  }
  return out;
}

std::vector<std::uint32_t> Group::coords(Element x) const {
  std::vector<std::uint32_t> out(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) out[i] = (x / strides_[i]) % factors_[i];
  return out;
}

Element Group::from_coords(std::span<const std::int64_t> coords) const {
  if (coords.size() != factors_.size()) {
    throw Error(ErrorKind::InvalidArgument, "coordinate count does not match the group");
  }
  Element out = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const std::int64_t n = factors_[i];
    const std::int64_t c = ((coords[i] % n) + n) % n;
    out += static_cast<Element>(c) * strides_[i];
  }
  return out;
}

std::string Group::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) s += 'x';
    s += 'Z' + std::to_string(factors_[i]);
  }
  return s;
}

std::string Group::element_to_string(Element x) const {
  if (factors_.size() == 1) return std::to_string(x);
  std::string s = "(";
  const auto c = coords(x);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(c[i]);
  }
  return s + ")";
}

Subset::Subset(const Group& group, std::vector<Element> elements) : elements_(std::move(elements)) {
  for (auto x : elements_) {
    if (!group.contains(x)) {
      throw Error(ErrorKind::OutOfRange,
                  "element " + std::to_string(x) + " is outside " + group.to_string());
    }
  }
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

bool Subset::contains(Element x) const {
  return std::binary_search(elements_.begin(), elements_.end(), x);
}

std::string Subset::to_string(const Group& group) const {
  std::string s = "{";
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (i) s += ',';
    s += group.element_to_string(elements_[i]);
  }
  return s + "}";
}

std::uint32_t element_order(const Group& g, Element x) {
  std::uint32_t t = 1;
  Element acc = x;
  while (acc != g.neutral()) {
    acc = g.add(acc, x);
    ++t;
  }
  return t;
}

namespace {

Subset from_mask(const std::vector<char>& mask) {
  std::vector<Element> out;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) out.push_back(static_cast<Element>(i));
  }
  return Subset::from_sorted(std::move(out));
}

void require_nonempty(const Subset& s, const char* what) {
  if (s.empty()) throw Error(ErrorKind::EmptyInput, std::string(what) + " must be nonempty");
}

}  // namespace

Subset product_set(const Group& g, const Subset& a, const Subset& b) {
  require_nonempty(a, "A");
  require_nonempty(b, "B");
  std::vector<char> mask(g.order(), 0);
  for (auto x : a) {
    for (auto y : b) mask[g.add(x, y)] = 1;
  }
  return from_mask(mask);
}

Subset translate(const Group& g, const Subset& a, Element t) {
  std::vector<Element> out;
  out.reserve(a.size());
  for (auto x : a) out.push_back(g.add(x, t));
  std::sort(out.begin(), out.end());
  return Subset::from_sorted(std::move(out));
}

Subset set_union(const Subset& a, const Subset& b) {
  std::vector<Element> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return Subset::from_sorted(std::move(out));
}

Subset set_difference(const Subset& a, const Subset& b) {
  std::vector<Element> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return Subset::from_sorted(std::move(out));
}

Subset set_intersection(const Subset& a, const Subset& b) {
  std::vector<Element> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return Subset::from_sorted(std::move(out));
}

Subgroup generated_subgroup(const Group& g, std::span<const Element> generators) {
  std::vector<char> in(g.order(), 0);
  std::deque<Element> queue{g.neutral()};
  in[g.neutral()] = 1;
  while (!queue.empty()) {
    const Element x = queue.front();
    queue.pop_front();
    for (auto gen : generators) {
      const Element y = g.add(x, gen);
      if (!in[y]) {
        in[y] = 1;
        queue.push_back(y);
      }
    }
  }
  Subgroup h;
  h.elements = from_mask(in);
  // Keep only generators that enlarge the span, in the order given.
  std::vector<char> span(g.order(), 0);
  span[g.neutral()] = 1;
  std::vector<Element> kept;
  for (auto gen : generators) {
    if (span[gen]) continue;
    kept.push_back(gen);
    span.assign(g.order(), 0);
    span[g.neutral()] = 1;
    std::deque<Element> q{g.neutral()};
    while (!q.empty()) {
      const Element x = q.front();
      q.pop_front();
      for (auto k : kept) {
        const Element y = g.add(x, k);
        if (!span[y]) {
          span[y] = 1;
          q.push_back(y);
        }
      }
    }
  }
  h.generators = std::move(kept);
  return h;
}

Subgroup trivial_subgroup(const Group& g) {
  Subgroup h;
  h.elements = Subset::from_sorted({g.neutral()});
  return h;
}

Subgroup whole_group(const Group& g) {
  std::vector<Element> all(g.order());
  for (Element x = 0; x < g.order(); ++x) all[x] = x;
  return generated_subgroup(g, all);
}

Subgroup stabilizer(const Group& g, const Subset& s) {
  require_nonempty(s, "S");
  std::vector<Element> members;
  const Element s0 = s[0];
  for (auto x : s) {
    const Element t = g.sub(x, s0);
    if (translate(g, s, t) == s) members.push_back(t);
  }
  std::sort(members.begin(), members.end());
  Subgroup h = generated_subgroup(g, members);
  return h;
}

std::vector<Subgroup> subgroups(const Group& g) {
  std::vector<Subgroup> out;
  if (g.is_single_cyclic()) {
    const std::uint32_t n = g.order();
    for (std::uint32_t d = 1; d <= n; ++d) {
      if (n % d) continue;
      const std::uint32_t step = n / d;
      std::vector<Element> elems;
      for (std::uint32_t k = 0; k < d; ++k) elems.push_back(k * step);
      Subgroup h;
      h.elements = Subset::from_sorted(std::move(elems));
      if (d > 1) h.generators = {step};
      out.push_back(std::move(h));
    }
    return out;
  }
  if (g.order() > kMaxLatticeOrder) {
    throw Error(ErrorKind::ScaleExceeded,
                "subgroup lattice of " + g.to_string() + " exceeds the enumeration bound");
  }
  constexpr std::size_t kMaxSubgroups = 200000;
  std::set<std::vector<Element>> seen;
  std::vector<Subgroup> cyclics;
  for (Element x = 0; x < g.order(); ++x) {
    const Element gen[] = {x};
    Subgroup h = generated_subgroup(g, gen);
    if (seen.insert(h.elements.vec()).second) {
      cyclics.push_back(h);
      out.push_back(std::move(h));
    }
  }
  std::vector<std::size_t> frontier(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) frontier[i] = i;
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    for (auto idx : frontier) {
      for (const auto& c : cyclics) {
        if (c.generators.empty() || out[idx].elements.contains(c.generators[0])) continue;
        std::vector<Element> gens = out[idx].generators;
        gens.push_back(c.generators[0]);
        Subgroup j = generated_subgroup(g, gens);
        if (seen.insert(j.elements.vec()).second) {
          if (seen.size() > kMaxSubgroups) {
            throw Error(ErrorKind::ScaleExceeded, "too many subgroups in " + g.to_string());
          }
          out.push_back(std::move(j));
          next.push_back(out.size() - 1);
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements < b.elements;
  });
  return out;
}

std::uint32_t p_of_group(const Group& g) {
  const std::uint32_t n = g.order();
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return d;
  }
  return n;
}

Element coset_key(const Group& g, Element x, const Subgroup& h) {
  Element best = std::numeric_limits<Element>::max();
  for (auto y : h.elements) best = std::min(best, g.add(x, y));
  return best;
}

std::size_t coset_cover_count(const Group& g, const Subset& a, const Subgroup& h) {
  std::vector<Element> keys;
  keys.reserve(a.size());
  for (auto x : a) keys.push_back(coset_key(g, x, h));
  std::sort(keys.begin(), keys.end());
  return static_cast<std::size_t>(std::unique(keys.begin(), keys.end()) - keys.begin());
}

std::size_t max_coset_intersection(const Group& g, const Subset& a, const Subgroup& h) {
  std::vector<Element> keys;
  for (auto x : a) keys.push_back(coset_key(g, x, h));
  std::sort(keys.begin(), keys.end());
  std::size_t best = 0;
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    best = std::max(best, j - i);
    i = j;
  }
  return best;
}

bool is_coset_of(const Group& g, const Subset& a, const Subgroup& h) {
  if (a.empty() || a.size() != h.order()) return false;
  return translate(g, h.elements, a[0]) == a;
}

bool is_sidon_subset(const Group& g, const Subset& a) {
  std::vector<Element> sums;
  sums.reserve(a.size() * (a.size() + 1) / 2);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i; j < a.size(); ++j) sums.push_back(g.add(a[i], a[j]));
  }
  std::sort(sums.begin(), sums.end());
  return std::adjacent_find(sums.begin(), sums.end()) == sums.end();
}

bool is_chowla_subset(const Group& g, const Subset& b) {
  if (b.empty() || b.contains(g.neutral())) return false;
  for (auto x : b) {
    if (element_order(g, x) < b.size() + 1) return false;
  }
  return true;
}

namespace {

std::uint32_t walk_length(const Group& g, const Subset& a, Element start, Element d) {
  std::uint32_t len = 1;
  Element x = start;
  while (true) {
    x = g.add(x, d);
    if (x == start || !a.contains(x)) break;
    ++len;
  }
  return len;
}

}  // namespace

std::optional<ProgressionWitness> find_progression(const Group& g, const Subset& a,
                                                   std::uint32_t min_length) {
  if (min_length < 2) throw Error(ErrorKind::InvalidArgument, "min_length must be >= 2");
  ProgressionWitness best;
  for (auto start : a) {
    std::vector<Element> ratios;
    for (auto y : a) {
      if (y != start) ratios.push_back(g.sub(y, start));
    }
    std::sort(ratios.begin(), ratios.end());
    for (auto d : ratios) {
      const std::uint32_t len = walk_length(g, a, start, d);
      if (len > best.length) best = {start, d, len};
    }
  }
  if (best.length >= min_length) return best;
  return std::nullopt;
}

bool is_progression(const Group& g, const Subset& a) {
  if (a.size() <= 1) return !a.empty();
  const auto n = static_cast<std::uint32_t>(a.size());
  for (auto start : a) {
    for (auto y : a) {
      if (y == start) continue;
      if (walk_length(g, a, start, g.sub(y, start)) == n) return true;
    }
  }
  return false;
}

std::optional<QuasiPeriodicWitness> quasi_periodic_witness(const Group& g, const Subset& a) {
  if (a.empty()) return std::nullopt;
  auto lattice = subgroups(g);
  std::stable_sort(lattice.begin(), lattice.end(),
                   [](const Subgroup& x, const Subgroup& y) { return x.order() > y.order(); });
  for (const auto& h : lattice) {
    if (h.order() < 2 || h.order() > a.size()) continue;
    std::vector<Element> keys;
    keys.reserve(a.size());
    for (auto x : a) keys.push_back(coset_key(g, x, h));
    std::vector<Element> sorted_keys = keys;
    std::sort(sorted_keys.begin(), sorted_keys.end());
    std::vector<Element> periodic, rest;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const auto range = std::equal_range(sorted_keys.begin(), sorted_keys.end(), keys[i]);
      if (static_cast<std::size_t>(range.second - range.first) == h.order()) {
        periodic.push_back(a[i]);
      } else {
        rest.push_back(a[i]);
      }
    }
    if (!periodic.empty()) {
      return QuasiPeriodicWitness{h, Subset::from_sorted(std::move(periodic)),
                                  Subset::from_sorted(std::move(rest))};
    }
  }
  return std::nullopt;
}

std::size_t multiplicity(const Group& g, const Subset& a, const Subset& b, Element x) {
  std::size_t count = 0;
  for (auto y : a) {
    if (b.contains(g.sub(x, y))) ++count;
  }
  return count;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    r = r * (n - i) / (i + 1);
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace addmatch
