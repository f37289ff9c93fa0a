#include "addmatch/field.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "addmatch/error.hpp"

namespace addmatch {

namespace {

using Poly = std::vector<std::uint32_t>;  // low -> high

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // p is prime, so a^(p-2).
  std::uint64_t r = 1, b = a % p;
  std::uint64_t e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

// Remainder of f modulo the monic-normalized d.
Poly poly_rem(Poly f, const Poly& d, std::uint32_t p) {
  trim(f);
  const std::size_t dd = d.size() - 1;
  const std::uint32_t lead_inv = inv_mod(d.back(), p);
  while (f.size() > dd) {
    const std::size_t shift = f.size() - 1 - dd;
    const std::uint64_t c = static_cast<std::uint64_t>(f.back()) * lead_inv % p;
    for (std::size_t i = 0; i <= dd; ++i) {
      const std::uint64_t t = c * d[i] % p;
      f[shift + i] = static_cast<std::uint32_t>((f[shift + i] + p - t) % p);
    }
    trim(f);
  }
  return f;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& poly) {
  Poly f = poly;
  trim(f);
  if (f.size() < 2) return false;
  const std::size_t deg = f.size() - 1;
  if (deg == 1) return true;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    // Monic divisors of degree d, lower coefficients counted in base p.
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t t = 0; t < count; ++t) {
      Poly divisor(d + 1, 0);
      std::uint64_t r = t;
      for (std::size_t i = 0; i < d; ++i) {
        divisor[i] = static_cast<std::uint32_t>(r % p);
        r /= p;
      }
      divisor[d] = 1;
      if (poly_rem(f, divisor, p).empty()) return false;
    }
  }
  return true;
}

FieldExtension FieldExtension::make(std::uint32_t p, std::uint32_t m,
                                    std::optional<std::vector<std::uint32_t>> modulus) {
  if (!is_prime(p)) {
    throw Error(ErrorKind::NonprimeCharacteristic, std::to_string(p) + " is not prime");
  }
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    q *= p;
    if (q > kMaxFieldSize) {
      throw Error(ErrorKind::ScaleExceeded, "field size exceeds " + std::to_string(kMaxFieldSize));
    }
  }
  FieldExtension e;
  e.p_ = p;
  e.m_ = m;
  e.q_ = static_cast<std::uint32_t>(q);
  e.pow_p_.assign(m + 1, 1);
  for (std::uint32_t i = 1; i <= m; ++i) e.pow_p_[i] = e.pow_p_[i - 1] * p;

  if (modulus) {
    Poly f = *modulus;
    for (auto& c : f) c %= p;
    trim(f);
    if (f.size() != m + 1) {
      throw Error(ErrorKind::InvalidArgument, "modulus must have degree " + std::to_string(m));
    }
    if (f.back() != 1) throw Error(ErrorKind::InvalidArgument, "modulus must be monic");
    if (!is_irreducible(p, f)) {
      throw Error(ErrorKind::ReducibleModulus, "modulus is reducible over GF(" + std::to_string(p) + ")");
    }
    e.modulus_ = std::move(f);
  } else {
    for (std::uint64_t t = 0; t < q; ++t) {
      Poly f(m + 1, 0);
      std::uint64_t r = t;
      for (std::uint32_t i = 0; i < m; ++i) {
        f[i] = static_cast<std::uint32_t>(r % p);
        r /= p;
      }
      f[m] = 1;
      if (is_irreducible(p, f)) {
        e.modulus_ = std::move(f);
        break;
      }
    }
  }

  // g is the class of x: reduce x modulo the modulus.
  if (m == 1) {
    e.generator_ = (p - e.modulus_[0]) % p;
  } else {
    e.generator_ = p;
  }

  // Multiplicative tables from the first primitive element, trying g first.
  e.exp_.assign(e.q_ - 1, 0);
  e.log_.assign(e.q_, 0);
  std::vector<FieldElem> candidates{e.generator_};
  for (FieldElem c = 1; c < e.q_; ++c) {
    if (c != e.generator_) candidates.push_back(c);
  }
  bool found = false;
  for (auto c : candidates) {
    if (c == 0) continue;
    FieldElem x = 1;
    std::uint32_t i = 0;
    bool primitive = true;
    for (; i < e.q_ - 1; ++i) {
      if (i > 0 && x == 1) {
        primitive = false;
        break;
      }
      e.exp_[i] = x;
      x = e.slow_mul(x, c);
    }
    if (primitive && x == 1) {
      found = true;
      break;
    }
  }
  if (!found) throw std::logic_error("no primitive element found");
  for (std::uint32_t i = 0; i < e.q_ - 1; ++i) e.log_[e.exp_[i]] = i;
  return e;
}

FieldElem FieldExtension::slow_mul(FieldElem x, FieldElem y) const {
  Poly a(m_), b(m_);
  for (std::uint32_t i = 0; i < m_; ++i) {
    a[i] = digit(x, i);
    b[i] = digit(y, i);
  }
  Poly prod(2 * m_, 0);
  for (std::uint32_t i = 0; i < m_; ++i) {
    for (std::uint32_t j = 0; j < m_; ++j) {
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{a[i]} * b[j]) % p_);
    }
  }
  const Poly r = poly_rem(prod, modulus_, p_);
  FieldElem out = 0;
  for (std::size_t i = 0; i < r.size(); ++i) out += r[i] * pow_p_[i];
  return out;
}

FieldElem FieldExtension::add(FieldElem x, FieldElem y) const {
  if (p_ == 2) return x ^ y;
  FieldElem out = 0;
  for (std::uint32_t i = 0; i < m_; ++i) {
    const std::uint32_t c = (digit(x, i) + digit(y, i)) % p_;
    out += c * pow_p_[i];
  }
  return out;
}

FieldElem FieldExtension::neg(FieldElem x) const {
  if (p_ == 2) return x;
  FieldElem out = 0;
  for (std::uint32_t i = 0; i < m_; ++i) {
    const std::uint32_t c = digit(x, i);
    out += (c == 0 ? 0 : p_ - c) * pow_p_[i];
  }
  return out;
}

FieldElem FieldExtension::sub(FieldElem x, FieldElem y) const { return add(x, neg(y)); }

FieldElem FieldExtension::scale(std::uint32_t c, FieldElem x) const {
  c %= p_;
  if (c == 0) return 0;
  if (c == 1) return x;
  FieldElem out = 0;
  for (std::uint32_t i = 0; i < m_; ++i) {
    out += static_cast<std::uint32_t>(std::uint64_t{digit(x, i)} * c % p_) * pow_p_[i];
  }
  return out;
}

FieldElem FieldExtension::inv(FieldElem x) const {
  if (x == 0) throw Error(ErrorKind::InvalidArgument, "zero has no inverse");
  const std::uint32_t l = log_[x];
  return exp_[l == 0 ? 0 : q_ - 1 - l];
}

FieldElem FieldExtension::pow(FieldElem x, std::uint64_t e) const {
  if (x == 0) return e == 0 ? 1 : 0;
  const std::uint64_t l = (std::uint64_t{log_[x]} * (e % (q_ - 1))) % (q_ - 1);
  return exp_[l];
}

FieldElem FieldExtension::frobenius(FieldElem x, std::uint32_t k) const {
  std::uint64_t e = 1;
  for (std::uint32_t i = 0; i < k % m_; ++i) e *= p_;
  return pow(x, e);
}

std::uint32_t FieldExtension::prime_inv(std::uint32_t c) const { return inv_mod(c, p_); }

namespace {

std::string poly_string(const std::vector<std::uint32_t>& coeffs, char var) {
  std::string s;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    const std::uint32_t c = coeffs[i];
    if (c == 0) continue;
    if (!s.empty()) s += '+';
    if (i == 0) {
      s += std::to_string(c);
      continue;
    }
    if (c != 1) s += std::to_string(c) + '*';
    s += var;
    if (i > 1) s += '^' + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

}  // namespace

std::string FieldExtension::modulus_to_string() const { return poly_string(modulus_, 'x'); }

std::string FieldExtension::to_string() const {
  return "GF(" + std::to_string(p_) + "^" + std::to_string(m_) + "|" + modulus_to_string() + ")";
}

std::string FieldExtension::element_to_string(FieldElem x) const {
  std::vector<std::uint32_t> c(m_);
  for (std::uint32_t i = 0; i < m_; ++i) c[i] = digit(x, i);
  return poly_string(c, 'g');
}

// --------------------------------------------------------------------------
// Subspaces

std::uint32_t pivot_of(const FieldExtension& e, FieldElem x) {
  if (x == 0) return e.m();
  if (e.p() == 2) return static_cast<std::uint32_t>(__builtin_ctz(x));
  for (std::uint32_t i = 0; i < e.m(); ++i) {
    if (e.digit(x, i)) return i;
  }
  return e.m();
}

FieldElem normalize(const FieldExtension& e, FieldElem x) {
  if (x == 0 || e.p() == 2) return x;
  const std::uint32_t c = e.digit(x, pivot_of(e, x));
  return e.scale(e.prime_inv(c), x);
}

namespace {

// Inserts x into canonical rows; returns true if the dimension grew.
bool insert_row(const FieldExtension& e, std::vector<FieldElem>& rows, FieldElem x) {
  const bool binary = e.p() == 2;
  for (auto r : rows) {
    const std::uint32_t pv = pivot_of(e, r);
    const std::uint32_t c = e.digit(x, pv);
    if (c) x = binary ? (x ^ r) : e.sub(x, e.scale(c, r));
  }
  if (x == 0) return false;
  x = normalize(e, x);
  const std::uint32_t pv = pivot_of(e, x);
  for (auto& r : rows) {
    const std::uint32_t c = e.digit(r, pv);
    if (c) r = binary ? (r ^ x) : e.sub(r, e.scale(c, x));
  }
  auto pos = std::lower_bound(rows.begin(), rows.end(), pv, [&](FieldElem r, std::uint32_t v) {
    return pivot_of(e, r) < v;
  });
  rows.insert(pos, x);
  return true;
}

}  // namespace

Subspace span(const FieldExtension& e, std::span<const FieldElem> generators) {
  std::vector<FieldElem> rows;
  for (auto x : generators) {
    if (x >= e.size()) {
      throw Error(ErrorKind::OutOfRange, "encoding " + std::to_string(x) + " is outside " + e.to_string());
    }
    insert_row(e, rows, x);
    if (rows.size() == e.m()) break;
  }
  return Subspace::from_canonical_rows(std::move(rows));
}

FieldElem reduce(const FieldExtension& e, const Subspace& u, FieldElem x) {
  for (auto r : u.basis()) {
    const std::uint32_t c = e.digit(x, pivot_of(e, r));
    if (c) x = e.p() == 2 ? (x ^ r) : e.sub(x, e.scale(c, r));
  }
  return x;
}

bool contains(const FieldExtension& e, const Subspace& u, FieldElem x) { return reduce(e, u, x) == 0; }

bool is_subspace_of(const FieldExtension& e, const Subspace& u, const Subspace& v) {
  for (auto r : u.basis()) {
    if (!contains(e, v, r)) return false;
  }
  return true;
}

Subspace sum(const FieldExtension& e, const Subspace& u, const Subspace& v) {
  std::vector<FieldElem> rows = u.rows();
  for (auto r : v.basis()) insert_row(e, rows, r);
  return Subspace::from_canonical_rows(std::move(rows));
}

Subspace intersection(const FieldExtension& e, const Subspace& u, const Subspace& v) {
  if (u.is_zero() || v.is_zero()) return {};
  // Zassenhaus: reduce the pairs (u, u) and (v, 0); pairs whose first half
  // vanishes carry a basis of U ∩ V in their second half.
  const bool binary = e.p() == 2;
  struct Pair {
    FieldElem left, right;
  };
  const std::uint32_t m = e.m();
  auto digit2 = [&](const Pair& x, std::uint32_t i) {
    return i < m ? e.digit(x.left, i) : e.digit(x.right, i - m);
  };
  auto pivot2 = [&](const Pair& x) {
    const std::uint32_t a = pivot_of(e, x.left);
    return a < m ? a : m + pivot_of(e, x.right);
  };
  auto axpy = [&](Pair& x, std::uint32_t c, const Pair& r) {
    if (binary) {
      x.left ^= r.left;
      x.right ^= r.right;
    } else {
      x.left = e.sub(x.left, e.scale(c, r.left));
      x.right = e.sub(x.right, e.scale(c, r.right));
    }
  };
  std::vector<Pair> rows;
  auto insert = [&](Pair x) {
    for (const auto& r : rows) {
      const std::uint32_t c = digit2(x, pivot2(r));
      if (c) axpy(x, c, r);
    }
    if (x.left == 0 && x.right == 0) return;
    const std::uint32_t pv = pivot2(x);
    const std::uint32_t lead = digit2(x, pv);
    if (lead != 1) {
      const std::uint32_t s = e.prime_inv(lead);
      x.left = e.scale(s, x.left);
      x.right = e.scale(s, x.right);
    }
    rows.push_back(x);
  };
  for (auto r : u.basis()) insert({r, r});
  for (auto r : v.basis()) insert({r, 0});
  std::vector<FieldElem> gens;
  for (const auto& r : rows) {
    if (r.left == 0) gens.push_back(r.right);
  }
  return span(e, gens);
}

Subspace scale(const FieldExtension& e, FieldElem x, const Subspace& u) {
  if (x == 0) return {};
  std::vector<FieldElem> gens;
  gens.reserve(u.dim());
  for (auto r : u.basis()) gens.push_back(e.mul(x, r));
  return span(e, gens);
}

Subspace span_product(const FieldExtension& e, const Subspace& a, const Subspace& b) {
  if (a.is_zero() || b.is_zero()) {
    throw Error(ErrorKind::ZeroSubspace, "span_product needs nonzero subspaces");
  }
  std::vector<FieldElem> rows;
  for (auto x : a.basis()) {
    for (auto y : b.basis()) {
      insert_row(e, rows, e.mul(x, y));
      if (rows.size() == e.m()) return Subspace::from_canonical_rows(std::move(rows));
    }
  }
  return Subspace::from_canonical_rows(std::move(rows));
}

FieldElem combine(const FieldExtension& e, std::span<const FieldElem> basis,
                  std::span<const std::uint32_t> coords) {
  FieldElem x = 0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (coords[i]) x = e.add(x, e.scale(coords[i], basis[i]));
  }
  return x;
}

std::vector<std::uint32_t> coordinates(const FieldExtension& e, const Subspace& u, FieldElem x) {
  // In reduced echelon form the coefficient of row i is x's pivot digit.
  std::vector<std::uint32_t> c(u.dim());
  for (std::size_t i = 0; i < u.dim(); ++i) c[i] = e.digit(x, pivot_of(e, u.basis()[i]));
  return c;
}

std::vector<FieldElem> elements(const FieldExtension& e, const Subspace& u) {
  std::vector<FieldElem> out{0};
  for (auto r : u.basis()) {
    const std::size_t n = out.size();
    for (std::uint32_t c = 1; c < e.p(); ++c) {
      const FieldElem cr = e.scale(c, r);
      for (std::size_t i = 0; i < n; ++i) out.push_back(e.add(out[i], cr));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FieldElem> line_representatives(const FieldExtension& e, const Subspace& u) {
  std::vector<FieldElem> out;
  for (auto x : elements(e, u)) {
    if (x != 0 && normalize(e, x) == x) out.push_back(x);
  }
  return out;
}

Subspace whole_space(const FieldExtension& e) {
  std::vector<FieldElem> rows;
  for (std::uint32_t i = 0; i < e.m(); ++i) rows.push_back(e.place(i));
  return Subspace::from_canonical_rows(std::move(rows));
}

Subspace base_field(const FieldExtension& e) { return Subspace::from_canonical_rows({e.one()}); }

std::string subspace_to_string(const FieldExtension& e, const Subspace& u) {
  std::string s = "<";
  for (std::size_t i = 0; i < u.dim(); ++i) {
    if (i) s += ',';
    s += e.element_to_string(u.basis()[i]);
  }
  return s + ">";
}

std::uint64_t gaussian_binomial(std::uint32_t n, std::uint32_t k, std::uint32_t p) {
  if (k > n) return 0;
  // Product of (p^(n-i) - 1) / (p^(i+1) - 1), kept exact via the recurrence
  // [n,k] = [n-1,k-1] + p^k [n-1,k].
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::vector<unsigned __int128>> t(n + 1, std::vector<unsigned __int128>(n + 1, 0));
  for (std::uint32_t i = 0; i <= n; ++i) {
    t[i][0] = 1;
    for (std::uint32_t j = 1; j <= i; ++j) {
      unsigned __int128 pk = 1;
      for (std::uint32_t r = 0; r < j; ++r) pk = std::min<unsigned __int128>(pk * p, kMax);
      const unsigned __int128 v = t[i - 1][j - 1] + (j <= i - 1 ? pk * t[i - 1][j] : 0);
      t[i][j] = std::min<unsigned __int128>(v, kMax);
    }
  }
  return static_cast<std::uint64_t>(t[n][k]);
}

std::uint64_t total_subspace_count(std::uint32_t n, std::uint32_t p) {
  unsigned __int128 total = 0;
  for (std::uint32_t k = 0; k <= n; ++k) total += gaussian_binomial(n, k, p);
  return static_cast<std::uint64_t>(
      std::min<unsigned __int128>(total, std::numeric_limits<std::uint64_t>::max()));
}

// --------------------------------------------------------------------------
// Subfields and structure detectors

bool is_subfield(const FieldExtension& e, const Subspace& u) {
  if (!contains(e, u, e.one())) return false;
  for (auto x : u.basis()) {
    for (auto y : u.basis()) {
      if (!contains(e, u, e.mul(x, y))) return false;
    }
  }
  return true;
}

std::uint32_t element_degree(const FieldExtension& e, FieldElem a) {
  for (std::uint32_t d = 1; d <= e.m(); ++d) {
    if (e.m() % d == 0 && e.frobenius(a, d) == a) return d;
  }
  throw std::logic_error("element_degree: Frobenius orbit does not close");
}

std::vector<IntermediateField> intermediate_fields(const FieldExtension& e) {
  std::vector<IntermediateField> out;
  for (std::uint32_t d = 1; d <= e.m(); ++d) {
    if (e.m() % d) continue;
    std::vector<FieldElem> fixed;
    for (FieldElem x = 0; x < e.size(); ++x) {
      if (e.frobenius(x, d) == x) fixed.push_back(x);
    }
    IntermediateField f;
    f.degree = d;
    f.space = span(e, fixed);
    f.multiplicatively_closed = is_subfield(e, f.space);
    if (f.space.dim() != d || !f.multiplicatively_closed) {
      throw std::logic_error("intermediate_fields: fixed space of Frobenius is not GF(p^d)");
    }
    out.push_back(std::move(f));
  }
  return out;
}

IntermediateField stabilizer_subfield(const FieldExtension& e, const Subspace& s) {
  if (s.is_zero()) throw Error(ErrorKind::ZeroSubspace, "stabilizer of the zero subspace");
  std::vector<FieldElem> members;
  for (FieldElem x = 0; x < e.size(); ++x) {
    bool keeps = true;
    for (auto r : s.basis()) {
      if (!contains(e, s, e.mul(x, r))) {
        keeps = false;
        break;
      }
    }
    if (keeps) members.push_back(x);
  }
  const Subspace stab = span(e, members);
  for (auto& f : intermediate_fields(e)) {
    if (f.space == stab) return f;
  }
  throw std::logic_error("stabilizer_subfield: stabilizer is not an intermediate field");
}

std::uint32_t p_of_extension(const FieldExtension& e) {
  if (e.m() == 1) throw Error(ErrorKind::TrivialExtension, "GF(p)/GF(p) has no proper intermediate field");
  for (std::uint32_t d = 2; d <= e.m(); ++d) {
    if (e.m() % d == 0) return d;
  }
  return e.m();
}

bool is_sidon_subspace(const FieldExtension& e, const Subspace& a) {
  if (a.is_zero()) throw Error(ErrorKind::ZeroSubspace, "Sidon test of the zero subspace");
  if (a.dim() == 1) return true;
  const std::size_t twice = 2 * a.dim();
  for (auto x : line_representatives(e, whole_space(e))) {
    if (x == e.one()) continue;  // the only normalized element of K*
    const Subspace xa = scale(e, x, a);
    // dim(A ∩ xA) = 2 dim A - dim(A + xA)
    if (twice - sum(e, a, xa).dim() > 1) return false;
  }
  return true;
}

bool is_chowla_subspace(const FieldExtension& e, const Subspace& a) {
  if (a.is_zero()) throw Error(ErrorKind::ZeroSubspace, "Chowla test of the zero subspace");
  for (auto x : line_representatives(e, a)) {
    if (element_degree(e, x) < a.dim() + 1) return false;
  }
  return true;
}

bool is_primitive_subspace(const FieldExtension& e, const Subspace& a) {
  if (a.is_zero()) throw Error(ErrorKind::ZeroSubspace, "primitivity test of the zero subspace");
  for (auto x : line_representatives(e, a)) {
    if (element_degree(e, x) != e.m()) return false;
  }
  return true;
}

AtomReport atom_report(const FieldExtension& e, const Subspace& a, std::uint64_t budget) {
  if (a.is_zero()) throw Error(ErrorKind::ZeroSubspace, "atom_report of the zero subspace");
  const std::uint64_t total = total_subspace_count(e.m(), e.p());
  if (total > budget) {
    throw Error(ErrorKind::ScaleExceeded, e.to_string() + " has " + std::to_string(total) +
                                              " subspaces, above the budget " + std::to_string(budget));
  }
  AtomReport rep;
  const Subspace all = whole_space(e);
  std::optional<Subspace> atom_with_one, atom_any;
  for (std::uint32_t k = 1; k <= e.m(); ++k) {
    for_each_subspace_of(e, all, k, [&](const Subspace& x) {
      ++rep.subspaces_scanned;
      const Subspace prod = span_product(e, x, a);
      if (prod.dim() == e.m()) return true;
      const auto boundary = static_cast<std::int64_t>(prod.dim()) - static_cast<std::int64_t>(x.dim());
      if (!rep.kappa || boundary < *rep.kappa) {
        rep.kappa = boundary;
        rep.fragment_count = 0;
        atom_with_one.reset();
        atom_any.reset();
        rep.fragment = x;
      }
      if (boundary != *rep.kappa) return true;
      ++rep.fragment_count;
      // Larger k arrive later: keep the first (least) matrix of the largest dim.
      if (x.dim() > rep.fragment.dim() || (x.dim() == rep.fragment.dim() && x < rep.fragment)) {
        rep.fragment = x;
      }
      const bool has_one = contains(e, x, e.one());
      auto better = [&](const std::optional<Subspace>& cur) {
        return !cur || x.dim() < cur->dim() || (x.dim() == cur->dim() && x < *cur);
      };
      if (better(atom_any)) atom_any = x;
      if (has_one && better(atom_with_one)) atom_with_one = x;
      return true;
    });
  }
  rep.psi_nonempty = rep.kappa.has_value();
  if (rep.psi_nonempty) {
    const std::size_t min_dim = atom_any->dim();
    rep.atom = (atom_with_one && atom_with_one->dim() == min_dim) ? *atom_with_one : *atom_any;
  }
  return rep;
}

}  // namespace addmatch
