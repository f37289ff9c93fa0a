#include "addmatch/gf_matrix.hpp"

#include "addmatch/error.hpp"
#include "addmatch/field.hpp"

namespace addmatch {

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (!is_prime(p)) throw Error(ErrorKind::NonprimeCharacteristic, std::to_string(p) + " is not prime");
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  std::uint32_t r = 1, b = a % p_;
  for (std::uint32_t e = p_ - 2; e; e >>= 1) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
  }
  return r;
}

std::vector<std::size_t> row_reduce(const PrimeField& f, Matrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t sel = r;
    while (sel < m.size() && m[sel][c] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[r], m[sel]);
    const std::uint32_t s = f.inv(m[r][c]);
    for (auto& x : m[r]) x = f.mul(x, s);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const std::uint32_t t = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] = f.sub(m[i][j], f.mul(t, m[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return pivots;
}

std::size_t rank(const PrimeField& f, Matrix m) { return row_reduce(f, m).size(); }

Matrix nullspace(const PrimeField& f, Matrix m, std::size_t cols) {
  const auto pivots = row_reduce(f, m);
  std::vector<char> is_pivot(cols, 0);
  for (auto c : pivots) is_pivot[c] = 1;
  Matrix out;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Row v(cols, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.sub(0, m[i][free]);
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<Matrix> inverse(const PrimeField& f, const Matrix& m) {
  const std::size_t n = m.size();
  Matrix aug(n, Row(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j] % f.p();
    aug[i][n + i] = 1;
  }
  const auto pivots = row_reduce(f, aug);
  if (pivots.size() < n || pivots[n - 1] >= n) return std::nullopt;
  Matrix out(n, Row(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i][j] = aug[i][n + j];
  }
  return out;
}

}  // namespace addmatch
