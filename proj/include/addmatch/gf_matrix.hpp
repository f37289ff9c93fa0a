#pragma once

// Dense matrices over a prime field GF(p), rows of residues in [0, p).

#include <cstdint>
#include <optional>
#include <vector>

namespace addmatch {

using Row = std::vector<std::uint32_t>;
using Matrix = std::vector<Row>;

class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p);

  std::uint32_t p() const { return p_; }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return (a + b) % p_; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return (a + p_ - b) % p_; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(std::uint64_t{a} * b % p_);
  }
  std::uint32_t inv(std::uint32_t a) const;

 private:
  std::uint32_t p_;
};

/// In-place reduced row-echelon form; zero rows are dropped. Returns the
/// pivot column of each remaining row.
std::vector<std::size_t> row_reduce(const PrimeField& f, Matrix& m);
std::size_t rank(const PrimeField& f, Matrix m);
/// Basis of {x : m x = 0} for an r x cols matrix.
Matrix nullspace(const PrimeField& f, Matrix m, std::size_t cols);
std::optional<Matrix> inverse(const PrimeField& f, const Matrix& m);

}  // namespace addmatch
