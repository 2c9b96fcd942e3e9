#pragma once

// Dense bit-packed linear algebra over GF(2).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace spincc {

class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const noexcept { return size_; }
  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool v = true) {
    std::uint64_t bit = std::uint64_t(1) << (i & 63);
    if (v) {
      words_[i >> 6] |= bit;
    } else {
      words_[i >> 6] &= ~bit;
    }
  }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t(1) << (i & 63); }
  BitVector& operator^=(const BitVector& other) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
  }
  bool any() const {
    for (auto w : words_) {
      if (w) return true;
    }
    return false;
  }
  // Index of the lowest set bit at or after `from`, or size() if none.
  std::size_t next_set(std::size_t from) const;

  bool operator==(const BitVector&) const = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

class Gf2Matrix {
 public:
  Gf2Matrix() = default;
  Gf2Matrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool v = true) { rows_[r].set(c, v); }
  void flip(std::size_t r, std::size_t c) { rows_[r].flip(c); }
  const BitVector& row(std::size_t r) const { return rows_[r]; }

  BitVector apply(const BitVector& x) const;

 private:
  friend struct Rref;
  std::size_t cols_ = 0;
  std::vector<BitVector> rows_;
};

// Reduced row echelon form. Columns are scanned left to right, so pivots land
// on the earliest possible columns.
struct Rref {
  explicit Rref(Gf2Matrix m);

  std::size_t rank() const noexcept { return pivot_cols.size(); }
  // Solution of A x = b with every free column set to zero, or nothing when
  // b is outside the column space.
  std::optional<BitVector> solve(const BitVector& b) const;
  std::vector<BitVector> kernel() const;

  Gf2Matrix reduced;
  std::vector<std::size_t> pivot_cols;
  // Row operations applied to A, so that transform * A = reduced.
  Gf2Matrix transform;
};

}  // namespace spincc
