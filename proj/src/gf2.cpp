#include "spincc/gf2.hpp"

#include <utility>

namespace spincc {

std::size_t BitVector::next_set(std::size_t from) const {
  if (from >= size_) return size_;
  std::size_t w = from >> 6;
  std::uint64_t word = words_[w] & (~std::uint64_t(0) << (from & 63));
  for (;;) {
    if (word) {
      std::size_t i = (w << 6) + std::size_t(__builtin_ctzll(word));
      return i < size_ ? i : size_;
    }
    if (++w == words_.size()) return size_;
    word = words_[w];
  }
}

BitVector Gf2Matrix::apply(const BitVector& x) const {
  BitVector out(rows());
  for (std::size_t r = 0; r < rows(); ++r) {
    bool acc = false;
    for (std::size_t c = x.next_set(0); c < x.size(); c = x.next_set(c + 1)) acc ^= rows_[r].get(c);
    out.set(r, acc);
  }
  return out;
}

Rref::Rref(Gf2Matrix m) : reduced(std::move(m)), transform(reduced.rows(), reduced.rows()) {
  auto& rows = reduced.rows_;
  auto& t = transform.rows_;
  for (std::size_t r = 0; r < rows.size(); ++r) t[r].set(r);
  std::size_t next = 0;
  for (std::size_t c = 0; c < reduced.cols() && next < rows.size(); ++c) {
    std::size_t p = next;
    while (p < rows.size() && !rows[p].get(c)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[next]);
    std::swap(t[p], t[next]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != next && rows[r].get(c)) {
        rows[r] ^= rows[next];
        t[r] ^= t[next];
      }
    }
    pivot_cols.push_back(c);
    ++next;
  }
}

std::optional<BitVector> Rref::solve(const BitVector& b) const {
  BitVector tb = transform.apply(b);
  for (std::size_t r = rank(); r < reduced.rows(); ++r) {
    if (tb.get(r)) return std::nullopt;
  }
  BitVector x(reduced.cols());
  for (std::size_t r = 0; r < rank(); ++r) x.set(pivot_cols[r], tb.get(r));
  return x;
}

std::vector<BitVector> Rref::kernel() const {
  std::vector<bool> is_pivot(reduced.cols(), false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  std::vector<BitVector> out;
  for (std::size_t f = 0; f < reduced.cols(); ++f) {
    if (is_pivot[f]) continue;
    BitVector v(reduced.cols());
    v.set(f);
    for (std::size_t r = 0; r < rank(); ++r) {
      if (reduced.get(r, f)) v.set(pivot_cols[r]);
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace spincc
