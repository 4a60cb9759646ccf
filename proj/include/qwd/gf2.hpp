#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

// Bit-packed linear algebra over F2. Rows are packed into 64-bit words and
// row elimination is word-wise XOR.

namespace qwd::gf2 {

class BitVector {
public:
  BitVector() = default;

  explicit BitVector(std::size_t length)
      : len_(length), words_((length + 63) / 64, 0) {}

  std::size_t size() const { return len_; }
  bool empty() const { return len_ == 0; }

  bool get(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }

  void set(std::size_t i, bool v) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (v) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }

  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  // Invariant: bits beyond size() stay zero, so equality and popcount can
  // work on whole words.
  BitVector& operator^=(const BitVector& o) {
    if (o.len_ != len_) {
      throw std::invalid_argument("BitVector xor: length mismatch");
    }
    for (std::size_t w = 0; w < words_.size(); ++w) {
      words_[w] ^= o.words_[w];
    }
    return *this;
  }

  friend BitVector operator^(BitVector a, const BitVector& b) {
    a ^= b;
    return a;
  }

  bool operator==(const BitVector& o) const = default;

  bool any() const {
    for (auto w : words_) {
      if (w) return true;
    }
    return false;
  }

  std::size_t popcount() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  // Index of the lowest set bit, or size() if none.
  std::size_t first_set() const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w]) {
        return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
      }
    }
    return len_;
  }

  bool dot(const BitVector& o) const {
    if (o.len_ != len_) {
      throw std::invalid_argument("BitVector dot: length mismatch");
    }
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      acc ^= words_[w] & o.words_[w];
    }
    return std::popcount(acc) & 1;
  }

  std::string str() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i) {
      if (get(i)) s[i] = '1';
    }
    return s;
  }

  static BitVector from_string(const std::string& s) {
    BitVector v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1') {
        v.set(i, true);
      } else if (s[i] != '0') {
        throw std::invalid_argument("BitVector::from_string: bad digit");
      }
    }
    return v;
  }

private:
  std::size_t len_ = 0;
  std::vector<std::uint64_t> words_;
};

class BitMatrix {
public:
  BitMatrix() = default;

  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows, BitVector(cols)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const { return data_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool v) { data_[r].set(c, v); }

  BitVector& row(std::size_t r) { return data_[r]; }
  const BitVector& row(std::size_t r) const { return data_[r]; }

  BitVector column(std::size_t c) const {
    BitVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v.set(r, data_[r].get(c));
    return v;
  }

  // The algorithm reads columns in bulk between row-mutation phases, so a
  // one-shot transpose beats per-bit column extraction.
  BitMatrix transposed() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) {
        if (data_[r].get(c)) t.data_[c].set(r, true);
      }
    }
    return t;
  }

  bool operator==(const BitMatrix& o) const = default;

  static BitMatrix identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
  }

  static BitMatrix from_rows(const std::vector<std::string>& rows) {
    BitMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      m.data_[r] = BitVector::from_string(rows[r]);
    }
    return m;
  }

  friend BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols_ != b.rows_) {
      throw std::invalid_argument("BitMatrix multiply: dimension mismatch");
    }
    BitMatrix c(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a.get(r, k)) c.data_[r] ^= b.data_[k];
      }
    }
    return c;
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BitVector> data_;
};

struct RrefResult {
  BitMatrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;  // column index per pivot row, ascending
};

// Gauss-Jordan over F2. Pivot choice is deterministic: lowest-index nonzero
// column, then lowest-index row, so identical inputs give identical output.
inline RrefResult rref(const BitMatrix& m) {
  RrefResult out{m, 0, {}};
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
    std::size_t sel = rows;
    for (std::size_t r = pivot_row; r < rows; ++r) {
      if (out.reduced.get(r, col)) {
        sel = r;
        break;
      }
    }
    if (sel == rows) continue;
    if (sel != pivot_row) {
      std::swap(out.reduced.row(sel), out.reduced.row(pivot_row));
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (r != pivot_row && out.reduced.get(r, col)) {
        out.reduced.row(r) ^= out.reduced.row(pivot_row);
      }
    }
    out.pivots.push_back(col);
    ++pivot_row;
  }
  out.rank = out.pivots.size();
  return out;
}

inline std::size_t rank(const BitMatrix& m) { return rref(m).rank; }

// Basis of {u : M u = 0}, one vector per free column, ordered by ascending
// free-column index. Full column rank gives an empty list.
inline std::vector<BitVector> null_space_basis(const BitMatrix& m) {
  const RrefResult rr = rref(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto p : rr.pivots) is_pivot[p] = true;

  std::vector<BitVector> basis;
  basis.reserve(cols - rr.rank);
  for (std::size_t free_col = 0; free_col < cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    BitVector u(cols);
    u.set(free_col, true);
    for (std::size_t i = 0; i < rr.rank; ++i) {
      if (rr.reduced.get(i, free_col)) u.set(rr.pivots[i], true);
    }
    basis.push_back(std::move(u));
  }
  return basis;
}

inline BitVector mat_vec(const BitMatrix& m, const BitVector& u) {
  if (u.size() != m.cols()) {
    throw std::invalid_argument("mat_vec: dimension mismatch");
  }
  BitVector out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out.set(r, m.row(r).dot(u));
  }
  return out;
}

}  // namespace qwd::gf2
