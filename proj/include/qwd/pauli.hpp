#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qwd/gf2.hpp"

// Pauli strings and their tableau encoding. A digit maps to (x,z) bits:
// I=(0,0), X=(1,0), Z=(0,1), Y=(1,1). A tableau stacks N operators into the
// N x 2n block matrix (X|Z) plus a sign column.

namespace qwd::pauli {

using gf2::BitMatrix;
using gf2::BitVector;

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg), position(pos) {}
  std::size_t position;
};

struct PauliString {
  std::size_t n = 0;
  BitVector x;
  BitVector z;
  bool sign = false;  // false: +, true: -

  PauliString() = default;
  explicit PauliString(std::size_t qubits)
      : n(qubits), x(qubits), z(qubits) {}

  bool operator==(const PauliString&) const = default;

  char digit(std::size_t j) const {
    const bool xb = x.get(j), zb = z.get(j);
    if (xb && zb) return 'Y';
    if (xb) return 'X';
    if (zb) return 'Z';
    return 'I';
  }

  bool is_identity_digit(std::size_t j) const {
    return !x.get(j) && !z.get(j);
  }

  // Hamming weight: number of non-identity digits.
  std::size_t weight() const {
    std::size_t w = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (!is_identity_digit(j)) ++w;
    }
    return w;
  }

  bool diagonal() const { return !x.any(); }

  std::string str() const {
    std::string s;
    s.reserve(n + 1);
    if (sign) s.push_back('-');
    for (std::size_t j = 0; j < n; ++j) s.push_back(digit(j));
    return s;
  }
};

// Grammar: [+-]?[IXYZ]+
inline PauliString parse_pauli(std::string_view text) {
  std::size_t pos = 0;
  bool sign = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    sign = text[pos] == '-';
    ++pos;
  }
  if (pos == text.size()) {
    throw ParseError("empty Pauli string", pos);
  }
  PauliString p(text.size() - pos);
  p.sign = sign;
  for (std::size_t j = 0; pos < text.size(); ++pos, ++j) {
    switch (text[pos]) {
      case 'I': break;
      case 'X': p.x.set(j, true); break;
      case 'Z': p.z.set(j, true); break;
      case 'Y': p.x.set(j, true); p.z.set(j, true); break;
      default:
        throw ParseError(std::string("invalid Pauli character '") +
                             text[pos] + "'",
                         pos);
    }
  }
  return p;
}

// Symplectic product: P and Q commute iff x_P.z_Q + z_P.x_Q = 0 over F2.
inline bool commutes(const PauliString& p, const PauliString& q) {
  if (p.n != q.n) {
    throw std::invalid_argument("commutes: qubit count mismatch");
  }
  return !(p.x.dot(q.z) ^ p.z.dot(q.x));
}

class Tableau {
public:
  Tableau() = default;

  Tableau(std::size_t qubits, std::size_t operators)
      : n_(qubits),
        x_(operators, qubits),
        z_(operators, qubits),
        signs_(operators) {}

  static Tableau from_paulis(std::span<const PauliString> ps) {
    if (ps.empty()) {
      throw std::invalid_argument("Tableau: empty operator list");
    }
    const std::size_t n = ps[0].n;
    Tableau t(n, ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (ps[i].n != n) {
        throw std::invalid_argument("Tableau: inconsistent qubit counts");
      }
      t.x_.row(i) = ps[i].x;
      t.z_.row(i) = ps[i].z;
      t.signs_.set(i, ps[i].sign);
    }
    return t;
  }

  // Returns the first non-commuting row pair, or nullopt-equivalent
  // {N,N} when all rows pairwise commute.
  std::pair<std::size_t, std::size_t> first_noncommuting_pair() const {
    for (std::size_t i = 0; i < rows(); ++i) {
      for (std::size_t j = i + 1; j < rows(); ++j) {
        if (x_.row(i).dot(z_.row(j)) ^ z_.row(i).dot(x_.row(j))) {
          return {i, j};
        }
      }
    }
    return {rows(), rows()};
  }

  bool all_commuting() const {
    return first_noncommuting_pair().first == rows();
  }

  static Tableau require_commuting(std::span<const PauliString> ps) {
    Tableau t = from_paulis(ps);
    auto [i, j] = t.first_noncommuting_pair();
    if (i != t.rows()) {
      throw std::invalid_argument("operators " + std::to_string(i) + " (" +
                                  ps[i].str() + ") and " + std::to_string(j) +
                                  " (" + ps[j].str() + ") do not commute");
    }
    return t;
  }

  std::size_t n() const { return n_; }
  std::size_t rows() const { return x_.rows(); }

  BitMatrix& x() { return x_; }
  const BitMatrix& x() const { return x_; }
  BitMatrix& z() { return z_; }
  const BitMatrix& z() const { return z_; }
  BitVector& signs() { return signs_; }
  const BitVector& signs() const { return signs_; }

  PauliString row(std::size_t i) const {
    PauliString p(n_);
    p.x = x_.row(i);
    p.z = z_.row(i);
    p.sign = signs_.get(i);
    return p;
  }

  // Flat N x 2n block matrix (X|Z).
  BitMatrix xz_matrix() const {
    BitMatrix m(rows(), 2 * n_);
    for (std::size_t i = 0; i < rows(); ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (x_.get(i, j)) m.set(i, j, true);
        if (z_.get(i, j)) m.set(i, n_ + j, true);
      }
    }
    return m;
  }

  bool operator==(const Tableau&) const = default;

private:
  std::size_t n_ = 0;
  BitMatrix x_;
  BitMatrix z_;
  BitVector signs_;
};

// An element (v,w) of the null space of a stage tableau's (X|Z).
struct NullVector {
  BitVector v;
  BitVector w;

  std::size_t n() const { return v.size(); }

  bool supported_at(std::size_t j) const { return v.get(j) || w.get(j); }

  // Symplectic weight: qubits where (v_j, w_j) != (0,0).
  std::size_t symplectic_weight() const {
    std::size_t c = 0;
    for (std::size_t j = 0; j < n(); ++j) {
      if (supported_at(j)) ++c;
    }
    return c;
  }

  std::vector<std::size_t> support() const {
    std::vector<std::size_t> s;
    for (std::size_t j = 0; j < n(); ++j) {
      if (supported_at(j)) s.push_back(j);
    }
    return s;
  }

  BitVector flat() const {
    BitVector u(2 * n());
    for (std::size_t j = 0; j < n(); ++j) {
      if (v.get(j)) u.set(j, true);
      if (w.get(j)) u.set(n() + j, true);
    }
    return u;
  }

  static NullVector from_flat(const BitVector& u) {
    const std::size_t n = u.size() / 2;
    NullVector nv{BitVector(n), BitVector(n)};
    for (std::size_t j = 0; j < n; ++j) {
      if (u.get(j)) nv.v.set(j, true);
      if (u.get(n + j)) nv.w.set(j, true);
    }
    return nv;
  }

  bool operator==(const NullVector&) const = default;
};

struct GeneratingSet {
  Tableau tableau;                    // r independent rows, sign-free
  std::size_t r = 0;                  // rank of (X|Z)
  std::vector<std::size_t> qubit_map; // column j -> original qubit index
};

// Extracts r independent generators by row reducing (X|Z). Generator rows
// are the rref rows, so the result is deterministic and a projection:
// running it twice gives the same rank and row space. Signs are dropped;
// generators only steer gate choice, never verification.
inline GeneratingSet independent_generators(const Tableau& t) {
  auto [i, j] = t.first_noncommuting_pair();
  if (i != t.rows()) {
    throw std::invalid_argument("independent_generators: rows " +
                                std::to_string(i) + " and " +
                                std::to_string(j) + " do not commute");
  }
  const gf2::RrefResult rr = gf2::rref(t.xz_matrix());
  const std::size_t n = t.n();
  GeneratingSet g;
  g.r = rr.rank;
  g.tableau = Tableau(n, rr.rank);
  for (std::size_t row = 0; row < rr.rank; ++row) {
    for (std::size_t q = 0; q < n; ++q) {
      if (rr.reduced.get(row, q)) g.tableau.x().set(row, q, true);
      if (rr.reduced.get(row, n + q)) g.tableau.z().set(row, q, true);
    }
  }
  g.qubit_map.resize(n);
  std::iota(g.qubit_map.begin(), g.qubit_map.end(), std::size_t{0});
  return g;
}

// Column-permuted, H-bookkept tableau in stabilizer standard form
// (1_{r x r} A | B). hadamard_mask marks qubits whose X/Z columns were
// logically swapped to make the X block full rank; no gates are implied,
// the swap is undone when mapping null vectors back.
struct StandardForm {
  Tableau tableau;
  std::vector<std::size_t> qubit_perm;  // new column index -> old qubit index
  std::vector<bool> hadamard_mask;      // indexed by old qubit index
  std::size_t r = 0;
};

inline StandardForm standard_form(const GeneratingSet& g) {
  const std::size_t n = g.tableau.n();
  const std::size_t r = g.r;

  // Pick one column per qubit (X preferred, else Z) to reach rank r in the
  // swapped X block. Incremental elimination over r-bit column vectors.
  std::vector<bool> mask(n, false);
  std::vector<BitVector> basis;  // echelonized chosen columns
  std::vector<std::size_t> basis_lead;
  auto try_add = [&](BitVector col) -> bool {
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (col.get(basis_lead[k])) col ^= basis[k];
    }
    const std::size_t lead = col.first_set();
    if (lead == col.size()) return false;
    basis.push_back(std::move(col));
    basis_lead.push_back(lead);
    return true;
  };
  for (std::size_t q = 0; q < n && basis.size() < r; ++q) {
    if (try_add(g.tableau.x().column(q))) continue;
    if (try_add(g.tableau.z().column(q))) mask[q] = true;
  }
  if (basis.size() != r) {
    // Cannot happen for a commuting independent set; guard anyway.
    throw std::logic_error("standard_form: X block rank deficient");
  }

  // Swapped 2n-column matrix: masked qubits exchange X and Z columns.
  BitMatrix m(r, 2 * n);
  for (std::size_t row = 0; row < r; ++row) {
    for (std::size_t q = 0; q < n; ++q) {
      const bool xb = g.tableau.x().get(row, q);
      const bool zb = g.tableau.z().get(row, q);
      m.set(row, q, mask[q] ? zb : xb);
      m.set(row, n + q, mask[q] ? xb : zb);
    }
  }
  const gf2::RrefResult rr = gf2::rref(m);
  // All pivots land in the first n columns by construction of the mask.
  std::vector<bool> is_pivot_qubit(n, false);
  for (auto p : rr.pivots) {
    if (p >= n) throw std::logic_error("standard_form: pivot escaped X block");
    is_pivot_qubit[p] = true;
  }

  StandardForm sf;
  sf.r = r;
  sf.hadamard_mask = mask;
  sf.qubit_perm.reserve(n);
  for (std::size_t q = 0; q < n; ++q) {
    if (is_pivot_qubit[q]) sf.qubit_perm.push_back(q);
  }
  for (std::size_t q = 0; q < n; ++q) {
    if (!is_pivot_qubit[q]) sf.qubit_perm.push_back(q);
  }

  sf.tableau = Tableau(n, r);
  for (std::size_t row = 0; row < r; ++row) {
    for (std::size_t q_new = 0; q_new < n; ++q_new) {
      const std::size_t q_old = sf.qubit_perm[q_new];
      if (rr.reduced.get(row, q_old)) sf.tableau.x().set(row, q_new, true);
      if (rr.reduced.get(row, n + q_old)) sf.tableau.z().set(row, q_new, true);
    }
  }
  return sf;
}

// Lowest-Hamming-weight column of A or B (flat index >= r), combined with
// the identity columns it depends on. The result is a null vector of the
// standard-form tableau with flat weight <= r+1. Ties break to the lowest
// flat column index.
inline NullVector min_weight_dependent_column(const StandardForm& sf) {
  const Tableau& t = sf.tableau;
  const std::size_t n = t.n();
  const std::size_t r = sf.r;
  if (2 * n <= r) {
    throw std::logic_error("min_weight_dependent_column: no free columns");
  }
  const BitMatrix flat = t.xz_matrix();
  const BitMatrix cols = flat.transposed();

  std::size_t best = 2 * n;
  std::size_t best_weight = 0;
  for (std::size_t m = r; m < 2 * n; ++m) {
    const std::size_t w = cols.row(m).popcount();
    if (best == 2 * n || w < best_weight) {
      best = m;
      best_weight = w;
    }
  }

  BitVector u(2 * n);
  u.set(best, true);
  for (std::size_t i = 0; i < r; ++i) {
    if (cols.row(best).get(i)) u.set(i, true);
  }
  return NullVector::from_flat(u);
}

// Maps a null vector found in standard-form coordinates back to the
// original qubit labelling, undoing the column permutation and the
// per-qubit X/Z bookkeeping swaps.
inline NullVector unstandardize(const NullVector& u, const StandardForm& sf) {
  const std::size_t n = u.n();
  NullVector out{BitVector(n), BitVector(n)};
  for (std::size_t q_new = 0; q_new < n; ++q_new) {
    const std::size_t q_old = sf.qubit_perm[q_new];
    bool v = u.v.get(q_new);
    bool w = u.w.get(q_new);
    if (sf.hadamard_mask[q_old]) std::swap(v, w);
    out.v.set(q_old, v);
    out.w.set(q_old, w);
  }
  return out;
}

}  // namespace qwd::pauli
