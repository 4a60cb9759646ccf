#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qwd/clifford.hpp"
#include "qwd/pauli.hpp"

// Exact 2^n x 2^n ground-truth arithmetic for small n. Qubit j is the jth
// bit (LSB first) of the computational-basis index.

namespace qwd::dense {

using cplx = std::complex<double>;
using clifford::CliffordCircuit;
using clifford::Gate;
using clifford::GateKind;
using pauli::PauliString;

inline constexpr std::size_t kDefaultQubitLimit = 10;

// Column-major 2^n x 2^n matrix.
struct Unitary {
  std::size_t n = 0;
  std::size_t dim = 0;
  std::vector<cplx> a;  // a[col * dim + row]

  explicit Unitary(std::size_t qubits)
      : n(qubits), dim(std::size_t{1} << qubits), a(dim * dim, cplx{0, 0}) {
    for (std::size_t k = 0; k < dim; ++k) a[k * dim + k] = 1.0;
  }

  cplx& at(std::size_t row, std::size_t col) { return a[col * dim + row]; }
  const cplx& at(std::size_t row, std::size_t col) const {
    return a[col * dim + row];
  }

  cplx* col(std::size_t c) { return a.data() + c * dim; }
  const cplx* col(std::size_t c) const { return a.data() + c * dim; }
};

inline void apply_gate_state(cplx* state, std::size_t n, const Gate& g) {
  const std::size_t dim = std::size_t{1} << n;
  const std::size_t m0 = std::size_t{1} << g.q0;
  const std::size_t m1 = std::size_t{1} << g.q1;
  static const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  switch (g.kind) {
    case GateKind::H:
      for (std::size_t b = 0; b < dim; ++b) {
        if (b & m0) continue;
        const cplx lo = state[b], hi = state[b | m0];
        state[b] = inv_sqrt2 * (lo + hi);
        state[b | m0] = inv_sqrt2 * (lo - hi);
      }
      break;
    case GateKind::S:
      for (std::size_t b = 0; b < dim; ++b) {
        if (b & m0) state[b] *= cplx{0, 1};
      }
      break;
    case GateKind::Cnot:
      for (std::size_t b = 0; b < dim; ++b) {
        if ((b & m0) && !(b & m1)) std::swap(state[b], state[b | m1]);
      }
      break;
    case GateKind::Swap:
      for (std::size_t b = 0; b < dim; ++b) {
        if ((b & m0) && !(b & m1)) std::swap(state[b], state[(b ^ m0) | m1]);
      }
      break;
  }
}

// Exact unitary of the circuit: gates applied first-recorded first.
inline Unitary dense_unitary(const CliffordCircuit& c,
                             std::size_t qubit_limit = kDefaultQubitLimit) {
  if (c.n > qubit_limit) {
    throw std::length_error("dense_unitary: " + std::to_string(c.n) +
                            " qubits exceeds oracle limit " +
                            std::to_string(qubit_limit));
  }
  Unitary u(c.n);
  for (const Gate& g : c.gates) {
    for (std::size_t k = 0; k < u.dim; ++k) {
      apply_gate_state(u.col(k), c.n, g);
    }
  }
  return u;
}

// out <- matrix(P) * in, where P is interpreted literally:
// (-1)^sign tensor of {I, X, Z, Y} digits.
inline void apply_pauli_state(const PauliString& p, const cplx* in,
                              cplx* out) {
  const std::size_t dim = std::size_t{1} << p.n;
  std::size_t x_mask = 0;
  for (std::size_t j = 0; j < p.n; ++j) {
    if (p.x.get(j)) x_mask |= std::size_t{1} << j;
  }
  for (std::size_t b = 0; b < dim; ++b) {
    cplx phase = p.sign ? -1.0 : 1.0;
    for (std::size_t j = 0; j < p.n; ++j) {
      const bool beta = (b >> j) & 1;
      const bool xb = p.x.get(j), zb = p.z.get(j);
      if (xb && zb) {
        phase *= beta ? cplx{0, -1} : cplx{0, 1};
      } else if (zb) {
        if (beta) phase = -phase;
      }
    }
    out[b ^ x_mask] = phase * in[b];
  }
}

// Checks U P U^dagger == matrix(Q) column by column via
// U (P e_k) == Q (U e_k); O(4^n) total.
inline bool conjugation_matches(const Unitary& u, const PauliString& p,
                                const PauliString& q, double tol = 1e-12) {
  if (p.n != u.n || q.n != u.n) {
    throw std::invalid_argument("conjugation_matches: qubit count mismatch");
  }
  const std::size_t dim = u.dim;
  std::vector<cplx> ek(dim), tmp(dim), lhs(dim), rhs(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    std::fill(ek.begin(), ek.end(), cplx{0, 0});
    ek[k] = 1.0;
    apply_pauli_state(p, ek.data(), tmp.data());  // P e_k
    // lhs = U (P e_k): P e_k has a single nonzero entry.
    std::size_t nz = 0;
    while (nz < dim && tmp[nz] == cplx{0, 0}) ++nz;
    for (std::size_t r = 0; r < dim; ++r) lhs[r] = tmp[nz] * u.at(r, nz);
    // rhs = Q (U e_k)
    apply_pauli_state(q, u.col(k), rhs.data());
    for (std::size_t r = 0; r < dim; ++r) {
      if (std::abs(lhs[r] - rhs[r]) > tol) return false;
    }
  }
  return true;
}

struct DiagonalCheck {
  bool diagonal = false;
  bool entries_pm_one = false;
  double max_off_diagonal = 0.0;
  std::vector<double> diagonal_entries;
};

// Checks that U P U^dagger is diagonal with entries +-1 without forming the
// conjugated matrix: each column of U^dagger must be an eigenvector of the
// signed permutation P.
inline DiagonalCheck conjugation_diagonal(const Unitary& u,
                                          const PauliString& p,
                                          double tol = 1e-12) {
  if (p.n != u.n) {
    throw std::invalid_argument("conjugation_diagonal: qubit count mismatch");
  }
  const std::size_t dim = u.dim;
  DiagonalCheck out;
  out.diagonal = true;
  out.entries_pm_one = true;
  out.diagonal_entries.resize(dim, 0.0);
  std::vector<cplx> w(dim), pw(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    for (std::size_t m = 0; m < dim; ++m) w[m] = std::conj(u.at(k, m));
    apply_pauli_state(p, w.data(), pw.data());
    // Eigenvalue estimate from the largest-magnitude entry of w.
    std::size_t imax = 0;
    for (std::size_t m = 1; m < dim; ++m) {
      if (std::abs(w[m]) > std::abs(w[imax])) imax = m;
    }
    const cplx lambda = pw[imax] / w[imax];
    for (std::size_t m = 0; m < dim; ++m) {
      const double dev = std::abs(pw[m] - lambda * w[m]);
      out.max_off_diagonal = std::max(out.max_off_diagonal, dev);
      if (dev > tol) out.diagonal = false;
    }
    out.diagonal_entries[k] = lambda.real();
    if (std::abs(std::abs(lambda.real()) - 1.0) > tol ||
        std::abs(lambda.imag()) > tol) {
      out.entries_pm_one = false;
    }
  }
  return out;
}

// max |(U^dagger U - I)_{jk}|; used to pin unitarity of the oracle itself.
inline double unitarity_defect(const Unitary& u) {
  double worst = 0.0;
  for (std::size_t j = 0; j < u.dim; ++j) {
    for (std::size_t k = 0; k < u.dim; ++k) {
      cplx acc{0, 0};
      for (std::size_t m = 0; m < u.dim; ++m) {
        acc += std::conj(u.at(m, j)) * u.at(m, k);
      }
      if (j == k) acc -= 1.0;
      worst = std::max(worst, std::abs(acc));
    }
  }
  return worst;
}

}  // namespace qwd::dense
