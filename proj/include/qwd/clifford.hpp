#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qwd/gf2.hpp"
#include "qwd/pauli.hpp"

// Gate list representation and the tableau conjugation engine. Gates are
// recorded in conjugation order: first-applied first. Conjugating a tableau
// by the whole circuit applies the gates left to right.

namespace qwd::clifford {

using gf2::BitMatrix;
using gf2::BitVector;
using pauli::PauliString;
using pauli::Tableau;

enum class GateKind : std::uint8_t { H, S, Cnot, Swap };

struct Gate {
  GateKind kind;
  std::uint32_t q0 = 0;  // H/S qubit; CNOT control; SWAP first qubit
  std::uint32_t q1 = 0;  // CNOT target; SWAP second qubit

  bool two_qubit() const {
    return kind == GateKind::Cnot || kind == GateKind::Swap;
  }

  bool operator==(const Gate&) const = default;

  static Gate h(std::uint32_t q) { return {GateKind::H, q, q}; }
  static Gate s(std::uint32_t q) { return {GateKind::S, q, q}; }
  static Gate cnot(std::uint32_t c, std::uint32_t t) {
    return {GateKind::Cnot, c, t};
  }
  static Gate swap(std::uint32_t a, std::uint32_t b) {
    return {GateKind::Swap, a, b};
  }
};

inline void check_gate(const Gate& g, std::size_t n) {
  if (g.q0 >= n || g.q1 >= n) {
    throw std::out_of_range("gate qubit index out of range");
  }
  if (g.two_qubit() && g.q0 == g.q1) {
    throw std::invalid_argument("two-qubit gate with equal qubits");
  }
}

// Column-update rules: H(i) swaps X_i and Z_i; S(i) adds X_i into Z_i;
// CNOT(c,t) adds X_c into X_t and Z_t into Z_c; SWAP exchanges both column
// pairs. Sign bits follow the standard stabilizer update rules, verified
// against the dense oracle in tests.
inline void apply_gate(Tableau& t, const Gate& g) {
  check_gate(g, t.n());
  const std::size_t rows = t.rows();
  switch (g.kind) {
    case GateKind::H:
      for (std::size_t i = 0; i < rows; ++i) {
        const bool xb = t.x().get(i, g.q0);
        const bool zb = t.z().get(i, g.q0);
        if (xb && zb) t.signs().flip(i);
        t.x().set(i, g.q0, zb);
        t.z().set(i, g.q0, xb);
      }
      break;
    case GateKind::S:
      for (std::size_t i = 0; i < rows; ++i) {
        const bool xb = t.x().get(i, g.q0);
        const bool zb = t.z().get(i, g.q0);
        if (xb && zb) t.signs().flip(i);
        t.z().set(i, g.q0, zb ^ xb);
      }
      break;
    case GateKind::Cnot:
      for (std::size_t i = 0; i < rows; ++i) {
        const bool xc = t.x().get(i, g.q0);
        const bool zc = t.z().get(i, g.q0);
        const bool xt = t.x().get(i, g.q1);
        const bool zt = t.z().get(i, g.q1);
        if (xc && zt && !(xt ^ zc)) t.signs().flip(i);
        t.x().set(i, g.q1, xt ^ xc);
        t.z().set(i, g.q0, zc ^ zt);
      }
      break;
    case GateKind::Swap:
      for (std::size_t i = 0; i < rows; ++i) {
        const bool xa = t.x().get(i, g.q0);
        const bool xb = t.x().get(i, g.q1);
        t.x().set(i, g.q0, xb);
        t.x().set(i, g.q1, xa);
        const bool za = t.z().get(i, g.q0);
        const bool zb = t.z().get(i, g.q1);
        t.z().set(i, g.q0, zb);
        t.z().set(i, g.q1, za);
      }
      break;
  }
}

struct CliffordCircuit {
  std::size_t n = 0;
  std::vector<Gate> gates;

  CliffordCircuit() = default;
  explicit CliffordCircuit(std::size_t qubits) : n(qubits) {}

  void push(const Gate& g) {
    check_gate(g, n);
    gates.push_back(g);
  }

  std::size_t two_qubit_count() const {
    return static_cast<std::size_t>(
        std::count_if(gates.begin(), gates.end(),
                      [](const Gate& g) { return g.two_qubit(); }));
  }

  std::size_t count(GateKind k) const {
    return static_cast<std::size_t>(
        std::count_if(gates.begin(), gates.end(),
                      [k](const Gate& g) { return g.kind == k; }));
  }

  // SWAPs are reported separately; this view decomposes each into 3 CNOTs
  // for total-two-qubit-gate accounting.
  CliffordCircuit expand_swaps() const {
    CliffordCircuit out(n);
    for (const Gate& g : gates) {
      if (g.kind == GateKind::Swap) {
        out.push(Gate::cnot(g.q0, g.q1));
        out.push(Gate::cnot(g.q1, g.q0));
        out.push(Gate::cnot(g.q0, g.q1));
      } else {
        out.push(g);
      }
    }
    return out;
  }

  bool operator==(const CliffordCircuit&) const = default;
};

inline Tableau conjugate(Tableau t, const Gate& g) {
  apply_gate(t, g);
  return t;
}

inline Tableau conjugate(Tableau t, const CliffordCircuit& c) {
  if (c.n > t.n()) {
    throw std::invalid_argument("conjugate: circuit wider than tableau");
  }
  for (const Gate& g : c.gates) apply_gate(t, g);
  return t;
}

// Greedy left-to-right layering: a gate lands one past the deepest layer
// already touching any of its qubits. Commuting CNOTs that share a qubit
// are not parallelized.
inline std::size_t depth(const CliffordCircuit& c) {
  std::vector<std::size_t> busy(c.n, 0);
  std::size_t total = 0;
  for (const Gate& g : c.gates) {
    std::size_t layer = busy[g.q0];
    if (g.two_qubit()) layer = std::max(layer, busy[g.q1]);
    ++layer;
    busy[g.q0] = layer;
    if (g.two_qubit()) busy[g.q1] = layer;
    total = std::max(total, layer);
  }
  return total;
}

// Layer count over two-qubit gates only.
inline std::size_t two_qubit_depth(const CliffordCircuit& c) {
  CliffordCircuit twos(c.n);
  for (const Gate& g : c.gates) {
    if (g.two_qubit()) twos.gates.push_back(g);
  }
  return depth(twos);
}

// 2n x 2n block matrix ((A Atilde) (B Btilde)) acting on tableau row
// vectors from the right; satisfies C Lambda C^T = Lambda exactly.
inline BitMatrix gate_symplectic(const Gate& g, std::size_t n) {
  check_gate(g, n);
  BitMatrix c = BitMatrix::identity(2 * n);
  const std::size_t a = g.q0, b = g.q1;
  switch (g.kind) {
    case GateKind::H:
      c.set(a, a, false);
      c.set(n + a, n + a, false);
      c.set(a, n + a, true);
      c.set(n + a, a, true);
      break;
    case GateKind::S:
      c.set(a, n + a, true);
      break;
    case GateKind::Cnot:
      c.set(a, b, true);          // A = 1 + e_c e_t^T
      c.set(n + b, n + a, true);  // Btilde = A^T
      break;
    case GateKind::Swap:
      c.set(a, a, false);
      c.set(b, b, false);
      c.set(a, b, true);
      c.set(b, a, true);
      c.set(n + a, n + a, false);
      c.set(n + b, n + b, false);
      c.set(n + a, n + b, true);
      c.set(n + b, n + a, true);
      break;
  }
  return c;
}

inline BitMatrix to_symplectic(const CliffordCircuit& c) {
  BitMatrix acc = BitMatrix::identity(2 * c.n);
  for (const Gate& g : c.gates) {
    acc = acc * gate_symplectic(g, c.n);
  }
  return acc;
}

inline BitMatrix symplectic_form(std::size_t n) {
  BitMatrix l(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    l.set(i, n + i, true);
    l.set(n + i, i, true);
  }
  return l;
}

// True iff every operator is a string of I and Z digits.
inline bool verify_diagonal(const Tableau& t) {
  for (std::size_t i = 0; i < t.rows(); ++i) {
    if (t.x().row(i).any()) return false;
  }
  return true;
}

// --- line-oriented text serialization ------------------------------------
//
//   qubits 4
//   h 3
//   cx 2 1
//   swap 0 3
//
// '#' starts a comment; blank lines are skipped. Bit-exact round trip.

inline std::string to_text(const CliffordCircuit& c) {
  std::ostringstream os;
  os << "qubits " << c.n << "\n";
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::H: os << "h " << g.q0 << "\n"; break;
      case GateKind::S: os << "s " << g.q0 << "\n"; break;
      case GateKind::Cnot: os << "cx " << g.q0 << " " << g.q1 << "\n"; break;
      case GateKind::Swap: os << "swap " << g.q0 << " " << g.q1 << "\n"; break;
    }
  }
  return os.str();
}

inline CliffordCircuit from_text(std::istream& in) {
  CliffordCircuit c;
  bool have_header = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    auto fail = [&](const std::string& msg) -> std::runtime_error {
      return std::runtime_error("circuit line " + std::to_string(lineno) +
                                ": " + msg);
    };
    if (!have_header) {
      std::size_t nq = 0;
      if (word != "qubits" || !(ls >> nq)) {
        throw fail("expected 'qubits <n>' header");
      }
      c.n = nq;
      have_header = true;
      continue;
    }
    std::uint32_t a = 0, b = 0;
    if (word == "h" || word == "s") {
      if (!(ls >> a)) throw fail("expected one qubit index");
      c.push(word == "h" ? Gate::h(a) : Gate::s(a));
    } else if (word == "cx" || word == "swap") {
      if (!(ls >> a >> b)) throw fail("expected two qubit indices");
      c.push(word == "cx" ? Gate::cnot(a, b) : Gate::swap(a, b));
    } else {
      throw fail("unknown gate '" + word + "'");
    }
    if (ls >> word) throw fail("trailing tokens");
  }
  if (!have_header) {
    throw std::runtime_error("circuit file: missing 'qubits <n>' header");
  }
  return c;
}

inline CliffordCircuit from_text(const std::string& text) {
  std::istringstream in(text);
  return from_text(in);
}

}  // namespace qwd::clifford
