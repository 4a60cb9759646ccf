#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qwd/clifford.hpp"
#include "qwd/connectivity.hpp"
#include "qwd/dense.hpp"
#include "qwd/gf2.hpp"
#include "qwd/pauli.hpp"

// The qubitwise diagonalization stage loop. Each stage picks a vector in
// the null space of the stage tableau (X|Z), applies single-qubit gates so
// the selected columns all land in X, then folds them into one target
// column with CNOTs, rendering every operator diagonal on that qubit.

namespace qwd::diag {

using clifford::CliffordCircuit;
using clifford::Gate;
using connectivity::ConnectivityGraph;
using gf2::BitVector;
using pauli::GeneratingSet;
using pauli::NullVector;
using pauli::PauliString;
using pauli::Tableau;

enum class Strategy : std::uint8_t { NoOpt, Bounded, Complete };

enum class Step2Mode : std::uint8_t { Sequential, Balanced };

inline std::string strategy_name(Strategy s) {
  switch (s) {
    case Strategy::NoOpt: return "noopt";
    case Strategy::Bounded: return "bounded";
    case Strategy::Complete: return "complete";
  }
  return "?";
}

struct DiagonalizeOptions {
  Strategy strategy = Strategy::NoOpt;
  std::size_t bounded_z = 2;  // combination size cap for Strategy::Bounded
  Step2Mode step2 = Step2Mode::Sequential;
  bool oracle_verify = false;
  std::uint64_t seed = 0;  // recorded for reproducibility bookkeeping
  std::optional<ConnectivityGraph> graph;
  std::size_t complete_dim_limit = 24;  // max null-space dimension searched
};

struct StageReport {
  std::size_t stage = 0;        // 1-based stage index
  std::size_t n_alpha = 0;      // active qubits entering the stage
  std::size_t r_alpha = 0;      // independent generators this stage
  std::size_t target = 0;       // qubit diagonalized (original labels)
  std::size_t omega = 0;        // symplectic weight of the null vector
  std::size_t single_qubit_gates = 0;
  std::size_t cnots = 0;
  std::size_t swaps = 0;
  std::size_t stage_depth = 0;
  std::size_t stage_two_qubit_depth = 0;
};

struct DiagonalizeResult {
  CliffordCircuit circuit;
  Tableau final_tableau;
  std::vector<StageReport> stages;
  std::size_t r = 0;  // rank of the initial generating set
  // logical_at[v]: which input qubit the final physical wire v carries
  // (differs from identity only when SWAP routing ran).
  std::vector<std::size_t> logical_at;
  bool oracle_checked = false;
};

inline std::size_t select_target_qubit(const NullVector& u) {
  for (std::size_t j = 0; j < u.n(); ++j) {
    if (u.supported_at(j)) return j;
  }
  throw std::invalid_argument("select_target_qubit: zero null vector");
}

// Step 1: per support qubit, move the selected column into the X block.
// (v,w) = (1,0) needs nothing; (0,1) an H; (1,1) an S then an H.
inline std::vector<Gate> stage_step1(const NullVector& u) {
  std::vector<Gate> gates;
  for (std::size_t j = 0; j < u.n(); ++j) {
    const bool v = u.v.get(j), w = u.w.get(j);
    if (!w) continue;
    if (v) gates.push_back(Gate::s(static_cast<std::uint32_t>(j)));
    gates.push_back(Gate::h(static_cast<std::uint32_t>(j)));
  }
  return gates;
}

// Step 2, sequential: one CNOT(j, i) per support qubit j != i, ascending j.
inline std::vector<Gate> stage_step2_sequential(
    const std::vector<std::size_t>& support, std::size_t target) {
  std::vector<Gate> gates;
  for (auto j : support) {
    if (j == target) continue;
    gates.push_back(Gate::cnot(static_cast<std::uint32_t>(j),
                               static_cast<std::uint32_t>(target)));
  }
  return gates;
}

// Step 2, balanced tree: disjoint pairs are folded each round, halving the
// active list, so the CNOT layers number ceil(log2 |support|). The pairing
// survivor is the diagonalized qubit.
inline std::pair<std::vector<Gate>, std::size_t> stage_step2_balanced(
    const std::vector<std::size_t>& support) {
  if (support.empty()) {
    throw std::invalid_argument("stage_step2_balanced: empty support");
  }
  std::vector<Gate> gates;
  std::vector<std::size_t> active = support;
  while (active.size() > 1) {
    std::vector<std::size_t> next;
    for (std::size_t j = 0; j + 1 < active.size(); j += 2) {
      gates.push_back(Gate::cnot(static_cast<std::uint32_t>(active[j + 1]),
                                 static_cast<std::uint32_t>(active[j])));
      next.push_back(active[j]);
    }
    if (active.size() % 2) next.push_back(active.back());
    active = std::move(next);
  }
  return {std::move(gates), active[0]};
}

namespace detail {

// Null vector from the standard-form minimum-weight column, mapped back to
// stage coordinates. Symplectic weight <= r+1 by construction.
inline NullVector noopt_vector(const GeneratingSet& g) {
  const pauli::StandardForm sf = pauli::standard_form(g);
  return pauli::unstandardize(pauli::min_weight_dependent_column(sf), sf);
}

inline std::size_t walk_length(const NullVector& u,
                               const std::vector<std::size_t>& active,
                               const ConnectivityGraph& graph) {
  std::vector<std::size_t> support_orig;
  for (auto j : u.support()) support_orig.push_back(active[j]);
  return connectivity::sppsn(graph, support_orig).length;
}

// All standard-form candidates tied at the minimum column weight, for
// connectivity-aware tie-breaking. Ordered by flat column index.
inline std::vector<NullVector> noopt_candidates(const GeneratingSet& g) {
  const pauli::StandardForm sf = pauli::standard_form(g);
  const std::size_t n = sf.tableau.n();
  const std::size_t r = sf.r;
  const gf2::BitMatrix cols = sf.tableau.xz_matrix().transposed();
  std::size_t best_weight = 0;
  bool first = true;
  for (std::size_t m = r; m < 2 * n; ++m) {
    const std::size_t w = cols.row(m).popcount();
    if (first || w < best_weight) {
      best_weight = w;
      first = false;
    }
  }
  std::vector<NullVector> out;
  for (std::size_t m = r; m < 2 * n; ++m) {
    if (cols.row(m).popcount() != best_weight) continue;
    BitVector u(2 * n);
    u.set(m, true);
    for (std::size_t i = 0; i < r; ++i) {
      if (cols.row(m).get(i)) u.set(i, true);
    }
    out.push_back(pauli::unstandardize(NullVector::from_flat(u), sf));
  }
  return out;
}

}  // namespace detail

// Picks the stage's null vector. NoOpt reads it off the standard form
// (weight <= r+1). Complete walks the whole null space in Gray-code order
// for the global minimum. Bounded(z) searches XOR combinations of at most
// z basis vectors and never does worse than NoOpt. When a coupling graph
// is present, weight ties break toward the shortest SPPSN walk.
inline NullVector select_null_vector(
    const GeneratingSet& g, const DiagonalizeOptions& opts,
    const std::vector<std::size_t>& active_to_orig) {
  if (g.tableau.rows() == 0) {
    throw std::invalid_argument("select_null_vector: empty generating set");
  }
  const bool routed = opts.graph.has_value();

  auto pick_tied = [&](std::vector<NullVector> candidates) {
    if (!routed || candidates.size() == 1) return candidates.front();
    std::size_t best = 0;
    std::size_t best_len =
        detail::walk_length(candidates[0], active_to_orig, *opts.graph);
    for (std::size_t i = 1; i < candidates.size(); ++i) {
      const std::size_t len =
          detail::walk_length(candidates[i], active_to_orig, *opts.graph);
      if (len < best_len) {
        best = i;
        best_len = len;
      }
    }
    return candidates[best];
  };

  if (opts.strategy == Strategy::NoOpt) {
    if (!routed) return detail::noopt_vector(g);
    return pick_tied(detail::noopt_candidates(g));
  }

  const auto basis = gf2::null_space_basis(g.tableau.xz_matrix());
  const std::size_t dim = basis.size();
  if (dim == 0) {
    throw std::logic_error("select_null_vector: trivial null space");
  }

  std::size_t best_weight = 0;
  std::vector<NullVector> tied;
  auto consider = [&](const BitVector& flat) {
    NullVector nv = NullVector::from_flat(flat);
    const std::size_t w = nv.symplectic_weight();
    if (tied.empty() || w < best_weight) {
      best_weight = w;
      tied.clear();
      tied.push_back(std::move(nv));
    } else if (routed && w == best_weight) {
      tied.push_back(std::move(nv));
    }
  };

  if (opts.strategy == Strategy::Complete) {
    if (dim > opts.complete_dim_limit) {
      throw std::length_error(
          "complete strategy: null-space dimension " + std::to_string(dim) +
          " exceeds limit " + std::to_string(opts.complete_dim_limit) +
          "; use the bounded strategy instead");
    }
    // Gray-code walk over all nonzero combinations; one XOR per step.
    BitVector current(2 * g.tableau.n());
    const std::size_t total = std::size_t{1} << dim;
    for (std::size_t k = 1; k < total; ++k) {
      current ^= basis[static_cast<std::size_t>(std::countr_zero(k))];
      consider(current);
      if (best_weight == 1 && !routed) break;
    }
    return pick_tied(std::move(tied));
  }

  // Bounded(z): the NoOpt vector seeds the search, then all combinations
  // of sizes 1..z in lexicographic order.
  std::size_t z = opts.bounded_z;
  if (z < 1) {
    throw std::invalid_argument("bounded strategy: z must be >= 1");
  }
  z = std::min(z, dim);
  consider(detail::noopt_vector(g).flat());
  std::vector<std::size_t> idx;
  auto recurse = [&](auto&& self, std::size_t start,
                     const BitVector& acc) -> void {
    if (idx.size() == z) return;
    for (std::size_t i = start; i < dim; ++i) {
      BitVector next = acc;
      next ^= basis[i];
      idx.push_back(i);
      consider(next);
      self(self, i + 1, next);
      idx.pop_back();
    }
  };
  recurse(recurse, 0, BitVector(2 * g.tableau.n()));
  return pick_tied(std::move(tied));
}

namespace detail {

// Stage tableau restricted to the active qubits, rows deduplicated, then
// reduced to independent generators.
inline GeneratingSet stage_generators(const Tableau& full,
                                      const std::vector<std::size_t>& active) {
  Tableau sub(active.size(), full.rows());
  for (std::size_t i = 0; i < full.rows(); ++i) {
    for (std::size_t j = 0; j < active.size(); ++j) {
      if (full.x().get(i, active[j])) sub.x().set(i, j, true);
      if (full.z().get(i, active[j])) sub.z().set(i, j, true);
    }
  }
  GeneratingSet g = pauli::independent_generators(sub);
  g.qubit_map = active;
  return g;
}

}  // namespace detail

inline DiagonalizeResult diagonalize(std::span<const PauliString> paulis,
                                     const DiagonalizeOptions& opts = {}) {
  if (paulis.empty()) {
    throw std::invalid_argument("diagonalize: empty operator list");
  }
  Tableau full = Tableau::require_commuting(paulis);
  const std::size_t n = full.n();
  if (opts.graph && opts.graph->size() < n) {
    throw std::invalid_argument(
        "diagonalize: coupling graph smaller than qubit count");
  }

  DiagonalizeResult res;
  res.circuit = CliffordCircuit(n);
  res.r = pauli::independent_generators(full).r;
  res.logical_at.resize(n);
  std::iota(res.logical_at.begin(), res.logical_at.end(), std::size_t{0});

  for (std::size_t stage = 1; stage <= n + 1; ++stage) {
    std::vector<std::size_t> active;
    for (std::size_t j = 0; j < n; ++j) {
      if (full.x().column(j).any()) active.push_back(j);
    }
    if (active.empty()) break;
    if (stage > n) {
      throw std::logic_error("diagonalize: stage count exceeded qubit count");
    }

    const GeneratingSet gens = detail::stage_generators(full, active);
    const NullVector u_stage = select_null_vector(gens, opts, active);
    NullVector u{BitVector(n), BitVector(n)};
    for (std::size_t j = 0; j < active.size(); ++j) {
      if (u_stage.v.get(j)) u.v.set(active[j], true);
      if (u_stage.w.get(j)) u.w.set(active[j], true);
    }

    StageReport rep;
    rep.stage = stage;
    rep.n_alpha = active.size();
    rep.r_alpha = gens.r;
    rep.omega = u.symplectic_weight();

    std::vector<Gate> stage_gates = stage_step1(u);
    rep.single_qubit_gates = stage_gates.size();
    const std::vector<std::size_t> support = u.support();

    std::size_t target;
    if (opts.graph) {
      const connectivity::RoutedStage routed =
          connectivity::route_step2(support, *opts.graph);
      for (const Gate& g : routed.gates) {
        stage_gates.push_back(g);
        if (g.kind == clifford::GateKind::Swap) {
          std::swap(res.logical_at[g.q0], res.logical_at[g.q1]);
        }
      }
      rep.swaps = routed.swap_count;
      rep.cnots = routed.cnot_count;
      target = routed.target;
    } else if (opts.step2 == Step2Mode::Balanced) {
      auto [gates, survivor] = stage_step2_balanced(support);
      rep.cnots = gates.size();
      target = survivor;
      stage_gates.insert(stage_gates.end(), gates.begin(), gates.end());
    } else {
      target = select_target_qubit(u);
      auto gates = stage_step2_sequential(support, target);
      rep.cnots = gates.size();
      stage_gates.insert(stage_gates.end(), gates.begin(), gates.end());
    }
    rep.target = target;

    CliffordCircuit stage_circuit(n);
    for (const Gate& g : stage_gates) {
      stage_circuit.push(g);
      clifford::apply_gate(full, g);
      res.circuit.push(g);
    }
    rep.stage_depth = clifford::depth(stage_circuit);
    rep.stage_two_qubit_depth = clifford::two_qubit_depth(stage_circuit);
    res.stages.push_back(rep);

    if (full.x().column(target).any()) {
      throw std::logic_error("diagonalize: target column not cleared");
    }
  }

  if (!clifford::verify_diagonal(full)) {
    throw std::logic_error("diagonalize: final tableau not diagonal");
  }
  res.final_tableau = std::move(full);

  if (opts.oracle_verify && n <= dense::kDefaultQubitLimit) {
    const dense::Unitary u = dense::dense_unitary(res.circuit);
    for (const PauliString& p : paulis) {
      const dense::DiagonalCheck chk = dense::conjugation_diagonal(u, p);
      if (!chk.diagonal || !chk.entries_pm_one) {
        throw std::logic_error(
            "diagonalize: dense oracle rejected operator " + p.str());
      }
    }
    res.oracle_checked = true;
  }
  return res;
}

inline DiagonalizeResult diagonalize(const std::vector<PauliString>& paulis,
                                     const DiagonalizeOptions& opts = {}) {
  return diagonalize(std::span<const PauliString>(paulis), opts);
}

}  // namespace qwd::diag
