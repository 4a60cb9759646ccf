#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qwd/bench.hpp"
#include "qwd/clifford.hpp"
#include "qwd/diagonalizer.hpp"
#include "qwd/partition.hpp"
#include "qwd/pauli.hpp"

// JSON forms of the wire formats. Mirrors the line-oriented text formats
// field for field; both round-trip bit-exactly.

namespace qwd::serialize {

using nlohmann::json;

inline json circuit_to_json(const clifford::CliffordCircuit& c) {
  json gates = json::array();
  for (const auto& g : c.gates) {
    switch (g.kind) {
      case clifford::GateKind::H:
        gates.push_back({{"gate", "h"}, {"qubits", {g.q0}}});
        break;
      case clifford::GateKind::S:
        gates.push_back({{"gate", "s"}, {"qubits", {g.q0}}});
        break;
      case clifford::GateKind::Cnot:
        gates.push_back({{"gate", "cx"}, {"qubits", {g.q0, g.q1}}});
        break;
      case clifford::GateKind::Swap:
        gates.push_back({{"gate", "swap"}, {"qubits", {g.q0, g.q1}}});
        break;
    }
  }
  return json{{"qubits", c.n}, {"gates", std::move(gates)}};
}

inline clifford::CliffordCircuit circuit_from_json(const json& j) {
  clifford::CliffordCircuit c(j.at("qubits").get<std::size_t>());
  for (const auto& jg : j.at("gates")) {
    const std::string kind = jg.at("gate").get<std::string>();
    const auto& qs = jg.at("qubits");
    if (kind == "h") {
      c.push(clifford::Gate::h(qs.at(0).get<std::uint32_t>()));
    } else if (kind == "s") {
      c.push(clifford::Gate::s(qs.at(0).get<std::uint32_t>()));
    } else if (kind == "cx") {
      c.push(clifford::Gate::cnot(qs.at(0).get<std::uint32_t>(),
                                  qs.at(1).get<std::uint32_t>()));
    } else if (kind == "swap") {
      c.push(clifford::Gate::swap(qs.at(0).get<std::uint32_t>(),
                                  qs.at(1).get<std::uint32_t>()));
    } else {
      throw std::runtime_error("circuit json: unknown gate '" + kind + "'");
    }
  }
  return c;
}

inline json terms_to_json(const partition::TermList& terms) {
  json arr = json::array();
  for (const auto& t : terms.terms) {
    arr.push_back({{"coefficient", t.coefficient}, {"pauli", t.pauli.str()}});
  }
  return json{{"terms", std::move(arr)}};
}

inline partition::TermList terms_from_json(const json& j) {
  std::string text;
  // Reuse the text-format merge/validation path.
  for (const auto& jt : j.at("terms")) {
    text += std::to_string(jt.at("coefficient").get<double>()) + " " +
            jt.at("pauli").get<std::string>() + "\n";
  }
  return partition::parse_hamiltonian(text);
}

inline json stage_report_to_json(const diag::StageReport& s) {
  return json{{"stage", s.stage},
              {"active_qubits", s.n_alpha},
              {"generators", s.r_alpha},
              {"target_qubit", s.target},
              {"null_vector_weight", s.omega},
              {"single_qubit_gates", s.single_qubit_gates},
              {"cnots", s.cnots},
              {"swaps", s.swaps},
              {"stage_depth", s.stage_depth},
              {"stage_two_qubit_depth", s.stage_two_qubit_depth}};
}

inline json bench_record_to_json(const bench::BenchRecord& r) {
  return json{{"n", r.n},
              {"r", r.r},
              {"strategy", diag::strategy_name(r.strategy)},
              {"samples", r.samples},
              {"mean_cnots", r.mean_cnots},
              {"sd_cnots", r.sd_cnots},
              {"mean_depth", r.mean_depth},
              {"sd_depth", r.sd_depth},
              {"mean_swaps", r.mean_swaps},
              {"sd_swaps", r.sd_swaps}};
}

}  // namespace qwd::serialize
