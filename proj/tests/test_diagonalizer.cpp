#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "qwd/bench.hpp"
#include "qwd/connectivity.hpp"
#include "qwd/dense.hpp"
#include "qwd/diagonalizer.hpp"
#include "qwd/gf2.hpp"
#include "qwd/pauli.hpp"

using namespace qwd;
using diag::DiagonalizeOptions;
using diag::Strategy;
using pauli::PauliString;

namespace {

std::vector<PauliString> parse_all(const std::vector<std::string>& texts) {
  std::vector<PauliString> out;
  for (const auto& t : texts) out.push_back(pauli::parse_pauli(t));
  return out;
}

void check_dense(const std::vector<PauliString>& ops,
                 const diag::DiagonalizeResult& res) {
  const dense::Unitary u = dense::dense_unitary(res.circuit);
  for (const auto& p : ops) {
    const auto chk = dense::conjugation_diagonal(u, p);
    REQUIRE(chk.diagonal);
    REQUIRE(chk.entries_pm_one);
    REQUIRE(chk.max_off_diagonal < 1e-12);
  }
}

// Minimum symplectic weight over the null space of the first stage's
// tableau, found by direct enumeration over the basis combinations. Like
// the algorithm, the search is restricted to qubits that are not yet
// diagonal; already-diagonal qubits admit trivial weight-1 vectors that
// prescribe no useful stage.
std::size_t brute_force_min_weight(const std::vector<PauliString>& ops) {
  const auto t = pauli::Tableau::from_paulis(ops);
  std::vector<std::size_t> active;
  for (std::size_t j = 0; j < t.n(); ++j) {
    if (t.x().column(j).any()) active.push_back(j);
  }
  const std::size_t na = active.size();
  REQUIRE(na > 0);
  gf2::BitMatrix m(t.rows(), 2 * na);
  for (std::size_t i = 0; i < t.rows(); ++i) {
    for (std::size_t j = 0; j < na; ++j) {
      if (t.x().get(i, active[j])) m.set(i, j, true);
      if (t.z().get(i, active[j])) m.set(i, na + j, true);
    }
  }
  const auto basis = gf2::null_space_basis(m);
  REQUIRE(!basis.empty());
  std::size_t best = 2 * na + 1;
  const std::size_t total = std::size_t{1} << basis.size();
  for (std::size_t k = 1; k < total; ++k) {
    gf2::BitVector u(2 * na);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if ((k >> b) & 1) u ^= basis[b];
    }
    best = std::min(best, pauli::NullVector::from_flat(u).symplectic_weight());
  }
  return best;
}

}  // namespace

TEST_CASE("already diagonal input yields the empty circuit") {
  const auto ops = parse_all({"ZZ", "IZ"});
  const auto res = diag::diagonalize(ops);
  REQUIRE(res.circuit.gates.empty());
  REQUIRE(res.stages.empty());
  REQUIRE(clifford::verify_diagonal(res.final_tableau));
}

TEST_CASE("single X becomes a single Hadamard") {
  const auto ops = parse_all({"X"});
  const auto res = diag::diagonalize(ops);
  REQUIRE(res.circuit.gates.size() == 1);
  REQUIRE(res.circuit.gates[0] == clifford::Gate::h(0));
  REQUIRE(res.final_tableau.row(0).str() == "Z");
}

TEST_CASE("XX and ZZ diagonalize, dense verified") {
  const auto ops = parse_all({"XX", "ZZ"});
  const auto res = diag::diagonalize(ops);
  REQUIRE(clifford::verify_diagonal(res.final_tableau));
  check_dense(ops, res);
}

TEST_CASE("non-commuting and empty input are rejected") {
  REQUIRE_THROWS_AS(diag::diagonalize(parse_all({"XI", "ZI"})),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(diag::diagonalize(std::vector<PauliString>{}),
                    std::invalid_argument);
}

TEST_CASE("random sets: dense oracle across all strategies") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng() % 5;
    const std::size_t r = 1 + rng() % n;
    auto gens = bench::random_commuting_set(n, r, rng);
    auto ops = bench::random_products(gens, n, rng);
    for (Strategy strategy :
         {Strategy::NoOpt, Strategy::Bounded, Strategy::Complete}) {
      DiagonalizeOptions opts;
      opts.strategy = strategy;
      const auto res = diag::diagonalize(ops, opts);
      REQUIRE(clifford::verify_diagonal(res.final_tableau));
      REQUIRE(res.r <= r);
      check_dense(ops, res);
    }
  }
}

TEST_CASE("every stage emits exactly omega - 1 CNOTs") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t n = 2 + rng() % 8;
    const std::size_t r = 1 + rng() % n;
    const auto ops = bench::random_commuting_set(n, r, rng);
    for (auto step2 : {diag::Step2Mode::Sequential, diag::Step2Mode::Balanced}) {
      DiagonalizeOptions opts;
      opts.step2 = step2;
      const auto res = diag::diagonalize(ops, opts);
      for (const auto& st : res.stages) {
        REQUIRE(st.cnots == st.omega - 1);
      }
    }
  }
}

TEST_CASE("NoOpt null vector never exceeds weight r_alpha + 1") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t n = 2 + rng() % 9;
    const std::size_t r = 1 + rng() % n;
    const auto ops = bench::random_commuting_set(n, r, rng);
    const auto res = diag::diagonalize(ops);
    for (const auto& st : res.stages) {
      REQUIRE(st.omega <= st.r_alpha + 1);
    }
  }
}

TEST_CASE("Complete finds the global minimum weight each stage") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 4 + rng() % 5;
    const auto ops = bench::random_commuting_set(n, n, rng);
    DiagonalizeOptions opts;
    opts.strategy = Strategy::Complete;
    const auto res = diag::diagonalize(ops, opts);
    REQUIRE(!res.stages.empty());
    REQUIRE(res.stages[0].omega == brute_force_min_weight(ops));
    // The global minimum weight is at most floor(r/2) + 1.
    for (const auto& st : res.stages) {
      REQUIRE(st.omega <= st.r_alpha / 2 + 1);
    }
  }
}

TEST_CASE("Bounded's stage selection never does worse than NoOpt's") {
  // The guarantee is per selection: the NoOpt vector seeds the bounded
  // search, so on the same generating set the chosen weight cannot go up.
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 3 + rng() % 6;
    const auto ops = bench::random_commuting_set(n, n, rng);
    const auto base = diag::diagonalize(ops);
    DiagonalizeOptions opts;
    opts.strategy = Strategy::Bounded;
    opts.bounded_z = 2;
    const auto bounded = diag::diagonalize(ops, opts);
    REQUIRE(!bounded.stages.empty());
    REQUIRE(bounded.stages[0].omega <= base.stages[0].omega);
    REQUIRE(clifford::verify_diagonal(bounded.final_tableau));
  }
}

TEST_CASE("gate count bounds") {
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng() % 9;
    const std::size_t r = 1 + rng() % n;
    const auto ops = bench::random_commuting_set(n, r, rng);

    const auto noopt = diag::diagonalize(ops);
    std::size_t cnots = 0;
    for (const auto& st : noopt.stages) cnots += st.cnots;
    REQUIRE(cnots <= n * noopt.r - noopt.r * (noopt.r + 1) / 2);

    DiagonalizeOptions copts;
    copts.strategy = Strategy::Complete;
    const auto complete = diag::diagonalize(ops, copts);
    std::size_t ccnots = 0;
    for (const auto& st : complete.stages) {
      ccnots += st.cnots;
      REQUIRE(st.cnots <= st.r_alpha / 2);
    }
    const std::size_t h = complete.r / 2;
    REQUIRE(ccnots <= n * h - h * h);
  }
}

TEST_CASE("balanced step 2 bounds the per-stage CNOT depth") {
  std::mt19937_64 rng(27);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng() % 9;
    const std::size_t r = 1 + rng() % n;
    const auto ops = bench::random_commuting_set(n, r, rng);
    DiagonalizeOptions opts;
    opts.step2 = diag::Step2Mode::Balanced;
    const auto res = diag::diagonalize(ops, opts);
    REQUIRE(clifford::verify_diagonal(res.final_tableau));
    for (const auto& st : res.stages) {
      const auto bound = static_cast<std::size_t>(
          std::ceil(std::log2(static_cast<double>(st.r_alpha + 1))));
      REQUIRE(st.stage_two_qubit_depth <= bound);
    }
    const auto total_bound =
        n * (static_cast<std::size_t>(
                 std::ceil(std::log2(static_cast<double>(res.r + 1)))) +
             2);
    REQUIRE(clifford::depth(res.circuit) <= total_bound);
  }
}

TEST_CASE("connectivity-constrained runs stay on the graph") {
  std::mt19937_64 rng(28);
  const auto line = connectivity::ConnectivityGraph::line(6);
  const auto grid = connectivity::ConnectivityGraph::grid(2, 3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t r = 1 + rng() % 6;
    const auto ops = bench::random_commuting_set(6, r, rng);
    for (const auto& g : {line, grid}) {
      DiagonalizeOptions opts;
      opts.graph = g;
      const auto res = diag::diagonalize(ops, opts);
      REQUIRE(clifford::verify_diagonal(res.final_tableau));
      for (const auto& gate : res.circuit.gates) {
        if (gate.two_qubit()) {
          REQUIRE(g.has_edge(gate.q0, gate.q1));
        }
      }
      for (const auto& st : res.stages) {
        REQUIRE(st.cnots == st.omega - 1);
      }
      check_dense(ops, res);
    }
  }
}

TEST_CASE("complete graph routing inserts no SWAPs") {
  std::mt19937_64 rng(29);
  const auto full = connectivity::ConnectivityGraph::complete(6);
  for (int trial = 0; trial < 20; ++trial) {
    const auto ops = bench::random_commuting_set(6, 6, rng);
    DiagonalizeOptions opts;
    opts.graph = full;
    const auto res = diag::diagonalize(ops, opts);
    REQUIRE(res.circuit.count(clifford::GateKind::Swap) == 0);
    REQUIRE(clifford::verify_diagonal(res.final_tableau));
  }
}

TEST_CASE("diagonalize is deterministic") {
  std::mt19937_64 rng(30);
  const auto ops = bench::random_commuting_set(8, 8, rng);
  for (Strategy strategy :
       {Strategy::NoOpt, Strategy::Bounded, Strategy::Complete}) {
    DiagonalizeOptions opts;
    opts.strategy = strategy;
    const auto a = diag::diagonalize(ops, opts);
    const auto b = diag::diagonalize(ops, opts);
    REQUIRE(a.circuit == b.circuit);
  }
}

TEST_CASE("oracle_verify flag runs the dense check") {
  const auto ops = parse_all({"XXI", "ZZI", "IIX"});
  DiagonalizeOptions opts;
  opts.oracle_verify = true;
  const auto res = diag::diagonalize(ops, opts);
  REQUIRE(res.oracle_checked);
}

TEST_CASE("complete strategy respects the dimension limit") {
  // A single full-support generator: the first stage's null space has
  // dimension 2n - r = 9, beyond the configured limit.
  const auto ops = parse_all({"XXXXX"});
  DiagonalizeOptions opts;
  opts.strategy = Strategy::Complete;
  opts.complete_dim_limit = 3;
  REQUIRE_THROWS_AS(diag::diagonalize(ops, opts), std::length_error);
}
