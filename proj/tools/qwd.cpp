// qwd: diagonalize commuting Pauli operators with Clifford circuits.
//
// Subcommands: diagonalize, partition, verify, bench, random-set.
// Exit codes: 0 success, 1 parse error, 2 precondition violation,
// 3 verification failure.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qwd/qwd.hpp"
#include "qwd/serialize.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitVerification = 3;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw qwd::pauli::ParseError("cannot open '" + path.string() + "'", 0);
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const fs::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write '" + path.string() + "'");
  }
  out << data;
}

std::string fnv1a64_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

qwd::partition::TermList load_terms(const fs::path& path) {
  const std::string data = read_file(path);
  if (path.extension() == ".json") {
    return qwd::serialize::terms_from_json(json::parse(data));
  }
  return qwd::partition::parse_hamiltonian(data);
}

qwd::clifford::CliffordCircuit load_circuit(const fs::path& path) {
  const std::string data = read_file(path);
  if (path.extension() == ".json") {
    return qwd::serialize::circuit_from_json(json::parse(data));
  }
  return qwd::clifford::from_text(data);
}

qwd::connectivity::ConnectivityGraph load_graph(const std::string& spec) {
  if (fs::exists(spec)) {
    std::istringstream in(read_file(spec));
    return qwd::connectivity::ConnectivityGraph::from_edge_list(in);
  }
  return qwd::connectivity::ConnectivityGraph::from_preset(spec);
}

qwd::diag::Strategy parse_strategy(const std::string& s, std::size_t& z) {
  if (s == "noopt") return qwd::diag::Strategy::NoOpt;
  if (s == "complete") return qwd::diag::Strategy::Complete;
  if (s.rfind("bounded:", 0) == 0) {
    z = std::stoul(s.substr(8));
    return qwd::diag::Strategy::Bounded;
  }
  throw CLI::ValidationError(
      "--strategy", "expected noopt, bounded:<z>, or complete; got " + s);
}

// "4..12" or "7".
std::pair<std::size_t, std::size_t> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    const std::size_t v = std::stoul(s);
    return {v, v};
  }
  return {std::stoul(s.substr(0, dots)), std::stoul(s.substr(dots + 2))};
}

struct CommonOpts {
  std::string out_dir = ".";
  std::string format = "text";
  std::optional<std::uint64_t> seed;
  std::string graph_spec;
  std::string strategy_spec = "noopt";
  std::string step2_spec = "seq";
  bool oracle = false;

  std::uint64_t resolve_seed() const {
    if (seed) return *seed;
    std::random_device rd;
    const std::uint64_t s =
        (static_cast<std::uint64_t>(rd()) << 32) | rd();
    std::cout << "seed: " << s << " (drawn; pass --seed to reproduce)\n";
    return s;
  }
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--out", c.out_dir, "Output directory")
      ->capture_default_str();
  cmd->add_option("--format", c.format, "Report format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--seed", c.seed, "RNG seed (unseeded runs print one)");
}

json manifest_base(const std::string& subcommand, const json& options,
                   const std::vector<fs::path>& inputs, std::uint64_t seed) {
  json digests = json::object();
  for (const auto& p : inputs) {
    digests[p.string()] = fnv1a64_hex(read_file(p));
  }
  return json{{"subcommand", subcommand},
              {"options", options},
              {"input_digests", digests},
              {"seed", seed},
              {"version", qwd::kVersion}};
}

void write_manifest(const fs::path& out_dir, json manifest,
                    std::chrono::steady_clock::time_point t0) {
  manifest["wall_ms"] =
      std::chrono::duration<double, std::milli>(
          std::chrono::steady_clock::now() - t0)
          .count();
  write_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
}

qwd::diag::DiagonalizeOptions build_diag_opts(const CommonOpts& c,
                                              std::uint64_t seed) {
  qwd::diag::DiagonalizeOptions opts;
  std::size_t z = 2;
  opts.strategy = parse_strategy(c.strategy_spec, z);
  opts.bounded_z = z;
  opts.step2 = c.step2_spec == "balanced" ? qwd::diag::Step2Mode::Balanced
                                          : qwd::diag::Step2Mode::Sequential;
  opts.oracle_verify = c.oracle;
  opts.seed = seed;
  if (!c.graph_spec.empty()) opts.graph = load_graph(c.graph_spec);
  return opts;
}

struct SetMetrics {
  std::size_t size = 0;
  std::size_t r = 0;
  std::size_t cnots = 0;
  std::size_t swaps = 0;
  std::size_t hs = 0;
  std::size_t depth = 0;
};

struct Aggregate {
  double mean = 0, sd = 0;
};

Aggregate aggregate(const std::vector<double>& xs) {
  Aggregate a;
  if (xs.empty()) return a;
  for (double x : xs) a.mean += x;
  a.mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return a;
  double acc = 0;
  for (double x : xs) acc += (x - a.mean) * (x - a.mean);
  a.sd = std::sqrt(acc / static_cast<double>(xs.size() - 1));
  return a;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

int cmd_diagonalize(const fs::path& input, const CommonOpts& c,
                    bool do_partition, const std::string& part_strategy) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t seed = c.resolve_seed();
  const qwd::partition::TermList terms = load_terms(input);
  const fs::path out_dir(c.out_dir);
  fs::create_directories(out_dir);

  std::vector<qwd::partition::TermList> parts;
  if (do_partition) {
    const auto strat =
        part_strategy == "greedy-color"
            ? qwd::partition::PartitionStrategy::GreedyColor
            : qwd::partition::PartitionStrategy::LargestFirstIndependentSet;
    parts = qwd::partition::commuting_partition(terms, strat);
  } else {
    auto all = terms.signed_paulis();
    try {
      qwd::pauli::Tableau::require_commuting(all);
    } catch (const std::invalid_argument& e) {
      std::cerr << "error: " << e.what()
                << " (pass --partition to split into commuting sets)\n";
      return kExitPrecondition;
    }
    parts.push_back(terms);
  }

  const qwd::diag::DiagonalizeOptions opts = build_diag_opts(c, seed);

  // Sets are independent; diagonalize them in parallel, then report in
  // input order.
  std::vector<std::future<qwd::diag::DiagonalizeResult>> futures;
  futures.reserve(parts.size());
  for (const auto& part : parts) {
    futures.push_back(std::async(std::launch::async, [&opts, &part] {
      return qwd::diag::diagonalize(part.signed_paulis(), opts);
    }));
  }

  std::vector<SetMetrics> metrics;
  std::vector<json> set_reports;
  std::string tableau_listing;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const auto paulis = parts[k].signed_paulis();
    const qwd::diag::DiagonalizeResult res = futures[k].get();

    SetMetrics m;
    m.size = paulis.size();
    m.r = res.r;
    m.cnots = res.circuit.count(qwd::clifford::GateKind::Cnot);
    m.swaps = res.circuit.count(qwd::clifford::GateKind::Swap);
    m.hs = res.circuit.gates.size() - m.cnots - m.swaps;
    m.depth = qwd::clifford::depth(res.circuit);
    metrics.push_back(m);

    const std::string stem =
        parts.size() == 1 ? "circuit"
                          : "circuit_" + std::to_string(k);
    write_file(out_dir / (stem + ".txt"), qwd::clifford::to_text(res.circuit));
    if (c.format == "json") {
      write_file(out_dir / (stem + ".json"),
                 qwd::serialize::circuit_to_json(res.circuit).dump(2) + "\n");
    }

    tableau_listing += "# set " + std::to_string(k) + "\n";
    for (std::size_t i = 0; i < res.final_tableau.rows(); ++i) {
      tableau_listing += res.final_tableau.row(i).str() + "\n";
    }

    json stages = json::array();
    for (const auto& s : res.stages) {
      stages.push_back(qwd::serialize::stage_report_to_json(s));
    }
    set_reports.push_back(json{{"set", k},
                               {"operators", m.size},
                               {"generators", m.r},
                               {"cnots", m.cnots},
                               {"swaps", m.swaps},
                               {"single_qubit_gates", m.hs},
                               {"depth", m.depth},
                               {"stages", std::move(stages)}});
  }
  write_file(out_dir / "tableau.txt", tableau_listing);

  std::vector<double> rs, cnots, depths;
  for (const auto& m : metrics) {
    rs.push_back(static_cast<double>(m.r));
    cnots.push_back(static_cast<double>(m.cnots));
    depths.push_back(static_cast<double>(m.depth));
  }
  const Aggregate ra = aggregate(rs);
  const Aggregate ca = aggregate(cnots);
  const Aggregate da = aggregate(depths);

  json summary{{"n", terms.n},
               {"N", terms.terms.size()},
               {"kappa", parts.size()},
               {"mean_r", ra.mean},
               {"mean_cnot", ca.mean},
               {"cnot_sd", ca.sd},
               {"mean_depth", da.mean},
               {"depth_sd", da.sd}};

  if (c.format == "json") {
    json report{{"summary", summary}, {"sets", set_reports}};
    write_file(out_dir / "report.json", report.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "n N kappa r CNOT CNOT_SD Depth Depth_SD\n"
       << terms.n << " " << terms.terms.size() << " " << parts.size() << " "
       << format_double(ra.mean) << " " << format_double(ca.mean) << " "
       << format_double(ca.sd) << " " << format_double(da.mean) << " "
       << format_double(da.sd) << "\n\n";
    for (std::size_t k = 0; k < metrics.size(); ++k) {
      const auto& m = metrics[k];
      os << "set " << k << ": operators=" << m.size << " r=" << m.r
         << " cnots=" << m.cnots << " swaps=" << m.swaps
         << " single_qubit=" << m.hs << " depth=" << m.depth << "\n";
    }
    write_file(out_dir / "report.txt", os.str());
  }

  json options{{"strategy", c.strategy_spec},
               {"step2", c.step2_spec},
               {"graph", c.graph_spec},
               {"oracle", c.oracle},
               {"partition", do_partition},
               {"partition_strategy", part_strategy},
               {"format", c.format}};
  write_manifest(out_dir, manifest_base("diagonalize", options, {input}, seed),
                 t0);
  std::cout << "diagonalized " << terms.terms.size() << " operators in "
            << parts.size() << " set(s); mean CNOTs "
            << format_double(ca.mean) << ", mean depth "
            << format_double(da.mean) << "\n";
  return kExitOk;
}

int cmd_partition(const fs::path& input, const CommonOpts& c,
                  const std::string& part_strategy) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t seed = c.seed.value_or(0);
  const qwd::partition::TermList terms = load_terms(input);
  const auto strat =
      part_strategy == "greedy-color"
          ? qwd::partition::PartitionStrategy::GreedyColor
          : qwd::partition::PartitionStrategy::LargestFirstIndependentSet;
  const auto parts = qwd::partition::commuting_partition(terms, strat);
  const fs::path out_dir(c.out_dir);
  fs::create_directories(out_dir);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    std::ostringstream os;
    for (const auto& t : parts[k].terms) {
      os << t.coefficient << " " << t.pauli.str() << "\n";
    }
    write_file(out_dir / ("part_" + std::to_string(k) + ".txt"), os.str());
  }
  json options{{"partition_strategy", part_strategy}};
  write_manifest(out_dir, manifest_base("partition", options, {input}, seed),
                 t0);
  std::cout << "kappa = " << parts.size() << " commuting sets (sizes:";
  for (const auto& p : parts) std::cout << " " << p.size();
  std::cout << ")\n";
  return kExitOk;
}

int cmd_verify(const fs::path& circuit_path, const fs::path& paulis_path,
               bool oracle) {
  const qwd::clifford::CliffordCircuit circuit = load_circuit(circuit_path);
  const qwd::partition::TermList terms = load_terms(paulis_path);
  const auto paulis = terms.signed_paulis();
  if (terms.n != circuit.n) {
    std::cerr << "error: circuit acts on " << circuit.n
              << " qubits but operators act on " << terms.n << "\n";
    return kExitPrecondition;
  }
  qwd::pauli::Tableau t = qwd::pauli::Tableau::from_paulis(paulis);
  t = qwd::clifford::conjugate(std::move(t), circuit);
  for (std::size_t i = 0; i < t.rows(); ++i) {
    if (t.x().row(i).any()) {
      std::cerr << "verification failed: operator " << i << " ("
                << paulis[i].str() << ") conjugates to non-diagonal "
                << t.row(i).str() << "\n";
      return kExitVerification;
    }
  }
  if (oracle) {
    if (circuit.n > qwd::dense::kDefaultQubitLimit) {
      std::cerr << "error: --oracle limited to "
                << qwd::dense::kDefaultQubitLimit << " qubits\n";
      return kExitPrecondition;
    }
    const qwd::dense::Unitary u = qwd::dense::dense_unitary(circuit);
    for (std::size_t i = 0; i < paulis.size(); ++i) {
      const auto chk = qwd::dense::conjugation_diagonal(u, paulis[i]);
      if (!chk.diagonal || !chk.entries_pm_one) {
        std::cerr << "dense verification failed: operator " << i << " ("
                  << paulis[i].str() << "), max off-diagonal "
                  << chk.max_off_diagonal << "\n";
        return kExitVerification;
      }
    }
  }
  std::cout << "verified: all " << paulis.size()
            << " operators diagonal after conjugation"
            << (oracle ? " (dense oracle cross-checked)" : "") << "\n";
  return kExitOk;
}

int cmd_bench(const CommonOpts& c, const std::string& n_range,
              const std::string& r_range, bool square, std::size_t samples,
              const std::vector<std::string>& strategy_specs) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t seed = c.resolve_seed();
  qwd::bench::BenchConfig cfg;
  std::tie(cfg.n_min, cfg.n_max) = parse_range(n_range);
  if (!square && !r_range.empty()) {
    std::tie(cfg.r_min, cfg.r_max) = parse_range(r_range);
  }
  cfg.samples = samples;
  cfg.seed = seed;
  cfg.step2 = c.step2_spec == "balanced" ? qwd::diag::Step2Mode::Balanced
                                         : qwd::diag::Step2Mode::Sequential;
  if (!c.graph_spec.empty()) cfg.graph = load_graph(c.graph_spec);
  cfg.strategies.clear();
  for (const auto& s : strategy_specs) {
    std::size_t z = 2;
    cfg.strategies.push_back(parse_strategy(s, z));
    cfg.bounded_z = z;
  }
  if (cfg.strategies.empty()) {
    cfg.strategies.push_back(qwd::diag::Strategy::NoOpt);
  }

  const auto records = qwd::bench::run_benchmark(cfg);
  const fs::path out_dir(c.out_dir);
  fs::create_directories(out_dir);
  write_file(out_dir / "bench.csv", qwd::bench::to_csv(records));
  // Wall-time stats stay out of the report so seeded runs are
  // byte-identical; the manifest carries the run's wall time instead.
  json jrecords = json::array();
  for (const auto& r : records) {
    jrecords.push_back(qwd::serialize::bench_record_to_json(r));
  }
  write_file(out_dir / "bench_report.json", jrecords.dump(2) + "\n");

  json options{{"n", n_range},
               {"r", square ? "square" : r_range},
               {"samples", samples},
               {"strategies", strategy_specs},
               {"step2", c.step2_spec},
               {"graph", c.graph_spec}};
  write_manifest(out_dir, manifest_base("bench", options, {}, seed), t0);
  std::cout << "wrote " << records.size() << " benchmark records to "
            << (out_dir / "bench.csv").string() << "\n";
  return kExitOk;
}

int cmd_random_set(const CommonOpts& c, std::size_t n, std::size_t r,
                   std::size_t count) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t seed = c.resolve_seed();
  if (r == 0) r = n;
  std::mt19937_64 rng(qwd::bench::mix_seed(seed));
  auto set = qwd::bench::random_commuting_set(n, r, rng);
  if (count > 0) set = qwd::bench::random_products(set, count, rng);
  const fs::path out_dir(c.out_dir);
  fs::create_directories(out_dir);
  std::ostringstream os;
  os << "# random commuting set: n=" << n << " r=" << r
     << " seed=" << seed << "\n";
  for (const auto& p : set) os << "1.0 " << p.str() << "\n";
  write_file(out_dir / "random_set.txt", os.str());
  json options{{"n", n}, {"r", r}, {"count", count}};
  write_manifest(out_dir, manifest_base("random-set", options, {}, seed), t0);
  std::cout << "wrote " << set.size() << " operators to "
            << (out_dir / "random_set.txt").string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simultaneous diagonalization of commuting Pauli operators"};
  app.require_subcommand(1);

  CommonOpts c;
  std::string input, circuit_path, paulis_path;
  bool do_partition = false;
  std::string part_strategy = "largest-first-independent-set";
  std::string n_range = "4..10", r_range;
  bool square = false;
  std::size_t samples = 100, rs_n = 4, rs_r = 0, rs_count = 0;
  std::vector<std::string> strategy_specs;

  auto* diag = app.add_subcommand("diagonalize",
                                  "Compile a diagonalizing Clifford circuit");
  diag->add_option("input", input, "Hamiltonian / Pauli set file")->required();
  add_common(diag, c);
  diag->add_option("--strategy", c.strategy_spec,
                   "noopt, bounded:<z>, or complete")
      ->capture_default_str();
  diag->add_option("--step2", c.step2_spec, "seq or balanced")
      ->check(CLI::IsMember({"seq", "balanced"}));
  diag->add_option("--graph", c.graph_spec,
                   "Coupling graph: edge-list file or preset "
                   "line:<n>|ring:<n>|grid:<r>x<c>|full:<n>");
  diag->add_flag("--oracle", c.oracle, "Dense-matrix verification (n <= 10)");
  diag->add_flag("--partition", do_partition,
                 "Split non-commuting input into commuting sets first");
  diag->add_option("--partition-strategy", part_strategy,
                   "largest-first-independent-set or greedy-color")
      ->check(CLI::IsMember({"largest-first-independent-set", "greedy-color"}));

  auto* part = app.add_subcommand("partition",
                                  "Split a Hamiltonian into commuting sets");
  part->add_option("input", input, "Hamiltonian file")->required();
  add_common(part, c);
  part->add_option("--strategy", part_strategy,
                   "largest-first-independent-set or greedy-color")
      ->check(CLI::IsMember({"largest-first-independent-set", "greedy-color"}));

  auto* verify = app.add_subcommand("verify",
                                    "Replay a circuit and check diagonality");
  verify->add_option("circuit", circuit_path, "Circuit file")->required();
  verify->add_option("paulis", paulis_path, "Pauli set file")->required();
  verify->add_flag("--oracle", c.oracle, "Dense cross-check (n <= 10)");

  auto* bench = app.add_subcommand("bench", "Randomized benchmark sweep");
  add_common(bench, c);
  bench->add_option("--n", n_range, "Qubit range, e.g. 4..12 or 15")
      ->capture_default_str();
  bench->add_option("--r", r_range, "Generator range, e.g. 1..15");
  bench->add_flag("--square", square, "Sweep r = n");
  bench->add_option("--samples", samples, "Sets per cell")
      ->capture_default_str();
  bench->add_option("--strategy", strategy_specs,
                    "Strategies to compare (repeatable)");
  bench->add_option("--step2", c.step2_spec, "seq or balanced")
      ->check(CLI::IsMember({"seq", "balanced"}));
  bench->add_option("--graph", c.graph_spec, "Coupling graph file or preset");

  auto* rset = app.add_subcommand("random-set",
                                  "Generate a random commuting Pauli set");
  add_common(rset, c);
  rset->add_option("--n", rs_n, "Qubit count")->required();
  rset->add_option("--r", rs_r, "Independent generators (default n)");
  rset->add_option("--count", rs_count,
                   "Expand to this many product operators (default: "
                   "generators only)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (diag->parsed()) {
      return cmd_diagonalize(input, c, do_partition, part_strategy);
    }
    if (part->parsed()) return cmd_partition(input, c, part_strategy);
    if (verify->parsed()) {
      return cmd_verify(circuit_path, paulis_path, c.oracle);
    }
    if (bench->parsed()) {
      return cmd_bench(c, n_range, r_range, square, samples, strategy_specs);
    }
    if (rset->parsed()) return cmd_random_set(c, rs_n, rs_r, rs_count);
  } catch (const qwd::pauli::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::runtime_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  }
  return kExitOk;
}
