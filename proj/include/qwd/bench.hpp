#pragma once

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qwd/clifford.hpp"
#include "qwd/diagonalizer.hpp"
#include "qwd/gf2.hpp"
#include "qwd/pauli.hpp"

// Random commuting-set generation and the statistical benchmarking sweep:
// mean and sample standard deviation over a configurable number of random
// sets per (n, r, strategy) cell, with the worst-case gate-count bounds
// asserted on every sample.

namespace qwd::bench {

using clifford::CliffordCircuit;
using clifford::Gate;
using diag::DiagonalizeOptions;
using diag::Step2Mode;
using diag::Strategy;
using gf2::BitMatrix;
using pauli::PauliString;

// splitmix64; used to derive independent per-cell RNG streams.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t cell_seed(std::uint64_t master, std::size_t n,
                               std::size_t r, std::size_t strategy_index) {
  std::uint64_t s = mix_seed(master ^ 0x71c3f11a00000000ull);
  s = mix_seed(s ^ static_cast<std::uint64_t>(n));
  s = mix_seed(s ^ (static_cast<std::uint64_t>(r) << 20));
  s = mix_seed(s ^ (static_cast<std::uint64_t>(strategy_index) << 40));
  return s;
}

namespace detail {

// Random matrix with rank min(rows, cols); resamples until achieved.
inline BitMatrix random_full_rank(std::size_t rows, std::size_t cols,
                                  std::mt19937_64& rng,
                                  bool forbid_zero_rows) {
  const std::size_t want = std::min(rows, cols);
  while (true) {
    BitMatrix m(rows, cols);
    bool zero_row = false;
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        m.set(i, j, rng() & 1);
      }
      if (forbid_zero_rows && !m.row(i).any()) zero_row = true;
    }
    if (zero_row) continue;
    if (gf2::rank(m) == want) return m;
  }
}

inline CliffordCircuit random_clifford_word(std::size_t n, std::size_t length,
                                            std::mt19937_64& rng) {
  CliffordCircuit c(n);
  std::uniform_int_distribution<std::size_t> qubit(0, n - 1);
  std::uniform_int_distribution<int> kind(0, n > 1 ? 2 : 1);
  for (std::size_t i = 0; i < length; ++i) {
    switch (kind(rng)) {
      case 0: c.push(Gate::h(static_cast<std::uint32_t>(qubit(rng)))); break;
      case 1: c.push(Gate::s(static_cast<std::uint32_t>(qubit(rng)))); break;
      default: {
        const std::size_t a = qubit(rng);
        std::size_t b = qubit(rng);
        while (b == a) b = qubit(rng);
        c.push(Gate::cnot(static_cast<std::uint32_t>(a),
                          static_cast<std::uint32_t>(b)));
      }
    }
  }
  return c;
}

}  // namespace detail

// r independent pairwise-commuting Pauli strings on n qubits: random
// independent Z-strings scrambled by a random Clifford word of length
// ~5 n log2 n.
inline std::vector<PauliString> random_commuting_set(std::size_t n,
                                                     std::size_t r,
                                                     std::mt19937_64& rng) {
  if (r < 1 || r > n) {
    throw std::invalid_argument("random_commuting_set: need 1 <= r <= n");
  }
  const BitMatrix zrows = detail::random_full_rank(r, n, rng, true);
  pauli::Tableau t(n, r);
  t.z() = zrows;

  const std::size_t word_len = std::max<std::size_t>(
      16, 5 * n * static_cast<std::size_t>(
                      std::ceil(std::log2(static_cast<double>(n) + 1.0))));
  const CliffordCircuit scramble = detail::random_clifford_word(n, word_len, rng);
  t = clifford::conjugate(std::move(t), scramble);

  std::vector<PauliString> out;
  out.reserve(r);
  for (std::size_t i = 0; i < r; ++i) {
    PauliString p = t.row(i);
    p.sign = false;
    out.push_back(std::move(p));
  }
  return out;
}

inline std::vector<PauliString> random_commuting_set(std::size_t n,
                                                     std::size_t r,
                                                     std::uint64_t seed) {
  std::mt19937_64 rng(mix_seed(seed));
  return random_commuting_set(n, r, rng);
}

// Expands r generators into `count` random products whose coefficient
// matrix has rank r, emulating N-operator benchmark sets.
inline std::vector<PauliString> random_products(
    const std::vector<PauliString>& generators, std::size_t count,
    std::mt19937_64& rng) {
  const std::size_t r = generators.size();
  if (count < r) {
    throw std::invalid_argument("random_products: count < generator count");
  }
  const std::size_t n = generators[0].n;
  // count x r coefficient matrix, rank r, no all-zero rows.
  const BitMatrix coeff = detail::random_full_rank(count, r, rng, true);
  std::vector<PauliString> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    PauliString p(n);
    for (std::size_t k = 0; k < r; ++k) {
      if (coeff.get(i, k)) {
        p.x ^= generators[k].x;
        p.z ^= generators[k].z;
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

struct BenchConfig {
  std::size_t n_min = 4;
  std::size_t n_max = 10;
  // r_min = r_max = 0 means the square sweep r = n.
  std::size_t r_min = 0;
  std::size_t r_max = 0;
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  std::vector<Strategy> strategies = {Strategy::NoOpt};
  std::size_t bounded_z = 2;
  Step2Mode step2 = Step2Mode::Sequential;
  std::optional<connectivity::ConnectivityGraph> graph;
  std::size_t complete_dim_limit = 24;
  bool expand_products = true;  // diagonalize n operators, not r generators
  bool assert_bounds = true;
};

struct BenchRecord {
  std::size_t n = 0;
  std::size_t r = 0;
  Strategy strategy = Strategy::NoOpt;
  std::size_t samples = 0;
  double mean_cnots = 0, sd_cnots = 0;
  double mean_depth = 0, sd_depth = 0;
  double mean_swaps = 0, sd_swaps = 0;
  double mean_wall_ms = 0;  // reported out of band; not part of the CSV
};

namespace detail {

struct Stats {
  double mean = 0, sd = 0;
};

// Sample SD: square root of the sample variance (n-1 denominator).
inline Stats mean_sd(const std::vector<double>& xs) {
  Stats s;
  if (xs.empty()) return s;
  for (double x : xs) s.mean += x;
  s.mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return s;
  double acc = 0;
  for (double x : xs) acc += (x - s.mean) * (x - s.mean);
  s.sd = std::sqrt(acc / static_cast<double>(xs.size() - 1));
  return s;
}

inline void check_bounds(const diag::DiagonalizeResult& res, Strategy strategy,
                         std::size_t n) {
  const std::size_t r = res.r;
  std::size_t cnots = 0;
  for (const auto& st : res.stages) cnots += st.cnots;
  const std::size_t weak = n * r - r * (r + 1) / 2;
  if (cnots > weak) {
    throw std::logic_error("CNOT count " + std::to_string(cnots) +
                           " violates the n*r - r(r+1)/2 bound " +
                           std::to_string(weak));
  }
  if (strategy == Strategy::Complete) {
    const std::size_t h = r / 2;
    const std::size_t tight = n * h - h * h;
    if (cnots > tight) {
      throw std::logic_error("CNOT count " + std::to_string(cnots) +
                             " violates the n*floor(r/2) - floor(r/2)^2 " +
                             "bound " + std::to_string(tight));
    }
    for (const auto& st : res.stages) {
      if (st.cnots > st.r_alpha / 2) {
        throw std::logic_error("stage CNOT count exceeds floor(r_alpha/2)");
      }
    }
  }
}

}  // namespace detail

inline std::vector<BenchRecord> run_benchmark(const BenchConfig& cfg) {
  if (cfg.samples < 2) {
    throw std::invalid_argument("run_benchmark: need samples >= 2");
  }
  std::vector<BenchRecord> records;
  for (std::size_t n = cfg.n_min; n <= cfg.n_max; ++n) {
    const std::size_t r_lo = cfg.r_min == 0 ? n : cfg.r_min;
    const std::size_t r_hi = cfg.r_max == 0 ? n : std::min(cfg.r_max, n);
    for (std::size_t r = r_lo; r <= r_hi; ++r) {
      for (std::size_t si = 0; si < cfg.strategies.size(); ++si) {
        const Strategy strategy = cfg.strategies[si];
        std::mt19937_64 rng(cell_seed(cfg.seed, n, r, si));

        DiagonalizeOptions opts;
        opts.strategy = strategy;
        opts.bounded_z = cfg.bounded_z;
        opts.step2 = cfg.step2;
        opts.graph = cfg.graph;
        opts.complete_dim_limit = cfg.complete_dim_limit;

        std::vector<double> cnots, depths, swaps;
        double wall_ms = 0;
        for (std::size_t s = 0; s < cfg.samples; ++s) {
          std::vector<PauliString> set = random_commuting_set(n, r, rng);
          if (cfg.expand_products) {
            set = random_products(set, n, rng);
          }
          const auto t0 = std::chrono::steady_clock::now();
          const diag::DiagonalizeResult res = diag::diagonalize(set, opts);
          const auto t1 = std::chrono::steady_clock::now();
          wall_ms +=
              std::chrono::duration<double, std::milli>(t1 - t0).count();
          if (cfg.assert_bounds) detail::check_bounds(res, strategy, n);
          cnots.push_back(
              static_cast<double>(res.circuit.count(clifford::GateKind::Cnot)));
          depths.push_back(static_cast<double>(clifford::depth(res.circuit)));
          swaps.push_back(
              static_cast<double>(res.circuit.count(clifford::GateKind::Swap)));
        }

        BenchRecord rec;
        rec.n = n;
        rec.r = r;
        rec.strategy = strategy;
        rec.samples = cfg.samples;
        const auto cs = detail::mean_sd(cnots);
        const auto ds = detail::mean_sd(depths);
        const auto ss = detail::mean_sd(swaps);
        rec.mean_cnots = cs.mean;
        rec.sd_cnots = cs.sd;
        rec.mean_depth = ds.mean;
        rec.sd_depth = ds.sd;
        rec.mean_swaps = ss.mean;
        rec.sd_swaps = ss.sd;
        rec.mean_wall_ms = wall_ms / static_cast<double>(cfg.samples);
        records.push_back(rec);
      }
    }
  }
  return records;
}

inline constexpr const char* kCsvHeader =
    "n,r,strategy,samples,mean_cnots,sd_cnots,mean_depth,sd_depth,"
    "mean_swaps,sd_swaps";

// Deterministic CSV: wall-time stats are deliberately excluded so identical
// seeds give byte-identical files.
inline std::string to_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream os;
  os << kCsvHeader << "\n";
  for (const auto& r : records) {
    os << r.n << ',' << r.r << ',' << diag::strategy_name(r.strategy) << ','
       << r.samples;
    os.setf(std::ios::fixed);
    os.precision(6);
    os << ',' << r.mean_cnots << ',' << r.sd_cnots << ',' << r.mean_depth
       << ',' << r.sd_depth << ',' << r.mean_swaps << ',' << r.sd_swaps
       << "\n";
    os.unsetf(std::ios::fixed);
  }
  return os.str();
}

}  // namespace qwd::bench
