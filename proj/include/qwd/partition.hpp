#pragma once

#include <algorithm>
#include <cstddef>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qwd/pauli.hpp"

// Splitting a Pauli-sum Hamiltonian into mutually commuting sets via graph
// coloring on the anticommutation graph.

namespace qwd::partition {

using pauli::PauliString;

struct Term {
  double coefficient = 0.0;
  PauliString pauli;

  bool operator==(const Term&) const = default;
};

struct TermList {
  std::size_t n = 0;
  std::vector<Term> terms;

  std::size_t size() const { return terms.size(); }

  // Pauli strings with the sign bit set per the coefficient sign, ready for
  // tableau construction.
  std::vector<PauliString> signed_paulis() const {
    std::vector<PauliString> out;
    out.reserve(terms.size());
    for (const Term& t : terms) {
      PauliString p = t.pauli;
      p.sign = t.coefficient < 0.0;
      out.push_back(std::move(p));
    }
    return out;
  }
};

// Hamiltonian text format: one '<coefficient> <pauli>' per line, '#'
// comments. Duplicate Pauli strings merge their coefficients; a leading
// '-' on the Pauli folds into the coefficient.
inline TermList parse_hamiltonian(std::istream& in) {
  TermList out;
  std::map<std::string, std::size_t> seen;  // bare digits -> index
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream ls(line);
    double coef;
    std::string word;
    if (!(ls >> word)) continue;
    auto fail = [&](const std::string& msg) -> pauli::ParseError {
      return pauli::ParseError(
          "hamiltonian line " + std::to_string(lineno) + ": " + msg, lineno);
    };
    try {
      std::size_t pos = 0;
      coef = std::stod(word, &pos);
      if (pos != word.size()) throw std::invalid_argument(word);
    } catch (const std::exception&) {
      throw fail("bad coefficient '" + word + "'");
    }
    std::string pauli_text;
    if (!(ls >> pauli_text)) throw fail("missing Pauli string");
    if (ls >> word) throw fail("trailing tokens");

    PauliString p;
    try {
      p = pauli::parse_pauli(pauli_text);
    } catch (const pauli::ParseError& e) {
      throw fail(std::string(e.what()) + " at position " +
                 std::to_string(e.position));
    }
    if (p.sign) {
      coef = -coef;
      p.sign = false;
    }
    if (out.terms.empty()) {
      out.n = p.n;
    } else if (p.n != out.n) {
      throw fail("qubit count " + std::to_string(p.n) +
                 " differs from earlier terms (" + std::to_string(out.n) +
                 ")");
    }
    const std::string key = p.str();
    if (auto it = seen.find(key); it != seen.end()) {
      out.terms[it->second].coefficient += coef;
    } else {
      seen.emplace(key, out.terms.size());
      out.terms.push_back({coef, std::move(p)});
    }
  }
  if (out.terms.empty()) {
    throw pauli::ParseError("hamiltonian file: no terms", 0);
  }
  return out;
}

inline TermList parse_hamiltonian(const std::string& text) {
  std::istringstream in(text);
  return parse_hamiltonian(in);
}

enum class PartitionStrategy {
  LargestFirstIndependentSet,
  GreedyColor,
};

inline std::string partition_strategy_name(PartitionStrategy s) {
  return s == PartitionStrategy::GreedyColor ? "greedy-color"
                                             : "largest-first-independent-set";
}

// Splits the terms into mutually commuting parts. Vertices are terms and
// edges join anticommuting pairs; a part is an independent set. Both
// strategies are deterministic given the input order.
inline std::vector<TermList> commuting_partition(
    const TermList& input,
    PartitionStrategy strategy = PartitionStrategy::LargestFirstIndependentSet) {
  const std::size_t nterms = input.terms.size();
  std::vector<std::vector<std::size_t>> adj(nterms);
  for (std::size_t i = 0; i < nterms; ++i) {
    for (std::size_t j = i + 1; j < nterms; ++j) {
      if (!pauli::commutes(input.terms[i].pauli, input.terms[j].pauli)) {
        adj[i].push_back(j);
        adj[j].push_back(i);
      }
    }
  }

  std::vector<std::size_t> color(nterms, nterms);
  std::size_t ncolors = 0;

  if (strategy == PartitionStrategy::LargestFirstIndependentSet) {
    // Each round extracts a maximal independent set: repeatedly take the
    // lowest-degree remaining vertex and drop its neighbors.
    std::vector<bool> assigned(nterms, false);
    std::size_t remaining = nterms;
    while (remaining > 0) {
      std::vector<std::size_t> degree(nterms, 0);
      for (std::size_t v = 0; v < nterms; ++v) {
        if (assigned[v]) continue;
        for (auto u : adj[v]) {
          if (!assigned[u]) ++degree[v];
        }
      }
      std::vector<bool> excluded(nterms, false);
      while (true) {
        std::size_t pick = nterms;
        for (std::size_t v = 0; v < nterms; ++v) {
          if (assigned[v] || excluded[v]) continue;
          if (pick == nterms || degree[v] < degree[pick]) pick = v;
        }
        if (pick == nterms) break;
        color[pick] = ncolors;
        assigned[pick] = true;
        excluded[pick] = true;
        --remaining;
        for (auto u : adj[pick]) excluded[u] = true;
      }
      ++ncolors;
    }
  } else {
    // Sequential coloring in descending degree order, ties by input order.
    std::vector<std::size_t> order(nterms);
    for (std::size_t v = 0; v < nterms; ++v) order[v] = v;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return adj[a].size() > adj[b].size();
                     });
    for (auto v : order) {
      std::vector<bool> used(ncolors + 1, false);
      for (auto u : adj[v]) {
        if (color[u] != nterms) used[color[u]] = true;
      }
      std::size_t c = 0;
      while (c < ncolors && used[c]) ++c;
      color[v] = c;
      ncolors = std::max(ncolors, c + 1);
    }
  }

  std::vector<TermList> parts(ncolors);
  for (auto& part : parts) part.n = input.n;
  for (std::size_t v = 0; v < nterms; ++v) {
    parts[color[v]].terms.push_back(input.terms[v]);
  }
  return parts;
}

}  // namespace qwd::partition
