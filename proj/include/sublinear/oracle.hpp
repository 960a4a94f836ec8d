#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "sublinear/ambiguity.hpp"
#include "sublinear/lattice_dp.hpp"
#include "sublinear/test_function.hpp"

namespace sublinear::oracle {

// Exhaustive evaluators over fully history-dependent kernel selections. They
// never merge histories by partial sum, so they certify the Markov reduction
// used by the lattice DP. Intended for tiny instances only.

struct OracleOptions {
  // Maximum number of (history, generator) expansions, or of selections for
  // the literal enumeration.
  std::size_t enumeration_budget = 1'000'000;
  Scaling scaling = Scaling::kAverage;
};

// History = realized values (x_1, ..., x_{k-1}) as indices into the sorted
// union of all generator supports.
using History = std::vector<std::uint32_t>;

// One kernel per step: a generator index for every history of length k - 1.
struct KernelSelection {
  std::vector<std::map<History, std::uint32_t>> kernels;  // kernels[k-1]
};

// sup (or inf) over all history-dependent selections of E[f(S_n/n)], by
// depth-first expansion of the full history tree.
double brute_force_value(const AmbiguitySet& set, std::size_t n, const TestFunction& f,
                         const OracleOptions& options = {}, Side side = Side::kUpper);

// Same for the probability of a path event, evaluated on each explicit path.
double brute_force_capacity(const AmbiguitySet& set, std::size_t n, const PathEvent& event,
                            Side side, const OracleOptions& options = {});

// Linear expectation of f(S_n/n) under one explicit selection, by summing
// over every path.
double selection_value(const AmbiguitySet& set, std::size_t n, const TestFunction& f,
                       const KernelSelection& selection, const OracleOptions& options = {});

// Literal enumeration of every KernelSelection with path summation;
// ENUMERATION_BUDGET_EXCEEDED when (#generators)^(#histories) > budget.
double enumerate_selections_value(const AmbiguitySet& set, std::size_t n,
                                  const TestFunction& f, const OracleOptions& options = {});

// Direct predicate evaluation on a realized path of increments.
bool event_occurs(const PathEvent& event, const std::vector<double>& increments);

}  // namespace sublinear::oracle
