#pragma once

#include <cstddef>
#include <cstdint>

#include "sublinear/ambiguity.hpp"
#include "sublinear/lattice_dp.hpp"
#include "sublinear/test_function.hpp"

namespace sublinear {

struct SimConfig {
  AmbiguitySet set;
  KernelPolicy policy;
  std::size_t n = 1;
  std::size_t paths = 1;
  std::uint64_t seed = 0;
  // Results do not depend on this: path i always uses stream (seed, i).
  unsigned threads = 1;
};

struct SimResult {
  double estimate = 0.0;
  double stderr_ = 0.0;  // sample std / sqrt(paths)
  std::size_t paths = 0;
};

// Sample mean of f(S_n / n) over independent paths drawn under the policy.
// POLICY_GAP when a path reaches a state the policy does not cover.
SimResult simulate(const SimConfig& config, const TestFunction& f);

// Fraction of paths with |S_n / n - mu| > eps.
double deviation_frequency(const SimConfig& config, double mu, double eps);

}  // namespace sublinear
