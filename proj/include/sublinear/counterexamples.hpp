#pragma once

#include <cstddef>
#include <vector>

#include "sublinear/family.hpp"
#include "sublinear/test_function.hpp"

namespace sublinear {

struct Exm3LambdaRow {
  double lambda = 0.0;
  double value = 0.0;  // E[(|X| - lambda)^+]
  std::size_t argmax = 1;
};

struct Exm3MRow {
  std::size_t m = 0;
  double psi_expect = 0.0;  // E[psi_m(X)]
  double m_v_tail = 0.0;    // m V(|X| >= m)
};

struct Exm3Report {
  std::size_t truncation = 0;
  std::vector<Exm3LambdaRow> lambda_rows;
  std::vector<Exm3MRow> m_rows;
};

// TRUNCATION_TOO_SMALL unless truncation >= 4 max(lambdas).
Exm3Report exm3_report(std::size_t truncation, const std::vector<double>& lambdas,
                       const std::vector<std::size_t>& ms);

// phi(x) = 1 ^ (1 - x)^+.
TestFunction heavy_phi();

struct HeavyLlnResult {
  std::size_t truncation = 0;
  std::size_t n = 0;
  double value = 0.0;        // E_K[phi(S_n / n)]
  double lower_bound = 0.0;  // (1 - 1/K)^n
  double limit_value = 0.0;  // maximal-distribution value at mu = 1
  std::size_t state_count = 0;
};

// Backward induction over integer sums in [0, nK] with the K-truncated HEAVY
// family: u_{k-1}(x) = max_j (1 - 1/j) u_k(x) + (1/j) u_k(x + j).
HeavyLlnResult heavy_lln_value(std::size_t truncation, std::size_t n,
                               std::size_t state_budget = 50'000'000);

}  // namespace sublinear
