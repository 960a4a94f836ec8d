#include "sublinear/counterexamples.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sublinear/error.hpp"
#include "sublinear/lln.hpp"

namespace sublinear {

Exm3Report exm3_report(std::size_t truncation, const std::vector<double>& lambdas,
                       const std::vector<std::size_t>& ms) {
  double max_lambda = 0.0;
  for (double l : lambdas) {
    if (!(l >= 0.0) || !std::isfinite(l)) {
      throw Error(ErrorCode::kInvalidArgument, "lambdas must be finite and non-negative");
    }
    max_lambda = std::max(max_lambda, l);
  }
  if (static_cast<double>(truncation) < 4.0 * max_lambda) {
    throw Error(ErrorCode::kTruncationTooSmall,
                "truncation " + std::to_string(truncation) + " < 4 * max(lambdas) = " +
                    std::to_string(4.0 * max_lambda));
  }
  const ParametricFamily family(ParametricFamily::Name::kExm3, truncation);

  Exm3Report report;
  report.truncation = truncation;
  for (double l : lambdas) {
    const FamilyExpectation e = family_expect(family, TestFunction::excess_abs(l));
    report.lambda_rows.push_back({l, e.value, e.argmax});
  }
  for (std::size_t m : ms) {
    if (m < 1) throw Error(ErrorCode::kInvalidArgument, "ms entries must be >= 1");
    Exm3MRow row;
    row.m = m;
    row.psi_expect = family_expect(family, TestFunction::psi(static_cast<int>(m))).value;
    row.m_v_tail = n_tail_capacity(family, m);
    report.m_rows.push_back(row);
  }
  return report;
}

TestFunction heavy_phi() { return TestFunction::piecewise_linear({{0.0, 1.0}, {1.0, 0.0}}); }

HeavyLlnResult heavy_lln_value(std::size_t truncation, std::size_t n,
                               std::size_t state_budget) {
  if (truncation < 1) throw Error(ErrorCode::kInvalidArgument, "truncation K must be >= 1");
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "horizon n must be >= 1");
  const std::size_t k_max = truncation;
  // Level k holds sums 0..kK.
  std::size_t states = 0;
  for (std::size_t k = 0; k <= n; ++k) {
    states += k * k_max + 1;
    if (states > state_budget) {
      throw Error(ErrorCode::kStateBudgetExceeded,
                  "HEAVY DP needs more than " + std::to_string(state_budget) + " states");
    }
  }

  const TestFunction phi = heavy_phi();
  const double nd = static_cast<double>(n);
  std::vector<double> next(n * k_max + 1);
  for (std::size_t x = 0; x < next.size(); ++x) next[x] = phi(static_cast<double>(x) / nd);

  std::vector<double> cur;
  for (std::size_t level = n; level-- > 0;) {
    cur.assign(level * k_max + 1, 0.0);
    for (std::size_t x = 0; x < cur.size(); ++x) {
      double best = -1.0;
      for (std::size_t j = 1; j <= k_max; ++j) {
        const double p = 1.0 / static_cast<double>(j);
        const double v = (1.0 - p) * next[x] + p * next[x + j];
        if (v > best) best = v;
      }
      cur[x] = best;
    }
    next.swap(cur);
  }

  HeavyLlnResult result;
  result.truncation = truncation;
  result.n = n;
  result.value = next[0];
  result.lower_bound = std::pow(1.0 - 1.0 / static_cast<double>(truncation), nd);
  result.limit_value = maximal_dist_value(phi, 1.0, 1.0);
  result.state_count = states;
  return result;
}

}  // namespace sublinear
