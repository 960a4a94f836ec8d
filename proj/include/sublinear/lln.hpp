#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sublinear/ambiguity.hpp"
#include "sublinear/family.hpp"
#include "sublinear/lattice_dp.hpp"
#include "sublinear/test_function.hpp"

namespace sublinear {

// The law of X_1: a finitely generated set or a truncated countable family.
using Source = std::variant<AmbiguitySet, ParametricFamily>;

std::string describe(const Source& source);

// Upper and lower expectation of f(X_1) under a source.
SublinearValue source_expect(const Source& source, const TestFunction& f);

// n * V(|X_1| >= n). Exact for families (single rounding of a rational).
double n_tail_capacity(const Source& source, std::size_t n);

struct TruncatedMeans {
  std::size_t n = 0;
  double mu_upper = 0.0;  // E[(-n v X_1) ^ n]
  double mu_lower = 0.0;  // -E[(-n v -X_1) ^ n]
};

TruncatedMeans truncated_means(const Source& source, std::size_t n);

enum class ConditionTrend { kVanishing, kDecreasing, kNonVanishing };
std::string_view to_string(ConditionTrend trend);

struct ConditionRow {
  std::size_t n = 0;
  double n_v_tail = 0.0;    // n * V(|X_1| >= n)
  double psi_expect = 0.0;  // E[psi_n(X_1)]
  double mu_lower_n = 0.0;
  double mu_upper_n = 0.0;
};

// Tabulates the three conditions of the law of large numbers for n = 1..n_max.
// Verdicts describe the computed range only.
struct ConditionReport {
  std::string source;
  std::size_t n_max = 0;
  std::vector<ConditionRow> rows;
  ConditionTrend condition_i = ConditionTrend::kNonVanishing;
  std::string range_note;
  // Set when the last three values agree within 1e-9.
  std::optional<double> mu_upper_limit;
  std::optional<double> mu_lower_limit;
  std::vector<std::string> warnings;  // FAMILY_TRUNCATION_WARNING lines
};

ConditionReport peng_condition_report(const Source& source, std::size_t n_max);

// max of f over [mu_lower, mu_upper]: the expectation under the maximal
// distribution.
double maximal_dist_value(const TestFunction& f, double mu_lower, double mu_upper);

struct SweepRow {
  std::size_t n = 0;
  double dp_value = 0.0;     // E[f(S_n / n)]
  double limit_value = 0.0;  // max over [mu_lower_n, mu_upper_n] of f
  double abs_error = 0.0;
};

struct SweepReport {
  std::string set;
  std::string function;
  std::vector<SweepRow> rows;
};

SweepReport lln_sweep(const AmbiguitySet& set, const TestFunction& f,
                      const std::vector<std::size_t>& horizons,
                      const DpOptions& options = {});

struct ChebyshevCheck {
  std::size_t n = 0;
  double eps = 0.0;
  double lhs = 0.0;  // V(S_n / n > mu_upper_n + eps)
  double rhs = 0.0;  // n V(|X_1| >= n) + 8 / (n eps^2) E[clamp_n(X_1)^2]
  bool holds = false;
};

ChebyshevCheck chebyshev_bound_check(const AmbiguitySet& set, std::size_t n, double eps,
                                     const DpOptions& options = {});

}  // namespace sublinear
