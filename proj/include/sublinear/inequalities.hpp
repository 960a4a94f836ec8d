#pragma once

#include <cstddef>
#include <string_view>

#include "sublinear/ambiguity.hpp"
#include "sublinear/lattice_dp.hpp"

namespace sublinear {

inline constexpr double kInequalityTolerance = 1e-12;

enum class OttavianiStatus { kHolds, kVacuous, kViolated };
std::string_view to_string(OttavianiStatus status);

// Maximal inequality under capacities: if max_k V(|S_n - S_k| >= alpha) <= c < 1
// then V(max_k |S_k| >= 2 alpha) <= V(|S_n| >= alpha) / (1 - c).
struct OttavianiReport {
  std::size_t n = 0;
  double alpha = 0.0;
  double c = 0.0;
  double premise_value = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  OttavianiStatus status = OttavianiStatus::kHolds;
};

OttavianiReport ottaviani_check(const AmbiguitySet& set, std::size_t n, double alpha,
                                double c, const DpOptions& options = {});

// V(max_k |X_k| >= a) against 1 - (1 - V(|X_1| >= a))^n.
struct ProductIdentity {
  std::size_t n = 0;
  double threshold = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double delta = 0.0;
  // 1 - exp(-n V(|X_1| >= a)), which rhs dominates.
  double exponential_bound = 0.0;
};

ProductIdentity capacity_product_identity(const AmbiguitySet& set, std::size_t n,
                                          double threshold, const DpOptions& options = {});

}  // namespace sublinear
