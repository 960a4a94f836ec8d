#include "sublinear/inequalities.hpp"

#include <algorithm>
#include <cmath>

#include "sublinear/error.hpp"

namespace sublinear {

std::string_view to_string(OttavianiStatus status) {
  switch (status) {
    case OttavianiStatus::kHolds: return "HOLDS";
    case OttavianiStatus::kVacuous: return "VACUOUS";
    case OttavianiStatus::kViolated: return "VIOLATED";
  }
  return "?";
}

OttavianiReport ottaviani_check(const AmbiguitySet& set, std::size_t n, double alpha,
                                double c, const DpOptions& options) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "horizon n must be >= 1");
  if (!(alpha > 0.0)) throw Error(ErrorCode::kInvalidArgument, "alpha must be positive");
  if (!(c > 0.0 && c < 1.0)) throw Error(ErrorCode::kInvalidArgument, "c must lie in (0, 1)");

  OttavianiReport report;
  report.n = n;
  report.alpha = alpha;
  report.c = c;
  // i.i.d. increments: V(|S_n - S_k| >= alpha) is the horizon n - k capacity
  // of |S| >= alpha; k = n contributes |0| >= alpha, which is false.
  const PathEvent final_event = PathEvent::final_abs_ge(alpha);
  for (std::size_t k = 1; k < n; ++k) {
    report.premise_value = std::max(
        report.premise_value, capacity(set, n - k, final_event, Side::kUpper, options));
  }
  report.lhs = capacity(set, n, PathEvent::max_partial_abs_ge(2.0 * alpha), Side::kUpper,
                        options);
  report.rhs = capacity(set, n, final_event, Side::kUpper, options) / (1.0 - c);

  if (report.premise_value > c) {
    report.status = OttavianiStatus::kVacuous;
  } else if (report.lhs <= report.rhs + kInequalityTolerance) {
    report.status = OttavianiStatus::kHolds;
  } else {
    report.status = OttavianiStatus::kViolated;
  }
  return report;
}

ProductIdentity capacity_product_identity(const AmbiguitySet& set, std::size_t n,
                                          double threshold, const DpOptions& options) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "horizon n must be >= 1");
  ProductIdentity out;
  out.n = n;
  out.threshold = threshold;
  out.lhs = capacity(set, n, PathEvent::max_increment_abs_ge(threshold), Side::kUpper,
                     options);
  const double p = tail_capacity(set, threshold);
  const double nd = static_cast<double>(n);
  out.rhs = 1.0 - std::pow(1.0 - p, nd);
  out.delta = std::fabs(out.lhs - out.rhs);
  out.exponential_bound = 1.0 - std::exp(-nd * p);
  return out;
}

}  // namespace sublinear
