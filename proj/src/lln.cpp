#include "sublinear/lln.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sublinear/error.hpp"

namespace sublinear {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kStableTolerance = 1e-9;

std::optional<double> stable_limit(const std::vector<ConditionRow>& rows,
                                   double ConditionRow::*field) {
  if (rows.size() < 3) return std::nullopt;
  const double a = rows[rows.size() - 3].*field;
  const double b = rows[rows.size() - 2].*field;
  const double c = rows[rows.size() - 1].*field;
  if (std::fabs(a - c) <= kStableTolerance && std::fabs(b - c) <= kStableTolerance) return c;
  return std::nullopt;
}

ConditionTrend classify(const std::vector<ConditionRow>& rows) {
  const double last = rows.back().n_v_tail;
  if (last <= 1e-15) return ConditionTrend::kVanishing;
  const std::size_t mid = rows.size() / 2;
  for (std::size_t i = mid + 1; i < rows.size(); ++i) {
    if (rows[i].n_v_tail > rows[i - 1].n_v_tail + 1e-12) return ConditionTrend::kNonVanishing;
  }
  // Decay must at least halve over the second half of the range.
  if (last <= 0.5 * rows[mid].n_v_tail) return ConditionTrend::kDecreasing;
  return ConditionTrend::kNonVanishing;
}

}  // namespace

std::string describe(const Source& source) {
  return std::visit(Overloaded{[](const AmbiguitySet& s) { return s.describe(); },
                               [](const ParametricFamily& f) { return f.describe(); }},
                    source);
}

SublinearValue source_expect(const Source& source, const TestFunction& f) {
  return std::visit(
      Overloaded{[&](const AmbiguitySet& s) { return sublinear_expect(s, f); },
                 [&](const ParametricFamily& fam) {
                   const FamilyExpectation e = family_expect(fam, f);
                   return SublinearValue{e.value, e.lower, e.argmax, e.argmin};
                 }},
      source);
}

double n_tail_capacity(const Source& source, std::size_t n) {
  const auto nn = static_cast<std::int64_t>(n);
  return std::visit(
      Overloaded{[&](const AmbiguitySet& s) {
                   return static_cast<double>(n) * tail_capacity(s, static_cast<double>(n));
                 },
                 [&](const ParametricFamily& fam) {
                   return family_tail_capacity(fam, static_cast<double>(n)).times(nn);
                 }},
      source);
}

TruncatedMeans truncated_means(const Source& source, std::size_t n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "truncation level n must be >= 1");
  const SublinearValue v = source_expect(source, TestFunction::clamp(static_cast<double>(n)));
  return {n, v.upper, v.lower};
}

std::string_view to_string(ConditionTrend trend) {
  switch (trend) {
    case ConditionTrend::kVanishing: return "vanishing";
    case ConditionTrend::kDecreasing: return "decreasing";
    case ConditionTrend::kNonVanishing: return "non-vanishing";
  }
  return "?";
}

ConditionReport peng_condition_report(const Source& source, std::size_t n_max) {
  if (n_max < 2) throw Error(ErrorCode::kInvalidArgument, "n_max must be >= 2");
  ConditionReport report;
  report.source = describe(source);
  report.n_max = n_max;
  report.rows.reserve(n_max);
  const auto* family = std::get_if<ParametricFamily>(&source);
  for (std::size_t n = 1; n <= n_max; ++n) {
    ConditionRow row;
    row.n = n;
    row.n_v_tail = n_tail_capacity(source, n);
    row.psi_expect = source_expect(source, TestFunction::psi(static_cast<int>(n))).upper;
    const TruncatedMeans means = truncated_means(source, n);
    row.mu_lower_n = means.mu_lower;
    row.mu_upper_n = means.mu_upper;
    report.rows.push_back(row);

    if (family != nullptr) {
      const double nd = static_cast<double>(n);
      const double kept = family_tail_capacity(*family, nd).to_double();
      const double excluded = family->excluded_tail_bound(nd);
      if (excluded > kept) {
        std::ostringstream os;
        os << "FAMILY_TRUNCATION_WARNING: n=" << n << ": indices beyond truncation "
           << family->truncation() << " reach V(|X_1|>=n) up to " << excluded
           << " > truncated value " << kept;
        report.warnings.push_back(os.str());
      }
    }
  }
  report.condition_i = classify(report.rows);
  report.range_note = "observed over n <= " + std::to_string(n_max);
  report.mu_upper_limit = stable_limit(report.rows, &ConditionRow::mu_upper_n);
  report.mu_lower_limit = stable_limit(report.rows, &ConditionRow::mu_lower_n);
  return report;
}

double maximal_dist_value(const TestFunction& f, double mu_lower, double mu_upper) {
  if (!std::isfinite(mu_lower) || !std::isfinite(mu_upper) || mu_lower > mu_upper) {
    throw Error(ErrorCode::kBadInterval, "mean interval must satisfy mu_lower <= mu_upper");
  }
  double best = std::max(f(mu_lower), f(mu_upper));
  for (double x : f.kinks()) {
    if (x > mu_lower && x < mu_upper) best = std::max(best, f(x));
  }
  if (!std::isfinite(best)) {
    throw Error(ErrorCode::kUnboundedEval, f.describe() + " is not finite on the interval");
  }
  return best;
}

SweepReport lln_sweep(const AmbiguitySet& set, const TestFunction& f,
                      const std::vector<std::size_t>& horizons, const DpOptions& options) {
  SweepReport report;
  report.set = set.describe();
  report.function = f.describe();
  for (std::size_t n : horizons) {
    SweepRow row;
    row.n = n;
    row.dp_value = robust_value(set, n, f, options).value;
    const TruncatedMeans means = truncated_means(set, n);
    row.limit_value = maximal_dist_value(f, means.mu_lower, means.mu_upper);
    row.abs_error = std::fabs(row.dp_value - row.limit_value);
    report.rows.push_back(row);
  }
  return report;
}

ChebyshevCheck chebyshev_bound_check(const AmbiguitySet& set, std::size_t n, double eps,
                                     const DpOptions& options) {
  if (!(eps > 0.0)) throw Error(ErrorCode::kInvalidArgument, "eps must be positive");
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "horizon n must be >= 1");
  const double nd = static_cast<double>(n);
  const TruncatedMeans means = truncated_means(set, n);
  ChebyshevCheck check;
  check.n = n;
  check.eps = eps;
  check.lhs = capacity(set, n, PathEvent::final_gt(nd * (means.mu_upper + eps)),
                       Side::kUpper, options);
  const double second_moment = sublinear_expect(set, TestFunction::clamped_square(nd)).upper;
  check.rhs = n_tail_capacity(set, n) + 8.0 / (nd * eps * eps) * second_moment;
  check.holds = check.lhs <= check.rhs + 1e-12;
  return check;
}

}  // namespace sublinear
