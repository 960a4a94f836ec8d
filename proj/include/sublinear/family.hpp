#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <optional>
#include <vector>

#include "sublinear/ambiguity.hpp"
#include "sublinear/test_function.hpp"

namespace sublinear {

// Non-negative fraction with exact integer parts.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  // n * num / den with a single rounding.
  double times(std::int64_t n) const;

  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
};

struct RationalAtom {
  std::int64_t point;
  std::int64_t numerator;  // weight = numerator / denominator
};

struct RationalDistribution {
  std::int64_t denominator = 1;
  std::vector<RationalAtom> atoms;
};

// Countably indexed generator families on the integers, truncated to indices
// 1..truncation.
//   EXM3:  P_1 = delta_1;  P_n = (1 - 1/n^2) delta_1 + sum_{k=1..n} n^-3 delta_{kn}.
//   HEAVY: P_k = (1 - 1/k) delta_0 + (1/k) delta_k.
class ParametricFamily {
 public:
  enum class Name { kExm3, kHeavy };

  static constexpr std::size_t kMaxTruncation = 2'000'000;

  ParametricFamily(Name name, std::size_t truncation);

  Name name() const noexcept { return name_; }
  std::size_t truncation() const noexcept { return truncation_; }

  // Exact weights; the constructor of each index checks they sum to one.
  RationalDistribution exact_generator(std::size_t index) const;
  DiscreteDistribution generator(std::size_t index) const;

  // linear_expect(generator(index), f). For EXM3 the equal-weight atoms in
  // the constant right tail of f are summed in one product.
  double expect(std::size_t index, const TestFunction& f) const;

  // P_index(|X| >= a), exactly, without materializing the atoms.
  Rational tail_mass(std::size_t index, double a) const;

  // sup over the excluded indices (> truncation) of P(|X| >= a); an upper
  // bound where no closed form is used.
  double excluded_tail_bound(double a) const;

  std::string describe() const;

 private:
  Name name_;
  std::size_t truncation_;
};

std::string_view to_string(ParametricFamily::Name name);
std::optional<ParametricFamily::Name> parse_family_name(std::string_view name);

struct FamilyExpectation {
  double value = 0.0;  // max over indices <= truncation
  double lower = 0.0;  // min over indices <= truncation
  std::size_t argmax = 1;
  std::size_t argmin = 1;
  std::string tail_note;
};

// sup / inf over the truncated family of linear_expect. TRUNCATION_TOO_SMALL
// when the running max strictly increases at each of the last 10 indices.
FamilyExpectation family_expect(const ParametricFamily& family, const TestFunction& f);

// V(|X| >= a) over the truncated family, exactly.
Rational family_tail_capacity(const ParametricFamily& family, double a);

}  // namespace sublinear
