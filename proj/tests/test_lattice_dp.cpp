#include <gtest/gtest.h>

#include "sublinear/error.hpp"
#include "sublinear/lattice_dp.hpp"
#include "support.hpp"

using namespace sublinear;

namespace {

const TestFunction kAbsClipped = TestFunction::piecewise_linear({{-1, 1}, {0, 0}, {1, 1}});

AmbiguitySet delta0_uniform() {
  return make_ambiguity_set({}, {point_mass(0), make_distribution({{-1, 0.5}, {1, 0.5}})});
}

AmbiguitySet uniform_only() {
  return make_ambiguity_set({}, {make_distribution({{-1, 0.5}, {1, 0.5}})});
}

}  // namespace

TEST(RobustValue, Examples) {
  EXPECT_DOUBLE_EQ(robust_value(delta0_uniform(), 2, kAbsClipped).value, 0.5);

  DpOptions sum;
  sum.scaling = Scaling::kSum;
  EXPECT_DOUBLE_EQ(robust_value(uniform_only(), 2, TestFunction::square(), sum).value, 2.0);
}

TEST(RobustValue, HorizonOneIsSingleStep) {
  support::Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const AmbiguitySet s = support::random_set(rng);
    const TestFunction f = support::random_pl(rng, -3, 3);
    EXPECT_EQ(robust_value(s, 1, f).value, sublinear_expect(s, f).upper);
    EXPECT_EQ(robust_value(s, 1, f, {}, Side::kLower).value, sublinear_expect(s, f).lower);
  }
}

TEST(RobustValue, RejectsUnboundedAtAverageScale) {
  try {
    robust_value(uniform_only(), 2, TestFunction::square());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnboundedFunction);
  }
}

TEST(RobustValue, StateBudget) {
  DpOptions o;
  o.state_budget = 100;
  try {
    robust_value(uniform_only(), 50, kAbsClipped, o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kStateBudgetExceeded);
  }
}

TEST(RobustValue, ThreadCountDoesNotChangeResult) {
  const auto s = make_ambiguity_set(
      {}, {make_distribution({{-3, 0.25}, {0, 0.5}, {4, 0.25}}), make_distribution({{-1, 0.5}, {2, 0.5}})});
  const auto f = TestFunction::tent(0.2, 0.7);
  DpOptions one;
  DpOptions many;
  many.threads = 8;
  const RobustResult a = robust_value(s, 400, f, one);
  const RobustResult b = robust_value(s, 400, f, many);
  EXPECT_EQ(a.value, b.value);
  for (std::size_t k = 1; k <= 400; k += 57) {
    EXPECT_EQ(a.policy.level(k).choice, b.policy.level(k).choice);
  }
}

TEST(Capacity, Examples) {
  const auto ev = PathEvent::final_abs_ge(2);
  EXPECT_DOUBLE_EQ(capacity(uniform_only(), 2, ev, Side::kUpper), 0.5);
  EXPECT_DOUBLE_EQ(capacity(delta0_uniform(), 2, ev, Side::kLower), 0.0);
  EXPECT_DOUBLE_EQ(capacity(delta0_uniform(), 2, ev, Side::kUpper), 0.5);
}

TEST(Capacity, HorizonZeroAndFromIndexChecks) {
  EXPECT_EQ(capacity(uniform_only(), 0, PathEvent::final_abs_ge(0), Side::kUpper), 1.0);
  try {
    capacity(uniform_only(), 2, PathEvent::tail_sum_abs_ge(1, 3), Side::kUpper);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupportedEvent);
  }
}

TEST(Capacity, Duality) {
  support::Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const AmbiguitySet s = support::random_set(rng);
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 6));
    const PathEvent e = support::random_event(rng, n, 3.0 * n);
    const double lower = capacity(s, n, e, Side::kLower);
    const double upper_c = capacity(s, n, e.complemented(), Side::kUpper);
    EXPECT_NEAR(lower, 1.0 - upper_c, 1e-12) << e.describe();
  }
}

TEST(Capacity, FinalAbsDualToStrictBand) {
  // v(|S_n| >= a) = 1 - V(-a < S_n < a), the complement written in the grammar.
  const auto s = make_ambiguity_set({}, {make_distribution({{-2, 0.25}, {1, 0.75}}),
                                         make_distribution({{-1, 0.5}, {0, 0.25}, {2, 0.25}})});
  for (std::size_t n = 1; n <= 6; ++n) {
    for (double a : {0.5, 1.0, 2.0, 3.5}) {
      const double lower = capacity(s, n, PathEvent::final_abs_ge(a), Side::kLower);
      const double band = capacity(s, n, PathEvent::final_abs_ge(a).complemented(), Side::kUpper);
      EXPECT_NEAR(lower, 1.0 - band, 1e-12);
    }
  }
}

TEST(Capacity, MonotoneInThreshold) {
  support::Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    const AmbiguitySet s = support::random_set(rng);
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 8));
    double prev = 1.0;
    for (double a = 0.0; a <= 3.0 * n + 1; a += 0.5) {
      const double v = capacity(s, n, PathEvent::final_abs_ge(a), Side::kUpper);
      EXPECT_LE(v, prev + 1e-15);
      prev = v;
    }
  }
}

TEST(Capacity, IncrementStationarity) {
  support::Rng rng(9);
  for (int i = 0; i < 50; ++i) {
    const AmbiguitySet s = support::random_set(rng);
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 8));
    const std::size_t k = static_cast<std::size_t>(rng.integer(0, static_cast<int>(n)));
    const double a = rng.integer(0, 6) * 0.5;
    for (Side side : {Side::kUpper, Side::kLower}) {
      EXPECT_EQ(capacity(s, n, PathEvent::tail_sum_abs_ge(a, k), side),
                capacity(s, n - k, PathEvent::final_abs_ge(a), side));
    }
  }
}

TEST(Capacity, SingletonCollapse) {
  support::Rng rng(13);
  for (int i = 0; i < 50; ++i) {
    const AmbiguitySet s = support::random_set(rng, 1);
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 6));
    const PathEvent e = support::random_event(rng, n, 2.0 * n);
    EXPECT_EQ(capacity(s, n, e, Side::kUpper), capacity(s, n, e, Side::kLower));
    const TestFunction f = support::random_pl(rng, -3, 3);
    EXPECT_EQ(robust_value(s, n, f).value, robust_value(s, n, f, {}, Side::kLower).value);
    EXPECT_EQ(robust_value(s, n, f).value,
              policy_value(s, KernelPolicy::constant(s, n, 0), n, f));
  }
}

TEST(PolicyValue, Examples) {
  const auto s = delta0_uniform();
  EXPECT_DOUBLE_EQ(policy_value(s, KernelPolicy::constant(s, 2, 1), 2, kAbsClipped), 0.5);
  EXPECT_DOUBLE_EQ(policy_value(s, KernelPolicy::constant(s, 2, 0), 2, kAbsClipped), 0.0);
}

TEST(PolicyValue, ExtractedPolicyReproducesValueBitwise) {
  support::Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    const AmbiguitySet s = support::random_set(rng);
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 10));
    const TestFunction f = support::random_pl(rng, -3, 3);
    for (Side side : {Side::kUpper, Side::kLower}) {
      const RobustResult r = robust_value(s, n, f, {}, side);
      EXPECT_EQ(policy_value(s, r.policy, n, f), r.value);
    }
    const PathEvent e = support::random_event(rng, n, 2.0 * n);
    const RobustResult c = capacity_result(s, n, e, Side::kUpper);
    EXPECT_EQ(policy_capacity(s, c.policy, n, e), c.value);
  }
}

TEST(PolicyValue, Gap) {
  const auto s = delta0_uniform();
  KernelPolicy p = KernelPolicy::constant(s, 2, 1);
  auto& lv = p.level(2);
  for (auto& g : lv.choice) g = KernelPolicy::kUnset;
  try {
    policy_value(s, p, 2, kAbsClipped);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPolicyGap);
  }
  // Unreachable gaps are allowed: under delta_0 only coordinate 0 is reached.
  KernelPolicy q = KernelPolicy::constant(s, 2, 0);
  auto& lq = q.level(2);
  for (std::int64_t c = lq.layout.lo; c <= lq.layout.hi; ++c) {
    if (c != 0) lq.choice[lq.layout.index(c, false)] = KernelPolicy::kUnset;
  }
  EXPECT_EQ(policy_value(s, q, 2, kAbsClipped), 0.0);
}

TEST(Tables, KeptOnRequest) {
  DpOptions o;
  o.keep_tables = true;
  const RobustResult r = robust_value(delta0_uniform(), 3, kAbsClipped, o);
  ASSERT_EQ(r.tables.size(), 4u);
  EXPECT_EQ(r.tables[0].level, 0u);
  EXPECT_EQ(r.tables[0].at(0), r.value);
  for (const ValueTable& t : r.tables) EXPECT_EQ(t.values.size(), t.layout.size());
}
