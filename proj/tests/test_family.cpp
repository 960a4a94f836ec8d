#include <gtest/gtest.h>

#include <cmath>

#include "sublinear/error.hpp"
#include "sublinear/family.hpp"

using namespace sublinear;

namespace {

ParametricFamily exm3(std::size_t n) { return {ParametricFamily::Name::kExm3, n}; }
ParametricFamily heavy(std::size_t k) { return {ParametricFamily::Name::kHeavy, k}; }

}  // namespace

TEST(Family, ExactNormalization) {
  for (std::size_t i = 1; i <= 300; ++i) {
    for (const ParametricFamily& f : {exm3(300), heavy(300)}) {
      const RationalDistribution d = f.exact_generator(i);
      std::int64_t total = 0;
      for (const RationalAtom& a : d.atoms) {
        EXPECT_GT(a.numerator, 0);
        total += a.numerator;
      }
      EXPECT_EQ(total, d.denominator);
    }
  }
}

TEST(Family, GeneratorShapes) {
  const auto e1 = exm3(5).generator(1);
  ASSERT_EQ(e1.size(), 1u);
  EXPECT_EQ(e1.atoms()[0].coord, 1);

  // EXM3 index 2: atom 1 has 1 - 1/4, atoms 2 and 4 have 1/8 each.
  const auto e2 = exm3(5).generator(2);
  ASSERT_EQ(e2.size(), 3u);
  EXPECT_EQ(e2.atoms()[0].coord, 1);
  EXPECT_DOUBLE_EQ(e2.atoms()[0].weight, 0.75);
  EXPECT_DOUBLE_EQ(e2.atoms()[1].weight, 0.125);
  EXPECT_EQ(e2.atoms()[2].coord, 4);

  const auto h1 = heavy(5).generator(1);
  ASSERT_EQ(h1.size(), 1u);
  EXPECT_EQ(h1.atoms()[0].coord, 1);
  const auto h4 = heavy(5).generator(4);
  ASSERT_EQ(h4.size(), 2u);
  EXPECT_DOUBLE_EQ(h4.atoms()[0].weight, 0.75);
  EXPECT_EQ(h4.atoms()[1].coord, 4);

  EXPECT_THROW(exm3(5).generator(6), Error);
  EXPECT_THROW(exm3(5).generator(0), Error);
  EXPECT_THROW(ParametricFamily(ParametricFamily::Name::kHeavy, 0), Error);
}

TEST(Family, HeavyMeanIsOneEverywhere) {
  for (std::size_t k : {1u, 2u, 10u, 500u}) {
    const FamilyExpectation e = family_expect(heavy(k), TestFunction::identity());
    EXPECT_EQ(e.value, 1.0);
    EXPECT_EQ(e.lower, 1.0);
  }
}

TEST(Family, Exm3PsiExample) {
  EXPECT_DOUBLE_EQ(family_expect(exm3(3), TestFunction::psi(2)).value, 0.5);
}

TEST(Family, Exm3ExcessNearHalf) {
  const FamilyExpectation e = family_expect(exm3(10'000), TestFunction::excess_abs(100));
  EXPECT_NEAR(e.value, 0.5, 0.02);
  EXPECT_GT(e.argmax, 300u);
  EXPECT_LT(e.argmax, 500u);
}

TEST(Family, FastPathMatchesDirectSum) {
  const ParametricFamily f = exm3(400);
  for (const TestFunction& fn :
       {TestFunction::psi(7), TestFunction::clamp(13), TestFunction::clamped_square(9),
        TestFunction::tent(30, 12), TestFunction::piecewise_linear({{0, 2}, {50, -1}, {90, 0.5}}),
        TestFunction::excess_abs(20)}) {
    for (std::size_t i : {1u, 2u, 3u, 17u, 100u, 399u}) {
      EXPECT_NEAR(f.expect(i, fn), linear_expect(f.generator(i), fn), 1e-12)
          << fn.describe() << " index " << i;
    }
  }
}

TEST(Family, TailMassMatchesDirectCount) {
  for (const ParametricFamily& f : {exm3(60), heavy(60)}) {
    for (std::size_t i = 1; i <= 60; i += 7) {
      for (double a : {0.0, 0.5, 1.0, 2.0, 7.0, 30.0, 60.0, 61.0, 4000.0}) {
        double direct = 0.0;
        const DiscreteDistribution g = f.generator(i);
        for (const Atom& at : g.atoms()) {
          if (std::fabs(static_cast<double>(at.coord)) >= a) direct += at.weight;
        }
        EXPECT_NEAR(f.tail_mass(i, a).to_double(), direct, 1e-14) << i << " " << a;
      }
    }
  }
}

TEST(Family, ExpectationMonotoneInTruncation) {
  const TestFunction fn = TestFunction::psi(10);
  double prev = -1.0;
  for (std::size_t n : {5u, 10u, 20u, 40u, 80u}) {
    const double v = family_expect(exm3(n), fn).value;
    EXPECT_GE(v, prev);
    prev = v;
  }
}

TEST(Family, HeavyTailCapacityIsOneOverN) {
  for (std::size_t n = 1; n <= 100; ++n) {
    const Rational r = family_tail_capacity(heavy(100), static_cast<double>(n));
    EXPECT_EQ(r.times(static_cast<std::int64_t>(n)), 1.0) << n;
  }
}

TEST(Family, TruncationTooSmall) {
  try {
    family_expect(exm3(50), TestFunction::excess_abs(100));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTruncationTooSmall);
  }
}

TEST(Family, ParseNames) {
  EXPECT_EQ(parse_family_name("EXM3"), ParametricFamily::Name::kExm3);
  EXPECT_EQ(parse_family_name("heavy"), ParametricFamily::Name::kHeavy);
  EXPECT_FALSE(parse_family_name("cauchy"));
}
