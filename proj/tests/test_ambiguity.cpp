#include <gtest/gtest.h>

#include "sublinear/ambiguity.hpp"
#include "sublinear/error.hpp"
#include "support.hpp"

using namespace sublinear;

namespace {

ErrorCode code_of(const RawAmbiguitySet& raw) {
  try {
    validate_ambiguity_set(raw);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::kConfig;
}

AmbiguitySet two_point_set() {
  return make_ambiguity_set({}, {make_distribution({{-1, 0.5}, {1, 0.5}}),
                                 make_distribution({{-1, 0.25}, {1, 0.75}})});
}

}  // namespace

TEST(Validate, AcceptsValidSets) {
  const AmbiguitySet a = validate_ambiguity_set({1.0, {{{0.0, 1.0}}}});
  EXPECT_EQ(a.size(), 1u);
  EXPECT_EQ(a.generator(0).atoms()[0].coord, 0);
  const AmbiguitySet b = validate_ambiguity_set({1.0, {{{1.0, 0.5}, {-1.0, 0.5}}}});
  ASSERT_EQ(b.generator(0).size(), 2u);
  EXPECT_EQ(b.generator(0).atoms()[0].coord, -1);
}

TEST(Validate, CoalescesDuplicates) {
  const AmbiguitySet a = validate_ambiguity_set({0.5, {{{1.0, 0.25}, {1.0, 0.25}, {0.5, 0.5}}}});
  ASSERT_EQ(a.generator(0).size(), 2u);
  EXPECT_EQ(a.generator(0).atoms()[1].coord, 2);
  EXPECT_EQ(a.generator(0).atoms()[1].weight, 0.5);
}

TEST(Validate, Errors) {
  EXPECT_EQ(code_of({1.0, {{{0.0, 0.5}, {2.0, 0.49}}}}), ErrorCode::kWeightSum);
  EXPECT_EQ(code_of({1.0, {{{0.0, 1.5}, {2.0, -0.5}}}}), ErrorCode::kNegativeWeight);
  EXPECT_EQ(code_of({1.0, {{{0.5, 1.0}}}}), ErrorCode::kOffLattice);
  EXPECT_EQ(code_of({1.0, {}}), ErrorCode::kEmptySet);
  EXPECT_EQ(code_of({1.0, {{}}}), ErrorCode::kWeightSum);  // an atomless generator sums to 0
  EXPECT_EQ(code_of({0.0, {{{0.0, 1.0}}}}), ErrorCode::kBadLattice);
}

TEST(Validate, MessageNamesGenerator) {
  try {
    validate_ambiguity_set({1.0, {{{0.0, 1.0}}, {{0.0, 0.5}, {2.0, 0.49}}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(e.detail().find("generators[1]"), std::string::npos) << e.detail();
  }
}

TEST(LinearExpect, Examples) {
  EXPECT_EQ(linear_expect(make_distribution({{-1, 0.5}, {1, 0.5}}), TestFunction::identity()), 0.0);
  EXPECT_EQ(linear_expect(make_distribution({{0, 0.5}, {2, 0.5}}), TestFunction::identity()), 1.0);
  EXPECT_EQ(linear_expect(point_mass(5), TestFunction::square()), 25.0);
}

TEST(SublinearExpect, Examples) {
  const auto s = make_ambiguity_set({}, {point_mass(0), make_distribution({{-1, 0.5}, {1, 0.5}})});
  const SublinearValue v = sublinear_expect(s, TestFunction::square());
  EXPECT_EQ(v.upper, 1.0);
  EXPECT_EQ(v.argmax_upper, 1u);
  EXPECT_EQ(v.lower, 0.0);

  const SublinearValue w = sublinear_expect(two_point_set(), TestFunction::identity());
  EXPECT_EQ(w.upper, 0.5);
  EXPECT_EQ(w.lower, 0.0);

  const SublinearValue c = sublinear_expect(two_point_set(), TestFunction::constant(3.25));
  EXPECT_EQ(c.upper, 3.25);
  EXPECT_EQ(c.lower, 3.25);
}

TEST(SublinearExpect, TiesGoToLowestIndex) {
  const auto s = make_ambiguity_set({}, {point_mass(1), point_mass(-1), point_mass(1)});
  const SublinearValue v = sublinear_expect(s, TestFunction::abs());
  EXPECT_EQ(v.argmax_upper, 0u);
  EXPECT_EQ(v.argmin_lower, 0u);
}

TEST(SublinearExpect, LatticeStepScalesPoints) {
  const auto a = validate_ambiguity_set({0.25, {{{-0.5, 0.5}, {0.75, 0.5}}}});
  EXPECT_DOUBLE_EQ(sublinear_expect(a, TestFunction::identity()).upper, 0.125);
}

TEST(SublinearExpect, UnboundedEval) {
  const auto s = make_ambiguity_set({}, {point_mass(0)});
  const auto f = TestFunction::piecewise_linear({{0, 1e308}, {1, -1e308}});
  EXPECT_NO_THROW(sublinear_expect(s, f));
  const auto big = make_ambiguity_set({1e200}, {point_mass(1, {1e200})});
  EXPECT_THROW(sublinear_expect(big, TestFunction::square()), Error);
}

TEST(SublinearExpect, RandomizedProperties) {
  support::Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const AmbiguitySet s = support::random_set(rng, 4, 4, 5);
    const TestFunction f = support::random_pl(rng, -5, 5);
    const SublinearValue v = sublinear_expect(s, f);
    EXPECT_LE(v.lower, v.upper);
    EXPECT_EQ(v.upper, linear_expect(s.generator(v.argmax_upper), f));
    EXPECT_EQ(v.lower, -sublinear_expect(s, f.negated()).upper);
    for (const auto& g : s.generators()) {
      const double e = linear_expect(g, f);
      EXPECT_LE(v.lower, e);
      EXPECT_LE(e, v.upper);
    }
  }
}
