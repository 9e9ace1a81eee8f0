#include <gtest/gtest.h>

#include "schmearlab/error.hpp"
#include "schmearlab/limsetmap.hpp"

using namespace schmearlab;

namespace {

std::vector<SequenceFamily> fams(std::initializer_list<const char*> texts, int d) {
  std::vector<SequenceFamily> out;
  for (const char* t : texts) out.push_back(parse_family(t, 2, d));
  return out;
}

}  // namespace

TEST(Obstruction, ProductToTwisted) {
  const auto s = find_obstruction(Compactification(presets::product()), Compactification(presets::twisted()),
                                  fams({"a^n", "a^n b^{n^2}"}, 1), default_schedule(), kDefaultTol);
  ASSERT_TRUE(s.witness.has_value());
  EXPECT_EQ(s.witness->family1, "a^n");
  EXPECT_EQ(s.witness->family2, "a^n b^{n^2}");
  EXPECT_TRUE(s.witness->under_source.same);
  EXPECT_FALSE(s.witness->under_target.same);
}

TEST(Obstruction, StandardSuiteFirstPair) {
  const auto s = find_obstruction(Compactification(presets::product()), Compactification(presets::twisted()),
                                  standard_suite(1), default_schedule(), kDefaultTol);
  ASSERT_TRUE(s.witness.has_value());
  EXPECT_EQ(s.witness->first, 0u);
  EXPECT_EQ(s.witness->second, 2u);
}

TEST(Obstruction, NeverAgainstItself) {
  for (const auto& a : {presets::product(), presets::twisted(), presets::star(), presets::stretched()}) {
    const auto s = find_obstruction(Compactification(a), Compactification(a), standard_suite(1), default_schedule(),
                                    kDefaultTol);
    EXPECT_FALSE(s.witness.has_value()) << a.name();
    EXPECT_EQ(s.pairs_checked, 24u * 23u / 2u);
  }
}

TEST(Obstruction, SchmearCoordinatesBothWays) {
  const Compactification odot(presets::gamma(), presets::gamma_prime());
  const Compactification diamond(presets::gamma(), presets::diamond_f2());
  const auto four = fams({"a^n", "a^n b^{n^2}", "a^{n+n^2} b^{n^2}", "a^n (ab)^{n^2}"}, 0);
  const auto forward = find_obstruction(odot, diamond, four, default_schedule(), kDefaultTol);
  ASSERT_TRUE(forward.witness.has_value());
  EXPECT_EQ(forward.witness->family1, "a^{n+n^2} b^{n^2}");
  EXPECT_EQ(forward.witness->family2, "a^n (ab)^{n^2}");
  const auto backward = find_obstruction(diamond, odot, four, default_schedule(), kDefaultTol);
  ASSERT_TRUE(backward.witness.has_value());
  EXPECT_EQ(backward.witness->family1, "a^n");
  EXPECT_EQ(backward.witness->family2, "a^n b^{n^2}");
}

TEST(Obstruction, DirectionsAreIndependent) {
  // twisted -> product is not obstructed by this pair: the limits differ in the source
  const auto s = find_obstruction(Compactification(presets::twisted()), Compactification(presets::product()),
                                  fams({"a^n", "a^n b^{n^2}"}, 1), default_schedule(), kDefaultTol);
  EXPECT_FALSE(s.witness.has_value());
}

TEST(Obstruction, NonConvergingCandidateIsNamed) {
  try {
    find_obstruction(Compactification(presets::product()), Compactification(presets::twisted()),
                     fams({"a^n", "a^2 b"}, 1), default_schedule(), kDefaultTol);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("a^2 b"), std::string::npos);
  }
}

TEST(Equator, GammaVsGammaPrime) {
  const auto r = equator_restriction_check(Compactification(presets::gamma()), Compactification(presets::gamma_prime()),
                                           fams({"a^n", "a^n b^{n^2}", "b^n"}, 0), default_schedule(), kDefaultTol);
  EXPECT_TRUE(r.map_exists);
}

TEST(Equator, GammaVsDiamond) {
  const auto r = equator_restriction_check(Compactification(presets::gamma()), Compactification(presets::diamond_f2()),
                                           fams({"a^n", "a^n b^{n^2}"}, 0), default_schedule(), kDefaultTol);
  EXPECT_TRUE(r.map_exists);
}

TEST(Equator, ProjectsAwayTheEuclideanFactor) {
  // product and twisted agree on the equator even though the full boundaries do not
  const auto r = equator_restriction_check(Compactification(presets::product()), Compactification(presets::twisted()),
                                           fams({"a^n", "a^n b^{n^2}", "b^n"}, 1), default_schedule(), kDefaultTol);
  EXPECT_TRUE(r.map_exists);
}

TEST(Equator, RejectsVerticalCandidates) {
  EXPECT_THROW(equator_restriction_check(Compactification(presets::product()), Compactification(presets::twisted()),
                                         fams({"a^n", "a^n c^n"}, 1), default_schedule(), kDefaultTol),
               DomainError);
}

TEST(Suite, Contents) {
  EXPECT_EQ(standard_suite_text(false).size(), 6u);
  const auto full = standard_suite_text(true);
  ASSERT_EQ(full.size(), 24u);
  EXPECT_EQ(full[6], "a^n c^n");
  EXPECT_EQ(full[23], "a^{n+n^2} b^{n^2} c^{2n^2}");
  EXPECT_EQ(standard_suite(0).size(), 6u);
}
