#include <gtest/gtest.h>

#include "oracles.hpp"
#include "schmearlab/actions.hpp"
#include "schmearlab/error.hpp"

using namespace schmearlab;

namespace {

Word from(const oracle::Letters& l) { return Word::from_reduced(std::vector<Letter>(l.begin(), l.end())); }

GroupElement elem(const oracle::Letters& l, std::vector<long long> z) { return make_element(2, from(l), std::move(z)); }

oracle::Letters ab_family(long n, long k) {
  oracle::Letters w = oracle::run(1, n);
  for (long i = 0; i < k; ++i) w.push_back(2);
  return w;
}

// d(x0, g x0) for the rank-one presets, computed from letter counts:
// horizontal length from the oracle metrics, vertical part b_lift * #b + c.
long double rank_one_distance(const oracle::Letters& w, long long c, long b_lift, bool diamond,
                              const std::vector<oracle::Q2>& lengths) {
  const long double H = oracle::value(diamond ? oracle::diamond_length(w) : oracle::tree_length(w, lengths));
  long long T = c;
  for (int x : w)
    if (std::abs(x) == 2) T += b_lift * (x > 0 ? 1 : -1);
  return std::sqrt(H * H + static_cast<long double>(T) * T);
}

}  // namespace

TEST(Displacement, TwistedFamilyAtThree) {
  const Displacement d = displacement(presets::twisted(), elem(ab_family(3, 9), {0}));
  EXPECT_EQ(d.H, QuadExt(12));
  ASSERT_EQ(d.T.size(), 1u);
  EXPECT_EQ(d.T[0], QuadExt(9));
  EXPECT_EQ(d.distance_squared(), QuadExt(144 + 81));
}

TEST(Displacement, ProductIsHorizontalOnFreeFactor) {
  const Displacement d = displacement(presets::product(), elem({2}, {0}));
  EXPECT_EQ(d.H, QuadExt(1));
  EXPECT_EQ(d.T[0], QuadExt(0));
}

TEST(Displacement, PureVertical) {
  for (const auto& a : {presets::product(), presets::twisted(), presets::star(), presets::stretched()}) {
    const Displacement d = displacement(a, elem({}, {-7}));
    EXPECT_TRUE(d.H.is_zero());
    EXPECT_EQ(d.T[0], QuadExt(-7));
    EXPECT_EQ(slope_vector(d), Vec{QuadExt(0)});
  }
}

TEST(Displacement, IncompatibleGroup) {
  EXPECT_THROW(displacement(presets::twisted(), make_element(2, from({1}), {})), DomainError);
  EXPECT_THROW(displacement(presets::gamma(), make_element(3, parse_word("c", 3), {})), DomainError);
}

TEST(Displacement, MatchesCountingOracleOnBall) {
  const std::vector<oracle::Q2> unit = {{1, 0}, {1, 0}}, stretched = {{1, 0}, {2, 0}};
  struct Case {
    ActionSpec a;
    long b_lift;
    bool diamond;
    std::vector<oracle::Q2> lengths;
  };
  const std::vector<Case> cases = {{presets::product(), 0, false, unit},
                                   {presets::twisted(), 1, false, unit},
                                   {presets::stretched(), 0, false, stretched},
                                   {presets::diamond(), 0, true, unit},
                                   {presets::star(), 1, true, unit}};
  for (const auto& c : cases)
    for (const auto& w : oracle::all_reduced(2, 5))
      for (long long z : {-2LL, 0LL, 3LL}) {
        const Displacement d = displacement(c.a, elem(w, {z}));
        const long double ref = rank_one_distance(w, z, c.b_lift, c.diamond, c.lengths);
        EXPECT_NEAR(std::sqrt(to_double(d.distance_squared())), static_cast<double>(ref), 1e-12)
            << c.a.name() << " " << oracle::spell(w) << " " << z;
      }
}

TEST(SlopeVector, TwistedAtFour) {
  const Vec m = slope_vector(presets::twisted(), elem(ab_family(4, 16), {0}));
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0], QuadExt(Rational(4, 5)));
}

TEST(SlopeVector, ProductIsZero) {
  for (const auto& w : oracle::all_reduced(2, 4))
    EXPECT_EQ(slope_vector(presets::product(), elem(w, {0})), Vec{QuadExt(0)});
}

TEST(QieBounds, TwistedFreeFactorWithinRootTwo) {
  const QieBounds b = qie_bounds_check(presets::twisted(), 8, BallScope::free_factor);
  EXPECT_GE(b.lambda_low, 1.0 - 1e-12);
  EXPECT_LE(b.lambda_high, std::sqrt(2.0) + 1e-9);
  EXPECT_EQ(b.ratio_sq_low, QuadExt(1));
  // brute force in long double
  long double hi = 0;
  for (const auto& w : oracle::all_reduced(2, 8)) {
    if (w.empty()) continue;
    hi = std::max(hi, rank_one_distance(w, 0, 1, false, {{1, 0}, {1, 0}}) / w.size());
  }
  EXPECT_NEAR(b.lambda_high, static_cast<double>(hi), 1e-12);
}

TEST(QieBounds, ProductFullBall) {
  const QieBounds b = qie_bounds_check(presets::product(), 8, BallScope::full);
  EXPECT_GE(b.lambda_low, 0.707);
  EXPECT_LE(b.lambda_high, 1.0 + 1e-12);
  // d^2 = l_w^2 + l_z^2 against (l_w + l_z)^2: the minimum 1/2 sits at l_w = l_z
  EXPECT_EQ(b.ratio_sq_low, QuadExt(Rational(1, 2)));
  EXPECT_EQ(word_metric_length(b.witness_low) % 2, 0);
  EXPECT_FALSE(b.witness_low.word.empty());
}

TEST(QieBounds, RadiusLimit) {
  EXPECT_THROW(qie_bounds_check(presets::product(), 13), DomainError);
  EXPECT_THROW(qie_bounds_check(presets::product(), 0), DomainError);
}

TEST(PairFunctionals, GammaVsGammaPrime) {
  const PairFunctionals p = pair_functionals(presets::gamma(), presets::gamma_prime(), elem(ab_family(5, 25), {}));
  EXPECT_EQ(p.nu, QuadExt(Rational(11, 6)));
  EXPECT_EQ(p.M_sq, p.nu * p.nu);
}

TEST(PairFunctionals, IdenticalFactors) {
  for (const auto& w : oracle::all_reduced(2, 4)) {
    if (w.empty()) continue;
    const PairFunctionals p = pair_functionals(presets::gamma(), presets::gamma(), elem(w, {}));
    EXPECT_EQ(p.nu, QuadExt(1));
    EXPECT_EQ(p.M_sq, QuadExt(1));
  }
}

TEST(PairFunctionals, GammaVsDiamondAlternating) {
  oracle::Letters w;
  for (int i = 0; i < 6; ++i) w.insert(w.end(), {1, 2});
  const PairFunctionals p = pair_functionals(presets::gamma(), presets::diamond_f2(), elem(w, {}));
  EXPECT_EQ(p.nu, QuadExt(Rational(2, 12), Rational(11, 12)));
}

TEST(PairFunctionals, TrivialWord) {
  try {
    pair_functionals(presets::product(), presets::twisted(), elem({}, {3}));
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("nu undefined"), std::string::npos);
  }
}

TEST(ActionSpec, Validation) {
  EXPECT_THROW(ActionSpec(unit_tree(2), 2, 1, {{QuadExt(0)}, {QuadExt(1)}}, {{QuadExt(0)}}), DomainError);
  EXPECT_THROW(ActionSpec(unit_tree(2), 2, 2, {{0, 0}, {0, 0}}, {{1, 2}, {2, 4}}), DomainError);
  EXPECT_THROW(ActionSpec(unit_tree(3), 2, 0, {{}, {}}, {}), DomainError);
  EXPECT_THROW(ActionSpec(DiamondSpace{}, 3, 0, {{}, {}, {}}, {}), DomainError);
  EXPECT_NO_THROW(ActionSpec(unit_tree(2), 2, 2, {{1, 0}, {0, 1}}, {{1, 1}, {1, -1}}));
}

TEST(ActionSpec, HorizontalProjection) {
  const ActionSpec h = presets::star().horizontal_projection();
  EXPECT_EQ(h.d(), 0);
  EXPECT_EQ(h.horizontal(), presets::star().horizontal());
}
