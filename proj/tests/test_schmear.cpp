#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "schmearlab/error.hpp"
#include "schmearlab/schmear.hpp"

using namespace schmearlab;

namespace {

SequenceFamily fam(const char* text, int d) { return parse_family(text, 2, d); }

const double kR2 = std::sqrt(2.0);

}  // namespace

TEST(SampleSchmear, GammaVsGammaPrime) {
  const auto pts = sample_schmear(presets::gamma(), presets::gamma_prime(), 6);
  // every nontrivial word of length <= 6 exactly once
  EXPECT_EQ(pts.size(), oracle::all_reduced(2, 6).size() - 1);
  for (const auto& p : pts) {
    EXPECT_TRUE(p.m1.empty());
    EXPECT_TRUE(p.m2.empty());
    // oracle: l(w) / (#a + 2 #b)
    const auto w = p.eta_prefix.letters();
    double a = 0, b = 0;
    for (int x : w) (std::abs(x) == 1 ? a : b) += 1;
    EXPECT_NEAR(p.nu_inv, (a + b) / (a + 2 * b), 1e-15);
    EXPECT_GE(p.nu_inv, 0.5);
    EXPECT_LE(p.nu_inv, 1.0);
  }
  const SlopeBounds b = slope_bounds(pts);
  EXPECT_DOUBLE_EQ(b.nu_inv_min, 0.5);
  EXPECT_DOUBLE_EQ(b.nu_inv_max, 1.0);
  EXPECT_DOUBLE_EQ(b.lambda_est, 2.0);
}

TEST(SampleSchmear, IdenticalActions) {
  const auto pts = sample_schmear(presets::twisted(), presets::twisted(), 5);
  for (const auto& p : pts) {
    EXPECT_EQ(p.nu_inv, 1.0);
    EXPECT_EQ(p.M, 1.0);
  }
  EXPECT_EQ(slope_bounds(pts).lambda_est, 1.0);
}

TEST(SampleSchmear, GammaVsDiamondExtremes) {
  const auto pts = sample_schmear(presets::gamma(), presets::diamond_f2(), 10);
  double lo = 10, hi = 0;
  for (const auto& w : oracle::all_reduced(2, 10)) {
    if (w.empty()) continue;
    const double r = static_cast<double>(w.size() / oracle::value(oracle::diamond_length(w)));
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  const SlopeBounds b = slope_bounds(pts);
  EXPECT_NEAR(b.nu_inv_min, lo, 1e-15);
  EXPECT_NEAR(b.nu_inv_max, hi, 1e-15);
  // repeated letters give 1/2; alternating words approach 1/r2 from below
  EXPECT_NEAR(lo, 0.5, 1e-15);
  EXPECT_LT(hi, 1 / kR2);
  EXPECT_GT(hi, 1 / kR2 - 0.03);
  EXPECT_DOUBLE_EQ(b.lambda_est, 2.0);
}

TEST(SampleSchmear, VerticalBudgetAndOrder) {
  const auto pts = sample_schmear(presets::product(), presets::star(), 3);
  // words of length w with |c| <= 3 - w: 4*(5) + 12*(3) + 36*(1)
  EXPECT_EQ(pts.size(), 4u * 5 + 12u * 3 + 36u);
  EXPECT_EQ(to_string(pts.front().source), "<a, (-2)>");
  for (const auto& p : pts) {
    EXPECT_EQ(p.eta_prefix, p.source.word);
    EXPECT_GT(p.nu_inv, 0);
  }
}

TEST(SampleSchmear, NuWithinLambda) {
  const auto pts = sample_schmear(presets::twisted(), presets::star(), 6);
  const SlopeBounds b = slope_bounds(pts);
  for (const auto& p : pts) {
    EXPECT_GE(p.nu_inv, 1 / b.lambda_est - 1e-12);
    EXPECT_LE(p.nu_inv, b.lambda_est + 1e-12);
  }
}

TEST(SampleSchmear, Preconditions) {
  EXPECT_THROW(sample_schmear(presets::gamma(), presets::gamma_prime(), 13), DomainError);
  EXPECT_THROW(sample_schmear(presets::gamma(), presets::twisted(), 3), DomainError);
  EXPECT_THROW(slope_bounds({}), DomainError);
}

TEST(Averaging, LongitudeMidpoint) {
  const auto res = average_families(fam("a^n b^{n^2}", 1), fam("a^n b^{-n^2}", 1), presets::product(),
                                    presets::star());
  const auto& r = res.report;
  EXPECT_TRUE(r.all_pass);
  ASSERT_EQ(r.checks.size(), 7u);
  EXPECT_NEAR(r.limit_a.m2_limit[0], 0.5, 1e-4);
  EXPECT_NEAR(r.limit_b.m2_limit[0], -0.5, 1e-4);
  EXPECT_NEAR(r.checks[5].measured[0], 0.0, 0.02);
  EXPECT_EQ(res.fam_c.label(), "avg(a^n b^{n^2}, a^n b^{-n^2})");
}

TEST(Averaging, InverseNuMidpoint) {
  const auto res = average_families(fam("a^n b^{n^2}", 1), fam("a^n (ab)^{n^2}", 1), presets::product(),
                                    presets::star());
  // closed forms: nu = 2 for b-blocks, nu = r2 for (ab)-blocks
  const double expected = (0.5 + 1 / kR2) / 2;
  EXPECT_NEAR(res.report.checks[6].expected[0], expected, 1e-4);
  EXPECT_NEAR(res.report.checks[6].measured[0], expected, 0.01 * expected);
  EXPECT_TRUE(res.report.all_pass);
}

TEST(Averaging, Idempotent) {
  const auto f = fam("a^n (ab)^{n^2}", 1);
  const auto res = average_families(f, f, presets::product(), presets::star());
  EXPECT_TRUE(res.report.all_pass);
  const LimitReport lc = limit_in_boundary(res.fam_c, Compactification(presets::product(), presets::star()));
  ASSERT_EQ(lc.status, LimitStatus::converged) << lc.reason;
  EXPECT_NEAR(lc.m2_limit[0], res.report.limit_a.m2_limit[0], 1e-3);
  EXPECT_NEAR(lc.nu_limit, res.report.limit_a.nu_limit, 1e-3);
}

TEST(Averaging, CrossAssignedFloors) {
  const auto res = average_families(fam("a^n b^{n^2}", 1), fam("a^n (ab)^{n^2}", 1), presets::product(),
                                    presets::star());
  // s = floor H2(w_n) with w_n the second family's straightened word at n = 4096
  const double n = 4096;
  const double h2_second = 2 + 2 * n + kR2 * (2 * n * n - 1);  // a^{n+1} b (ab)^{n^2-1}
  EXPECT_NEAR(res.report.s_n.get_d(), std::floor(h2_second), 1.0);
  const double h2_first = 2 + 2 * (n - 1) + 2 * (n * n - 1) + kR2;
  EXPECT_NEAR(res.report.t_n.get_d(), std::floor(h2_first), 1.0);
}

TEST(Averaging, RequiresCommonFiber) {
  try {
    average_families(fam("a^n", 1), fam("b^n", 1), presets::product(), presets::star());
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("not in a common fiber"), std::string::npos);
  }
  try {
    average_families(fam("a^n", 1), fam("a^n b^{n^2}", 1), presets::twisted(), presets::star());
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("not in a common fiber"), std::string::npos);
  }
}

TEST(Convexity, ThreeDimensionalFiber) {
  std::vector<SequenceFamily> seeds = {fam("a^n b^{-n^2}", 1), fam("a^n b^{n^2}", 1), fam("a^n (aB)^{n^2}", 1),
                                       fam("a^n (ab)^{n^2}", 1)};
  const ConvexityReport r = fiber_convexity_check(presets::product(), presets::star(), seeds, 2, 1e-2);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.points.size(), 6u * 3u);
  EXPECT_EQ(r.hull_dimension, 2);
  EXPECT_LT(r.max_deviation, 1e-2);
}

TEST(Convexity, FreeGroupInterval) {
  const ConvexityReport r = fiber_convexity_check(presets::gamma(), presets::gamma_prime(),
                                                  {fam("a^n", 0), fam("a^n b^{n^2}", 0)}, 3, 1e-2);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.hull_dimension, 1);
  for (const auto& p : r.points) {
    EXPECT_GE(p.nu_inv, 0.5 - 1e-3);
    EXPECT_LE(p.nu_inv, 1.0 + 1e-3);
    EXPECT_NEAR(p.nu_inv, 1 - p.t / 2, 1e-2);
  }
}

TEST(Convexity, SingleSeed) {
  const ConvexityReport r = fiber_convexity_check(presets::gamma(), presets::gamma_prime(), {fam("a^n", 0)}, 3, 1e-2);
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(r.points.empty());
  EXPECT_EQ(r.hull_dimension, 0);
}

TEST(AffineDimension, Basics) {
  EXPECT_EQ(affine_dimension({{0, 0}}), 0);
  EXPECT_EQ(affine_dimension({{0, 0}, {1, 1}, {2, 2}}), 1);
  EXPECT_EQ(affine_dimension({{0, 0}, {1, 0}, {0, 1}, {1, 1}}), 2);
  EXPECT_EQ(affine_dimension({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), 3);
}
