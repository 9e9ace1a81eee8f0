#include <gtest/gtest.h>

#include "oracles.hpp"
#include "schmearlab/error.hpp"
#include "schmearlab/sequences.hpp"

using namespace schmearlab;

namespace {

SequenceFamily fam(const char* text, int d = 1) { return parse_family(text, 2, d); }

std::string spelled(const LongElement& g) { return to_string(g.word.to_word()); }

}  // namespace

TEST(ExponentPoly, EvaluateAndPrint) {
  const ExponentPoly p = ExponentPoly::monomial(1, 1) + ExponentPoly::monomial(1, 2);
  EXPECT_EQ(p(BigInt(7)), BigInt(56));
  EXPECT_EQ(p.to_string(), "n + n^2");
  EXPECT_EQ((ExponentPoly::constant(-1) + ExponentPoly::monomial(2, 2)).to_string(), "-1 + 2n^2");
  EXPECT_EQ(ExponentPoly::constant(-3).to_string(), "-3");
  EXPECT_EQ(p.degree(), 2);
  EXPECT_EQ(ExponentPoly{}.degree(), -1);
  EXPECT_THROW(ExponentPoly::monomial(1, 5), DomainError);
}

TEST(Evaluate, Examples) {
  EXPECT_EQ(spelled(fam("a^n b^{n^2}", 0).evaluate(3)), "aaabbbbbbbbb");
  EXPECT_EQ(spelled(fam("a^n (ab)^{n^2}", 0).evaluate(2)), "aaabababab");
  const LongElement g = fam("a^n b^{n^2} c^{n^2}").evaluate(2);
  EXPECT_EQ(spelled(g), "aabbbb");
  EXPECT_EQ(g.z, std::vector<BigInt>{BigInt(4)});
}

TEST(Evaluate, BelowThreshold) {
  const SequenceFamily f = fam("a^{n^2-3n}", 0);
  EXPECT_EQ(f.n0(), 3);
  EXPECT_THROW(f.evaluate(2), DomainError);
  EXPECT_EQ(spelled(f.evaluate(4)), "aaaa");
}

TEST(Evaluate, NegativeLeadingCoefficientInverts) {
  EXPECT_EQ(spelled(fam("a^n b^{-n^2}", 0).evaluate(2)), "aaBBBB");
  EXPECT_EQ(spelled(fam("(ab)^{-n}", 0).evaluate(2)), "BABA");
}

TEST(Evaluate, LengthIsSumOfBlocksWithoutCancellation) {
  // the families used for limits have no cancellation between blocks
  for (const char* text : {"a^n b^{n^2}", "a^n b^{-n^2}", "a^n (ab)^{n^2}", "a^{n+n^2} b^{n^2}", "a^n (aB)^{n^2}"}) {
    const SequenceFamily f = fam(text, 0);
    for (long long n : {5LL, 64LL, 4096LL}) {
      BigInt expected = 0;
      for (const auto& b : *f.blocks()) expected += abs(b.exponent(BigInt(static_cast<long>(n)))) * static_cast<long>(b.pattern.word.length());
      EXPECT_EQ(f.evaluate(n).word.length(), expected) << text << " n=" << n;
    }
  }
}

TEST(Evaluate, MatchesOracleOnSmallN) {
  const SequenceFamily f = fam("a^{n+1} (aB)^{n} b^{-2n} (Ab)^{n^2}", 0);
  for (long long n = 1; n <= 6; ++n) {
    oracle::Letters w = oracle::run(1, n + 1);
    w = oracle::concat(w, oracle::power({1, -2}, n));
    w = oracle::concat(w, oracle::power({2}, -2 * n));
    w = oracle::concat(w, oracle::power({-1, 2}, n * n));
    EXPECT_EQ(spelled(f.evaluate(n)), oracle::spell(w)) << n;
  }
}

TEST(Parser, SyntaxErrorsCarryColumns) {
  try {
    parse_family("a^n b^{n^", 2, 0);
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 10u);
  }
  try {
    parse_family("a^n d", 2, 1);
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.column(), 5u);
    EXPECT_NE(std::string(e.what()).find("outside F_2 x Z^1"), std::string::npos);
  }
  EXPECT_THROW(parse_family("(ab", 2, 0), SyntaxError);
  EXPECT_THROW(parse_family("a^{n^5}", 2, 0), SyntaxError);
  EXPECT_THROW(parse_family("   ", 2, 0), SyntaxError);
  EXPECT_THROW(parse_element("a^n", 2, 0), SyntaxError);
}

TEST(Parser, ListTracksLines) {
  const std::string text = "# suite\na^n\n\nb^n c^{2n^2}\n";
  const auto list = parse_family_list(text, 2, 1);
  ASSERT_EQ(list.size(), 2u);
  EXPECT_EQ(list[1].label(), "b^n c^{2n^2}");
  try {
    parse_family_list("a^n\nb^n\nb^{n?}\n", 2, 0);
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 5u);
  }
}

TEST(Parser, Elements) {
  const LongElement g = parse_element("a^4 b^16", 2, 0);
  EXPECT_EQ(g.word.length(), BigInt(20));
  const LongElement h = parse_element("(aB)^3 c^-2", 2, 1);
  EXPECT_EQ(spelled(h), "aBaBaB");
  EXPECT_EQ(h.z[0], BigInt(-2));
}

TEST(Neville, RecoversPolynomials) {
  // v(h) = 2 - 3h + 5h^2 through three points
  const std::vector<double> h = {0.5, 0.25, 0.125};
  std::vector<double> v;
  for (double x : h) v.push_back(2 - 3 * x + 5 * x * x);
  EXPECT_NEAR(extrapolate_to_zero(h, v), 2.0, 1e-12);
}

TEST(PrefixGrowth, Rule) {
  const std::vector<long long> s = {16, 32, 64, 128};
  EXPECT_TRUE(prefix_growth_holds({BigInt(16), BigInt(32), BigInt(64), BigInt(128)}, s));
  EXPECT_FALSE(prefix_growth_holds({BigInt(16), BigInt(32), BigInt(20), BigInt(128)}, s));
  EXPECT_FALSE(prefix_growth_holds({BigInt(1), BigInt(1), BigInt(1), BigInt(1)}, s));
}

TEST(Limit, TwistedSlopeOfTwistingFamily) {
  const LimitReport r = limit_in_boundary(fam("a^n b^{n^2}"), Compactification(presets::twisted()));
  ASSERT_EQ(r.status, LimitStatus::converged) << r.reason;
  ASSERT_EQ(r.m_limit.size(), 1u);
  EXPECT_NEAR(r.m_limit[0], 1.0, 1e-4);
  EXPECT_EQ(to_string(r.eta_prefix).substr(0, 16), std::string(16, 'a'));
  // oracle: closed form n^2 / (n + n^2) at the last sample
  const auto& last = r.evidence.back();
  const double n = static_cast<double>(last.n);
  EXPECT_NEAR(last.values[0], n * n / (n + n * n), 1e-15);
}

TEST(Limit, ProductLongitudeZero) {
  const LimitReport r = limit_in_boundary(fam("a^n"), Compactification(presets::product()));
  ASSERT_EQ(r.status, LimitStatus::converged);
  EXPECT_NEAR(r.m_limit[0], 0.0, 1e-12);
}

TEST(Limit, PureVerticalGoesToEuclideanBoundary) {
  for (const auto& a : {presets::product(), presets::twisted(), presets::star()}) {
    const LimitReport r = limit_in_boundary(fam("c^n"), Compactification(a));
    ASSERT_EQ(r.status, LimitStatus::diverged_to_dE);
    EXPECT_NEAR(r.direction[0], 1.0, 1e-12);
  }
  const LimitReport down = limit_in_boundary(fam("c^{-n^2}"), Compactification(presets::product()));
  EXPECT_NEAR(down.direction[0], -1.0, 1e-12);
}

TEST(Limit, AbelianDominatedFamilyGoesToEuclideanBoundary) {
  const LimitReport r = limit_in_boundary(fam("a^n c^{n^2}"), Compactification(presets::twisted()));
  EXPECT_EQ(r.status, LimitStatus::diverged_to_dE);
  EXPECT_NEAR(r.direction[0], 1.0, 1e-9);
}

TEST(Limit, BoundedFamily) {
  const LimitReport bounded = limit_in_boundary(fam("a^3 b"), Compactification(presets::twisted()));
  EXPECT_EQ(bounded.status, LimitStatus::not_cauchy);
  EXPECT_EQ(bounded.reason, "orbit points stay bounded");
}

TEST(Limit, SlopeThatHasNotSettled) {
  // m = n^2 / (n^2 + 10^4 n) is still far from 1 at n <= 2^7
  const LimitReport r = limit_in_boundary(fam("a^{10000n} b^{n^2} c^{n^2}"), Compactification(presets::product()),
                                          {16, 32, 64, 128}, 1e-6);
  EXPECT_EQ(r.status, LimitStatus::not_cauchy);
  EXPECT_NE(r.reason.find("do not settle"), std::string::npos);
}

TEST(Limit, ScheduleValidation) {
  const auto c = Compactification(presets::product());
  EXPECT_THROW(limit_in_boundary(fam("a^n"), c, {16, 32, 64}), DomainError);
  EXPECT_THROW(limit_in_boundary(fam("a^n"), c, {16, 32, 32, 64}), DomainError);
  EXPECT_THROW(limit_in_boundary(fam("a^n"), c, {16, 32, 64, 128}, 0.0), DomainError);
  EXPECT_THROW(limit_in_boundary(fam("a^n", 0), c), DomainError);
}

TEST(Limit, DoublingScheduleTopIsSelfConsistent) {
  std::vector<long long> longer = default_schedule();
  longer.push_back(1LL << 13);
  for (const char* text : {"a^n b^{n^2}", "a^n b^{n^2} c^{n^2}", "a^{n+n^2} b^{n^2} c^n", "a^n (ab)^{n^2} c^{2n^2}"}) {
    for (const auto& a : {presets::twisted(), presets::star(), presets::stretched()}) {
      const LimitReport r1 = limit_in_boundary(fam(text), Compactification(a));
      const LimitReport r2 = limit_in_boundary(fam(text), Compactification(a), longer);
      ASSERT_EQ(r1.status, LimitStatus::converged) << text;
      EXPECT_LT(std::fabs(r1.m_limit[0] - r2.m_limit[0]), kDefaultTol / 2) << text << " " << a.name();
    }
  }
}

TEST(SameLimit, TwistingExamples) {
  const auto a_n = fam("a^n"), twist = fam("a^n b^{n^2}");
  EXPECT_TRUE(same_limit(a_n, twist, Compactification(presets::product())).same);
  EXPECT_FALSE(same_limit(a_n, twist, Compactification(presets::twisted())).same);
  EXPECT_TRUE(same_limit(fam("a^n c^n"), fam("a^n b^{n^2} c^{n^2}"), Compactification(presets::product())).same);
}

TEST(SameLimit, SymmetricAndReflexive) {
  const std::vector<SequenceFamily> fams = {fam("a^n"), fam("b^n"), fam("a^n b^{n^2}"), fam("a^n c^n"),
                                            fam("c^n"), fam("a^n b^{-n^2} c^{n^2}")};
  const Compactification c(presets::twisted());
  for (std::size_t i = 0; i < fams.size(); ++i) {
    EXPECT_TRUE(same_limit(fams[i], fams[i], c).same) << fams[i].label();
    for (std::size_t j = i + 1; j < fams.size(); ++j)
      EXPECT_EQ(same_limit(fams[i], fams[j], c).same, same_limit(fams[j], fams[i], c).same)
          << fams[i].label() << " / " << fams[j].label();
  }
}

TEST(SameLimit, InconclusiveWhenNotConverging) {
  try {
    same_limit(fam("a^3"), fam("a^n"), Compactification(presets::product()));
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("inconclusive", 0), 0u);
  }
}

TEST(Compactification, PairNamesAndProjection) {
  const Compactification c(presets::product(), presets::star());
  EXPECT_TRUE(c.is_pair());
  EXPECT_EQ(c.name(), "(product, star)");
  EXPECT_EQ(c.horizontal_projection().d(), 0);
  EXPECT_THROW(Compactification(presets::product(), presets::gamma()), DomainError);
}

TEST(Parallel, WorkerCountFromEnvironment) {
  setenv("SCHMEARLAB_THREADS", "3", 1);
  EXPECT_EQ(worker_count(), 3u);
  setenv("SCHMEARLAB_THREADS", "1", 1);
  std::vector<int> out(50, 0);
  parallel_for(out.size(), [&](std::size_t i) { out[i] = static_cast<int>(i * i); });
  for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], static_cast<int>(i * i));
  unsetenv("SCHMEARLAB_THREADS");
  EXPECT_THROW(parallel_for(4, [](std::size_t i) {
                 if (i == 2) throw DomainError("boom");
               }),
               DomainError);
}
