#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sturmbeta/beta.hpp"
#include "sturmbeta/errors.hpp"
#include "support/oracles.hpp"

using namespace sturmbeta;

namespace {

Slope golden() { return Slope::parse("surd:(3-1*sqrt(5))/2"); }

const char* kFibBeta = "1.56930525755644108241833347992";

}  // namespace

TEST(Beta, GoldenMeanIsExactForEleven) {
  BetaNumber tau = solve_beta(DigitWord::finite({1, 1}));
  EXPECT_EQ(tau.kind(), BetaNumber::Kind::kExact);
  EXPECT_EQ(tau.floor(), 1);
  EXPECT_TRUE(tau.value_at(200).overlaps(RealBall::from_decimal("1.6180339887498948482045868343656", "1e-30")));
  EXPECT_EQ(tau.expansion_of_one().prefix_string(6), "110000");
  auto s1 = t_beta_step(tau, RealBall(1L));
  EXPECT_EQ(s1.first, 1);
  // T(1) = 1/tau and tau * (1/tau) = 1 is a jump of T; a ball cannot pick a side.
  EXPECT_THROW(t_beta_step(tau, s1.second), PrecisionExhausted);
  EXPECT_EQ(to_string(d_beta(tau, QuadraticNumber(1), 4)), "1100");
}

TEST(Beta, IntegerBeta) {
  BetaNumber two = solve_beta(DigitWord::finite({2}));
  EXPECT_TRUE(two.is_integer());
  EXPECT_EQ(two.expansion_of_one().prefix_string(4), "2000");
  EXPECT_EQ(to_string(d_beta(two, RealBall::from_rational(mpq_class(1, 3)), 8)), "01010101");
  EXPECT_EQ(to_string(d_beta(two, QuadraticNumber(mpq_class(1, 3)), 8)), "01010101");
  EXPECT_EQ(orbit(two, 3).digits, (Word{2, 0, 0}));
}

TEST(Beta, ExactOrbitsFindStructure) {
  // tau^2 = (3 + sqrt 5)/2: 1 -> 2 + 1/tau, then 1/tau repeats with digit 1.
  BetaNumber t2 = BetaNumber::exact(QuadraticNumber::surd(3, 1, 5, 2));
  auto e = t2.expansion_of_one();
  ASSERT_TRUE(e.structure());
  EXPECT_EQ(to_string(e.structure()->preperiod), "2");
  EXPECT_EQ(to_string(e.structure()->period), "1");
  EXPECT_EQ(classify(t2, 200).verdict, ClassVerdict::kC2Detected);
  // 1 + sqrt 2: x^2 = 2x + 1 so d(1) = 21.
  BetaNumber s2 = BetaNumber::exact(QuadraticNumber::surd(1, 1, 2, 1));
  ASSERT_TRUE(s2.expansion_of_one().finite_digits());
  EXPECT_EQ(to_string(*s2.expansion_of_one().finite_digits()), "21");
  EXPECT_EQ(classify(s2, 200).verdict, ClassVerdict::kC1Detected);
}

TEST(Beta, ParseForms) {
  EXPECT_TRUE(BetaNumber::parse("int:3").is_integer());
  EXPECT_EQ(BetaNumber::parse("rat:7/2").floor(), 3);
  BetaNumber g = BetaNumber::parse("surd:(1+1*sqrt(5))/2");
  EXPECT_EQ(g.floor(), 1);
  EXPECT_EQ(g.expansion_of_one().prefix_string(3), "110");
  BetaNumber b = BetaNumber::parse("dec:1.6180339887498948482~1e-19");
  EXPECT_EQ(b.kind(), BetaNumber::Kind::kBall);
  EXPECT_EQ(b.expansion_of_one().prefix_string(1), "1");
  // The second digit sits on a discontinuity; a ball cannot decide it.
  EXPECT_THROW(b.expansion_of_one().prefix(2), PrecisionExhausted);
  EXPECT_THROW(BetaNumber::parse("nonsense"), ParseError);
  EXPECT_THROW(BetaNumber::parse("dec:2.0~0.5"), PreconditionError);
}

TEST(Beta, FibonacciSturmianValue) {
  SolveOptions opt;
  opt.bits = 256;
  BetaNumber beta = sturmian_beta(golden(), 0, 1, opt);
  EXPECT_EQ(beta.kind(), BetaNumber::Kind::kSolved);
  EXPECT_LT(beta.value().radius_log2(), -256);
  EXPECT_TRUE(beta.value().overlaps(RealBall::from_decimal(kFibBeta, "1e-29")));
  Word w = oracle::surd_upper_mechanical(3, -1, 5, 2, 400);
  EXPECT_EQ(w, sturmian_word(golden(), 0, 1).prefix(400));
  const long double ref = oracle::naive_root(w, 1.0L, 2.0L);
  EXPECT_NEAR(static_cast<double>(ref), beta.value().midpoint_double(), 1e-15);
  EXPECT_GE(beta.verified_depth(), 1000u);
}

TEST(Beta, ExampleFiveWord) {
  BetaNumber beta = sturmian_beta(golden(), 1, 3);
  EXPECT_EQ(beta.floor(), 3);
  EXPECT_EQ(beta.expansion_of_one().prefix_string(27), "313113131131131311313113113");
  Word w = sturmian_word(golden(), 1, 3).prefix(300);
  EXPECT_NEAR(static_cast<double>(oracle::naive_root(w, 3.0L, 4.0L)), beta.value().midpoint_double(), 1e-14);
  EXPECT_NEAR(beta.value().midpoint_double(), 3.55375741028075997, 1e-14);
}

TEST(Beta, ExpansionOfOneMinusInverse) {
  BetaNumber beta = sturmian_beta(golden(), 0, 1);
  BetaPoint p = [](const RealBall& b, unsigned bits) { return RealBall(1L, bits) - b.reciprocal(); };
  EXPECT_EQ(to_string(d_beta(beta, p, 26)), "00100101001001010010100100");
}

TEST(Beta, RoundTripToTwoThousandDigits) {
  SolveOptions opt;
  opt.verification_depth = 2000;
  for (const char* a : {"surd:(3-1*sqrt(5))/2", "surd:(-1+1*sqrt(2))", "surd:(-1+1*sqrt(3))/2"}) {
    for (auto [lo, hi] : {std::pair<Digit, Digit>{0, 1}, {1, 3}}) {
      DigitWord s = sturmian_word(Slope::parse(a), lo, hi);
      BetaNumber beta = solve_beta(s, opt);
      BetaPoint one = [](const RealBall&, unsigned bits) { return RealBall(1L, bits); };
      EXPECT_EQ(d_beta(beta, one, 2000), s.prefix(2000)) << a << " " << int(lo) << int(hi);
      EXPECT_GE(beta.verified_depth(), 2000u);
    }
  }
}

TEST(Beta, RejectsWordsThatAreNotExpansions) {
  EXPECT_THROW(solve_beta(DigitWord::periodic({}, {1, 0})), NotExpansionOfOne);
  EXPECT_THROW(solve_beta(DigitWord::finite({0, 1})), NotExpansionOfOne);
  EXPECT_THROW(solve_beta(DigitWord::finite({1, 2})), NotExpansionOfOne);
  EXPECT_THROW(solve_beta(DigitWord::finite({1, 0, 1, 1})), NotExpansionOfOne);
}

TEST(Beta, ExpansionCheckVerdicts) {
  EXPECT_EQ(is_expansion_of_one(DigitWord::finite({1, 1}), 50).verdict, ExpansionVerdict::kHolds);
  auto c = is_expansion_of_one(DigitWord::periodic({}, {1, 0}), 50);
  EXPECT_EQ(c.verdict, ExpansionVerdict::kNotStrict);
  EXPECT_EQ(c.at, 2u);
  EXPECT_EQ(is_expansion_of_one(DigitWord::finite({1, 0, 1, 1}), 50).verdict, ExpansionVerdict::kFails);
  EXPECT_EQ(quasi_greedy({1, 1}).prefix_string(6), "101010");
  EXPECT_EQ(quasi_greedy({2, 0, 1}).prefix_string(6), "200200");
}

// Exhaustive comparison for beta = golden mean: each word of length <= 12
// against two references (suffix-by-suffix comparison with (10)^inf, and the
// value of every suffix staying below 1).
TEST(Beta, ParryAdmissibilityAtGoldenMean) {
  BetaNumber tau = solve_beta(DigitWord::finite({1, 1}));
  const double t = (1 + std::sqrt(5.0)) / 2;
  for (std::size_t len = 1; len <= 12; ++len) {
    for (unsigned mask = 0; mask < (1u << len); ++mask) {
      Word w(len);
      for (std::size_t i = 0; i < len; ++i) w[i] = (mask >> (len - 1 - i)) & 1;
      bool lex_ok = true;
      bool value_ok = true;
      for (std::size_t n = 0; n < len; ++n) {
        for (std::size_t k = 0; n + k < len + 2; ++k) {
          const Digit x = n + k < len ? w[n + k] : 0;
          const Digit y = (k % 2 == 0) ? 1 : 0;
          if (x != y) {
            if (x > y) lex_ok = false;
            break;
          }
        }
        double v = 0, p = 1 / t;
        for (std::size_t k = n; k < len; ++k, p /= t) v += w[k] * p;
        if (v >= 1 - 1e-12) value_ok = false;
      }
      ASSERT_EQ(lex_ok, value_ok) << to_string(w);
      ASSERT_EQ(is_admissible(w, tau).admissible, lex_ok) << to_string(w);
    }
  }
}

TEST(Beta, AdmissibilityAgainstInfiniteExpansion) {
  BetaNumber beta = sturmian_beta(golden(), 0, 1);
  // The expansion itself and every shift are admissible.
  EXPECT_TRUE(is_admissible(beta.expansion_of_one(), beta, 200).admissible);
  EXPECT_TRUE(is_admissible(beta.expansion_of_one().shifted(7), beta, 200).admissible);
  auto bad = is_admissible(Word{1, 0, 1, 1}, beta);
  EXPECT_FALSE(bad.admissible);
  ASSERT_TRUE(bad.rejected_at);
  EXPECT_EQ(*bad.rejected_at, 0u);
  auto late = is_admissible(Word{0, 0, 1, 1}, beta);
  EXPECT_FALSE(late.admissible);
  EXPECT_EQ(*late.rejected_at, 2u);
}

TEST(Beta, OrbitConfinedForMaximalSturmian) {
  for (auto [a, b] : {std::pair<Digit, Digit>{0, 1}, {2, 3}}) {
    BetaNumber beta = sturmian_beta(golden(), a, b);
    OrbitRecord rec = orbit(beta, 2000);
    RealBall lower = RealBall(1L) - beta.value().reciprocal();
    for (std::size_t i = 0; i < rec.points.size(); ++i) {
      ASSERT_FALSE(rec.points[i].certainly_less(lower)) << i;
      ASSERT_FALSE(rec.points[i].certainly_greater(RealBall(1L))) << i;
      ASSERT_LT(rec.points[i].radius_log2(), -100);
    }
    EXPECT_EQ(rec.digits, beta.expansion_of_one().prefix(2000));
    RealBall diam = diam_estimate(rec);
    RealBall inv = beta.value().reciprocal();
    EXPECT_FALSE(diam.certainly_greater(inv));
    EXPECT_LT((inv - diam).midpoint_double(), 1e-3);
  }
}

TEST(Beta, OrbitPointsMatchForwardIteration) {
  BetaNumber beta = sturmian_beta(golden(), 1, 3);
  OrbitRecord rec = orbit(beta, 40, 200);
  RealBall bb = beta.value_at(400).with_precision(400);
  RealBall x(1L, 400u);
  for (std::size_t i = 0; i < 40; ++i) {
    ASSERT_TRUE(rec.points[i].overlaps(x)) << i;
    RealBall y = bb * x;
    x = y.sub_long(*y.certified_floor());
  }
  // diam = 2/beta for this word.
  RealBall diam = diam_estimate(beta, 2000);
  RealBall two_over = RealBall(2L) / beta.value();
  EXPECT_FALSE(diam.certainly_greater(two_over));
  EXPECT_LT((two_over - diam).midpoint_double(), 1e-3);
}

TEST(Beta, SturmianEvidence) {
  auto ev = is_sturmian_number(sturmian_beta(golden(), 0, 1), 3000);
  EXPECT_TRUE(ev.sturmian);
  EXPECT_TRUE(ev.maximal);
  EXPECT_TRUE(ev.orbit_above_lower_bound);
  auto ev13 = is_sturmian_number(sturmian_beta(golden(), 1, 3), 3000);
  EXPECT_TRUE(ev13.sturmian);
  EXPECT_FALSE(ev13.maximal);
  EXPECT_EQ(ev13.a, 1);
  EXPECT_FALSE(is_sturmian_number(BetaNumber::parse("int:2"), 100).sturmian);
  EXPECT_FALSE(is_sturmian_number(solve_beta(DigitWord::finite({1, 1})), 100).sturmian);
}

TEST(Beta, ClassifySturmianAsSpecified) {
  BetaNumber beta = sturmian_beta(golden(), 0, 1);
  ClassEvidence ev = classify(beta, 4000);
  EXPECT_EQ(ev.verdict, ClassVerdict::kC3Consistent);
  EXPECT_EQ(ev.max_zero_run, 2u);
  EXPECT_EQ(ev.max_zero_run_first_half, 2u);
  ASSERT_TRUE(ev.missing_factor);
  EXPECT_EQ(to_string(*ev.missing_factor), "000");
}

TEST(Beta, PeriodDetection) {
  Word w = parse_word("2101");
  for (int i = 0; i < 40; ++i) {
    for (Digit d : parse_word("110")) w.push_back(d);
  }
  auto p = detect_eventual_period(w);
  ASSERT_TRUE(p);
  EXPECT_EQ(p->period.size(), 3u);
  EXPECT_LE(p->preperiod.size(), 4u);
  EXPECT_FALSE(detect_eventual_period(fibonacci_prefix(3000)));
}

// Ordering of expansions of one follows the ordering of the bases.
TEST(Beta, ExpansionOrderMatchesBetaOrder) {
  std::mt19937_64 rng(20261016);
  std::uniform_int_distribution<int> coef(1, 6);
  SolveOptions opt;
  opt.verification_depth = 400;
  for (int trial = 0; trial < 40; ++trial) {
    std::string s1 = "cf:[0;" + std::to_string(coef(rng) + 1) + "," + std::to_string(coef(rng)) + ",(" +
                     std::to_string(coef(rng)) + "," + std::to_string(coef(rng)) + ")]";
    std::string s2 = "cf:[0;" + std::to_string(coef(rng) + 1) + "," + std::to_string(coef(rng)) + ",(" +
                     std::to_string(coef(rng)) + ")]";
    BetaNumber b1 = sturmian_beta(Slope::parse(s1), 0, 1, opt);
    BetaNumber b2 = sturmian_beta(Slope::parse(s2), 0, 1, opt);
    LexResult lex = lex_compare(b1.expansion_of_one(), b2.expansion_of_one(), 4000);
    if (lex.order == LexOrder::kEqualToDepth) continue;
    const bool beta_less = b1.value().certainly_less(b2.value());
    const bool beta_greater = b1.value().certainly_greater(b2.value());
    ASSERT_TRUE(beta_less || beta_greater) << s1 << " " << s2;
    EXPECT_EQ(lex.order == LexOrder::kLess, beta_less) << s1 << " " << s2;
  }
}
