#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "sturmbeta/errors.hpp"
#include "sturmbeta/parry_measure.hpp"
#include "support/oracles.hpp"

using namespace sturmbeta;

namespace {

Slope golden() { return Slope::parse("surd:(3-1*sqrt(5))/2"); }

// Long double reference built from the integral definitions: T^n 1 by the
// backward sum, F = sum T^n 1 / beta^n, and the digit integrals over
// [b/beta, 1] and [a/beta, (a+1)/beta] written out case by case.
struct NaiveMeasure {
  long double beta;
  std::vector<long double> orbit;
  long double F = 0, I = 0, J = 0;

  NaiveMeasure(const Word& w, Digit a, Digit b, long double lo, long double hi) {
    beta = oracle::naive_root(w, lo, hi);
    orbit.assign(w.size() + 1, 0);
    for (std::size_t n = w.size(); n-- > 0;) orbit[n] = (w[n] + orbit[n + 1]) / beta;
    long double p = 1;
    for (std::size_t n = 0; n < w.size(); ++n, p /= beta) {
      F += orbit[n] * p;
      const long double t = orbit[n];
      if (t >= b / beta) I += (t - b / beta) * p;
      if (t >= (a + 1) / beta) {
        J += p / beta;
      } else if (t >= a / beta) {
        J += (t - a / beta) * p;
      }
    }
  }

  long double h(long double x) const {
    long double s = 0, p = 1;
    for (std::size_t n = 0; n + 1 < orbit.size(); ++n, p /= beta) {
      if (x < orbit[n]) s += p;
    }
    return s / F;
  }
};

Word renamed(const Word& w, Digit a, Digit b) {
  Word out;
  for (Digit d : w) out.push_back(d ? b : a);
  return out;
}

}  // namespace

TEST(Parry, IntegerBaseUsesGreedyOrbit) {
  BetaNumber two = BetaNumber::parse("int:2");
  auto f = normalizing_factor_terms(two, 200);
  EXPECT_TRUE(f.value.contains(mpq_class(1)));
  EXPECT_LT(f.value.radius_log2(), -100);
}

TEST(Parry, GoldenMeanFactorAndDensity) {
  BetaNumber tau = BetaNumber::parse("surd:(1+1*sqrt(5))/2");
  const double t = (1 + std::sqrt(5.0)) / 2;
  const double F = 1 + (t - 1) / t;
  RealBall f = normalizing_factor(tau, 300);
  EXPECT_NEAR(f.midpoint_double(), F, 1e-15);
  EXPECT_LT(f.radius_log2(), -120);
  RealBall h = density(tau, RealBall::from_rational(mpq_class(1, 2)), 300);
  EXPECT_NEAR(h.midpoint_double(), (1 + 1 / t) / F, 1e-15);
  // Nothing in the orbit exceeds 1.
  RealBall h1 = density(tau, RealBall(1L), 300);
  EXPECT_LT(h1.midpoint_double(), 1e-30);
}

TEST(Parry, FactorFormulasAgreeAtTenThousandTerms) {
  BetaNumber beta = sturmian_beta(golden(), 0, 1);
  auto f = normalizing_factor_terms(beta, 10000);
  EXPECT_TRUE(f.first.overlaps(f.second));
  EXPECT_LT(f.value.radius_log2(), -120);
  NaiveMeasure ref(oracle::surd_upper_mechanical(3, -1, 5, 2, 3000), 0, 1, 1, 2);
  EXPECT_NEAR(f.value.midpoint_double(), static_cast<double>(ref.F), 1e-13);
  EXPECT_NEAR(f.value.midpoint_double(), 2.15331663755327, 1e-13);
}

TEST(Parry, DensityIntegratesToOne) {
  BetaNumber beta = sturmian_beta(golden(), 0, 1);
  const int cells = 400;
  double sum = 0;
  for (int i = 0; i < cells; ++i) {
    RealBall x = RealBall::from_rational(mpq_class(2 * i + 1, 2 * cells));
    sum += density(beta, x, 150, 64).midpoint_double() / cells;
  }
  EXPECT_NEAR(sum, 1.0, 1e-2);
  // Finer quadrature with the long double reference density.
  NaiveMeasure ref(oracle::surd_upper_mechanical(3, -1, 5, 2, 200), 0, 1, 1, 2);
  long double fine = 0;
  const int many = 20000;
  for (int i = 0; i < many; ++i) fine += ref.h((i + 0.5L) / many) / many;
  EXPECT_NEAR(static_cast<double>(fine), 1.0, 1e-3);
  for (double x : {0.1, 0.37, 0.5, 0.81}) {
    EXPECT_NEAR(density(beta, RealBall::from_rational(mpq_class(x)), 150).midpoint_double(),
                static_cast<double>(ref.h(x)), 1e-12);
  }
}

TEST(Parry, SeriesMatchIntegralDefinitions) {
  struct Case {
    const char* slope;
    long p, q, d, r;
    Digit a, b;
  };
  for (const Case& c : {Case{"surd:(3-1*sqrt(5))/2", 3, -1, 5, 2, 0, 1}, Case{"surd:(3-1*sqrt(5))/2", 3, -1, 5, 2, 1, 3},
                        Case{"surd:(-2+1*sqrt(5))", -2, 1, 5, 1, 1, 4}, Case{"surd:(-1+1*sqrt(2))", -1, 1, 2, 1, 0, 1}}) {
    Slope alpha = Slope::parse(c.slope);
    BetaNumber beta = sturmian_beta(alpha, c.a, c.b);
    Word w = renamed(oracle::surd_upper_mechanical(c.p, c.q, c.d, c.r, 2000), c.a, c.b);
    NaiveMeasure ref(w, c.a, c.b, c.b, c.b + 1);
    auto I = series_I(beta, alpha, 2000);
    auto J = series_J(beta, alpha, c.a, c.b, 2000);
    EXPECT_TRUE(I.first.overlaps(I.second));
    EXPECT_TRUE(J.first.overlaps(J.second));
    EXPECT_NEAR(I.value.midpoint_double(), static_cast<double>(ref.I), 1e-12) << c.slope << int(c.a);
    EXPECT_NEAR(J.value.midpoint_double(), static_cast<double>(ref.J), 1e-12) << c.slope << int(c.a);
  }
}

TEST(Parry, IndexSwapAgreesAtTenThousandTerms) {
  BetaNumber beta = sturmian_beta(golden(), 0, 1);
  auto I = series_I(beta, golden(), 10000);
  EXPECT_TRUE(I.first.overlaps(I.second));
  EXPECT_LT(I.value.radius_log2(), -120);
}

TEST(Parry, FirstTermsByHand) {
  // e = 1 0 1 0 0 ...; ceil(alpha*0) = 0 and ceil(alpha*2) = 1, so the
  // partial sum to N = 3 is 1/beta^3 plus a tail below 3 * 3 / beta^4 * const.
  BetaNumber beta = sturmian_beta(golden(), 0, 1);
  auto I = series_I(beta, golden(), 3);
  const double bb = beta.value().midpoint_double();
  const double lower = 1 / (bb * bb * bb);
  EXPECT_TRUE(I.first.contains(mpq_class(lower + 1e-9)));
  EXPECT_FALSE(I.first.certainly_less(RealBall::from_rational(mpq_class(lower))));
}

TEST(Parry, SlopeMismatchIsDetected) {
  BetaNumber beta = sturmian_beta(golden(), 0, 1);
  EXPECT_THROW(series_I(beta, Slope::parse("surd:(-1+1*sqrt(2))"), 200), SlopeMismatch);
  EXPECT_THROW(series_J(beta, golden(), 0, 2, 200), FloorMismatch);
}

TEST(Parry, FrequencyDefectsInProofCases) {
  FrequencyReport r01 = frequency_report(golden(), 0, 1);
  EXPECT_EQ(r01.proof_case, ProofCase::kAZero);
  EXPECT_EQ(r01.defect_b_status, DefectStatus::kCertified);
  EXPECT_TRUE(r01.j_with_a_zero);
  EXPECT_NEAR(r01.mu_b.midpoint_double(), 0.2406076, 1e-6);
  EXPECT_NEAR(r01.defect_b.midpoint_double(), 0.14136, 1e-5);

  FrequencyReport r13 = frequency_report(golden(), 1, 3);
  EXPECT_EQ(r13.proof_case, ProofCase::kBAlphaAbove);
  EXPECT_EQ(r13.defect_b_status, DefectStatus::kCertified);
  EXPECT_NEAR(r13.defect_b.midpoint_double(), 0.24902, 1e-5);

  FrequencyReport r14 = frequency_report(Slope::parse("surd:(-2+1*sqrt(5))"), 1, 4);
  EXPECT_EQ(r14.proof_case, ProofCase::kBAlphaBelow);
  EXPECT_EQ(r14.defect_a_status, DefectStatus::kCertified);
  EXPECT_EQ(r14.defect_b_status, DefectStatus::kNotApplicable);
  EXPECT_NEAR(r14.defect_a.midpoint_double(), 0.52771, 1e-5);

  for (const FrequencyReport* r : {&r01, &r13, &r14}) {
    EXPECT_TRUE(r->F.certainly_positive());
    EXPECT_FALSE(r->mu_a.certainly_negative());
    EXPECT_FALSE(r->mu_b.certainly_negative());
    EXPECT_FALSE((r->mu_a + r->mu_b).certainly_greater(RealBall(1L)));
  }
}

TEST(Parry, BirkhoffAveragesMatchMeasure) {
  for (auto [a, b] : {std::pair<Digit, Digit>{0, 1}, {1, 3}}) {
    FrequencyReport r = frequency_report(golden(), a, b);
    BirkhoffRun run = birkhoff_frequencies(r.beta, a, b, 12345, 20, 100000);
    ASSERT_EQ(run.freq_a.size(), 20u);
    for (std::size_t i = 0; i < 20; ++i) {
      EXPECT_NEAR(run.freq_b[i], r.mu_b.midpoint_double(), 1e-2);
      EXPECT_NEAR(run.freq_a[i], r.mu_a.midpoint_double(), 1e-2);
    }
    // Same seed, same numbers.
    EXPECT_EQ(birkhoff_frequencies(r.beta, a, b, 12345, 2, 1000).freq_b,
              birkhoff_frequencies(r.beta, a, b, 12345, 2, 1000).freq_b);
  }
}

TEST(Parry, ExpansionOfOneHasFrequencyAlpha) {
  BetaNumber beta = sturmian_beta(golden(), 0, 1);
  Word w = beta.expansion_of_one().prefix(100000);
  const double ones = std::accumulate(w.begin(), w.end(), 0.0) / static_cast<double>(w.size());
  EXPECT_NEAR(ones, (3 - std::sqrt(5.0)) / 2, 1e-3);
  // and differs from mu_b
  EXPECT_GT(std::fabs(ones - 0.2406076), 0.1);
}
