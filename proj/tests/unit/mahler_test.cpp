#include <gtest/gtest.h>

#include <cmath>

#include "sturmbeta/errors.hpp"
#include "sturmbeta/mahler.hpp"
#include "support/oracles.hpp"

using namespace sturmbeta;

namespace {

Slope golden() { return Slope::parse("surd:(3-1*sqrt(5))/2"); }

long double naive_mahler(long p, long q, long d, long r, long double z, int terms) {
  long double s = 0, zn = 1;
  for (int n = 1; n <= terms; ++n) {
    zn *= z;
    s += oracle::surd_floor(n, p, q, d, r) * zn;
  }
  return s;
}

}  // namespace

TEST(Mahler, ZeroArgument) {
  MahlerEvaluation e = mahler_f(golden(), RealBall(0L));
  EXPECT_TRUE(e.value.is_exact());
  EXPECT_TRUE(e.value.contains(mpq_class(0)));
}

TEST(Mahler, RationalSlopeClosedForm) {
  // sum floor(n/2) z^n = z^2 / ((1 - z)(1 - z^2)); at z = 1/3 this is 3/16.
  RealBall z = RealBall::from_rational(mpq_class(1, 3), 200);
  MahlerEvaluation e = power_series([](std::int64_t n) { return n / 2; }, 1, z, 400, 200);
  EXPECT_TRUE(e.value.contains(mpq_class(3, 16)));
  EXPECT_LT(e.value.radius_log2(), -190);
  EXPECT_TRUE(e.tail_bound.certainly_positive());
}

TEST(Mahler, SturmianPointHasTinyRadius) {
  BetaNumber beta = sturmian_beta(golden(), 0, 1);
  RealBall y = beta.value_at(200).reciprocal();
  MahlerEvaluation e = mahler_f(golden(), y, 160);
  EXPECT_LT(e.value.radius_double(), 1e-40);
  const long double ref = naive_mahler(3, -1, 5, 2, 1 / static_cast<long double>(beta.value().midpoint_double()), 400);
  EXPECT_NEAR(e.value.midpoint_double(), static_cast<double>(ref), 1e-14);
}

TEST(Mahler, NegativeArgument) {
  RealBall z = RealBall::from_rational(mpq_class(-1, 2));
  MahlerEvaluation e = mahler_f(Slope::parse("surd:(-1+1*sqrt(2))"), z);
  EXPECT_NEAR(e.value.midpoint_double(), static_cast<double>(naive_mahler(-1, 1, 2, 1, -0.5L, 200)), 1e-15);
}

TEST(Mahler, DivergentInputs) {
  EXPECT_THROW(mahler_f(golden(), RealBall(1L)), DivergentInput);
  EXPECT_THROW(mahler_f(golden(), RealBall::from_rational(mpq_class(-6, 5))), DivergentInput);
  EXPECT_THROW(mahler_f(golden(), RealBall::from_bounds(mpq_class(9, 10), mpq_class(11, 10))), DivergentInput);
}

TEST(Mahler, LongerTruncationsNest) {
  RealBall z = RealBall::from_rational(mpq_class(3, 5), 256);
  std::optional<RealBall> prev;
  for (std::size_t n : {20u, 40u, 80u, 160u, 320u}) {
    RealBall v = mahler_f_truncated(golden(), z, n, 256).value;
    if (prev) {
      EXPECT_TRUE(prev->contains(v)) << n;
    }
    prev = v;
  }
}

TEST(Mahler, RefinementStaysInsideCoarseBall) {
  RealBall z = RealBall::from_rational(mpq_class(2, 3), 2000);
  RealBall coarse = mahler_f(golden(), z, 128).value;
  RealBall fine = mahler_f(golden(), z, 1280).value;
  EXPECT_TRUE(coarse.contains(fine));
  EXPECT_LT(fine.radius_log2(), -1270);
}

// sum_{n<=N} (floor(a(n+1)) - floor(a n)) x^-(n+1)
//   = (1 - 1/x) sum_{n=1}^{N} floor(a n) x^-n + floor(a(N+1)) x^-(N+1), exactly.
TEST(Mahler, TelescopingIsExactForRationalBase) {
  const Slope alpha = golden();
  for (const mpq_class x : {mpq_class(7, 2), mpq_class(3, 2), mpq_class(10)}) {
    for (int N = 0; N <= 30; ++N) {
      mpq_class lhs = 0, rhs = 0, p = 1;
      for (int n = 0; n <= N; ++n) {
        p /= x;  // x^-(n+1)
        lhs += (alpha.floor_linear(n + 1, Intercept()) - alpha.floor_linear(n, Intercept())) * p;
      }
      mpq_class q = 1;
      for (int n = 1; n <= N; ++n) {
        q /= x;
        rhs += alpha.floor_linear(n, Intercept()) * q;
      }
      rhs *= 1 - 1 / x;
      rhs += alpha.floor_linear(N + 1, Intercept()) * p;
      ASSERT_EQ(lhs, rhs) << N;
    }
  }
}

TEST(Mahler, IdentityHoldsForExamples) {
  for (auto [a, b] : {std::pair<Digit, Digit>{0, 1}, {1, 3}}) {
    IdentityReport r = identity_check(golden(), a, b, 512);
    EXPECT_LT(r.max_gap, 1e-40) << int(a) << int(b);
    EXPECT_TRUE(r.direct.overlaps(r.rhs));
    EXPECT_TRUE(r.mahler.overlaps(r.rhs));
  }
}

TEST(Mahler, IdentityAcrossSlopes) {
  for (const char* s : {"surd:(-1+1*sqrt(2))", "surd:(-1+1*sqrt(3))/2", "cf:[0;3,1,4,(1,5)]"}) {
    IdentityReport r = identity_check(Slope::parse(s), 0, 1, 256);
    EXPECT_LT(r.max_gap, 1e-70) << s;
  }
  IdentityReport r = identity_check(Slope::parse("surd:(-2+1*sqrt(5))"), 1, 4, 256);
  EXPECT_LT(r.max_gap, 1e-70);
}
