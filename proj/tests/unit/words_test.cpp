#include <gtest/gtest.h>

#include <random>

#include "support/oracles.hpp"
#include "sturmbeta/errors.hpp"
#include "sturmbeta/words.hpp"

using namespace sturmbeta;

namespace {

const char* kFib34 = "0100101001001010010100100101001001";

std::vector<Slope> battery() {
  return {Slope::inverse_golden_square(), Slope::parse("surd:(-1+sqrt(2))/1"),
          Slope::parse("surd:(-1+sqrt(3))/2"), Slope::parse("surd:(-2+sqrt(5))/1"),
          Slope::parse("surd:(-1+sqrt(5))/2"),
          Slope::parse("cf:[0;3,1,4,(1,5)]")};
}

}  // namespace

TEST(Words, FibonacciPrefixMatchesDisplayedString) {
  EXPECT_EQ(to_string(fibonacci_prefix(2)), "01");
  EXPECT_EQ(to_string(fibonacci_prefix(34)), kFib34);
  EXPECT_EQ(fibonacci_word().prefix_string(34), kFib34);
  // The displayed Fibonacci word is the characteristic word; the lower
  // mechanical word of intercept 0 carries an extra leading 0.
  Slope g = Slope::inverse_golden_square();
  EXPECT_EQ(characteristic(g).prefix_string(34), kFib34);
  EXPECT_EQ(lower_mechanical(g, Intercept::fractional_multiple(g, 1)).prefix_string(34), kFib34);
  EXPECT_EQ(lower_mechanical(g).prefix_string(35), std::string("0") + kFib34);
}

TEST(Words, FibonacciEqualsGoldenCharacteristicLongPrefix) {
  EXPECT_EQ(fibonacci_word().prefix(20000), characteristic(Slope::inverse_golden_square()).prefix(20000));
  EXPECT_EQ(fibonacci_prefix(5000), fibonacci_word().prefix(5000));
}

TEST(Words, UpperMechanicalAndCharacteristic) {
  Slope g = Slope::inverse_golden_square();
  EXPECT_EQ(upper_mechanical(g).prefix_string(26), "10100101001001010010100100");
  EXPECT_EQ(characteristic(g).prefix_string(25), "0100101001001010010100100");
  EXPECT_EQ(characteristic(g).prepend({0}).prefix_string(26), "00100101001001010010100100");
  EXPECT_EQ(characteristic(g).prepend({1}).prefix(5000), upper_mechanical(g).prefix(5000));
  EXPECT_EQ(characteristic(g).prepend({0}).prefix(5000), lower_mechanical(g).prefix(5000));
  EXPECT_EQ(shift(upper_mechanical(g), 1).prefix(3000), characteristic(g).prefix(3000));
}

TEST(Words, LowerMechanicalAgainstSurdFloors) {
  Slope a = Slope::parse("surd:(-1+sqrt(2))/1");
  EXPECT_EQ(lower_mechanical(a).prefix(12), oracle::surd_lower_mechanical(-1, 1, 2, 1, 12));
  EXPECT_EQ(lower_mechanical(a).prefix(3000), oracle::surd_lower_mechanical(-1, 1, 2, 1, 3000));
}

TEST(Words, FirstDigits) {
  for (const Slope& a : battery()) {
    EXPECT_EQ(lower_mechanical(a).at(0), 0);
    EXPECT_EQ(upper_mechanical(a).at(0), 1);
    EXPECT_EQ(characteristic(a).at(0) == 0, a.approx() < 0.5) << a.to_string();
  }
}

TEST(Words, UpperEqualsLowerOffIntegerPoints) {
  std::mt19937_64 rng(11);
  for (const Slope& a : battery()) {
    for (int t = 0; t < 5; ++t) {
      long q = std::uniform_int_distribution<long>(2, 60)(rng);
      long p = std::uniform_int_distribution<long>(1, q - 1)(rng);
      Intercept rho = Intercept::rational(mpq_class(p, q));
      // alpha*n + p/q is never an integer for n >= 1; only n = 0 could be, and p > 0.
      EXPECT_EQ(lower_mechanical(a, rho).prefix(2000), upper_mechanical(a, rho).prefix(2000));
    }
  }
}

TEST(Words, HeightAndSlope) {
  EXPECT_EQ(height(parse_word("01")), 1u);
  EXPECT_EQ(slope_of(Word(10, 0)), 0);
  std::vector<unsigned long> fib{1, 1};
  while (fib.size() < 22) fib.push_back(fib[fib.size() - 1] + fib[fib.size() - 2]);
  // f_n has length F_{n+2} and height F_n (F_1 = F_2 = 1).
  for (std::size_t n = 2; n + 2 < fib.size(); ++n) {
    Word w = fibonacci_prefix(fib[n + 1]);
    EXPECT_EQ(slope_of(w), mpq_class(fib[n - 1], fib[n + 1])) << n;
  }
}

TEST(Words, Complexity) {
  DigitWord f = fibonacci_word();
  EXPECT_EQ(complexity(f, 1, 10000), 2u);
  EXPECT_EQ(complexity(f, 7, 10000), 8u);
  EXPECT_EQ(complexity(f, 7, 10000), oracle::factor_count(f.prefix(10000), 7));
  EXPECT_EQ(complexity(DigitWord(), 5, 100), 1u);
  for (const Slope& a : battery()) {
    Word p = lower_mechanical(a).prefix(20000);
    for (std::size_t n = 1; n <= 30; ++n) EXPECT_EQ(complexity(p, n), n + 1) << a.to_string() << " n=" << n;
  }
}

TEST(Words, FactorSetsAgreeAcrossIntercepts) {
  std::mt19937_64 rng(5);
  for (const Slope& a : battery()) {
    Word base = lower_mechanical(a).prefix(20000);
    for (int t = 0; t < 3; ++t) {
      long q = std::uniform_int_distribution<long>(2, 40)(rng);
      long p = std::uniform_int_distribution<long>(0, q - 1)(rng);
      DigitWord other = lower_mechanical(a, Intercept::rational(mpq_class(p, q)));
      for (std::size_t n = 1; n <= 15; ++n) {
        EXPECT_EQ(factor_set(lower_mechanical(a), n, 20000).factors, factor_set(other, n, 20000).factors);
      }
    }
  }
}

TEST(Words, BalanceOnMechanicalWords) {
  EXPECT_TRUE(is_balanced(fibonacci_word(), 5000).balanced);
  for (const Slope& a : battery()) {
    EXPECT_TRUE(is_balanced(lower_mechanical(a), 50000).balanced) << a.to_string();
    EXPECT_TRUE(is_balanced(upper_mechanical(a), 50000).balanced) << a.to_string();
    EXPECT_TRUE(oracle::balanced_by_heights(lower_mechanical(a).prefix(1500)));
  }
}

TEST(Words, UnbalancedWitness) {
  BalanceVerdict v = is_balanced(parse_word("0011"));
  EXPECT_FALSE(v.balanced);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_TRUE(v.witness->empty());
  BalanceVerdict periodic = is_balanced(DigitWord::periodic({}, parse_word("010011")), 300);
  EXPECT_FALSE(periodic.balanced);
  EXPECT_EQ(static_cast<long>(periodic.witness->size()),
            oracle::shortest_unbalance_palindrome(parse_word("010011010011010011"), 0, 1));
}

TEST(Words, BalanceAgreesWithHeightOracleOnRandomWords) {
  std::mt19937_64 rng(2024);
  int unbalanced = 0;
  for (int t = 0; t < 600; ++t) {
    std::size_t len = std::uniform_int_distribution<std::size_t>(1, 40)(rng);
    Word w(len);
    // Bias towards sparse 1s so balanced words show up too.
    double p1 = std::uniform_real_distribution<double>(0.1, 0.5)(rng);
    for (auto& d : w) d = std::bernoulli_distribution(p1)(rng) ? 1 : 0;
    if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) {
      Slope a = battery()[static_cast<std::size_t>(t) % battery().size()];
      Word m = lower_mechanical(a).prefix(len + static_cast<std::size_t>(t));
      w.assign(m.end() - static_cast<long>(len), m.end());
    }
    BalanceVerdict v = is_balanced(w);
    const bool want = oracle::balanced_by_heights(w);
    EXPECT_EQ(v.balanced, want) << to_string(w);
    if (!v.balanced) {
      ++unbalanced;
      Word letters = w;
      std::sort(letters.begin(), letters.end());
      EXPECT_EQ(static_cast<long>(v.witness->size()),
                oracle::shortest_unbalance_palindrome(w, letters.front(), letters.back()))
          << to_string(w);
      Word r(v.witness->rbegin(), v.witness->rend());
      EXPECT_EQ(r, *v.witness);
    }
  }
  EXPECT_GT(unbalanced, 50);
}

TEST(Words, LexCompare) {
  Slope g = Slope::inverse_golden_square();
  EXPECT_EQ(lex_compare(lower_mechanical(g), upper_mechanical(g), 10000).order, LexOrder::kLess);
  EXPECT_EQ(lex_compare(lower_mechanical(g), lower_mechanical(g), 10000).order, LexOrder::kEqualToDepth);
  Slope r = Slope::parse("surd:(0+1*sqrt(2))/2");
  EXPECT_EQ(lex_compare(characteristic(g), characteristic(r), 10000).order, LexOrder::kLess);
  LexResult d = lex_compare(parse_word("0101"), parse_word("0110"));
  EXPECT_EQ(d.order, LexOrder::kLess);
  EXPECT_EQ(d.first_difference, 2u);
}

TEST(Words, ExchangeAndRename) {
  Slope g = Slope::inverse_golden_square();
  EXPECT_EQ(exchange(characteristic(g)).prefix_string(25), characteristic(g.complement()).prefix_string(25));
  EXPECT_EQ(exchange(characteristic(g)).prefix(5000), characteristic(g.complement()).prefix(5000));
  EXPECT_EQ(rename(upper_mechanical(g), 1, 3).prefix_string(27), "313113131131131311313113113");
  for (const Slope& a : battery()) {
    DigitWord w = lower_mechanical(a);
    EXPECT_EQ(exchange(exchange(w)).prefix(3000), w.prefix(3000));
    Word p = w.prefix(777);
    EXPECT_EQ(height(exchange(w).prefix(777)), p.size() - height(p));
  }
}

TEST(Words, ShiftIsMechanicalWithFractionalIntercept) {
  for (const Slope& a : battery()) {
    for (long n : {1L, 2L, 7L, 55L, 1000L}) {
      DigitWord shifted = shift(lower_mechanical(a), static_cast<std::size_t>(n));
      DigitWord direct = lower_mechanical(a, Intercept::fractional_multiple(a, n));
      EXPECT_EQ(shifted.prefix(2000), direct.prefix(2000)) << a.to_string() << " n=" << n;
    }
  }
}

TEST(Words, FrequencyConvergesToSlope) {
  mpq_class f = frequency(fibonacci_word(), {1}, 10000);
  EXPECT_NEAR(f.get_d(), Slope::inverse_golden_square().approx(), 1e-3);
  EXPECT_EQ(frequency(fibonacci_word(), {1, 1}, 10000), 0);
}

TEST(Words, OrderMonotoneInIntercept) {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 60; ++t) {
    Slope a = battery()[static_cast<std::size_t>(t) % battery().size()];
    long q1 = std::uniform_int_distribution<long>(1, 32)(rng);
    long q2 = std::uniform_int_distribution<long>(1, 32)(rng);
    mpq_class r1(std::uniform_int_distribution<long>(0, q1 - 1)(rng), q1);
    mpq_class r2(std::uniform_int_distribution<long>(0, q2 - 1)(rng), q2);
    r1.canonicalize();
    r2.canonicalize();
    if (r1 == r2) continue;
    if (r1 > r2) std::swap(r1, r2);
    LexResult c = lex_compare(lower_mechanical(a, Intercept::rational(r1)),
                              lower_mechanical(a, Intercept::rational(r2)), 10000);
    EXPECT_EQ(c.order, LexOrder::kLess);
  }
}

TEST(Words, ExtremalOrbitPoints) {
  for (const Slope& a : battery()) {
    DigitWord up = characteristic(a).prepend({1});
    DigitWord low = characteristic(a).prepend({0});
    for (std::size_t n = 1; n <= 300; ++n) {
      EXPECT_EQ(lex_compare(up.shifted(n), up, 5000).order, LexOrder::kLess);
      EXPECT_EQ(lex_compare(low.shifted(n), low, 5000).order, LexOrder::kGreater);
    }
  }
}

TEST(Words, StructuredWordsShiftExactly) {
  DigitWord w = DigitWord::periodic(parse_word("21"), parse_word("0110"));
  DigitWord s = w.shifted(5);
  ASSERT_TRUE(s.structure().has_value());
  EXPECT_EQ(to_string(s.structure()->period), "0011");
  Word longer = w.prefix(45);
  EXPECT_EQ(s.prefix(40), Word(longer.begin() + 5, longer.end()));
  EXPECT_EQ(DigitWord::finite(parse_word("1100")).finite_digits().value(), parse_word("11"));
  EXPECT_EQ(to_string(parse_word("3[12]0")), "3[12]0");
}
