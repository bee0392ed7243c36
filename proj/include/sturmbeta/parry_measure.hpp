#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sturmbeta/beta.hpp"
#include "sturmbeta/numeric/real_ball.hpp"
#include "sturmbeta/numeric/slope.hpp"

namespace sturmbeta {

// A quantity computed by two independent formulas. `value` is their
// intersection; disjoint balls raise IdentityViolated.
struct CrossChecked {
  RealBall first;
  RealBall second;
  RealBall value;
};

// F(beta) = sum T^n 1 / beta^n = sum (n+1) e_n / beta^(n+1), truncated at N
// with explicit tail bounds. The greedy convention is used throughout, so
// F(2) = 1 (orbit 1, 0, 0, ...).
CrossChecked normalizing_factor_terms(const BetaNumber& beta, std::size_t n, unsigned bits = 128);
RealBall normalizing_factor(const BetaNumber& beta, std::size_t n, unsigned bits = 128);

// h_beta(x) = (1/F) sum_{x < T^n 1} beta^-n. A comparison the balls cannot
// settle contributes [0, beta^-n] instead of stopping the sum.
RealBall density(const BetaNumber& beta, const RealBall& x, std::size_t n, unsigned bits = 128);

// I = sum ceil(alpha n) e_n / beta^(n+1); `second` is the form before the
// index swap, sum_{e_n = b} T^(n+1) 1 / beta^(n+1). SlopeMismatch when the
// count of b in e_0..e_n differs from ceil(alpha (n+1)) for some n < N.
CrossChecked series_I(const BetaNumber& beta, const Slope& alpha, std::size_t n, unsigned bits = 128);
// J = sum_{e_n = b} beta^-(n+1) + sum (n - ceil(alpha n)) e_n / beta^(n+1);
// `second` is sum_{e_n = b} beta^-(n+1) + sum_{e_n = a} T^(n+1) 1 / beta^(n+1).
CrossChecked series_J(const BetaNumber& beta, const Slope& alpha, Digit a, Digit b, std::size_t n,
                      unsigned bits = 128);

enum class ProofCase { kAZero, kBAlphaAbove, kBAlphaBelow, kOutside };
std::string_view to_string(ProofCase c);

enum class DefectStatus { kCertified, kUnresolved, kViolated, kNotApplicable };
std::string_view to_string(DefectStatus s);

struct FrequencyReport {
  Slope alpha;
  Digit a = 0;
  Digit b = 1;
  BetaNumber beta;
  std::size_t terms = 0;
  unsigned bits = 0;
  RealBall F;
  RealBall I;
  RealBall J;
  RealBall mu_b;
  RealBall mu_a;
  RealBall defect_b;  // alpha - mu_b
  RealBall defect_a;  // (1 - alpha) - mu_a
  ProofCase proof_case = ProofCase::kOutside;
  DefectStatus defect_b_status = DefectStatus::kNotApplicable;
  DefectStatus defect_a_status = DefectStatus::kNotApplicable;
  // J evaluated by the general formula with a = 0; see README.
  bool j_with_a_zero = false;
};

// Builds the report at `bits` and climbs the precision ladder while the
// defect that the case split asks for still contains 0.
FrequencyReport frequency_report(const Slope& alpha, Digit a, Digit b, unsigned bits = 128);

struct BirkhoffRun {
  std::uint64_t seed = 0;
  std::size_t length = 0;
  std::vector<double> start;
  std::vector<double> freq_a;
  std::vector<double> freq_b;
};

// Empirical digit frequencies along long double orbits from seeded random
// starting points. A statistical cross-check only.
BirkhoffRun birkhoff_frequencies(const BetaNumber& beta, Digit a, Digit b, std::uint64_t seed,
                                 std::size_t points = 20, std::size_t length = 100000);

}  // namespace sturmbeta
