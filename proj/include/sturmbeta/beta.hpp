#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sturmbeta/numeric/quadratic.hpp"
#include "sturmbeta/numeric/real_ball.hpp"
#include "sturmbeta/numeric/slope.hpp"
#include "sturmbeta/words.hpp"

namespace sturmbeta {

// A real beta > 1 together with access to d_beta(1).
//
// Three kinds:
//   exact  - an element of Q or Q(sqrt d); orbits are computed exactly;
//   solved - the root of 1 = sum s(n) x^-(n+1) for an admissible word s, so
//            d_beta(1) = s; the value can be refined to any precision;
//   ball   - a user-supplied enclosure; digits come from forward iteration
//            and stop where the ball is too coarse.
class BetaNumber {
 public:
  enum class Kind { kExact, kSolved, kBall };

  static BetaNumber exact(const QuadraticNumber& value);
  static BetaNumber from_ball(const RealBall& value);
  // "int:2", "rat:7/2", "surd:(1+1*sqrt(5))/2", "dec:3.55~1e-20".
  static BetaNumber parse(std::string_view text);

  Kind kind() const;
  long floor() const;
  bool is_integer() const;
  const std::optional<QuadraticNumber>& exact_value() const;
  // Best enclosure computed so far.
  RealBall value() const;
  // Enclosure with radius below 2^-bits where the kind allows it (ball kind
  // returns its fixed enclosure).
  RealBall value_at(unsigned bits) const;
  // Solved kind: the defining word and how many of its digits were
  // re-derived by forward iteration.
  std::optional<DigitWord> defining_word() const;
  std::size_t verified_depth() const;

  // d_beta(1). Integer beta gives "beta" followed by zeros. Ball kind throws
  // PrecisionExhausted past the digits its enclosure supports.
  DigitWord expansion_of_one() const;

  std::string to_string(int digits = 30) const;

  struct Impl;
  explicit BetaNumber(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}

 private:
  std::shared_ptr<Impl> impl_;
};

// One step of T_beta: returns (floor(beta x), beta x - floor(beta x)).
std::pair<Digit, RealBall> t_beta_step(const BetaNumber& beta, const RealBall& x);

// A point given as a function of an enclosure of beta at a working precision
// (used for points such as 1 - 1/beta).
using BetaPoint = std::function<RealBall(const RealBall& beta, unsigned bits)>;

// First n digits of the greedy expansion of x.
Word d_beta(const BetaNumber& beta, const RealBall& x, std::size_t n);
Word d_beta(const BetaNumber& beta, const QuadraticNumber& x, std::size_t n);
Word d_beta(const BetaNumber& beta, const BetaPoint& x, std::size_t n, unsigned start_bits = 0);

enum class ExpansionVerdict { kHolds, kNotStrict, kFails, kInconclusive };
std::string_view to_string(ExpansionVerdict v);

struct ExpansionCheck {
  ExpansionVerdict verdict = ExpansionVerdict::kHolds;
  std::size_t depth = 0;
  // Shift index where the verdict was decided (first failure / inconclusive).
  std::size_t at = 0;
};

// sigma^n(s) < s for 1 <= n <= depth.
ExpansionCheck is_expansion_of_one(const DigitWord& s, std::size_t depth);

struct AdmissibilityCheck {
  bool admissible = true;
  bool inconclusive = false;
  std::size_t depth = 0;
  std::optional<std::size_t> rejected_at;  // first n with sigma^n(s) > bound
  bool used_quasi_greedy = false;
};

// sigma^n(s) <= d_beta(1) (or its quasi-greedy form when d_beta(1) is finite)
// for 0 <= n <= depth.
AdmissibilityCheck is_admissible(const DigitWord& s, const BetaNumber& beta, std::size_t depth);
AdmissibilityCheck is_admissible(const Word& finite_word, const BetaNumber& beta);

// d1...d_{m-1}(d_m - 1) repeated.
DigitWord quasi_greedy(const Word& d);

struct SolveOptions {
  unsigned bits = 128;                    // radius below 2^-bits
  std::size_t verification_depth = 1000;  // lexicographic check and re-expansion
  std::size_t max_terms = 1000000;
};

BetaNumber solve_beta(const DigitWord& s, const SolveOptions& options = {});
// solve_beta(rename(1c_alpha, a, b)); FloorMismatch when floor(beta) != b.
BetaNumber sturmian_beta(const Slope& alpha, Digit a, Digit b, const SolveOptions& options = {});
DigitWord sturmian_word(const Slope& alpha, Digit a, Digit b);

struct OrbitRecord {
  std::vector<RealBall> points;  // T^n 1 for n < points.size()
  Word digits;                   // digit n is floor(beta T^n 1)
  RealBall running_min;
  RealBall running_max;
  // Set when forward iteration could not be certified past this step.
  std::optional<std::size_t> truncated_at;
};

OrbitRecord orbit(const BetaNumber& beta, std::size_t n, unsigned bits = 128);
RealBall diam_estimate(const BetaNumber& beta, std::size_t n, unsigned bits = 128);
RealBall diam_estimate(const OrbitRecord& record);

struct SturmianEvidence {
  bool sturmian = false;
  bool maximal = false;
  Digit a = 0;
  Digit b = 0;
  std::size_t depth = 0;
  std::string reason;
  // Orbit check over min(depth, orbit_steps) steps.
  std::optional<RealBall> orbit_min;
  bool orbit_above_lower_bound = false;  // min >= 1 - 1/beta (within radius)
};

SturmianEvidence is_sturmian_number(const BetaNumber& beta, std::size_t depth,
                                    std::size_t orbit_steps = 10000);

enum class ClassVerdict {
  kC1Detected,
  kC2Detected,
  kC3Consistent,
  kC4Consistent,
  kC5Consistent,
  kInconclusive,
};
std::string_view to_string(ClassVerdict v);

struct ClassEvidence {
  std::size_t depth = 0;
  ClassVerdict verdict = ClassVerdict::kInconclusive;
  std::optional<Word> finite_digits;
  std::optional<WordStructure> period;
  std::size_t max_zero_run = 0;
  std::size_t max_zero_run_first_half = 0;
  std::optional<Word> missing_factor;
  std::string note;
};

ClassEvidence classify(const BetaNumber& beta, std::size_t depth);

// Eventual period of a prefix: the tail [n/4, n) must repeat with exponent
// at least 8. Returns the structure with the shortest preperiod found.
std::optional<WordStructure> detect_eventual_period(const Word& prefix);

// Shortest word u (by length, then lexicographically) that is admissible
// (u 0^inf in the beta-shift) but not a factor of `prefix`.
std::optional<Word> missing_factor(const Word& prefix, const DigitWord& dbeta1, std::size_t max_length = 16);

}  // namespace sturmbeta
