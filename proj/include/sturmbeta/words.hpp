#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sturmbeta/numeric/slope.hpp"

namespace sturmbeta {

using Digit = std::uint8_t;
using Word = std::vector<Digit>;

// Digits print as '0'..'9'; larger digits print as "[12]".
std::string to_string(const Word& w);
Word parse_word(std::string_view text);

// Eventually periodic shape: preperiod followed by period repeated forever.
// A finite word w is stored as {w, "0"}.
struct WordStructure {
  Word preperiod;
  Word period;
};

// A right-infinite word over a small integer alphabet. Digits are produced
// lazily by an extender and memoized; the memo only ever grows.
class DigitWord {
 public:
  // Appends digits to `memo` until memo.size() >= target.
  using Extender = std::function<void(Word& memo, std::size_t target)>;

  DigitWord();  // 000...
  static DigitWord from_extender(Extender extender, Word alphabet,
                                 std::optional<WordStructure> structure = std::nullopt);
  static DigitWord from_function(std::function<Digit(std::size_t)> digit, Word alphabet);
  static DigitWord periodic(Word preperiod, Word period);
  static DigitWord finite(Word digits);  // followed by zeros

  Digit at(std::size_t n) const;
  Word prefix(std::size_t n) const;
  // Appends digits [from, to) to out.
  void append_range(std::size_t from, std::size_t to, Word& out) const;
  std::string prefix_string(std::size_t n) const { return to_string(prefix(n)); }

  const Word& alphabet() const;
  const std::optional<WordStructure>& structure() const;
  // Finite words: the digits before the zero tail (trailing zeros trimmed).
  std::optional<Word> finite_digits() const;

  DigitWord shifted(std::size_t k) const;
  DigitWord prepend(const Word& head) const;
  DigitWord mapped(const std::function<Digit(Digit)>& f, Word alphabet) const;

  struct Impl;

 private:
  explicit DigitWord(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<Impl> impl_;
};

DigitWord lower_mechanical(const Slope& alpha, const Intercept& rho = Intercept());
DigitWord upper_mechanical(const Slope& alpha, const Intercept& rho = Intercept());
DigitWord characteristic(const Slope& alpha);
DigitWord fibonacci_word();
Word fibonacci_prefix(std::size_t n);

std::size_t height(const Word& w);
mpq_class slope_of(const Word& w);

struct FactorSet {
  std::size_t length = 0;
  std::vector<Word> factors;  // sorted
};

FactorSet factor_set(const DigitWord& w, std::size_t n, std::size_t window);
std::size_t complexity(const DigitWord& w, std::size_t n, std::size_t window);
std::size_t complexity(const Word& prefix, std::size_t n);

struct BalanceVerdict {
  bool balanced = true;
  std::size_t window = 0;
  // Palindrome p with both xpx and ypy occurring, x < y the two letters.
  std::optional<Word> witness;
};

BalanceVerdict is_balanced(const DigitWord& w, std::size_t window);
BalanceVerdict is_balanced(const Word& prefix);

enum class LexOrder { kLess, kEqualToDepth, kGreater };
std::string_view to_string(LexOrder order);

struct LexResult {
  LexOrder order = LexOrder::kEqualToDepth;
  // Index of the first differing digit, or depth when none.
  std::size_t first_difference = 0;
};

LexResult lex_compare(const DigitWord& x, const DigitWord& y, std::size_t depth);
LexResult lex_compare(const Word& x, const Word& y);

DigitWord exchange(const DigitWord& w);
DigitWord rename(const DigitWord& w, Digit a, Digit b);
DigitWord shift(const DigitWord& w, std::size_t k);
mpq_class frequency(const DigitWord& w, const Word& u, std::size_t n);

// Longest run of `letter` in the prefix.
std::size_t max_run(const Word& prefix, Digit letter);

}  // namespace sturmbeta
