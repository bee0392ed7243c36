#include "sturmbeta/words.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <set>
#include <unordered_set>

#include "sturmbeta/errors.hpp"

namespace sturmbeta {

std::string to_string(const Word& w) {
  std::string out;
  out.reserve(w.size());
  for (Digit d : w) {
    if (d < 10) {
      out.push_back(static_cast<char>('0' + d));
    } else {
      out += "[" + std::to_string(d) + "]";
    }
  }
  return out;
}

Word parse_word(std::string_view text) {
  Word out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c >= '0' && c <= '9') {
      out.push_back(static_cast<Digit>(c - '0'));
    } else if (c == '[') {
      const auto close = text.find(']', i);
      if (close == std::string_view::npos) throw ParseError("unclosed '[' in word");
      const std::string inner(text.substr(i + 1, close - i - 1));
      int v = 0;
      try {
        v = std::stoi(inner);
      } catch (const std::exception&) {
        throw ParseError("bad digit '[" + inner + "]'");
      }
      if (v < 0 || v > 255) throw ParseError("digit out of range: " + inner);
      out.push_back(static_cast<Digit>(v));
      i = close;
    } else {
      throw ParseError(std::string("bad character '") + c + "' in word");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// DigitWord

struct DigitWord::Impl {
  std::mutex mutex;
  Word memo;
  Extender extender;
  Word alphabet;
  std::array<bool, 256> allowed{};
  std::optional<WordStructure> structure;

  void ensure_locked(std::size_t target) {
    if (memo.size() >= target) return;
    const std::size_t before = memo.size();
    extender(memo, target);
    if (memo.size() < target) throw PreconditionError("word extender fell short");
    for (std::size_t i = before; i < memo.size(); ++i) {
      if (!allowed[memo[i]]) {
        memo.resize(i);
        throw PreconditionError("digit outside the declared alphabet");
      }
    }
  }
};

namespace {

Word normalize_alphabet(Word alphabet) {
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  return alphabet;
}

Digit structure_digit(const WordStructure& s, std::size_t n) {
  if (n < s.preperiod.size()) return s.preperiod[n];
  return s.period[(n - s.preperiod.size()) % s.period.size()];
}

}  // namespace

DigitWord::DigitWord() : DigitWord(periodic({}, {0})) {}

DigitWord DigitWord::from_extender(Extender extender, Word alphabet,
                                   std::optional<WordStructure> structure) {
  auto impl = std::make_shared<Impl>();
  impl->extender = std::move(extender);
  impl->alphabet = normalize_alphabet(std::move(alphabet));
  for (Digit d : impl->alphabet) impl->allowed[d] = true;
  impl->structure = std::move(structure);
  return DigitWord(std::move(impl));
}

DigitWord DigitWord::from_function(std::function<Digit(std::size_t)> digit, Word alphabet) {
  return from_extender(
      [digit = std::move(digit)](Word& memo, std::size_t target) {
        for (std::size_t n = memo.size(); n < target; ++n) memo.push_back(digit(n));
      },
      std::move(alphabet));
}

DigitWord DigitWord::periodic(Word preperiod, Word period) {
  if (period.empty()) throw PreconditionError("period must be non-empty");
  // Canonical form: shortest period, shortest preperiod.
  for (std::size_t p = 1; p < period.size(); ++p) {
    if (period.size() % p) continue;
    bool ok = true;
    for (std::size_t i = p; ok && i < period.size(); ++i) ok = period[i] == period[i - p];
    if (ok) {
      period.resize(p);
      break;
    }
  }
  while (!preperiod.empty() && preperiod.back() == period.back()) {
    preperiod.pop_back();
    std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
  }
  WordStructure s{std::move(preperiod), std::move(period)};
  Word alphabet = s.preperiod;
  alphabet.insert(alphabet.end(), s.period.begin(), s.period.end());
  return from_extender(
      [s](Word& memo, std::size_t target) {
        for (std::size_t n = memo.size(); n < target; ++n) memo.push_back(structure_digit(s, n));
      },
      std::move(alphabet), s);
}

DigitWord DigitWord::finite(Word digits) { return periodic(std::move(digits), {0}); }

Digit DigitWord::at(std::size_t n) const {
  std::lock_guard<std::mutex> lock(impl_->mutex);
  impl_->ensure_locked(n + 1);
  return impl_->memo[n];
}

Word DigitWord::prefix(std::size_t n) const {
  Word out;
  out.reserve(n);
  append_range(0, n, out);
  return out;
}

void DigitWord::append_range(std::size_t from, std::size_t to, Word& out) const {
  if (to <= from) return;
  std::lock_guard<std::mutex> lock(impl_->mutex);
  impl_->ensure_locked(to);
  out.insert(out.end(), impl_->memo.begin() + static_cast<std::ptrdiff_t>(from),
             impl_->memo.begin() + static_cast<std::ptrdiff_t>(to));
}

const Word& DigitWord::alphabet() const { return impl_->alphabet; }

const std::optional<WordStructure>& DigitWord::structure() const { return impl_->structure; }

std::optional<Word> DigitWord::finite_digits() const {
  const auto& s = impl_->structure;
  if (!s || s->period != Word{0}) return std::nullopt;
  Word w = s->preperiod;
  while (!w.empty() && w.back() == 0) w.pop_back();
  return w;
}

DigitWord DigitWord::shifted(std::size_t k) const {
  if (k == 0) return *this;
  std::optional<WordStructure> s;
  if (impl_->structure) {
    const auto& base = *impl_->structure;
    if (k < base.preperiod.size()) {
      s = WordStructure{Word(base.preperiod.begin() + static_cast<std::ptrdiff_t>(k),
                             base.preperiod.end()),
                        base.period};
    } else {
      Word per = base.period;
      std::rotate(per.begin(),
                  per.begin() + static_cast<std::ptrdiff_t>((k - base.preperiod.size()) % per.size()),
                  per.end());
      s = WordStructure{{}, per};
    }
    return periodic(s->preperiod, s->period);
  }
  DigitWord base = *this;
  return from_extender(
      [base, k](Word& memo, std::size_t target) {
        base.append_range(k + memo.size(), k + target, memo);
      },
      impl_->alphabet);
}

DigitWord DigitWord::prepend(const Word& head) const {
  if (head.empty()) return *this;
  if (impl_->structure) {
    Word pre = head;
    pre.insert(pre.end(), impl_->structure->preperiod.begin(), impl_->structure->preperiod.end());
    return periodic(std::move(pre), impl_->structure->period);
  }
  DigitWord base = *this;
  Word alphabet = impl_->alphabet;
  alphabet.insert(alphabet.end(), head.begin(), head.end());
  return from_extender(
      [base, head](Word& memo, std::size_t target) {
        while (memo.size() < target && memo.size() < head.size()) memo.push_back(head[memo.size()]);
        if (memo.size() < target) {
          base.append_range(memo.size() - head.size(), target - head.size(), memo);
        }
      },
      std::move(alphabet));
}

DigitWord DigitWord::mapped(const std::function<Digit(Digit)>& f, Word alphabet) const {
  if (impl_->structure) {
    WordStructure s = *impl_->structure;
    for (auto& d : s.preperiod) d = f(d);
    for (auto& d : s.period) d = f(d);
    return periodic(std::move(s.preperiod), std::move(s.period));
  }
  DigitWord base = *this;
  return from_extender(
      [base, f](Word& memo, std::size_t target) {
        const std::size_t start = memo.size();
        base.append_range(start, target, memo);
        for (std::size_t i = start; i < memo.size(); ++i) memo[i] = f(memo[i]);
      },
      std::move(alphabet));
}

// ---------------------------------------------------------------------------
// Mechanical words

DigitWord lower_mechanical(const Slope& alpha, const Intercept& rho) {
  return DigitWord::from_extender(
      [alpha, rho](Word& memo, std::size_t target) {
        const auto start = static_cast<std::int64_t>(memo.size());
        std::int64_t prev = alpha.floor_linear(start, rho);
        for (auto n = start; n < static_cast<std::int64_t>(target); ++n) {
          const std::int64_t next = alpha.floor_linear(n + 1, rho);
          memo.push_back(static_cast<Digit>(next - prev));
          prev = next;
        }
      },
      {0, 1});
}

DigitWord upper_mechanical(const Slope& alpha, const Intercept& rho) {
  return DigitWord::from_extender(
      [alpha, rho](Word& memo, std::size_t target) {
        const auto start = static_cast<std::int64_t>(memo.size());
        std::int64_t prev = alpha.ceil_linear(start, rho);
        for (auto n = start; n < static_cast<std::int64_t>(target); ++n) {
          const std::int64_t next = alpha.ceil_linear(n + 1, rho);
          memo.push_back(static_cast<Digit>(next - prev));
          prev = next;
        }
      },
      {0, 1});
}

DigitWord characteristic(const Slope& alpha) { return lower_mechanical(alpha).shifted(1); }

DigitWord fibonacci_word() {
  return DigitWord::from_extender(
      [](Word& memo, std::size_t target) {
        // memo always holds some f_n; f_{n+1} = f_n f_{n-1} and f_{n-1} is a prefix of f_n.
        if (memo.size() < 2) memo = {0, 1};
        std::size_t a = 1;  // |f_{n-1}|
        std::size_t b = 2;  // |f_n|
        while (b < memo.size()) {
          const std::size_t c = a + b;
          a = b;
          b = c;
        }
        while (memo.size() < target) {
          Word head(memo.begin(), memo.begin() + static_cast<std::ptrdiff_t>(a));
          memo.insert(memo.end(), head.begin(), head.end());
          const std::size_t c = a + b;
          a = b;
          b = c;
        }
      },
      {0, 1});
}

Word fibonacci_prefix(std::size_t n) {
  Word f0{0};
  Word f1{0, 1};
  if (n <= 1) return Word(f0.begin(), f0.begin() + static_cast<std::ptrdiff_t>(n));
  while (f1.size() < n) {
    Word next = f1;
    next.insert(next.end(), f0.begin(), f0.end());
    f0 = std::move(f1);
    f1 = std::move(next);
  }
  f1.resize(n);
  return f1;
}

// ---------------------------------------------------------------------------
// Combinatorics

std::size_t height(const Word& w) {
  return static_cast<std::size_t>(std::count(w.begin(), w.end(), Digit{1}));
}

mpq_class slope_of(const Word& w) {
  if (w.empty()) throw PreconditionError("slope of the empty word is undefined");
  mpq_class r(static_cast<unsigned long>(height(w)), static_cast<unsigned long>(w.size()));
  r.canonicalize();
  return r;
}

namespace {

unsigned bits_per_digit(const Word& w) {
  Digit top = 0;
  for (Digit d : w) top = std::max(top, d);
  unsigned bits = 1;
  while ((1u << bits) <= top) ++bits;
  return bits;
}

}  // namespace

FactorSet factor_set(const DigitWord& w, std::size_t n, std::size_t window) {
  if (window < n) throw PreconditionError("factor window must be at least the factor length");
  Word p = w.prefix(window);
  std::set<Word> seen;
  for (std::size_t i = 0; i + n <= p.size(); ++i) {
    seen.emplace(p.begin() + static_cast<std::ptrdiff_t>(i),
                 p.begin() + static_cast<std::ptrdiff_t>(i + n));
  }
  return FactorSet{n, std::vector<Word>(seen.begin(), seen.end())};
}

std::size_t complexity(const Word& p, std::size_t n) {
  if (p.size() < n) throw PreconditionError("factor window must be at least the factor length");
  if (n == 0) return 1;
  const unsigned bits = bits_per_digit(p);
  if (n * bits > 64) {
    std::set<Word> seen;
    for (std::size_t i = 0; i + n <= p.size(); ++i) {
      seen.emplace(p.begin() + static_cast<std::ptrdiff_t>(i),
                   p.begin() + static_cast<std::ptrdiff_t>(i + n));
    }
    return seen.size();
  }
  const std::uint64_t mask = n * bits == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (n * bits)) - 1);
  std::unordered_set<std::uint64_t> seen;
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    key = ((key << bits) | p[i]) & mask;
    if (i + 1 >= n) seen.insert(key);
  }
  return seen.size();
}

std::size_t complexity(const DigitWord& w, std::size_t n, std::size_t window) {
  if (window < n) throw PreconditionError("factor window must be at least the factor length");
  return complexity(w.prefix(window), n);
}

BalanceVerdict is_balanced(const Word& p) {
  BalanceVerdict out;
  out.window = p.size();
  Word letters = normalize_alphabet(p);
  if (letters.size() > 2) throw PreconditionError("balance is defined for words over two letters");
  if (letters.size() < 2) return out;
  const Digit low = letters[0];

  // Palindromic tree over the prefix: every distinct palindromic factor is a
  // node, and an edge c from node u means c u c occurs.
  struct Node {
    long len;
    int link;
    std::array<int, 2> next;
    std::size_t end;  // end index of first occurrence
  };
  std::vector<Node> tree;
  tree.reserve(p.size() + 2);
  tree.push_back({-1, 0, {0, 0}, 0});
  tree.push_back({0, 0, {0, 0}, 0});
  int last = 1;
  auto bit = [&](std::size_t i) { return p[i] == low ? 0 : 1; };
  for (std::size_t i = 0; i < p.size(); ++i) {
    const int c = bit(i);
    auto fits = [&](int v) {
      const long j = static_cast<long>(i) - tree[v].len - 1;
      return j >= 0 && bit(static_cast<std::size_t>(j)) == c;
    };
    int cur = last;
    while (!fits(cur)) cur = tree[cur].link;
    if (tree[cur].next[c]) {
      last = tree[cur].next[c];
      continue;
    }
    const int node = static_cast<int>(tree.size());
    tree.push_back({tree[cur].len + 2, 1, {0, 0}, i});
    tree[cur].next[c] = node;
    if (tree[node].len > 1) {
      int v = tree[cur].link;
      while (!fits(v)) v = tree[v].link;
      tree[node].link = tree[v].next[c];
    }
    last = node;
  }
  long best = -1;
  for (std::size_t v = 1; v < tree.size(); ++v) {
    if (tree[v].next[0] && tree[v].next[1] && (best < 0 || tree[v].len < tree[best].len)) {
      best = static_cast<long>(v);
    }
  }
  if (best >= 0) {
    out.balanced = false;
    const Node& n = tree[static_cast<std::size_t>(best)];
    if (n.len == 0) {
      out.witness = Word{};
    } else {
      out.witness = Word(p.begin() + static_cast<std::ptrdiff_t>(n.end + 1 - n.len),
                         p.begin() + static_cast<std::ptrdiff_t>(n.end + 1));
    }
  }
  return out;
}

BalanceVerdict is_balanced(const DigitWord& w, std::size_t window) {
  return is_balanced(w.prefix(window));
}

std::string_view to_string(LexOrder order) {
  switch (order) {
    case LexOrder::kLess: return "Less";
    case LexOrder::kEqualToDepth: return "EqualToDepth";
    case LexOrder::kGreater: return "Greater";
  }
  return "";
}

LexResult lex_compare(const Word& x, const Word& y) {
  const std::size_t n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] != y[i]) return {x[i] < y[i] ? LexOrder::kLess : LexOrder::kGreater, i};
  }
  return {LexOrder::kEqualToDepth, n};
}

LexResult lex_compare(const DigitWord& x, const DigitWord& y, std::size_t depth) {
  std::size_t pos = 0;
  std::size_t chunk = 64;
  Word a, b;
  while (pos < depth) {
    const std::size_t end = std::min(depth, pos + chunk);
    a.clear();
    b.clear();
    x.append_range(pos, end, a);
    y.append_range(pos, end, b);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] != b[i]) return {a[i] < b[i] ? LexOrder::kLess : LexOrder::kGreater, pos + i};
    }
    pos = end;
    chunk *= 2;
  }
  return {LexOrder::kEqualToDepth, depth};
}

DigitWord exchange(const DigitWord& w) {
  for (Digit d : w.alphabet()) {
    if (d > 1) throw PreconditionError("exchange needs a word over {0, 1}");
  }
  return w.mapped([](Digit d) { return static_cast<Digit>(1 - d); }, {0, 1});
}

DigitWord rename(const DigitWord& w, Digit a, Digit b) {
  for (Digit d : w.alphabet()) {
    if (d > 1) throw PreconditionError("rename needs a word over {0, 1}");
  }
  return w.mapped([a, b](Digit d) { return d == 0 ? a : b; }, {a, b});
}

DigitWord shift(const DigitWord& w, std::size_t k) { return w.shifted(k); }

mpq_class frequency(const DigitWord& w, const Word& u, std::size_t n) {
  if (n == 0) throw PreconditionError("frequency needs N >= 1");
  if (u.empty()) return 1;
  Word p = w.prefix(n + u.size() - 1);
  unsigned long count = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (std::equal(u.begin(), u.end(), p.begin() + static_cast<std::ptrdiff_t>(j))) ++count;
  }
  mpq_class r(count, static_cast<unsigned long>(n));
  r.canonicalize();
  return r;
}

std::size_t max_run(const Word& p, Digit letter) {
  std::size_t best = 0;
  std::size_t run = 0;
  for (Digit d : p) {
    run = d == letter ? run + 1 : 0;
    best = std::max(best, run);
  }
  return best;
}

}  // namespace sturmbeta
