#pragma once

// Brute-force reference implementations used only by the tests.

#include <gmpxx.h>

#include <set>
#include <string>
#include <vector>

#include "sturmbeta/words.hpp"

namespace oracle {

using sturmbeta::Digit;
using sturmbeta::Word;

// floor(n * (p + q sqrt d) / r) by integer square roots; r > 0, d not a square.
inline long surd_floor(long n, long p, long q, long d, long r) {
  mpz_class a = mpz_class(n) * p;
  mpz_class b = mpz_class(n) * q;
  mpz_class root;
  mpz_class sq = b * b * d;
  mpz_sqrt(root.get_mpz_t(), sq.get_mpz_t());
  mpz_class num = b == 0 ? a : (b > 0 ? mpz_class(a + root) : mpz_class(a - root - 1));
  mpz_class out;
  mpz_class den(r);
  mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out.get_si();
}

inline Word surd_lower_mechanical(long p, long q, long d, long r, std::size_t n) {
  Word w;
  for (std::size_t i = 0; i < n; ++i) {
    w.push_back(static_cast<Digit>(surd_floor(static_cast<long>(i) + 1, p, q, d, r) -
                                   surd_floor(static_cast<long>(i), p, q, d, r)));
  }
  return w;
}

// Height-difference definition: all equal-length factors differ in height by <= 1.
inline bool balanced_by_heights(const Word& w) {
  std::vector<long> prefix(w.size() + 1, 0);
  for (std::size_t i = 0; i < w.size(); ++i) prefix[i + 1] = prefix[i] + (w[i] != w[0] ? 0 : 1);
  for (std::size_t len = 1; len <= w.size(); ++len) {
    long lo = 1L << 40, hi = -(1L << 40);
    for (std::size_t i = 0; i + len <= w.size(); ++i) {
      long h = prefix[i + len] - prefix[i];
      lo = std::min(lo, h);
      hi = std::max(hi, h);
    }
    if (hi - lo > 1) return false;
  }
  return true;
}

inline bool occurs(const Word& w, const Word& u) {
  if (u.size() > w.size()) return false;
  for (std::size_t i = 0; i + u.size() <= w.size(); ++i) {
    if (std::equal(u.begin(), u.end(), w.begin() + static_cast<long>(i))) return true;
  }
  return false;
}

// Shortest palindrome p with x p x and y p y both factors, or -1.
inline long shortest_unbalance_palindrome(const Word& w, Digit x, Digit y) {
  std::set<Word> pals;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i; j <= w.size(); ++j) {
      Word u(w.begin() + static_cast<long>(i), w.begin() + static_cast<long>(j));
      Word r(u.rbegin(), u.rend());
      if (u == r) pals.insert(u);
    }
  }
  long best = -1;
  for (const auto& p : pals) {
    Word a{x}, b{y};
    a.insert(a.end(), p.begin(), p.end());
    a.push_back(x);
    b.insert(b.end(), p.begin(), p.end());
    b.push_back(y);
    if (occurs(w, a) && occurs(w, b)) {
      if (best < 0 || static_cast<long>(p.size()) < best) best = static_cast<long>(p.size());
    }
  }
  return best;
}

inline std::size_t factor_count(const Word& w, std::size_t n) {
  std::set<std::string> s;
  for (std::size_t i = 0; i + n <= w.size(); ++i) {
    s.insert(sturmbeta::to_string(Word(w.begin() + static_cast<long>(i),
                                       w.begin() + static_cast<long>(i + n))));
  }
  return s.size();
}

// ceil(x) = -floor(-x)
inline Word surd_upper_mechanical(long p, long q, long d, long r, std::size_t n) {
  Word w;
  for (std::size_t i = 0; i < n; ++i) {
    const long a = -surd_floor(static_cast<long>(i) + 1, -p, -q, d, r);
    const long b = -surd_floor(static_cast<long>(i), -p, -q, d, r);
    w.push_back(static_cast<Digit>(a - b));
  }
  return w;
}

// Root of 1 = sum w(n) x^-(n+1) by plain long double bisection.
inline long double naive_root(const Word& w, long double lo, long double hi) {
  for (int it = 0; it < 200; ++it) {
    long double mid = (lo + hi) / 2, y = 1 / mid, p = y, s = 0;
    for (Digit d : w) {
      s += d * p;
      p *= y;
    }
    (s > 1 ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

}  // namespace oracle
