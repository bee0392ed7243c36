#include "acceptance/battery.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "sturmbeta/beta.hpp"
#include "sturmbeta/errors.hpp"
#include "sturmbeta/mahler.hpp"
#include "sturmbeta/parry_measure.hpp"
#include "sturmbeta/words.hpp"

namespace sturmbeta::acceptance {
namespace {

const char* kGolden = "surd:(3-1*sqrt(5))/2";
const char* kFibonacci34 = "0100101001001010010100100101001001";

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[fails: " << what << "] ";
    }
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// 1: the displayed Fibonacci prefix and the lower mechanical word at rho = 0.
void fibonacci_prefix(Outcome& o) {
  const Slope g = Slope::parse(kGolden);
  const std::string fib = fibonacci_word().prefix_string(34);
  const std::string lower = lower_mechanical(g, Intercept()).prefix_string(34);
  const std::string chr = characteristic(g).prefix_string(34);
  o.require(fib == kFibonacci34, "fibonacci_word(34) = displayed string");
  o.require(lower == kFibonacci34, "lower_mechanical(tau^-2, 0) prefix(34) = displayed string");
  o.detail << "fibonacci=" << fib << " lower_mechanical(rho=0)=" << lower
           << " characteristic=" << chr << " (characteristic==fibonacci: " << (chr == fib ? "yes" : "no")
           << "; lower(rho=0) == 0+fibonacci: " << (lower == "0" + fib.substr(0, 33) ? "yes" : "no") << ")";
}

// 2: extreme words of the golden orbit closure.
void orbit_extremes(Outcome& o) {
  const Slope g = Slope::parse(kGolden);
  const DigitWord one_c = upper_mechanical(g, Intercept());
  const DigitWord zero_c = lower_mechanical(g, Intercept());
  o.require(one_c.prefix_string(26) == "10100101001001010010100100", "1c prefix(26)");
  o.require(zero_c.prefix_string(26) == "00100101001001010010100100", "0c prefix(26)");
  std::size_t bad = 0;
  std::size_t undecided = 0;
  const std::size_t depth = 20000;
  for (std::size_t n = 1; n <= 1000; ++n) {
    const DigitWord s = shift(one_c, n);
    const LexResult lo = lex_compare(zero_c, s, depth);
    const LexResult hi = lex_compare(s, one_c, depth);
    if (lo.order == LexOrder::kGreater || hi.order == LexOrder::kGreater) ++bad;
    if (lo.order == LexOrder::kEqualToDepth || hi.order == LexOrder::kEqualToDepth) ++undecided;
  }
  o.require(bad == 0 && undecided == 0, "0c < sigma^n(1c) < 1c for 1 <= n <= 1000");
  o.detail << "1c=" << one_c.prefix_string(26) << " 0c=" << zero_c.prefix_string(26) << " order violations=" << bad
           << " undecided=" << undecided << " (depth " << depth << ")";
}

// 3: solve and re-expand to 2000 digits.
void round_trip(Outcome& o) {
  SolveOptions opt;
  opt.verification_depth = 2000;
  const BetaPoint one = [](const RealBall&, unsigned bits) { return RealBall(1L, bits); };
  int done = 0;
  for (const char* a : {kGolden, "surd:(-1+1*sqrt(2))", "surd:(-1+1*sqrt(3))/2"}) {
    for (auto [lo, hi] : {std::pair<Digit, Digit>{0, 1}, {1, 3}}) {
      const DigitWord s = sturmian_word(Slope::parse(a), lo, hi);
      const BetaNumber beta = solve_beta(s, opt);
      const bool same = d_beta(beta, one, 2000) == s.prefix(2000);
      o.require(same, std::string(a) + " (" + std::to_string(lo) + "," + std::to_string(hi) + ")");
      o.detail << a << "(" << int(lo) << "," << int(hi) << ") beta=" << beta.value().midpoint_string(12)
               << (same ? " ok; " : " MISMATCH; ");
      ++done;
    }
  }
  o.detail << done << " words";
}

// 4: orbit confinement and diameter.
void orbit_confinement(Outcome& o) {
  const Slope g = Slope::parse(kGolden);
  {
    const BetaNumber beta = sturmian_beta(g, 0, 1);
    const OrbitRecord rec = orbit(beta, 10000);
    const RealBall lower = RealBall(1L) - beta.value().reciprocal();
    std::size_t outside = 0;
    for (const RealBall& p : rec.points) {
      if (p.certainly_less(lower) || p.certainly_greater(RealBall(1L))) ++outside;
    }
    const RealBall d = diam_estimate(rec);
    const RealBall inv = beta.value().reciprocal();
    const bool in_range = !d.certainly_greater(inv) &&
                          d.certainly_greater(inv - RealBall::from_rational(mpq_class(1, 1000)));
    o.require(outside == 0, "orbit inside [1-1/beta, 1]");
    o.require(in_range, "diam in [1/beta - 1e-3, 1/beta]");
    o.detail << "(0,1): " << rec.points.size() << " points, outside=" << outside
             << ", diam=" << d.midpoint_string(15) << ", 1/beta=" << inv.midpoint_string(15) << "; ";
  }
  {
    const BetaNumber beta = sturmian_beta(g, 1, 3);
    const RealBall d = diam_estimate(beta, 10000);
    const RealBall two = RealBall(2L) / beta.value();
    const bool in_range = !d.certainly_greater(two) &&
                          d.certainly_greater(two - RealBall::from_rational(mpq_class(1, 1000)));
    o.require(in_range, "diam in [2/beta - 1e-3, 2/beta] for (1,3)");
    o.detail << "(1,3): diam=" << d.midpoint_string(15) << ", 2/beta=" << two.midpoint_string(15);
  }
}

std::vector<std::string> test_slopes() {
  return {kGolden, "surd:(-1+1*sqrt(2))", "surd:(-1+1*sqrt(3))/2", "surd:(-2+1*sqrt(5))", "surd:(-1+1*sqrt(5))/2",
          "cf:[0;3,1,4,(1,5)]"};
}

// 5: factor complexity and balance at window 1e5.
void complexity_balance(Outcome& o) {
  const std::size_t window = 100000;
  for (const std::string& s : test_slopes()) {
    const Slope alpha = Slope::parse(s);
    const DigitWord w = characteristic(alpha);
    const Word prefix = w.prefix(window);
    std::size_t worst = 0;
    for (std::size_t n = 1; n <= 30; ++n) {
      if (complexity(prefix, n) != n + 1) worst = n;
    }
    const bool balanced = is_balanced(w, window).balanced;
    o.require(worst == 0, s + " complexity");
    o.require(balanced, s + " balance");
    o.detail << s << (worst == 0 && balanced ? " ok; " : " FAIL; ");
  }
}

std::string random_cf(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(1, 7);
  std::ostringstream s;
  s << "cf:[0;" << coef(rng) + 1 << "," << coef(rng) << "," << coef(rng) << ",(" << coef(rng) << "," << coef(rng)
    << ")]";
  return s.str();
}

// 6: three order laws on random cases.
void order_laws(Outcome& o) {
  std::mt19937_64 rng(6060);
  const std::size_t depth = 10000;
  const int cases = 200;

  int decided = 0, violations = 0;
  std::uniform_int_distribution<int> num(0, 999);
  const auto slopes = test_slopes();
  for (int i = 0; i < cases; ++i) {
    const Slope alpha = Slope::parse(slopes[static_cast<std::size_t>(i) % slopes.size()]);
    int x = num(rng), y = num(rng);
    while (y == x) y = num(rng);
    if (x > y) std::swap(x, y);
    const LexResult r = lex_compare(lower_mechanical(alpha, Intercept::rational(mpq_class(x, 1000))),
                                    lower_mechanical(alpha, Intercept::rational(mpq_class(y, 1000))), depth);
    if (r.order == LexOrder::kGreater) ++violations;
    if (r.order == LexOrder::kLess) ++decided;
  }
  o.require(violations == 0 && decided == cases, "intercept monotonicity");
  o.detail << "intercepts: " << decided << "/" << cases << " decided, " << violations << " violations; ";

  decided = 0;
  violations = 0;
  for (int i = 0; i < cases; ++i) {
    const Slope a = Slope::parse(random_cf(rng));
    const Slope b = Slope::parse(random_cf(rng));
    const LexResult r = lex_compare(characteristic(a), characteristic(b), depth);
    if (r.order == LexOrder::kEqualToDepth) continue;
    ++decided;
    if ((r.order == LexOrder::kLess) != a.less_than(b)) ++violations;
  }
  o.require(violations == 0 && decided >= cases * 9 / 10, "slope monotonicity of c_alpha");
  o.detail << "slopes: " << decided << "/" << cases << " decided, " << violations << " violations; ";

  decided = 0;
  violations = 0;
  SolveOptions opt;
  opt.verification_depth = 300;
  const std::pair<Digit, Digit> digits[] = {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}};
  std::uniform_int_distribution<int> pick(0, 4);
  for (int i = 0; i < cases; ++i) {
    const auto [a1, b1] = digits[pick(rng)];
    const auto [a2, b2] = digits[pick(rng)];
    const BetaNumber x = sturmian_beta(Slope::parse(random_cf(rng)), a1, b1, opt);
    const BetaNumber y = sturmian_beta(Slope::parse(random_cf(rng)), a2, b2, opt);
    const LexResult r = lex_compare(x.expansion_of_one(), y.expansion_of_one(), depth);
    if (r.order == LexOrder::kEqualToDepth) continue;
    ++decided;
    const bool less = x.value().certainly_less(y.value());
    const bool greater = x.value().certainly_greater(y.value());
    if (!(less || greater) || (r.order == LexOrder::kLess) != less) ++violations;
  }
  o.require(violations == 0 && decided >= cases * 9 / 10, "d_beta(1) order vs beta order");
  o.detail << "expansions: " << decided << "/" << cases << " decided, " << violations << " violations";
}

// 7: the three evaluations of the identity at 512 bits.
void identity(Outcome& o) {
  const Slope g = Slope::parse(kGolden);
  for (auto [a, b] : {std::pair<Digit, Digit>{0, 1}, {1, 3}}) {
    const IdentityReport r = identity_check(g, a, b, 512);
    o.require(r.max_gap < 1e-40, "gap below 1e-40 for (" + std::to_string(a) + "," + std::to_string(b) + ")");
    o.detail << "(" << int(a) << "," << int(b) << ") max gap " << fmt(r.max_gap) << "; ";
  }
}

// 8: frequency defects and the Birkhoff cross-check.
void defects(Outcome& o) {
  struct Member {
    const char* slope;
    Digit a, b;
    ProofCase expect;
  };
  const Member members[] = {
      {kGolden, 0, 1, ProofCase::kAZero},
      {"surd:(-1+1*sqrt(2))", 0, 1, ProofCase::kAZero},
      {"surd:(-1+1*sqrt(3))/2", 0, 2, ProofCase::kAZero},
      {kGolden, 1, 3, ProofCase::kBAlphaAbove},
      {"surd:(-1+1*sqrt(2))", 1, 3, ProofCase::kBAlphaAbove},
      {"surd:(-1+1*sqrt(3))/2", 1, 3, ProofCase::kBAlphaAbove},
      {"surd:(-2+1*sqrt(5))", 1, 4, ProofCase::kBAlphaBelow},
      {"surd:(-2+1*sqrt(5))", 1, 3, ProofCase::kBAlphaBelow},
      {"surd:(-5+1*sqrt(26))", 1, 4, ProofCase::kBAlphaBelow},
  };
  const RealBall threshold = RealBall::from_rational(mpq_class(1, 1000000));
  double worst_birkhoff = 0;
  for (const Member& m : members) {
    const FrequencyReport r = frequency_report(Slope::parse(m.slope), m.a, m.b, 128);
    o.require(r.proof_case == m.expect, std::string(m.slope) + " proof case");
    const bool use_b = m.expect != ProofCase::kBAlphaBelow;
    const RealBall& defect = use_b ? r.defect_b : r.defect_a;
    o.require(defect.certainly_greater(threshold), std::string(m.slope) + " defect lower bound > 1e-6");
    const BirkhoffRun run = birkhoff_frequencies(r.beta, m.a, m.b, 808, 20, 100000);
    for (std::size_t i = 0; i < run.freq_a.size(); ++i) {
      worst_birkhoff = std::max(worst_birkhoff, std::fabs(run.freq_a[i] - r.mu_a.midpoint_double()));
      worst_birkhoff = std::max(worst_birkhoff, std::fabs(run.freq_b[i] - r.mu_b.midpoint_double()));
    }
    o.detail << m.slope << "(" << int(m.a) << "," << int(m.b) << ") " << to_string(r.proof_case) << " defect_"
             << (use_b ? "b" : "a") << "=" << defect.midpoint_string(8) << "; ";
  }
  o.require(worst_birkhoff < 1e-2, "Birkhoff averages within 1e-2");
  o.detail << "worst Birkhoff deviation " << fmt(worst_birkhoff) << " (seed 808, 20 points, length 1e5)";
}

// 9: admissibility at the golden mean against brute-force enumeration.
void parry_oracle(Outcome& o) {
  const BetaNumber tau = solve_beta(DigitWord::finite({1, 1}));
  std::size_t words = 0, disagreements = 0;
  for (std::size_t len = 1; len <= 12; ++len) {
    for (unsigned mask = 0; mask < (1u << len); ++mask) {
      Word w(len);
      for (std::size_t i = 0; i < len; ++i) w[i] = (mask >> (len - 1 - i)) & 1;
      // Every suffix of w0^inf must be <= (10)^inf.
      bool ok = true;
      for (std::size_t n = 0; n < len && ok; ++n) {
        for (std::size_t k = 0;; ++k) {
          const int x = n + k < len ? w[n + k] : 0;
          const int y = k % 2 == 0 ? 1 : 0;
          if (x != y) {
            ok = x < y;
            break;
          }
          if (n + k >= len + 1) break;
        }
      }
      ++words;
      if (is_admissible(w, tau).admissible != ok) ++disagreements;
    }
  }
  o.require(disagreements == 0, "agreement with enumeration");
  o.detail << words << " words, " << disagreements << " disagreements";
}

struct Spec {
  int id;
  const char* title;
  double limit;
  void (*body)(Outcome&);
};

const Spec kSpecs[] = {
    {1, "Fibonacci prefix", 1, fibonacci_prefix},
    {2, "orbit closure extremes", 5, orbit_extremes},
    {3, "solve/re-expand round trip", 60, round_trip},
    {4, "orbit confinement and diameter", 120, orbit_confinement},
    {5, "complexity and balance", 60, complexity_balance},
    {6, "order laws", 0, order_laws},
    {7, "Mahler identity", 30, identity},
    {8, "frequency defects", 300, defects},
    {9, "Parry admissibility oracle", 10, parry_oracle},
};

}  // namespace

std::vector<CriterionResult> run(const std::vector<int>& which) {
  std::vector<CriterionResult> out;
  for (const Spec& s : kSpecs) {
    if (!which.empty() && std::find(which.begin(), which.end(), s.id) == which.end()) continue;
    CriterionResult r;
    r.id = s.id;
    r.title = s.title;
    r.limit_seconds = s.limit;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      s.body(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "[exception: " << e.what() << "]";
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.pass = o.pass && (r.limit_seconds == 0 || r.seconds < r.limit_seconds);
    if (o.pass && !r.pass) o.detail << " [over time limit]";
    r.detail = o.detail.str();
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream s;
  s << "criterion " << r.id << ' ' << (r.pass ? "PASS" : "FAIL") << "  " << r.title << ": " << r.detail << " ("
    << fmt(r.seconds) << " s";
  if (r.limit_seconds > 0) s << " / limit " << fmt(r.limit_seconds) << " s";
  s << ")";
  return s.str();
}

}  // namespace sturmbeta::acceptance
