#include "sturmbeta/parry_measure.hpp"

#include <cmath>
#include <random>

#include "sturmbeta/errors.hpp"
#include "sturmbeta/numeric/precision.hpp"

namespace sturmbeta {
namespace {

// sum_{k >= m} y^k = y^m / (1 - y)
RealBall geometric_tail(const RealBall& y, std::size_t m) {
  return y.pow(m) / (RealBall(1L, y.precision()) - y);
}

// sum_{k >= m} k y^k = m y^m / (1 - y) + y^(m+1) / (1 - y)^2
RealBall weighted_tail(const RealBall& y, std::size_t m) {
  RealBall one_minus = RealBall(1L, y.precision()) - y;
  RealBall ym = y.pow(m);
  return ym.mul_long(static_cast<long>(m)) / one_minus + ym * y / (one_minus * one_minus);
}

RealBall add_tail(const RealBall& sum, const RealBall& tail) {
  return sum.widen_upper(tail);
}

CrossChecked cross(RealBall first, RealBall second, const char* what) {
  auto both = RealBall::intersect(first, second);
  if (!both) {
    throw IdentityViolated(std::string(what) + ": the two formulas give disjoint enclosures " +
                           first.to_string() + " and " + second.to_string());
  }
  return {std::move(first), std::move(second), *both};
}

struct Workspace {
  unsigned work;
  RealBall beta;
  RealBall y;
  Word digits;
  OrbitRecord orbit;
};

Workspace prepare(const BetaNumber& beta, std::size_t n, unsigned bits) {
  if (n == 0) throw PreconditionError("truncation must be positive");
  const unsigned work = bits + 32;
  Workspace ws{work, beta.value_at(work).with_precision(work), RealBall(), {}, orbit(beta, n + 1, work)};
  ws.y = ws.beta.reciprocal();
  ws.digits = ws.orbit.digits;
  if (ws.orbit.truncated_at || ws.digits.size() < n + 1) {
    throw PrecisionExhausted("orbit of 1 is not certified to " + std::to_string(n + 1) + " steps");
  }
  return ws;
}

void check_heights(const Word& digits, const Slope& alpha, Digit b, std::size_t n) {
  std::int64_t h = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (digits[i] == b) ++h;
    const std::int64_t want = alpha.ceil_linear(static_cast<std::int64_t>(i) + 1, Intercept());
    if (h != want) {
      throw SlopeMismatch("count of " + std::to_string(b) + " in the first " + std::to_string(i + 1) +
                          " digits of d_beta(1) is " + std::to_string(h) + ", ceil(alpha*" +
                          std::to_string(i + 1) + ") is " + std::to_string(want));
    }
  }
}

}  // namespace

CrossChecked normalizing_factor_terms(const BetaNumber& beta, std::size_t n, unsigned bits) {
  Workspace ws = prepare(beta, n, bits);
  const long b = beta.floor();
  RealBall by_orbit(0L, ws.work);
  RealBall by_digits(0L, ws.work);
  RealBall p(1L, ws.work);  // beta^-k
  for (std::size_t k = 0; k < n; ++k) {
    by_orbit += ws.orbit.points[k] * p;
    p *= ws.y;
    by_digits += p.mul_long(static_cast<long>((k + 1) * ws.digits[k]));
  }
  by_orbit = add_tail(by_orbit, geometric_tail(ws.y, n));
  by_digits = add_tail(by_digits, weighted_tail(ws.y, n + 1).mul_long(b));
  return cross(by_orbit, by_digits, "F(beta)");
}

RealBall normalizing_factor(const BetaNumber& beta, std::size_t n, unsigned bits) {
  return normalizing_factor_terms(beta, n, bits).value;
}

RealBall density(const BetaNumber& beta, const RealBall& x, std::size_t n, unsigned bits) {
  Workspace ws = prepare(beta, n, bits);
  RealBall sum(0L, ws.work);
  RealBall p(1L, ws.work);
  for (std::size_t k = 0; k < n; ++k) {
    const RealBall& t = ws.orbit.points[k];
    if (x.certainly_less(t)) {
      sum += p;
    } else if (!t.certainly_less_equal(x)) {
      sum = sum.widen_upper(p);
    }
    p *= ws.y;
  }
  sum = add_tail(sum, geometric_tail(ws.y, n));
  return sum / normalizing_factor(beta, n, bits);
}

CrossChecked series_I(const BetaNumber& beta, const Slope& alpha, std::size_t n, unsigned bits) {
  Workspace ws = prepare(beta, n, bits);
  const Digit b = static_cast<Digit>(beta.floor());
  check_heights(ws.digits, alpha, b, n);
  RealBall direct(0L, ws.work);
  RealBall swapped(0L, ws.work);
  RealBall p = ws.y;  // beta^-(k+1)
  for (std::size_t k = 0; k < n; ++k) {
    const std::int64_t c = alpha.ceil_linear(static_cast<std::int64_t>(k), Intercept());
    if (ws.digits[k] != 0 && c != 0) direct += p.mul_long(static_cast<long>(c) * ws.digits[k]);
    if (ws.digits[k] == b) swapped += ws.orbit.points[k + 1] * p;
    p *= ws.y;
  }
  direct = add_tail(direct, (ws.y * weighted_tail(ws.y, n)).mul_long(b));
  swapped = add_tail(swapped, ws.y * geometric_tail(ws.y, n));
  return cross(direct, swapped, "I");
}

CrossChecked series_J(const BetaNumber& beta, const Slope& alpha, Digit a, Digit b, std::size_t n,
                      unsigned bits) {
  if (a >= b) throw PreconditionError("series J needs a < b");
  if (static_cast<long>(b) != beta.floor()) {
    throw FloorMismatch("b = " + std::to_string(b) + " but floor(beta) = " + std::to_string(beta.floor()));
  }
  Workspace ws = prepare(beta, n, bits);
  for (std::size_t k = 0; k < n; ++k) {
    if (ws.digits[k] != a && ws.digits[k] != b) {
      throw PreconditionError("d_beta(1) has digit " + std::to_string(ws.digits[k]) + " outside {a, b}");
    }
  }
  check_heights(ws.digits, alpha, b, n);
  RealBall direct(0L, ws.work);
  RealBall swapped(0L, ws.work);
  RealBall p = ws.y;
  for (std::size_t k = 0; k < n; ++k) {
    const std::int64_t c = alpha.ceil_linear(static_cast<std::int64_t>(k), Intercept());
    const long weight = (static_cast<long>(k) - static_cast<long>(c)) * ws.digits[k];
    if (ws.digits[k] == b) {
      direct += p;
      swapped += p;
    } else {
      swapped += ws.orbit.points[k + 1] * p;
    }
    if (weight != 0) direct += p.mul_long(weight);
    p *= ws.y;
  }
  direct = add_tail(direct, weighted_tail(ws.y, n + 1).mul_long(static_cast<long>(b) + 1));
  swapped = add_tail(swapped, ws.y * geometric_tail(ws.y, n));
  return cross(direct, swapped, "J");
}

std::string_view to_string(ProofCase c) {
  switch (c) {
    case ProofCase::kAZero: return "a=0";
    case ProofCase::kBAlphaAbove: return "a>=1,b*alpha>1";
    case ProofCase::kBAlphaBelow: return "b*alpha<1";
    case ProofCase::kOutside: return "outside";
  }
  return "";
}

std::string_view to_string(DefectStatus s) {
  switch (s) {
    case DefectStatus::kCertified: return "Certified";
    case DefectStatus::kUnresolved: return "Unresolved";
    case DefectStatus::kViolated: return "Violated";
    case DefectStatus::kNotApplicable: return "NotApplicable";
  }
  return "";
}

namespace {

DefectStatus judge(const RealBall& defect) {
  if (defect.certainly_positive()) return DefectStatus::kCertified;
  if (!defect.contains_zero()) return DefectStatus::kViolated;
  return DefectStatus::kUnresolved;
}

FrequencyReport build_report(const Slope& alpha, Digit a, Digit b, unsigned bits) {
  SolveOptions opt;
  opt.bits = bits + 32;
  BetaNumber beta = sturmian_beta(alpha, a, b, opt);
  const double lb = std::log2(beta.value().midpoint_double());
  const std::size_t n = static_cast<std::size_t>(std::ceil((bits + 32 + std::log2(bits + 32.0) * 2) / lb)) + 64;

  FrequencyReport r{alpha, a, b, beta};
  r.terms = n;
  r.bits = bits;
  r.F = normalizing_factor(beta, n, bits);
  r.I = series_I(beta, alpha, n, bits).value;
  r.J = series_J(beta, alpha, a, b, n, bits).value;
  r.mu_b = r.I / r.F;
  r.mu_a = r.J / r.F;
  RealBall al = alpha.to_ball(bits + 32);
  r.defect_b = al - r.mu_b;
  r.defect_a = (RealBall(1L, bits + 32) - al) - r.mu_a;
  r.j_with_a_zero = a == 0;

  const RealBall ba = al.mul_long(b);
  if (a == 0) {
    r.proof_case = ProofCase::kAZero;
  } else if (ba.certainly_greater(RealBall(1L))) {
    r.proof_case = ProofCase::kBAlphaAbove;
  } else if (ba.certainly_less(RealBall(1L))) {
    r.proof_case = ProofCase::kBAlphaBelow;
  }
  switch (r.proof_case) {
    case ProofCase::kAZero:
    case ProofCase::kBAlphaAbove:
      r.defect_b_status = judge(r.defect_b);
      break;
    case ProofCase::kBAlphaBelow:
      r.defect_a_status = judge(r.defect_a);
      break;
    case ProofCase::kOutside:
      break;
  }
  return r;
}

}  // namespace

FrequencyReport frequency_report(const Slope& alpha, Digit a, Digit b, unsigned bits) {
  if (a >= b) throw PreconditionError("frequency report needs a < b");
  const auto ladder = default_ladder();
  std::optional<FrequencyReport> last;
  for (unsigned rung : ladder.rungs_from(bits)) {
    last = build_report(alpha, a, b, rung);
    if (last->defect_a_status != DefectStatus::kUnresolved && last->defect_b_status != DefectStatus::kUnresolved) {
      break;
    }
  }
  return *last;
}

BirkhoffRun birkhoff_frequencies(const BetaNumber& beta, Digit a, Digit b, std::uint64_t seed,
                                 std::size_t points, std::size_t length) {
  BirkhoffRun run;
  run.seed = seed;
  run.length = length;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  // Long double value of beta from a correctly rounded 64-bit-mantissa midpoint.
  const std::string mid = beta.value_at(128).midpoint_string(30);
  const long double bb = std::strtold(mid.c_str(), nullptr);
  for (std::size_t p = 0; p < points; ++p) {
    long double x = uniform(rng);
    run.start.push_back(static_cast<double>(x));
    std::size_t count_a = 0;
    std::size_t count_b = 0;
    for (std::size_t i = 0; i < length; ++i) {
      const long double y = bb * x;
      const long double d = std::floor(y);
      if (d == a) ++count_a;
      if (d == b) ++count_b;
      x = y - d;
    }
    run.freq_a.push_back(static_cast<double>(count_a) / static_cast<double>(length));
    run.freq_b.push_back(static_cast<double>(count_b) / static_cast<double>(length));
  }
  return run;
}

}  // namespace sturmbeta
