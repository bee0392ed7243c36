#include "sturmbeta/mahler.hpp"

#include <cmath>

#include "sturmbeta/errors.hpp"

namespace sturmbeta {
namespace {

RealBall series_tail(const RealBall& abs_z, std::size_t n, long growth) {
  RealBall one_minus = RealBall(1L, abs_z.precision()) - abs_z;
  RealBall zn1 = abs_z.pow(n + 1);
  RealBall t = zn1.mul_long(static_cast<long>(n)) / one_minus + zn1 / (one_minus * one_minus);
  return t.mul_long(growth);
}

// Smallest N with N|z|^(N+1) small enough; grows geometrically then settles.
std::size_t terms_for(const RealBall& abs_z, unsigned bits) {
  const double hi = abs_z.upper_ball().midpoint_double();
  const double lz = -std::log2(hi);
  double n = (bits + 8) / lz;
  for (int it = 0; it < 8; ++it) {
    const double gap = 1 - hi;
    n = (bits + 8 + std::log2(n + 2) + 2 * std::log2(1 / gap) + 2) / lz;
  }
  return static_cast<std::size_t>(std::ceil(n)) + 1;
}

double gap(const RealBall& x, const RealBall& y) {
  return (x - y).abs().upper_ball().midpoint_double();
}

}  // namespace

MahlerEvaluation power_series(const std::function<std::int64_t(std::int64_t)>& coefficient, long growth,
                              const RealBall& z, std::size_t terms, unsigned bits) {
  const unsigned work = std::max(bits + 32, z.precision());
  RealBall zz = z.with_precision(work);
  RealBall abs_z = zz.abs();
  if (!abs_z.certainly_less(RealBall(1L, work))) {
    throw DivergentInput("power series needs |z| < 1, got " + z.to_string());
  }
  RealBall sum(0L, work);
  RealBall p = zz;
  for (std::size_t n = 1; n <= terms; ++n) {
    const std::int64_t c = coefficient(static_cast<std::int64_t>(n));
    if (c != 0) sum += p.mul_long(c);
    p *= zz;
  }
  MahlerEvaluation out{zz, sum, terms, series_tail(abs_z, terms, growth)};
  out.value = sum.widen(out.tail_bound);
  return out;
}

MahlerEvaluation mahler_f_truncated(const Slope& w, const RealBall& z, std::size_t terms, unsigned bits) {
  // 0 < w < 1 so 0 <= floor(n w) <= n.
  return power_series([&w](std::int64_t n) { return w.floor_linear(n, Intercept()); }, 1, z, terms, bits);
}

MahlerEvaluation mahler_f(const Slope& w, const RealBall& z, unsigned bits) {
  const RealBall abs_z = z.abs();
  if (!abs_z.certainly_less(RealBall(1L))) {
    throw DivergentInput("mahler_f needs |z| < 1, got " + z.to_string());
  }
  if (z.is_exact() && z.contains(mpq_class(0))) {
    return power_series([](std::int64_t) { return 0; }, 0, z, 0, bits);
  }
  return mahler_f_truncated(w, z, terms_for(abs_z, bits), bits);
}

IdentityReport identity_check(const Slope& alpha, Digit a, Digit b, unsigned bits) {
  SolveOptions opt;
  opt.bits = bits + 32;
  BetaNumber beta = sturmian_beta(alpha, a, b, opt);
  const unsigned work = bits + 32;
  IdentityReport r;
  r.a = a;
  r.b = b;
  r.bits = bits;
  r.beta = beta.value_at(work).with_precision(work);
  const RealBall y = r.beta.reciprocal();
  const RealBall one(1L, work);

  // Direct digit series; the digits are 0/1 so the tail is sum_{n >= N} beta^-(n+1).
  const std::size_t n = terms_for(y, bits);
  RealBall sum(0L, work);
  RealBall p = y;
  std::int64_t prev = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::int64_t next = alpha.floor_linear(static_cast<std::int64_t>(k) + 1, Intercept());
    if (next != prev) sum += p;
    prev = next;
    p *= y;
  }
  r.direct = sum.widen_upper(p / (one - y));

  r.mahler = (one - y) * mahler_f(alpha, y, bits).value;
  const long d = static_cast<long>(b) - static_cast<long>(a);
  r.rhs = (one - y.mul_long(d) - RealBall(static_cast<long>(a), work) / r.beta.sub_long(1)).div_long(d);

  r.gap_direct_mahler = gap(r.direct, r.mahler);
  r.gap_direct_rhs = gap(r.direct, r.rhs);
  r.gap_mahler_rhs = gap(r.mahler, r.rhs);
  r.max_gap = std::max({r.gap_direct_mahler, r.gap_direct_rhs, r.gap_mahler_rhs});
  if (!r.direct.overlaps(r.mahler) || !r.direct.overlaps(r.rhs) || !r.mahler.overlaps(r.rhs)) {
    throw IdentityViolated("the three evaluations of the identity are not pairwise consistent: " +
                           r.direct.to_string() + ", " + r.mahler.to_string() + ", " + r.rhs.to_string());
  }
  return r;
}

}  // namespace sturmbeta
