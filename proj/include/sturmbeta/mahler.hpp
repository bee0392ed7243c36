#pragma once

#include <cstdint>
#include <functional>

#include "sturmbeta/beta.hpp"
#include "sturmbeta/numeric/real_ball.hpp"
#include "sturmbeta/numeric/slope.hpp"

namespace sturmbeta {

struct MahlerEvaluation {
  RealBall z;
  RealBall value;  // includes the tail
  std::size_t terms_used = 0;
  RealBall tail_bound;
};

// sum_{n >= 1} c(n) z^n for coefficients with |c(n)| <= growth * n. The tail
// after N terms is bounded by growth * (N|z|^(N+1)/(1-|z|) + |z|^(N+1)/(1-|z|)^2).
// DivergentInput unless |z| < 1 is certain.
MahlerEvaluation power_series(const std::function<std::int64_t(std::int64_t)>& coefficient, long growth,
                              const RealBall& z, std::size_t terms, unsigned bits);

// f(w, z) = sum_{n >= 1} floor(n w) z^n with enough terms for radius 2^-bits.
MahlerEvaluation mahler_f(const Slope& w, const RealBall& z, unsigned bits = 128);
// Same series cut after exactly `terms` terms.
MahlerEvaluation mahler_f_truncated(const Slope& w, const RealBall& z, std::size_t terms, unsigned bits = 128);

struct IdentityReport {
  Digit a = 0;
  Digit b = 1;
  unsigned bits = 0;
  RealBall beta;
  RealBall direct;  // sum (floor(alpha(n+1)) - floor(alpha n)) / beta^(n+1)
  RealBall mahler;  // (1 - 1/beta) f(alpha, 1/beta)
  RealBall rhs;     // (1 - (b-a)/beta - a/(beta-1)) / (b-a)
  // Upper bounds of |x - y| over the balls.
  double gap_direct_mahler = 0;
  double gap_direct_rhs = 0;
  double gap_mahler_rhs = 0;
  double max_gap = 0;
};

// Evaluates the three sides with beta = sturmian_beta(alpha, a, b).
// IdentityViolated when two of the enclosures are disjoint.
IdentityReport identity_check(const Slope& alpha, Digit a, Digit b, unsigned bits = 512);

}  // namespace sturmbeta
