#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sturmbeta/numeric/quadratic.hpp"
#include "sturmbeta/numeric/real_ball.hpp"

namespace sturmbeta {

class Slope;

// A convergent p/q, kept unreduced-by-construction (always coprime).
struct Fraction {
  mpz_class p;
  mpz_class q;

  mpq_class value() const { return mpq_class(p, q); }
  std::string to_string() const { return p.get_str() + "/" + q.get_str(); }
  friend bool operator==(const Fraction& a, const Fraction& b) {
    return a.p == b.p && a.q == b.q;
  }
};

// Intercept rho of a mechanical word, normalized to [0, 1).
//
// Three forms: an exact rational, an exact affine expression k*alpha + r in
// the slope (which is how shifted mechanical words get their intercepts
// {alpha n}), or a user-supplied ball.
class Intercept {
 public:
  enum class Kind { kRational, kAffine, kBall };

  Intercept();  // rho = 0
  static Intercept rational(const mpq_class& value);
  // k*alpha + r; checked against `slope` to lie in [0, 1).
  static Intercept affine(const Slope& slope, long k, const mpq_class& r);
  // {n*alpha} = n*alpha - floor(n*alpha).
  static Intercept fractional_multiple(const Slope& slope, long n);
  static Intercept ball(const RealBall& value);
  // "0", "1/3", "0.25" (exact), or "dec:<digits>~<error>" (ball).
  static Intercept parse(std::string_view text);

  Kind kind() const { return kind_; }
  long alpha_coefficient() const { return k_; }
  const mpq_class& rational_part() const { return r_; }
  const std::optional<RealBall>& ball_value() const { return ball_; }
  bool is_zero() const { return kind_ == Kind::kRational && r_ == 0; }
  std::string to_string() const;

 private:
  friend class Slope;
  void cache_fixed();

  Kind kind_ = Kind::kRational;
  long k_ = 0;
  mpq_class r_ = 0;
  std::optional<RealBall> ball_;
  bool fixed_valid_ = false;
  __int128 fixed_lo_ = 0;
  __int128 fixed_hi_ = 0;
};

// An irrational slope alpha in (0, 1).
//
// Representations:
//   * quadratic surd (p + q*sqrt(d)) / r: exact floors at any depth;
//   * continued-fraction stream [0; a1, a2, ...] given as a preperiod plus a
//     period, or as a coefficient program k -> a_k;
//   * certified decimal: a ball the user asserts contains an irrational.
// Rational values are rejected: mechanical words of rational slope are
// periodic, never Sturmian.
class Slope {
 public:
  enum class Kind { kQuadraticSurd, kContinuedFraction, kCertifiedDecimal };
  using CoefficientProgram = std::function<std::uint64_t(std::size_t)>;

  static Slope surd(const mpz_class& p, const mpz_class& q, long d,
                    const mpz_class& r);
  // [0; preperiod..., (period...)]; coefficients >= 1; period non-empty.
  static Slope continued_fraction(std::vector<std::uint64_t> preperiod,
                                  std::vector<std::uint64_t> period);
  // [0; a(1), a(2), ...]; a(k) >= 1 for k >= 1. `label` is used by to_string.
  static Slope continued_fraction_program(CoefficientProgram coefficient,
                                          std::string label);
  static Slope certified_decimal(const RealBall& value);
  // "surd:(p+q*sqrt(d))/r", "cf:[0;a1,a2,...,(period)]", "dec:<digits>~<error>".
  static Slope parse(std::string_view text);

  // The golden slope 1/tau^2 = (3 - sqrt 5)/2.
  static Slope inverse_golden_square();

  Kind kind() const;
  // True when irrationality is the user's assertion rather than a fact.
  bool irrationality_assumed() const;
  std::string to_string() const;
  // Exact value when the slope is a quadratic surd.
  std::optional<QuadraticNumber> exact() const;

  // floor(m*alpha + c) for integer m (any sign) and rational c.
  std::int64_t floor_affine(std::int64_t m, const mpq_class& c) const;
  // floor(alpha*n + rho) and ceil(alpha*n + rho).
  std::int64_t floor_linear(std::int64_t n, const Intercept& rho) const;
  std::int64_t ceil_linear(std::int64_t n, const Intercept& rho) const;

  // Continued fraction coefficient a_k (a_0 = 0).
  mpz_class coefficient(std::size_t k) const;
  // k-th convergent p_k/q_k; convergent(0) == 0/1.
  Fraction convergent(std::size_t k) const;

  // Enclosure of alpha with radius below 2^-bits (decimal slopes return their
  // fixed ball).
  RealBall to_ball(unsigned bits) const;
  double approx() const;

  // 1 - alpha in the same representation family.
  Slope complement() const;

  // Certified comparison alpha < other; refines until decided.
  bool less_than(const Slope& other) const;

  struct Impl;

 private:
  explicit Slope(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::int64_t floor_affine_fast(std::int64_t m, const Intercept* rho,
                                 const mpq_class& c, bool* ok) const;
  std::int64_t floor_ball(const RealBall& x) const;

  std::shared_ptr<const Impl> impl_;
};

// Free-function spellings of the floor/ceiling operations.
inline std::int64_t floor_linear(const Slope& alpha, std::int64_t n,
                                 const Intercept& rho = Intercept()) {
  return alpha.floor_linear(n, rho);
}
inline std::int64_t ceil_linear(const Slope& alpha, std::int64_t n,
                                const Intercept& rho = Intercept()) {
  return alpha.ceil_linear(n, rho);
}
inline Fraction convergent(const Slope& alpha, std::size_t k) {
  return alpha.convergent(k);
}

}  // namespace sturmbeta
