#pragma once

#include <gmpxx.h>

#include <string>

#include "sturmbeta/numeric/real_ball.hpp"

namespace sturmbeta {

// Exact element u + v*sqrt(d) of the real quadratic field Q(sqrt d), with d a
// square-free integer >= 2. Rationals are represented with v == 0 (and d is
// then only a tag used to combine with irrational operands).
class QuadraticNumber {
 public:
  QuadraticNumber() = default;
  QuadraticNumber(long value);  // NOLINT(google-explicit-constructor)
  explicit QuadraticNumber(mpq_class rational);
  // u + v*sqrt(radicand); the radicand's square factors are pulled into v.
  QuadraticNumber(mpq_class u, mpq_class v, long radicand);

  // (p + q*sqrt(d)) / r.
  static QuadraticNumber surd(const mpz_class& p, const mpz_class& q, long d,
                              const mpz_class& r);

  const mpq_class& rational_part() const { return u_; }
  const mpq_class& irrational_part() const { return v_; }
  long radicand() const { return d_; }
  bool is_rational() const { return v_ == 0; }

  int sign() const;
  mpz_class floor() const;
  mpz_class ceil() const;
  RealBall to_ball(unsigned bits) const;
  double to_double() const;
  // Canonical text "(p+q*sqrt(d))/r" (or "p/r" when rational).
  std::string to_string() const;

  QuadraticNumber operator-() const;
  QuadraticNumber& operator+=(const QuadraticNumber& rhs);
  QuadraticNumber& operator-=(const QuadraticNumber& rhs);
  QuadraticNumber& operator*=(const QuadraticNumber& rhs);
  QuadraticNumber& operator/=(const QuadraticNumber& rhs);
  QuadraticNumber reciprocal() const;

  friend QuadraticNumber operator+(QuadraticNumber a, const QuadraticNumber& b) { return a += b; }
  friend QuadraticNumber operator-(QuadraticNumber a, const QuadraticNumber& b) { return a -= b; }
  friend QuadraticNumber operator*(QuadraticNumber a, const QuadraticNumber& b) { return a *= b; }
  friend QuadraticNumber operator/(QuadraticNumber a, const QuadraticNumber& b) { return a /= b; }

  friend bool operator==(const QuadraticNumber& a, const QuadraticNumber& b);
  friend bool operator!=(const QuadraticNumber& a, const QuadraticNumber& b) { return !(a == b); }
  friend bool operator<(const QuadraticNumber& a, const QuadraticNumber& b) { return (a - b).sign() < 0; }
  friend bool operator<=(const QuadraticNumber& a, const QuadraticNumber& b) { return (a - b).sign() <= 0; }
  friend bool operator>(const QuadraticNumber& a, const QuadraticNumber& b) { return (a - b).sign() > 0; }
  friend bool operator>=(const QuadraticNumber& a, const QuadraticNumber& b) { return (a - b).sign() >= 0; }

 private:
  long common_radicand(const QuadraticNumber& other) const;

  mpq_class u_ = 0;
  mpq_class v_ = 0;
  long d_ = 0;
};

// floor((a + b*sqrt(d)) / c) for integers with c > 0 and d >= 2 square-free.
mpz_class floor_surd(const mpz_class& a, const mpz_class& b, long d,
                     const mpz_class& c);

// Splits n = k^2 * m with m square-free; returns {k, m}.
std::pair<long, long> square_free_split(long n);

}  // namespace sturmbeta
