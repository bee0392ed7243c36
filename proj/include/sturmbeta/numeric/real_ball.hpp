#pragma once

#include <mpfr.h>

#include <cstdint>
#include <gmpxx.h>
#include <optional>
#include <string>
#include <string_view>

namespace sturmbeta {

inline constexpr unsigned kDefaultBits = 128;

// Arbitrary-precision enclosure of a real number.
//
// The ball is stored as a closed interval [lower, upper] with both endpoints
// at `precision()` bits; every operation rounds the lower endpoint down and
// the upper endpoint up, so the exact result of an operation on any members
// of the operands is a member of the result. midpoint()/radius() give the
// equivalent midpoint-radius view, with the radius rounded up.
class RealBall {
 public:
  RealBall();
  explicit RealBall(long value, unsigned bits = kDefaultBits);
  RealBall(const RealBall& other);
  RealBall(RealBall&& other) noexcept;
  RealBall& operator=(const RealBall& other);
  RealBall& operator=(RealBall&& other) noexcept;
  ~RealBall();

  static RealBall from_rational(const mpq_class& value,
                                unsigned bits = kDefaultBits);
  static RealBall from_integer(const mpz_class& value,
                               unsigned bits = kDefaultBits);
  // Interval with rational endpoints; requires lower <= upper.
  static RealBall from_bounds(const mpq_class& lower, const mpq_class& upper,
                              unsigned bits = kDefaultBits);
  // Decimal literal with an absolute error bound, e.g. ("0.3819660", "1e-7").
  static RealBall from_decimal(std::string_view digits, std::string_view error,
                               unsigned bits = kDefaultBits);
  // The whole interval [lower, upper] of two balls (convex hull).
  static RealBall hull(const RealBall& a, const RealBall& b);

  unsigned precision() const;
  // Same enclosure re-rounded outward to `bits`.
  RealBall with_precision(unsigned bits) const;

  // Exact endpoint values.
  mpq_class lower_rational() const;
  mpq_class upper_rational() const;
  RealBall lower_ball() const;  // degenerate ball at the lower endpoint
  RealBall upper_ball() const;

  RealBall midpoint() const;  // degenerate ball, round-to-nearest
  RealBall radius() const;    // degenerate ball, rounded up
  double midpoint_double() const;
  // Radius as a double, rounded up; returns the smallest positive double for
  // radii that underflow, and 0 only for exact balls.
  double radius_double() const;
  // log2 of the radius (rounded up); -infinity for exact balls.
  double radius_log2() const;
  std::string midpoint_string(int digits = 0) const;
  std::string radius_string() const;
  std::string to_string(int digits = 20) const;

  bool is_exact() const;
  bool contains(const mpq_class& value) const;
  bool contains(const RealBall& other) const;
  bool contains_zero() const;
  bool overlaps(const RealBall& other) const;
  bool certainly_positive() const;
  bool certainly_negative() const;
  bool certainly_nonnegative() const;
  bool certainly_less(const RealBall& other) const;
  bool certainly_greater(const RealBall& other) const;
  bool certainly_less_equal(const RealBall& other) const;

  // Certified floor/ceiling: present only when the ball does not straddle an
  // integer boundary.
  std::optional<std::int64_t> certified_floor() const;
  std::optional<std::int64_t> certified_ceil() const;

  RealBall operator-() const;
  RealBall& operator+=(const RealBall& rhs);
  RealBall& operator-=(const RealBall& rhs);
  RealBall& operator*=(const RealBall& rhs);
  RealBall& operator/=(const RealBall& rhs);

  friend RealBall operator+(RealBall lhs, const RealBall& rhs) { return lhs += rhs; }
  friend RealBall operator-(RealBall lhs, const RealBall& rhs) { return lhs -= rhs; }
  friend RealBall operator*(RealBall lhs, const RealBall& rhs) { return lhs *= rhs; }
  friend RealBall operator/(RealBall lhs, const RealBall& rhs) { return lhs /= rhs; }

  RealBall add_long(long v) const;
  RealBall sub_long(long v) const;
  RealBall mul_long(long v) const;
  RealBall div_long(long v) const;
  RealBall reciprocal() const;
  RealBall abs() const;
  RealBall pow(unsigned long exponent) const;
  RealBall sqrt() const;
  // Adds [0, bound] (bound must be nonnegative), e.g. a truncation tail.
  RealBall widen_upper(const RealBall& bound) const;
  // Adds [-bound, bound].
  RealBall widen(const RealBall& bound) const;

  static RealBall min(const RealBall& a, const RealBall& b);
  static RealBall max(const RealBall& a, const RealBall& b);
  // Intersection; the caller must know both balls contain the same value.
  static std::optional<RealBall> intersect(const RealBall& a, const RealBall& b);

  mpfr_srcptr lower() const { return lo_; }
  mpfr_srcptr upper() const { return hi_; }
  mpfr_ptr lower_mut() { return lo_; }
  mpfr_ptr upper_mut() { return hi_; }

 private:
  explicit RealBall(unsigned bits, int /*tag*/);
  void check_order() const;

  mpfr_t lo_;
  mpfr_t hi_;
};

}  // namespace sturmbeta
