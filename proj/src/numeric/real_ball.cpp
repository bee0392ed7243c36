#include "sturmbeta/numeric/real_ball.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "sturmbeta/errors.hpp"

namespace sturmbeta {
namespace {

mpfr_prec_t clamp_bits(unsigned bits) {
  return std::max<mpfr_prec_t>(static_cast<mpfr_prec_t>(bits), MPFR_PREC_MIN);
}

unsigned joint_bits(const RealBall& a, const RealBall& b) {
  return std::max(a.precision(), b.precision());
}

// Exact rational value of a finite mpfr number.
mpq_class to_rational(mpfr_srcptr x) {
  mpz_class mant;
  mpfr_exp_t exp = mpfr_get_z_2exp(mant.get_mpz_t(), x);
  mpq_class q(mant);
  if (exp > 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(exp));
  } else if (exp < 0) {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-exp));
  }
  return q;
}

mpq_class parse_decimal(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty decimal literal");
  bool negative = false;
  std::size_t i = 0;
  if (s[i] == '+' || s[i] == '-') {
    negative = s[i] == '-';
    ++i;
  }
  std::string digits;
  long exponent = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c >= '0' && c <= '9') {
      digits.push_back(c);
      any_digit = true;
      if (seen_point) --exponent;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (c == 'e' || c == 'E') {
      try {
        exponent += std::stol(s.substr(i + 1));
      } catch (const std::exception&) {
        throw ParseError("bad exponent in decimal literal '" + s + "'");
      }
      break;
    } else {
      throw ParseError("bad character in decimal literal '" + s + "'");
    }
  }
  if (!any_digit) throw ParseError("no digits in decimal literal '" + s + "'");
  mpz_class mant(digits, 10);
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  mpq_class value = exponent >= 0 ? mpq_class(mant * ten_pow) : mpq_class(mant, ten_pow);
  value.canonicalize();
  return negative ? mpq_class(-value) : value;
}

}  // namespace

RealBall::RealBall(unsigned bits, int) {
  mpfr_init2(lo_, clamp_bits(bits));
  mpfr_init2(hi_, clamp_bits(bits));
}

RealBall::RealBall() : RealBall(kDefaultBits, 0) {
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

RealBall::RealBall(long value, unsigned bits) : RealBall(bits, 0) {
  mpfr_set_si(lo_, value, MPFR_RNDD);
  mpfr_set_si(hi_, value, MPFR_RNDU);
}

RealBall::RealBall(const RealBall& other) : RealBall(other.precision(), 0) {
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

RealBall::RealBall(RealBall&& other) noexcept : RealBall(other.precision(), 0) {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

RealBall& RealBall::operator=(const RealBall& other) {
  if (this != &other) {
    mpfr_set_prec(lo_, other.precision());
    mpfr_set_prec(hi_, other.precision());
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

RealBall& RealBall::operator=(RealBall&& other) noexcept {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

RealBall::~RealBall() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

RealBall RealBall::from_rational(const mpq_class& value, unsigned bits) {
  RealBall r(bits, 0);
  mpfr_set_q(r.lo_, value.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, value.get_mpq_t(), MPFR_RNDU);
  return r;
}

RealBall RealBall::from_integer(const mpz_class& value, unsigned bits) {
  RealBall r(bits, 0);
  mpfr_set_z(r.lo_, value.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_, value.get_mpz_t(), MPFR_RNDU);
  return r;
}

RealBall RealBall::from_bounds(const mpq_class& lower, const mpq_class& upper,
                               unsigned bits) {
  if (lower > upper) throw PreconditionError("ball bounds out of order");
  RealBall r(bits, 0);
  mpfr_set_q(r.lo_, lower.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, upper.get_mpq_t(), MPFR_RNDU);
  return r;
}

RealBall RealBall::from_decimal(std::string_view digits, std::string_view error,
                                unsigned bits) {
  mpq_class value = parse_decimal(digits);
  mpq_class err = parse_decimal(error);
  if (err < 0) throw ParseError("negative error bound");
  return from_bounds(value - err, value + err, bits);
}

RealBall RealBall::hull(const RealBall& a, const RealBall& b) {
  RealBall r(joint_bits(a, b), 0);
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

unsigned RealBall::precision() const {
  return static_cast<unsigned>(mpfr_get_prec(lo_));
}

RealBall RealBall::with_precision(unsigned bits) const {
  RealBall r(bits, 0);
  mpfr_set(r.lo_, lo_, MPFR_RNDD);
  mpfr_set(r.hi_, hi_, MPFR_RNDU);
  return r;
}

mpq_class RealBall::lower_rational() const { return to_rational(lo_); }
mpq_class RealBall::upper_rational() const { return to_rational(hi_); }

RealBall RealBall::lower_ball() const {
  RealBall r(precision(), 0);
  mpfr_set(r.lo_, lo_, MPFR_RNDD);
  mpfr_set(r.hi_, lo_, MPFR_RNDU);
  return r;
}

RealBall RealBall::upper_ball() const {
  RealBall r(precision(), 0);
  mpfr_set(r.lo_, hi_, MPFR_RNDD);
  mpfr_set(r.hi_, hi_, MPFR_RNDU);
  return r;
}

RealBall RealBall::midpoint() const {
  mpfr_t m;
  mpfr_init2(m, clamp_bits(precision() + 2));
  mpfr_add(m, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  RealBall r(precision() + 2, 0);
  mpfr_set(r.lo_, m, MPFR_RNDN);
  mpfr_set(r.hi_, m, MPFR_RNDN);
  mpfr_clear(m);
  return r;
}

RealBall RealBall::radius() const {
  RealBall mid = midpoint();
  mpfr_t a, b;
  mpfr_init2(a, 64);
  mpfr_init2(b, 64);
  mpfr_sub(a, hi_, mid.lo_, MPFR_RNDU);
  mpfr_sub(b, mid.lo_, lo_, MPFR_RNDU);
  RealBall r(64, 0);
  mpfr_max(r.lo_, a, b, MPFR_RNDU);
  mpfr_set(r.hi_, r.lo_, MPFR_RNDU);
  mpfr_clear(a);
  mpfr_clear(b);
  return r;
}

double RealBall::midpoint_double() const {
  return mpfr_get_d(midpoint().lo_, MPFR_RNDN);
}

double RealBall::radius_double() const {
  if (is_exact()) return 0.0;
  double r = mpfr_get_d(radius().hi_, MPFR_RNDU);
  if (r == 0.0) return std::numeric_limits<double>::denorm_min();
  return r;
}

double RealBall::radius_log2() const {
  if (is_exact()) return -std::numeric_limits<double>::infinity();
  RealBall rad = radius();
  long exp = 0;
  double m = mpfr_get_d_2exp(&exp, rad.hi_, MPFR_RNDU);
  return std::log2(m) + static_cast<double>(exp);
}

std::string RealBall::midpoint_string(int digits) const {
  if (digits <= 0) {
    digits = static_cast<int>(std::ceil(precision() * 0.30103)) + 1;
  }
  RealBall mid = midpoint();
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*RNg", digits, mid.lo_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

std::string RealBall::radius_string() const {
  RealBall rad = radius();
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.3RUe", rad.hi_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

std::string RealBall::to_string(int digits) const {
  return midpoint_string(digits) + " +/- " + radius_string();
}

bool RealBall::is_exact() const { return mpfr_equal_p(lo_, hi_) != 0; }

bool RealBall::contains(const mpq_class& value) const {
  return mpfr_cmp_q(lo_, value.get_mpq_t()) <= 0 &&
         mpfr_cmp_q(hi_, value.get_mpq_t()) >= 0;
}

bool RealBall::contains(const RealBall& other) const {
  return mpfr_lessequal_p(lo_, other.lo_) && mpfr_greaterequal_p(hi_, other.hi_);
}

bool RealBall::contains_zero() const {
  return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

bool RealBall::overlaps(const RealBall& other) const {
  return mpfr_lessequal_p(lo_, other.hi_) && mpfr_lessequal_p(other.lo_, hi_);
}

bool RealBall::certainly_positive() const { return mpfr_sgn(lo_) > 0; }
bool RealBall::certainly_negative() const { return mpfr_sgn(hi_) < 0; }
bool RealBall::certainly_nonnegative() const { return mpfr_sgn(lo_) >= 0; }

bool RealBall::certainly_less(const RealBall& other) const {
  return mpfr_less_p(hi_, other.lo_) != 0;
}

bool RealBall::certainly_greater(const RealBall& other) const {
  return mpfr_greater_p(lo_, other.hi_) != 0;
}

bool RealBall::certainly_less_equal(const RealBall& other) const {
  return mpfr_lessequal_p(hi_, other.lo_) != 0;
}

std::optional<std::int64_t> RealBall::certified_floor() const {
  mpfr_t a, b;
  mpfr_init2(a, clamp_bits(precision()));
  mpfr_init2(b, clamp_bits(precision()));
  mpfr_floor(a, lo_);
  mpfr_floor(b, hi_);
  std::optional<std::int64_t> out;
  if (mpfr_equal_p(a, b) && mpfr_fits_slong_p(a, MPFR_RNDN)) {
    out = mpfr_get_si(a, MPFR_RNDN);
  }
  mpfr_clear(a);
  mpfr_clear(b);
  return out;
}

std::optional<std::int64_t> RealBall::certified_ceil() const {
  auto f = (-*this).certified_floor();
  if (!f) return std::nullopt;
  return -*f;
}

RealBall RealBall::operator-() const {
  RealBall r(precision(), 0);
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

RealBall& RealBall::operator+=(const RealBall& rhs) {
  RealBall r(joint_bits(*this, rhs), 0);
  mpfr_add(r.lo_, lo_, rhs.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, hi_, rhs.hi_, MPFR_RNDU);
  return *this = std::move(r);
}

RealBall& RealBall::operator-=(const RealBall& rhs) {
  RealBall r(joint_bits(*this, rhs), 0);
  mpfr_sub(r.lo_, lo_, rhs.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, hi_, rhs.lo_, MPFR_RNDU);
  return *this = std::move(r);
}

RealBall& RealBall::operator*=(const RealBall& rhs) {
  const unsigned bits = joint_bits(*this, rhs);
  RealBall r(bits, 0);
  if (mpfr_sgn(lo_) >= 0 && mpfr_sgn(rhs.lo_) >= 0) {
    mpfr_mul(r.lo_, lo_, rhs.lo_, MPFR_RNDD);
    mpfr_mul(r.hi_, hi_, rhs.hi_, MPFR_RNDU);
    return *this = std::move(r);
  }
  // General case: extremes over the four endpoint products.
  mpfr_t t;
  mpfr_init2(t, clamp_bits(bits));
  mpfr_srcptr xs[2] = {lo_, hi_};
  mpfr_srcptr ys[2] = {rhs.lo_, rhs.hi_};
  bool first = true;
  for (auto x : xs) {
    for (auto y : ys) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_mul(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return *this = std::move(r);
}

RealBall RealBall::reciprocal() const {
  if (contains_zero()) throw PrecisionExhausted("reciprocal of a ball containing zero");
  RealBall r(precision(), 0);
  mpfr_ui_div(r.lo_, 1, hi_, MPFR_RNDD);
  mpfr_ui_div(r.hi_, 1, lo_, MPFR_RNDU);
  return r;
}

RealBall& RealBall::operator/=(const RealBall& rhs) {
  if (rhs.contains_zero()) throw PrecisionExhausted("division by a ball containing zero");
  const unsigned bits = joint_bits(*this, rhs);
  if (mpfr_sgn(lo_) >= 0 && mpfr_sgn(rhs.lo_) > 0) {
    RealBall r(bits, 0);
    mpfr_div(r.lo_, lo_, rhs.hi_, MPFR_RNDD);
    mpfr_div(r.hi_, hi_, rhs.lo_, MPFR_RNDU);
    return *this = std::move(r);
  }
  return *this *= rhs.with_precision(bits).reciprocal();
}

RealBall RealBall::add_long(long v) const {
  RealBall r(precision(), 0);
  mpfr_add_si(r.lo_, lo_, v, MPFR_RNDD);
  mpfr_add_si(r.hi_, hi_, v, MPFR_RNDU);
  return r;
}

RealBall RealBall::sub_long(long v) const {
  RealBall r(precision(), 0);
  mpfr_sub_si(r.lo_, lo_, v, MPFR_RNDD);
  mpfr_sub_si(r.hi_, hi_, v, MPFR_RNDU);
  return r;
}

RealBall RealBall::mul_long(long v) const {
  RealBall r(precision(), 0);
  if (v >= 0) {
    mpfr_mul_si(r.lo_, lo_, v, MPFR_RNDD);
    mpfr_mul_si(r.hi_, hi_, v, MPFR_RNDU);
  } else {
    mpfr_mul_si(r.lo_, hi_, v, MPFR_RNDD);
    mpfr_mul_si(r.hi_, lo_, v, MPFR_RNDU);
  }
  return r;
}

RealBall RealBall::div_long(long v) const {
  if (v == 0) throw PreconditionError("division by zero");
  RealBall r(precision(), 0);
  if (v > 0) {
    mpfr_div_si(r.lo_, lo_, v, MPFR_RNDD);
    mpfr_div_si(r.hi_, hi_, v, MPFR_RNDU);
  } else {
    mpfr_div_si(r.lo_, hi_, v, MPFR_RNDD);
    mpfr_div_si(r.hi_, lo_, v, MPFR_RNDU);
  }
  return r;
}

RealBall RealBall::abs() const {
  if (mpfr_sgn(lo_) >= 0) return *this;
  if (mpfr_sgn(hi_) <= 0) return -*this;
  RealBall r(precision(), 0);
  mpfr_set_zero(r.lo_, 1);
  mpfr_t neg;
  mpfr_init2(neg, clamp_bits(precision()));
  mpfr_neg(neg, lo_, MPFR_RNDU);
  mpfr_max(r.hi_, neg, hi_, MPFR_RNDU);
  mpfr_clear(neg);
  return r;
}

RealBall RealBall::pow(unsigned long exponent) const {
  if (exponent == 0) return RealBall(1, precision());
  if (mpfr_sgn(lo_) >= 0 || exponent % 2 == 1) {
    RealBall r(precision(), 0);
    mpfr_pow_ui(r.lo_, lo_, exponent, MPFR_RNDD);
    mpfr_pow_ui(r.hi_, hi_, exponent, MPFR_RNDU);
    return r;
  }
  return abs().pow(exponent);
}

RealBall RealBall::sqrt() const {
  if (certainly_negative()) throw PreconditionError("square root of a negative ball");
  RealBall r(precision(), 0);
  if (mpfr_sgn(lo_) < 0) {
    mpfr_set_zero(r.lo_, 1);
  } else {
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
  }
  mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
  return r;
}

RealBall RealBall::widen_upper(const RealBall& bound) const {
  RealBall r(precision(), 0);
  mpfr_set(r.lo_, lo_, MPFR_RNDD);
  mpfr_add(r.hi_, hi_, bound.hi_, MPFR_RNDU);
  return r;
}

RealBall RealBall::widen(const RealBall& bound) const {
  RealBall r(precision(), 0);
  mpfr_sub(r.lo_, lo_, bound.hi_, MPFR_RNDD);
  mpfr_add(r.hi_, hi_, bound.hi_, MPFR_RNDU);
  return r;
}

RealBall RealBall::min(const RealBall& a, const RealBall& b) {
  RealBall r(joint_bits(a, b), 0);
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_min(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

RealBall RealBall::max(const RealBall& a, const RealBall& b) {
  RealBall r(joint_bits(a, b), 0);
  mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

std::optional<RealBall> RealBall::intersect(const RealBall& a, const RealBall& b) {
  if (!a.overlaps(b)) return std::nullopt;
  RealBall r(joint_bits(a, b), 0);
  mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_min(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

}  // namespace sturmbeta
