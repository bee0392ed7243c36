#include "sturmbeta/numeric/quadratic.hpp"

#include <utility>

#include "sturmbeta/errors.hpp"

namespace sturmbeta {
namespace {

mpz_class floor_div(const mpz_class& a, const mpz_class& c) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
  return q;
}

}  // namespace

std::pair<long, long> square_free_split(long n) {
  if (n <= 0) throw PreconditionError("radicand must be positive");
  long k = 1;
  long m = n;
  for (long f = 2; f * f <= m; ++f) {
    while (m % (f * f) == 0) {
      m /= f * f;
      k *= f;
    }
  }
  return {k, m};
}

mpz_class floor_surd(const mpz_class& a, const mpz_class& b, long d,
                     const mpz_class& c) {
  if (c <= 0) throw PreconditionError("floor_surd needs a positive denominator");
  if (b == 0) return floor_div(a, c);
  // |b|*sqrt(d) = sqrt(b^2 d) is irrational, strictly between s and s+1.
  mpz_class sq = b * b * d;
  mpz_class s;
  mpz_sqrt(s.get_mpz_t(), sq.get_mpz_t());
  mpz_class floor_num = b > 0 ? mpz_class(a + s) : mpz_class(a - s - 1);
  // floor(x / c) == floor(floor(x) / c) for integer c > 0.
  return floor_div(floor_num, c);
}

QuadraticNumber::QuadraticNumber(long value) : u_(value) {}

QuadraticNumber::QuadraticNumber(mpq_class rational) : u_(std::move(rational)) {
  u_.canonicalize();
}

QuadraticNumber::QuadraticNumber(mpq_class u, mpq_class v, long radicand)
    : u_(std::move(u)), v_(std::move(v)) {
  u_.canonicalize();
  v_.canonicalize();
  if (v_ == 0) return;
  auto [k, m] = square_free_split(radicand);
  if (m == 1) {
    u_ += v_ * k;
    v_ = 0;
    return;
  }
  v_ *= k;
  d_ = m;
}

QuadraticNumber QuadraticNumber::surd(const mpz_class& p, const mpz_class& q,
                                      long d, const mpz_class& r) {
  if (r == 0) throw PreconditionError("surd denominator is zero");
  return QuadraticNumber(mpq_class(p, r), mpq_class(q, r), d);
}

long QuadraticNumber::common_radicand(const QuadraticNumber& other) const {
  if (v_ == 0) return other.d_;
  if (other.v_ == 0) return d_;
  if (d_ != other.d_) {
    throw PreconditionError("quadratic numbers from different fields Q(sqrt " +
                            std::to_string(d_) + ") and Q(sqrt " +
                            std::to_string(other.d_) + ")");
  }
  return d_;
}

int QuadraticNumber::sign() const {
  const int su = sgn(u_);
  const int sv = sgn(v_);
  if (sv == 0) return su;
  if (su == 0 || su == sv) return sv;
  // Opposite signs: compare u^2 against v^2 d (never equal, sqrt d irrational).
  mpq_class lhs = u_ * u_;
  mpq_class rhs = v_ * v_ * d_;
  return lhs > rhs ? su : sv;
}

mpz_class QuadraticNumber::floor() const {
  // Bring to (A + B sqrt d) / C with integer A, B and C > 0.
  mpz_class c = lcm(u_.get_den(), v_.get_den());
  mpz_class a = u_.get_num() * (c / u_.get_den());
  mpz_class b = v_.get_num() * (c / v_.get_den());
  return floor_surd(a, b, d_ == 0 ? 2 : d_, c);
}

mpz_class QuadraticNumber::ceil() const { return -(-*this).floor(); }

RealBall QuadraticNumber::to_ball(unsigned bits) const {
  RealBall r = RealBall::from_rational(u_, bits + 8);
  if (v_ != 0) {
    RealBall root = RealBall(d_, bits + 8).sqrt();
    r += RealBall::from_rational(v_, bits + 8) * root;
  }
  return r.with_precision(bits);
}

double QuadraticNumber::to_double() const { return to_ball(64).midpoint_double(); }

std::string QuadraticNumber::to_string() const {
  mpz_class c = lcm(u_.get_den(), v_.get_den());
  mpz_class a = u_.get_num() * (c / u_.get_den());
  mpz_class b = v_.get_num() * (c / v_.get_den());
  if (b == 0) {
    return c == 1 ? a.get_str() : a.get_str() + "/" + c.get_str();
  }
  std::string out = "(" + a.get_str() + (b < 0 ? "-" : "+") +
                    mpz_class(abs(b)).get_str() + "*sqrt(" + std::to_string(d_) + "))";
  if (c != 1) out += "/" + c.get_str();
  return out;
}

QuadraticNumber QuadraticNumber::operator-() const {
  QuadraticNumber r = *this;
  r.u_ = -u_;
  r.v_ = -v_;
  return r;
}

QuadraticNumber& QuadraticNumber::operator+=(const QuadraticNumber& rhs) {
  d_ = common_radicand(rhs);
  u_ += rhs.u_;
  v_ += rhs.v_;
  return *this;
}

QuadraticNumber& QuadraticNumber::operator-=(const QuadraticNumber& rhs) {
  d_ = common_radicand(rhs);
  u_ -= rhs.u_;
  v_ -= rhs.v_;
  return *this;
}

QuadraticNumber& QuadraticNumber::operator*=(const QuadraticNumber& rhs) {
  const long d = common_radicand(rhs);
  mpq_class u = u_ * rhs.u_ + v_ * rhs.v_ * d;
  mpq_class v = u_ * rhs.v_ + v_ * rhs.u_;
  u_ = std::move(u);
  v_ = std::move(v);
  d_ = d;
  return *this;
}

QuadraticNumber QuadraticNumber::reciprocal() const {
  // 1/(u + v sqrt d) = (u - v sqrt d) / (u^2 - v^2 d).
  mpq_class norm = u_ * u_ - v_ * v_ * d_;
  if (norm == 0) throw PreconditionError("reciprocal of zero");
  QuadraticNumber r;
  r.u_ = u_ / norm;
  r.v_ = -v_ / norm;
  r.d_ = d_;
  return r;
}

QuadraticNumber& QuadraticNumber::operator/=(const QuadraticNumber& rhs) {
  return *this *= rhs.reciprocal();
}

bool operator==(const QuadraticNumber& a, const QuadraticNumber& b) {
  if (a.v_ == 0 && b.v_ == 0) return a.u_ == b.u_;
  return a.u_ == b.u_ && a.v_ == b.v_ && a.d_ == b.d_;
}

}  // namespace sturmbeta
