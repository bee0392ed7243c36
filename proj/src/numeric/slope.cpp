#include "sturmbeta/numeric/slope.hpp"

#include <algorithm>
#include <mutex>
#include <regex>
#include <sstream>

#include "sturmbeta/errors.hpp"
#include "sturmbeta/numeric/precision.hpp"

namespace sturmbeta {
namespace {

constexpr int kFixedShift = 80;        // fixed-point scale 2^-80
constexpr std::int64_t kFastMaxMultiplier = std::int64_t{1} << 40;
constexpr long kFastMaxIntercept = 1L << 45;

__int128 to_int128(const mpz_class& z) {
  mpz_class mag = abs(z);
  std::uint64_t words[2] = {0, 0};
  std::size_t count = 0;
  mpz_export(words, &count, -1, sizeof(std::uint64_t), 0, 0, mag.get_mpz_t());
  unsigned __int128 u = (static_cast<unsigned __int128>(words[1]) << 64) | words[0];
  __int128 v = static_cast<__int128>(u);
  return z < 0 ? -v : v;
}

// floor(q * 2^80) and ceil(q * 2^80).
std::pair<__int128, __int128> fixed_bounds(const mpq_class& q) {
  mpz_class scaled_num = q.get_num();
  scaled_num <<= kFixedShift;
  mpz_class lo, hi;
  mpz_fdiv_q(lo.get_mpz_t(), scaled_num.get_mpz_t(), q.get_den_mpz_t());
  mpz_cdiv_q(hi.get_mpz_t(), scaled_num.get_mpz_t(), q.get_den_mpz_t());
  return {to_int128(lo), to_int128(hi)};
}

std::int64_t to_int64(const mpz_class& z) {
  if (!z.fits_slong_p()) throw PreconditionError("integer result out of 64-bit range");
  return z.get_si();
}

mpz_class floor_q(const mpq_class& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

std::vector<mpz_class> rational_cf(mpq_class q) {
  std::vector<mpz_class> out;
  mpz_class num = q.get_num();
  mpz_class den = q.get_den();
  while (den != 0) {
    mpz_class a, r;
    mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    out.push_back(a);
    num = den;
    den = r;
  }
  return out;
}

std::string join(const std::vector<std::uint64_t>& xs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
  return os.str();
}

}  // namespace

struct Slope::Impl {
  Kind kind = Kind::kQuadraticSurd;
  std::string text;

  // Quadratic surd (p + q sqrt d) / r with r > 0.
  std::optional<QuadraticNumber> exact;
  mpz_class p, q, r;
  long d = 0;

  // Continued fraction stream.
  std::vector<std::uint64_t> preperiod;
  std::vector<std::uint64_t> period;
  CoefficientProgram program;

  // Certified decimal.
  std::optional<RealBall> ball;
  std::vector<mpz_class> lower_cf;
  std::vector<mpz_class> upper_cf;

  bool fixed_valid = false;
  __int128 fixed_lo = 0;
  __int128 fixed_hi = 0;

  mutable std::mutex mutex;
  mutable std::vector<mpz_class> coeffs;
  mutable std::vector<mpz_class> conv_p;
  mutable std::vector<mpz_class> conv_q;
  // Surd expansion state alpha_k = (P + sqrt D) / Q.
  mutable mpz_class cf_p, cf_q, cf_d;

  mpz_class next_coefficient_locked(std::size_t k) const;
  void extend_locked(std::size_t k) const;
};

mpz_class Slope::Impl::next_coefficient_locked(std::size_t k) const {
  switch (kind) {
    case Kind::kQuadraticSurd: {
      // floor((P + sqrt D)/Q) with D non-square.
      mpz_class a, s;
      mpz_sqrt(s.get_mpz_t(), cf_d.get_mpz_t());
      mpz_class num = cf_q > 0 ? mpz_class(cf_p + s) : mpz_class(-cf_p - s - 1);
      mpz_class den = cf_q > 0 ? cf_q : mpz_class(-cf_q);
      mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      mpz_class next_p = a * cf_q - cf_p;
      mpz_class next_q = (cf_d - next_p * next_p) / cf_q;
      cf_p = next_p;
      cf_q = next_q;
      return a;
    }
    case Kind::kContinuedFraction: {
      if (k == 0) return 0;
      if (program) return mpz_class(std::to_string(program(k)));
      const std::size_t i = k - 1;
      if (i < preperiod.size()) return mpz_class(std::to_string(preperiod[i]));
      const std::size_t j = (i - preperiod.size()) % period.size();
      return mpz_class(std::to_string(period[j]));
    }
    case Kind::kCertifiedDecimal: {
      // The last coefficient of a rational endpoint is ambiguous, so only
      // coefficients strictly before it are trusted.
      bool agree = k + 1 < lower_cf.size() && k + 1 < upper_cf.size();
      for (std::size_t i = 0; agree && i <= k; ++i) agree = lower_cf[i] == upper_cf[i];
      if (agree) return lower_cf[k];
      throw Unsupported("continued fraction coefficient " + std::to_string(k) +
                        " is not determined by the decimal's error bound");
    }
  }
  return 0;
}

void Slope::Impl::extend_locked(std::size_t k) const {
  while (coeffs.size() <= k) {
    const std::size_t i = coeffs.size();
    mpz_class a = next_coefficient_locked(i);
    if (i > 0 && a < 1) {
      throw PreconditionError("continued fraction coefficients must be >= 1");
    }
    coeffs.push_back(a);
    mpz_class pm1 = i >= 1 ? conv_p[i - 1] : mpz_class(1);
    mpz_class qm1 = i >= 1 ? conv_q[i - 1] : mpz_class(0);
    mpz_class pm2 = i >= 2 ? conv_p[i - 2] : (i == 1 ? mpz_class(1) : mpz_class(0));
    mpz_class qm2 = i >= 2 ? conv_q[i - 2] : (i == 1 ? mpz_class(0) : mpz_class(1));
    conv_p.push_back(a * pm1 + pm2);
    conv_q.push_back(a * qm1 + qm2);
  }
}

// ---------------------------------------------------------------------------
// Intercept

Intercept::Intercept() { cache_fixed(); }

Intercept Intercept::rational(const mpq_class& value) {
  mpq_class v = value;
  v.canonicalize();
  if (v < 0 || v >= 1) throw PreconditionError("intercept must satisfy 0 <= rho < 1");
  Intercept out;
  out.kind_ = Kind::kRational;
  out.r_ = v;
  out.cache_fixed();
  return out;
}

Intercept Intercept::affine(const Slope& slope, long k, const mpq_class& r) {
  if (k != 0 && slope.floor_affine(k, r) != 0) {
    throw PreconditionError("intercept must satisfy 0 <= rho < 1");
  }
  if (k == 0) return rational(r);
  Intercept out;
  out.kind_ = Kind::kAffine;
  out.k_ = k;
  out.r_ = r;
  out.cache_fixed();
  return out;
}

Intercept Intercept::fractional_multiple(const Slope& slope, long n) {
  if (n == 0) return Intercept();
  const std::int64_t f = slope.floor_affine(n, 0);
  return affine(slope, n, mpq_class(-f));
}

Intercept Intercept::ball(const RealBall& value) {
  if (value.certainly_negative() || value.certainly_greater(RealBall(1)) ||
      !value.certainly_less(RealBall(1)) || !value.certainly_nonnegative()) {
    throw PreconditionError("intercept ball must lie within [0, 1)");
  }
  Intercept out;
  out.kind_ = Kind::kBall;
  out.ball_ = value;
  return out;
}

Intercept Intercept::parse(std::string_view text) {
  std::string s(text);
  if (s.rfind("dec:", 0) == 0) {
    const auto tilde = s.find('~');
    if (tilde == std::string::npos) throw ParseError("decimal intercept needs '~<error>'");
    return ball(RealBall::from_decimal(s.substr(4, tilde - 4), s.substr(tilde + 1), 256));
  }
  if (s.find('/') != std::string::npos) {
    try {
      return rational(mpq_class(s, 10));
    } catch (const std::invalid_argument&) {
      throw ParseError("bad rational intercept '" + s + "'");
    }
  }
  RealBall exact = RealBall::from_decimal(s, "0", 64);
  return rational(exact.lower_rational());
}

std::string Intercept::to_string() const {
  switch (kind_) {
    case Kind::kRational:
      return r_.get_str();
    case Kind::kAffine:
      return std::to_string(k_) + "*alpha" + (r_ < 0 ? "" : "+") + r_.get_str();
    case Kind::kBall:
      return "dec:" + ball_->to_string(30);
  }
  return "";
}

void Intercept::cache_fixed() {
  fixed_valid_ = false;
  if (kind_ == Kind::kBall) return;
  if (abs(r_) >= kFastMaxIntercept) return;
  auto [lo, hi] = fixed_bounds(r_);
  fixed_lo_ = lo;
  fixed_hi_ = hi;
  fixed_valid_ = true;
}

// ---------------------------------------------------------------------------
// Slope construction

namespace {

void cache_fixed_alpha(Slope::Impl& impl, const RealBall& enclosure) {
  auto lo = fixed_bounds(enclosure.lower_rational()).first;
  auto hi = fixed_bounds(enclosure.upper_rational()).second;
  impl.fixed_lo = lo;
  impl.fixed_hi = hi;
  impl.fixed_valid = true;
}

}  // namespace

Slope Slope::surd(const mpz_class& p_in, const mpz_class& q_in, long d_in,
                  const mpz_class& r_in) {
  if (r_in == 0) throw PreconditionError("surd denominator is zero");
  if (d_in <= 0) throw PreconditionError("surd radicand must be positive");
  auto [k, m] = square_free_split(d_in);
  if (m == 1 || q_in == 0) {
    throw PreconditionError("slope must be irrational; rational slopes give periodic words");
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::kQuadraticSurd;
  impl->p = r_in > 0 ? p_in : mpz_class(-p_in);
  impl->q = (r_in > 0 ? q_in : mpz_class(-q_in)) * k;
  impl->r = abs(r_in);
  impl->d = m;
  impl->exact = QuadraticNumber::surd(impl->p, impl->q, impl->d, impl->r);
  if (impl->exact->sign() <= 0 || (*impl->exact - QuadraticNumber(1)).sign() >= 0) {
    throw PreconditionError("slope must lie in (0, 1), got " + impl->exact->to_string());
  }
  {
    std::ostringstream os;
    os << "surd:(" << impl->p.get_str() << (impl->q < 0 ? "-" : "+")
       << mpz_class(abs(impl->q)).get_str() << "*sqrt(" << impl->d << "))/"
       << impl->r.get_str();
    impl->text = os.str();
  }
  // alpha = (P + sqrt D) / Q with Q | D - P^2.
  mpz_class big_p = impl->q > 0 ? impl->p : mpz_class(-impl->p);
  mpz_class big_q = impl->q > 0 ? impl->r : mpz_class(-impl->r);
  mpz_class big_d = impl->q * impl->q * impl->d;
  mpz_class rem = big_d - big_p * big_p;
  if (!mpz_divisible_p(rem.get_mpz_t(), big_q.get_mpz_t())) {
    mpz_class aq = abs(big_q);
    big_p *= aq;
    big_d *= aq * aq;
    big_q *= aq;
  }
  impl->cf_p = big_p;
  impl->cf_q = big_q;
  impl->cf_d = big_d;
  cache_fixed_alpha(*impl, impl->exact->to_ball(192));
  return Slope(std::move(impl));
}

Slope Slope::continued_fraction(std::vector<std::uint64_t> preperiod,
                                std::vector<std::uint64_t> period) {
  if (period.empty()) {
    throw PreconditionError(
        "a finite continued fraction is rational; give a non-empty period");
  }
  for (auto a : preperiod) {
    if (a < 1) throw PreconditionError("continued fraction coefficients must be >= 1");
  }
  for (auto a : period) {
    if (a < 1) throw PreconditionError("continued fraction coefficients must be >= 1");
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::kContinuedFraction;
  impl->preperiod = std::move(preperiod);
  impl->period = std::move(period);
  std::string text = "cf:[0;";
  text += join(impl->preperiod);
  if (!impl->preperiod.empty()) text += ",";
  text += "(" + join(impl->period) + ")]";
  impl->text = text;
  Slope out(impl);
  cache_fixed_alpha(*impl, out.to_ball(192));
  return out;
}

Slope Slope::continued_fraction_program(CoefficientProgram coefficient,
                                        std::string label) {
  if (!coefficient) throw PreconditionError("empty coefficient program");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::kContinuedFraction;
  impl->program = std::move(coefficient);
  impl->text = "cf:" + label;
  Slope out(impl);
  cache_fixed_alpha(*impl, out.to_ball(192));
  return out;
}

Slope Slope::certified_decimal(const RealBall& value) {
  if (!value.certainly_positive() || !value.certainly_less(RealBall(1))) {
    throw PreconditionError("decimal slope must lie within (0, 1)");
  }
  if (value.is_exact()) {
    throw PreconditionError("an exact decimal is rational; give a nonzero error bound");
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::kCertifiedDecimal;
  impl->ball = value;
  impl->lower_cf = rational_cf(value.lower_rational());
  impl->upper_cf = rational_cf(value.upper_rational());
  impl->text = "dec:" + value.midpoint_string(40) + "~" + value.radius_string();
  cache_fixed_alpha(*impl, value);
  return Slope(std::move(impl));
}

Slope Slope::inverse_golden_square() { return surd(3, -1, 5, 2); }

Slope Slope::parse(std::string_view text_view) {
  std::string text(text_view);
  auto strip = [](std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
            s.end());
    return s;
  };
  if (text.rfind("surd:", 0) == 0) {
    std::string body = strip(text.substr(5));
    static const std::regex re(
        R"(^\(([+-]?\d+)([+-])(?:(\d+)\*)?sqrt\((\d+)\)\)(?:/([+-]?\d+))?$)");
    std::smatch m;
    if (!std::regex_match(body, m, re)) {
      throw ParseError("bad surd slope '" + text + "', expected surd:(p+q*sqrt(d))/r");
    }
    mpz_class p(m[1].str(), 10);
    mpz_class q(m[3].matched ? m[3].str() : std::string("1"), 10);
    if (m[2].str() == "-") q = -q;
    long d = std::stol(m[4].str());
    mpz_class r(m[5].matched ? m[5].str() : std::string("1"), 10);
    return surd(p, q, d, r);
  }
  if (text.rfind("cf:", 0) == 0) {
    std::string body = strip(text.substr(3));
    if (body.size() < 2 || body.front() != '[' || body.back() != ']') {
      throw ParseError("bad continued fraction '" + text + "', expected cf:[0;a1,...,(p1,...)]");
    }
    body = body.substr(1, body.size() - 2);
    const auto semi = body.find(';');
    if (semi == std::string::npos || body.substr(0, semi) != "0") {
      throw ParseError("continued fraction slope must start with '0;'");
    }
    std::string rest = body.substr(semi + 1);
    std::vector<std::uint64_t> pre, per;
    const auto open = rest.find('(');
    std::string pre_text = open == std::string::npos ? rest : rest.substr(0, open);
    std::string per_text;
    if (open != std::string::npos) {
      const auto close = rest.find(')', open);
      if (close == std::string::npos || close + 1 != rest.size()) {
        throw ParseError("period must be the final '(...)' group in '" + text + "'");
      }
      per_text = rest.substr(open + 1, close - open - 1);
    }
    auto parse_list = [&](const std::string& list, std::vector<std::uint64_t>& out) {
      std::stringstream ss(list);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
          std::size_t used = 0;
          long long v = std::stoll(item, &used);
          if (used != item.size() || v < 1) throw std::invalid_argument("coefficient");
          out.push_back(static_cast<std::uint64_t>(v));
        } catch (const std::exception&) {
          throw ParseError("bad continued fraction coefficient '" + item + "'");
        }
      }
    };
    parse_list(pre_text, pre);
    parse_list(per_text, per);
    return continued_fraction(std::move(pre), std::move(per));
  }
  if (text.rfind("dec:", 0) == 0) {
    const auto tilde = text.find('~');
    if (tilde == std::string::npos) throw ParseError("decimal slope needs '~<error>'");
    std::string digits = strip(text.substr(4, tilde - 4));
    std::string error = strip(text.substr(tilde + 1));
    const unsigned bits = std::max<unsigned>(64, static_cast<unsigned>(digits.size() * 4 + 64));
    return certified_decimal(RealBall::from_decimal(digits, error, bits));
  }
  throw ParseError("unknown slope syntax '" + text + "' (use surd:, cf: or dec:)");
}

// ---------------------------------------------------------------------------
// Queries

Slope::Kind Slope::kind() const { return impl_->kind; }

bool Slope::irrationality_assumed() const { return impl_->kind == Kind::kCertifiedDecimal; }

std::string Slope::to_string() const { return impl_->text; }

std::optional<QuadraticNumber> Slope::exact() const { return impl_->exact; }

mpz_class Slope::coefficient(std::size_t k) const {
  std::lock_guard<std::mutex> lock(impl_->mutex);
  impl_->extend_locked(k);
  return impl_->coeffs[k];
}

Fraction Slope::convergent(std::size_t k) const {
  std::lock_guard<std::mutex> lock(impl_->mutex);
  impl_->extend_locked(k);
  return Fraction{impl_->conv_p[k], impl_->conv_q[k]};
}

RealBall Slope::to_ball(unsigned bits) const {
  switch (impl_->kind) {
    case Kind::kQuadraticSurd:
      return impl_->exact->to_ball(bits);
    case Kind::kCertifiedDecimal:
      return *impl_->ball;
    case Kind::kContinuedFraction: {
      // alpha lies between consecutive convergents, |c_k - c_{k+1}| = 1/(q_k q_{k+1}).
      mpz_class target = mpz_class(1) << (bits + 2);
      for (std::size_t k = 1;; ++k) {
        Fraction a = convergent(k);
        Fraction b = convergent(k + 1);
        if (a.q * b.q > target) {
          mpq_class x = a.value();
          mpq_class y = b.value();
          return RealBall::from_bounds(std::min(x, y), std::max(x, y), bits + 4);
        }
      }
    }
  }
  return RealBall();
}

double Slope::approx() const { return to_ball(64).midpoint_double(); }

// ---------------------------------------------------------------------------
// Floors

std::int64_t Slope::floor_affine_fast(std::int64_t m, const Intercept* rho,
                                      const mpq_class& c, bool* ok) const {
  *ok = false;
  if (!impl_->fixed_valid) return 0;
  if (m > kFastMaxMultiplier || m < -kFastMaxMultiplier) return 0;
  __int128 c_lo, c_hi;
  if (rho != nullptr) {
    if (!rho->fixed_valid_) return 0;
    c_lo = rho->fixed_lo_;
    c_hi = rho->fixed_hi_;
  } else {
    if (abs(c) >= kFastMaxIntercept) return 0;
    auto b = fixed_bounds(c);
    c_lo = b.first;
    c_hi = b.second;
  }
  const __int128 mm = m;
  __int128 lo = (m >= 0 ? mm * impl_->fixed_lo : mm * impl_->fixed_hi) + c_lo;
  __int128 hi = (m >= 0 ? mm * impl_->fixed_hi : mm * impl_->fixed_lo) + c_hi;
  const __int128 flo = lo >> kFixedShift;
  const __int128 fhi = hi >> kFixedShift;
  if (flo != fhi) return 0;
  *ok = true;
  return static_cast<std::int64_t>(flo);
}

std::int64_t Slope::floor_ball(const RealBall& x) const {
  auto f = x.certified_floor();
  if (!f) {
    throw PrecisionExhausted("ball " + x.to_string(25) +
                             " straddles an integer; the slope or intercept is too coarse");
  }
  return *f;
}

std::int64_t Slope::floor_affine(std::int64_t m, const mpq_class& c_in) const {
  mpq_class c = c_in;
  c.canonicalize();
  bool ok = false;
  std::int64_t fast = floor_affine_fast(m, nullptr, c, &ok);
  if (ok) return fast;
  if (m == 0) return to_int64(floor_q(c));

  switch (impl_->kind) {
    case Kind::kQuadraticSurd: {
      // m (p + q sqrt d)/r + cn/cd = (m p cd + cn r + m q cd sqrt d) / (r cd).
      const mpz_class mz(std::to_string(m));
      const mpz_class& cn = c.get_num();
      const mpz_class& cd = c.get_den();
      mpz_class a = mz * impl_->p * cd + cn * impl_->r;
      mpz_class b = mz * impl_->q * cd;
      mpz_class den = impl_->r * cd;
      return to_int64(floor_surd(a, b, impl_->d, den));
    }
    case Kind::kContinuedFraction: {
      const mpq_class mq(mpz_class(std::to_string(m)));
      const unsigned ceiling = default_ladder().ceiling_bits;
      const mpz_class limit = mpz_class(1) << ceiling;
      for (std::size_t k = 1;; ++k) {
        Fraction a = convergent(k);
        Fraction b = convergent(k + 1);
        mpq_class x = mq * a.value() + c;
        mpq_class y = mq * b.value() + c;
        if (x > y) std::swap(x, y);
        // alpha is strictly between the two convergents.
        mpz_class fx = floor_q(x);
        if (y <= mpq_class(fx + 1)) return to_int64(fx);
        if (b.q > limit) {
          throw PrecisionExhausted("continued fraction floor undecided at the precision ceiling");
        }
      }
    }
    case Kind::kCertifiedDecimal: {
      RealBall x = impl_->ball->mul_long(static_cast<long>(m)) +
                   RealBall::from_rational(c, impl_->ball->precision() + 64);
      return floor_ball(x);
    }
  }
  return 0;
}

std::int64_t Slope::floor_linear(std::int64_t n, const Intercept& rho) const {
  if (n < 0) throw PreconditionError("floor_linear needs n >= 0");
  switch (rho.kind()) {
    case Intercept::Kind::kRational:
    case Intercept::Kind::kAffine: {
      const std::int64_t m = n + rho.alpha_coefficient();
      bool ok = false;
      std::int64_t fast = floor_affine_fast(m, &rho, rho.rational_part(), &ok);
      if (ok) return fast;
      return floor_affine(m, rho.rational_part());
    }
    case Intercept::Kind::kBall: {
      const RealBall& r = *rho.ball_value();
      if (n == 0) return floor_ball(r);
      for (unsigned bits : default_ladder().rungs()) {
        RealBall x = to_ball(bits).mul_long(static_cast<long>(n)) + r;
        if (auto f = x.certified_floor()) return *f;
        if (impl_->kind == Kind::kCertifiedDecimal) break;
      }
      throw PrecisionExhausted("alpha*n + rho straddles an integer at n = " + std::to_string(n));
    }
  }
  return 0;
}

std::int64_t Slope::ceil_linear(std::int64_t n, const Intercept& rho) const {
  if (n < 0) throw PreconditionError("ceil_linear needs n >= 0");
  switch (rho.kind()) {
    case Intercept::Kind::kRational:
    case Intercept::Kind::kAffine: {
      const std::int64_t m = n + rho.alpha_coefficient();
      return -floor_affine(-m, -rho.rational_part());
    }
    case Intercept::Kind::kBall: {
      const RealBall& r = *rho.ball_value();
      for (unsigned bits : default_ladder().rungs()) {
        RealBall x = n == 0 ? r : to_ball(bits).mul_long(static_cast<long>(n)) + r;
        if (auto f = x.certified_ceil()) return *f;
        if (n == 0 || impl_->kind == Kind::kCertifiedDecimal) break;
      }
      throw PrecisionExhausted("alpha*n + rho straddles an integer at n = " + std::to_string(n));
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Derived slopes

Slope Slope::complement() const {
  switch (impl_->kind) {
    case Kind::kQuadraticSurd:
      return surd(impl_->r - impl_->p, -impl_->q, impl_->d, impl_->r);
    case Kind::kCertifiedDecimal:
      return certified_decimal(RealBall(1, impl_->ball->precision()) - *impl_->ball);
    case Kind::kContinuedFraction: {
      // 1 - [0; a1, a2, ...] = [0; 1, a1 - 1, a2, ...] when a1 > 1,
      //                      = [0; a2 + 1, a3, ...]   when a1 = 1.
      if (!impl_->program) {
        std::vector<std::uint64_t> seq = impl_->preperiod;
        std::vector<std::uint64_t> per = impl_->period;
        if (seq.empty()) {
          seq.push_back(per.front());
          std::rotate(per.begin(), per.begin() + 1, per.end());
        }
        std::vector<std::uint64_t> tail(seq.begin() + 1, seq.end());
        std::vector<std::uint64_t> out;
        if (seq.front() > 1) {
          out = {1, seq.front() - 1};
          out.insert(out.end(), tail.begin(), tail.end());
        } else {
          if (tail.empty()) {
            tail.push_back(per.front());
            std::rotate(per.begin(), per.begin() + 1, per.end());
          }
          out = {tail.front() + 1};
          out.insert(out.end(), tail.begin() + 1, tail.end());
        }
        return continued_fraction(std::move(out), std::move(per));
      }
      Slope self = *this;
      const bool first_big = coefficient(1) > 1;
      auto program = [self, first_big](std::size_t k) -> std::uint64_t {
        auto get = [&](std::size_t i) { return self.coefficient(i).get_ui(); };
        if (first_big) {
          if (k == 1) return 1;
          if (k == 2) return get(1) - 1;
          return get(k - 1);
        }
        if (k == 1) return get(2) + 1;
        return get(k + 1);
      };
      return continued_fraction_program(program, "1-(" + impl_->text + ")");
    }
  }
  return *this;
}

bool Slope::less_than(const Slope& other) const {
  if (impl_->exact && other.impl_->exact && *impl_->exact == *other.impl_->exact) {
    return false;
  }
  for (unsigned bits : default_ladder().rungs()) {
    RealBall a = to_ball(bits);
    RealBall b = other.to_ball(bits);
    if (a.certainly_less(b)) return true;
    if (a.certainly_greater(b)) return false;
  }
  throw PrecisionExhausted("slope comparison undecided at the precision ceiling");
}

}  // namespace sturmbeta
