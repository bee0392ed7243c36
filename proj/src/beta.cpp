#include "sturmbeta/beta.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <unordered_set>

#include "sturmbeta/errors.hpp"
#include "sturmbeta/numeric/precision.hpp"

namespace sturmbeta {
namespace {

struct Mpfr {
  mpfr_t v;
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v, prec); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  ~Mpfr() { mpfr_clear(v); }
  operator mpfr_ptr() { return v; }
  operator mpfr_srcptr() const { return v; }
  mpfr_ptr operator->() { return v; }
  mpfr_srcptr operator->() const { return v; }
};

RealBall ball_from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi, unsigned bits) {
  RealBall r(0, bits);
  mpfr_set(r.lower_mut(), lo, MPFR_RNDD);
  mpfr_set(r.upper_mut(), hi, MPFR_RNDU);
  return r;
}

unsigned bits_for_digits(std::size_t n, long b) {
  return static_cast<unsigned>(static_cast<double>(n) * std::log2(static_cast<double>(b) + 1.0)) + 64;
}

// ---------------------------------------------------------------------------
// G(x) = sum_{n<N} s(n) x^-(n+1) + tail - 1 with 0 <= tail <= b / (x^N (x - 1)).

std::size_t terms_for_tail(double x, long b, double tail_bits) {
  if (x <= 1.0) return std::numeric_limits<std::size_t>::max();
  const double need = (tail_bits + std::log2(static_cast<double>(b)) - std::log2(x - 1.0)) / std::log2(x);
  return static_cast<std::size_t>(std::max(1.0, std::ceil(need))) + 1;
}

struct SignResult {
  int sign = 0;
  double magnitude = 0;  // max |G| over the enclosure, when undecided
};

SignResult certified_sign(const Word& s, std::size_t n_terms, long b, mpfr_srcptr x, mpfr_prec_t prec) {
  Mpfr ylo(prec), yhi(prec), lo(prec), hi(prec), t(prec), xm1(prec);
  mpfr_ui_div(ylo, 1, x, MPFR_RNDD);
  mpfr_ui_div(yhi, 1, x, MPFR_RNDU);
  const std::size_t n = std::min(n_terms, s.size());
  mpfr_set_ui(lo, s[n - 1], MPFR_RNDD);
  mpfr_set_ui(hi, s[n - 1], MPFR_RNDU);
  for (std::size_t k = n - 1; k-- > 0;) {
    mpfr_mul(lo, lo, ylo, MPFR_RNDD);
    mpfr_add_ui(lo, lo, s[k], MPFR_RNDD);
    mpfr_mul(hi, hi, yhi, MPFR_RNDU);
    mpfr_add_ui(hi, hi, s[k], MPFR_RNDU);
  }
  mpfr_mul(lo, lo, ylo, MPFR_RNDD);
  mpfr_mul(hi, hi, yhi, MPFR_RNDU);
  mpfr_pow_ui(t, yhi, n, MPFR_RNDU);
  mpfr_mul_ui(t, t, static_cast<unsigned long>(b), MPFR_RNDU);
  mpfr_sub_ui(xm1, x, 1, MPFR_RNDD);
  mpfr_div(t, t, xm1, MPFR_RNDU);
  mpfr_add(hi, hi, t, MPFR_RNDU);
  mpfr_sub_ui(lo, lo, 1, MPFR_RNDD);
  mpfr_sub_ui(hi, hi, 1, MPFR_RNDU);
  SignResult r;
  if (mpfr_sgn(lo) > 0) {
    r.sign = 1;
  } else if (mpfr_sgn(hi) < 0) {
    r.sign = -1;
  } else {
    r.magnitude = std::max(std::fabs(mpfr_get_d(lo, MPFR_RNDU)), std::fabs(mpfr_get_d(hi, MPFR_RNDU)));
  }
  return r;
}

class RootSolver {
 public:
  RootSolver(DigitWord s, long b, std::size_t max_terms)
      : s_(std::move(s)), b_(b), max_terms_(max_terms) {}

  // Enclosure of the root with radius below 2^-bits.
  RealBall solve(unsigned bits) {
    const unsigned ceiling = std::max(default_ladder().ceiling_bits, bits + 64);
    Mpfr lo(ceiling + 64), hi(ceiling + 64);
    coarse_bracket(lo, hi);
    if (auto fast = newton_certified(lo, hi, bits)) return *fast;
    return bisect(lo, hi, bits, ceiling);
  }

 private:
  const Word& digits(std::size_t n) {
    if (n > max_terms_) {
      throw PrecisionExhausted("root enclosure needs " + std::to_string(n) +
                               " series terms, above the cap of " + std::to_string(max_terms_));
    }
    if (cache_.size() < n) cache_ = s_.prefix(std::max(n, cache_.size() * 2));
    return cache_;
  }

  SignResult sign_at(mpfr_srcptr x, unsigned tail_bits, mpfr_prec_t prec) {
    const std::size_t n = terms_for_tail(mpfr_get_d(x, MPFR_RNDD), b_, tail_bits);
    const Word& s = digits(n);
    return certified_sign(s, n, b_, x, prec);
  }

  void coarse_bracket(mpfr_ptr lo, mpfr_ptr hi) {
    mpfr_set_si(lo, b_, MPFR_RNDN);
    mpfr_set_si(hi, b_ + 1, MPFR_RNDN);
    Mpfr mid(mpfr_get_prec(lo));
    for (int k = 0; k < 56; ++k) {
      mpfr_add(mid, lo, hi, MPFR_RNDN);
      mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
      SignResult r = sign_at(mid, 80, 128);
      if (r.sign > 0) {
        mpfr_set(lo, mid, MPFR_RNDN);
      } else if (r.sign < 0) {
        mpfr_set(hi, mid, MPFR_RNDN);
      } else {
        break;
      }
    }
  }

  // Approximate Newton refinement, then a certified sign check on a tight
  // bracket around the approximation.
  std::optional<RealBall> newton_certified(mpfr_srcptr lo, mpfr_srcptr hi, unsigned bits) {
    const mpfr_prec_t final_prec = bits + 96;
    Mpfr x(final_prec), y(final_prec), acc(final_prec), dacc(final_prec), tmp(final_prec);
    mpfr_add(x, lo, hi, MPFR_RNDN);
    mpfr_div_2ui(x, x, 1, MPFR_RNDN);
    if (mpfr_cmp_si(x, b_) <= 0) return std::nullopt;
    std::vector<mpfr_prec_t> schedule;
    for (mpfr_prec_t p = 128; p < final_prec; p *= 2) schedule.push_back(p);
    schedule.push_back(final_prec);
    schedule.push_back(final_prec);
    for (mpfr_prec_t p : schedule) {
      mpfr_prec_round(x, final_prec, MPFR_RNDN);
      const std::size_t n = terms_for_tail(mpfr_get_d(x, MPFR_RNDD), b_, static_cast<double>(p) + 8);
      const Word& s = digits(n);
      Mpfr yp(p), ap(p), dp(p), tp(p);
      mpfr_ui_div(yp, 1, x, MPFR_RNDN);
      mpfr_set_ui(ap, s[n - 1], MPFR_RNDN);
      mpfr_set_ui(dp, static_cast<unsigned long>(n) * s[n - 1], MPFR_RNDN);
      for (std::size_t k = n - 1; k-- > 0;) {
        mpfr_mul(ap, ap, yp, MPFR_RNDN);
        mpfr_add_ui(ap, ap, s[k], MPFR_RNDN);
        mpfr_mul(dp, dp, yp, MPFR_RNDN);
        mpfr_add_ui(dp, dp, static_cast<unsigned long>(k + 1) * s[k], MPFR_RNDN);
      }
      mpfr_mul(ap, ap, yp, MPFR_RNDN);
      mpfr_sub_ui(ap, ap, 1, MPFR_RNDN);  // G(x)
      mpfr_mul(dp, dp, yp, MPFR_RNDN);
      mpfr_mul(dp, dp, yp, MPFR_RNDN);  // -G'(x)
      if (mpfr_zero_p(dp)) return std::nullopt;
      mpfr_div(tp, ap, dp, MPFR_RNDN);
      mpfr_add(x, x, tp, MPFR_RNDN);
    }
    if (mpfr_cmp(x, lo) < 0 || mpfr_cmp(x, hi) > 0) return std::nullopt;
    // Bracket [x - eps, x + eps] with eps = 2^-(bits + 2).
    Mpfr left(final_prec), right(final_prec), eps(64);
    mpfr_set_ui_2exp(eps, 1, -static_cast<long>(bits) - 2, MPFR_RNDN);
    mpfr_sub(left, x, eps, MPFR_RNDD);
    mpfr_add(right, x, eps, MPFR_RNDU);
    const unsigned tail_bits = bits + 40;
    if (sign_at(left, tail_bits, final_prec).sign <= 0) return std::nullopt;
    if (sign_at(right, tail_bits, final_prec).sign >= 0) return std::nullopt;
    return ball_from_endpoints(left, right, static_cast<unsigned>(final_prec));
  }

  RealBall bisect(mpfr_ptr lo, mpfr_ptr hi, unsigned bits, unsigned ceiling) {
    Mpfr width(64), mid(ceiling + 64);
    unsigned extra = 0;
    for (;;) {
      mpfr_sub(width, hi, lo, MPFR_RNDU);
      const long k = -mpfr_get_exp(width);  // width < 2^-k+1
      if (k > static_cast<long>(bits) + 1) break;
      const unsigned prec = static_cast<unsigned>(std::max(k, 0L)) + 64 + extra;
      if (prec > ceiling + 64) {
        throw PrecisionExhausted("root bracket undecided at the precision ceiling");
      }
      mpfr_add(mid, lo, hi, MPFR_RNDN);
      mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
      SignResult r = sign_at(mid, static_cast<unsigned>(std::max(k, 0L)) + 40 + extra, prec);
      if (r.sign > 0) {
        mpfr_set(lo, mid, MPFR_RNDN);
      } else if (r.sign < 0) {
        mpfr_set(hi, mid, MPFR_RNDN);
      } else {
        // |G(mid)| <= M and |G'| >= b/(b+1)^2 on the bracket.
        const double radius = r.magnitude * static_cast<double>((b_ + 1) * (b_ + 1)) / static_cast<double>(b_);
        const double w = mpfr_get_d(width, MPFR_RNDU);
        if (radius < w / 4) {
          Mpfr a(ceiling + 64), c(ceiling + 64);
          mpfr_sub_d(a, mid, radius, MPFR_RNDD);
          mpfr_add_d(c, mid, radius, MPFR_RNDU);
          if (mpfr_cmp(a, lo) > 0) mpfr_set(lo, a, MPFR_RNDN);
          if (mpfr_cmp(c, hi) < 0) mpfr_set(hi, c, MPFR_RNDN);
        } else {
          extra += 32;
        }
      }
    }
    return ball_from_endpoints(lo, hi, std::max<unsigned>(bits + 8, static_cast<unsigned>(mpfr_get_prec(lo))));
  }

  DigitWord s_;
  long b_;
  std::size_t max_terms_;
  Word cache_;
};

std::string orbit_key(const QuadraticNumber& x) { return x.to_string(); }

}  // namespace

// ---------------------------------------------------------------------------
// BetaNumber

struct BetaNumber::Impl {
  Kind kind = Kind::kExact;
  long b = 1;
  std::optional<QuadraticNumber> exact;
  std::optional<DigitWord> word;
  std::size_t verified = 0;
  std::size_t max_terms = 1000000;

  std::mutex mutex;
  RealBall best;
  std::optional<DigitWord> expansion;
};

BetaNumber BetaNumber::exact(const QuadraticNumber& value) {
  if ((value - QuadraticNumber(1)).sign() <= 0) throw PreconditionError("beta must exceed 1");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::kExact;
  impl->exact = value;
  impl->b = value.floor().get_si();
  impl->best = value.to_ball(kDefaultBits);
  return BetaNumber(std::move(impl));
}

BetaNumber BetaNumber::from_ball(const RealBall& value) {
  if (!value.certainly_greater(RealBall(1L))) throw PreconditionError("beta ball must lie above 1");
  auto f = value.certified_floor();
  if (!f) throw PreconditionError("beta ball straddles an integer; floor(beta) is not determined");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::kBall;
  impl->b = *f;
  impl->best = value;
  return BetaNumber(std::move(impl));
}

BetaNumber BetaNumber::parse(std::string_view text_view) {
  std::string text(text_view);
  auto body = [&](std::size_t n) { return text.substr(n); };
  try {
    if (text.rfind("int:", 0) == 0) return exact(QuadraticNumber(std::stol(body(4))));
    if (text.rfind("rat:", 0) == 0) return exact(QuadraticNumber(mpq_class(body(4), 10)));
    if (text.rfind("surd:", 0) == 0) {
      // Reuse the slope grammar without its (0, 1) range restriction.
      const std::string s = body(5);
      const auto open = s.find('(');
      const auto sq = s.find("sqrt(");
      const auto close = s.find(')', sq);
      if (open == std::string::npos || sq == std::string::npos || close == std::string::npos) {
        throw ParseError("bad surd '" + text + "'");
      }
      std::string head = s.substr(open + 1, sq - open - 1);  // "p+q*" or "p+"
      const long d = std::stol(s.substr(sq + 5, close - sq - 5));
      std::size_t sign_pos = head.find_last_of("+-");
      if (sign_pos == 0 || sign_pos == std::string::npos) throw ParseError("bad surd '" + text + "'");
      std::string p_text = head.substr(0, sign_pos);
      std::string q_text = head.substr(sign_pos + 1);
      if (!q_text.empty() && q_text.back() == '*') q_text.pop_back();
      if (q_text.empty()) q_text = "1";
      mpz_class q(q_text, 10);
      if (head[sign_pos] == '-') q = -q;
      mpz_class r = 1;
      const auto slash = s.find('/', close);
      if (slash != std::string::npos) r = mpz_class(s.substr(slash + 1), 10);
      return exact(QuadraticNumber::surd(mpz_class(p_text, 10), q, d, r));
    }
    if (text.rfind("dec:", 0) == 0) {
      const auto tilde = text.find('~');
      if (tilde == std::string::npos) throw ParseError("decimal beta needs '~<error>'");
      const std::string digits = text.substr(4, tilde - 4);
      const unsigned bits = std::max<unsigned>(128, static_cast<unsigned>(digits.size() * 4 + 64));
      return from_ball(RealBall::from_decimal(digits, text.substr(tilde + 1), bits));
    }
    return exact(QuadraticNumber(std::stol(text)));
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("bad beta '" + text + "' (use int:, rat:, surd: or dec:)");
  }
}

BetaNumber::Kind BetaNumber::kind() const { return impl_->kind; }
long BetaNumber::floor() const { return impl_->b; }
bool BetaNumber::is_integer() const {
  return impl_->exact && impl_->exact->is_rational() && impl_->exact->rational_part().get_den() == 1;
}
const std::optional<QuadraticNumber>& BetaNumber::exact_value() const { return impl_->exact; }

RealBall BetaNumber::value() const {
  std::lock_guard<std::mutex> lock(impl_->mutex);
  return impl_->best;
}

RealBall BetaNumber::value_at(unsigned bits) const {
  std::lock_guard<std::mutex> lock(impl_->mutex);
  if (impl_->kind == Kind::kBall) return impl_->best;
  if (impl_->best.radius_log2() < -static_cast<double>(bits) && impl_->best.precision() >= bits) {
    return impl_->best;
  }
  if (impl_->kind == Kind::kExact) {
    impl_->best = impl_->exact->to_ball(bits + 8);
    return impl_->best;
  }
  RootSolver solver(*impl_->word, impl_->b, impl_->max_terms);
  RealBall fresh = solver.solve(bits);
  auto both = RealBall::intersect(fresh, impl_->best);
  impl_->best = both ? *both : fresh;
  return impl_->best;
}

std::optional<DigitWord> BetaNumber::defining_word() const { return impl_->word; }
std::size_t BetaNumber::verified_depth() const { return impl_->verified; }

DigitWord BetaNumber::expansion_of_one() const {
  {
    std::lock_guard<std::mutex> lock(impl_->mutex);
    if (impl_->expansion) return *impl_->expansion;
  }
  DigitWord result;
  const long b = impl_->b;
  Word alphabet(static_cast<std::size_t>(b) + 1);
  std::iota(alphabet.begin(), alphabet.end(), Digit{0});
  switch (impl_->kind) {
    case Kind::kSolved:
      result = *impl_->word;
      break;
    case Kind::kExact: {
      if (is_integer()) {
        result = DigitWord::finite({static_cast<Digit>(b)});
        break;
      }
      // Exact orbit of 1; a repeated point gives the eventual period.
      const QuadraticNumber beta = *impl_->exact;
      QuadraticNumber x(1);
      Word digits;
      std::map<std::string, std::size_t> seen;
      constexpr std::size_t kSearch = 2048;
      std::optional<WordStructure> found;
      for (std::size_t n = 0; n < kSearch; ++n) {
        if (x.sign() == 0) {
          found = WordStructure{digits, {0}};
          break;
        }
        auto [it, inserted] = seen.emplace(orbit_key(x), n);
        if (!inserted) {
          const std::size_t start = it->second;
          found = WordStructure{Word(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(start)),
                                Word(digits.begin() + static_cast<std::ptrdiff_t>(start), digits.end())};
          break;
        }
        QuadraticNumber y = beta * x;
        mpz_class d = y.floor();
        digits.push_back(static_cast<Digit>(d.get_ui()));
        x = y - QuadraticNumber(mpq_class(d));
      }
      if (found) {
        result = DigitWord::periodic(found->preperiod, found->period);
        break;
      }
      struct State {
        QuadraticNumber beta;
        QuadraticNumber x;
        Word head;
      };
      auto state = std::make_shared<State>(State{beta, x, digits});
      result = DigitWord::from_extender(
          [state](Word& memo, std::size_t target) {
            while (memo.size() < target && memo.size() < state->head.size()) {
              memo.push_back(state->head[memo.size()]);
            }
            while (memo.size() < target) {
              QuadraticNumber y = state->beta * state->x;
              mpz_class d = y.floor();
              memo.push_back(static_cast<Digit>(d.get_ui()));
              state->x = y - QuadraticNumber(mpq_class(d));
            }
          },
          alphabet);
      break;
    }
    case Kind::kBall: {
      struct State {
        RealBall beta;
        RealBall x;
      };
      auto state = std::make_shared<State>(State{impl_->best, RealBall(1L, impl_->best.precision())});
      result = DigitWord::from_extender(
          [state](Word& memo, std::size_t target) {
            while (memo.size() < target) {
              RealBall y = state->beta * state->x;
              auto d = y.certified_floor();
              if (!d) {
                throw PrecisionExhausted("beta enclosure too coarse for digit " +
                                         std::to_string(memo.size() + 1) + " of d_beta(1)");
              }
              memo.push_back(static_cast<Digit>(*d));
              state->x = y.sub_long(*d);
            }
          },
          alphabet);
      break;
    }
  }
  std::lock_guard<std::mutex> lock(impl_->mutex);
  if (!impl_->expansion) impl_->expansion = result;
  return *impl_->expansion;
}

std::string BetaNumber::to_string(int digits) const {
  switch (impl_->kind) {
    case Kind::kExact:
      return impl_->exact->to_string();
    case Kind::kSolved:
      return "solved:" + value().to_string(digits);
    case Kind::kBall:
      return "dec:" + value().to_string(digits);
  }
  return "";
}

// ---------------------------------------------------------------------------
// Dynamics

std::pair<Digit, RealBall> t_beta_step(const BetaNumber& beta, const RealBall& x) {
  if (x.certainly_negative() || x.certainly_greater(RealBall(1L))) {
    throw PreconditionError("T_beta is applied to points of [0, 1]");
  }
  RealBall bb = beta.value_at(std::max<unsigned>(128, x.precision()));
  RealBall y = bb * x;
  auto d = y.certified_floor();
  if (!d) {
    throw PrecisionExhausted("beta*x straddles an integer: x is a discontinuity of T_beta at this precision");
  }
  return {static_cast<Digit>(*d), y.sub_long(*d)};
}

namespace {

// Forward greedy digits; returns the digits produced before the first
// undecided floor together with whether the run completed.
std::pair<Word, bool> forward_digits(const RealBall& beta, RealBall x, std::size_t n) {
  Word out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    RealBall y = beta * x;
    auto d = y.certified_floor();
    if (!d) return {out, false};
    out.push_back(static_cast<Digit>(*d));
    x = y.sub_long(*d);
  }
  return {out, true};
}

void check_unit_interval(const RealBall& x) {
  if (x.certainly_negative() || x.certainly_greater(RealBall(1L))) {
    throw PreconditionError("greedy expansions are defined for x in [0, 1]");
  }
}

}  // namespace

Word d_beta(const BetaNumber& beta, const RealBall& x, std::size_t n) {
  check_unit_interval(x);
  const unsigned bits = std::max(x.precision(), bits_for_digits(n, beta.floor()));
  auto [digits, ok] = forward_digits(beta.value_at(bits).with_precision(bits), x.with_precision(bits), n);
  if (!ok) {
    throw PrecisionExhausted("digit " + std::to_string(digits.size() + 1) +
                             " of d_beta(x) is undecided at this precision");
  }
  return digits;
}

Word d_beta(const BetaNumber& beta, const QuadraticNumber& x, std::size_t n) {
  if (x.sign() < 0 || (x - QuadraticNumber(1)).sign() > 0) {
    throw PreconditionError("greedy expansions are defined for x in [0, 1]");
  }
  if (beta.exact_value()) {
    const QuadraticNumber& b = *beta.exact_value();
    QuadraticNumber cur = x;
    Word out;
    for (std::size_t i = 0; i < n; ++i) {
      QuadraticNumber y = b * cur;
      mpz_class d = y.floor();
      out.push_back(static_cast<Digit>(d.get_ui()));
      cur = y - QuadraticNumber(mpq_class(d));
    }
    return out;
  }
  return d_beta(beta, BetaPoint([x](const RealBall&, unsigned bits) { return x.to_ball(bits); }), n);
}

Word d_beta(const BetaNumber& beta, const BetaPoint& x, std::size_t n, unsigned start_bits) {
  if (start_bits == 0) start_bits = bits_for_digits(n, beta.floor());
  const auto ladder = default_ladder();
  std::size_t best = 0;
  for (unsigned bits : ladder.rungs_from(start_bits)) {
    RealBall bb = beta.value_at(bits).with_precision(bits + 16);
    RealBall point = x(bb, bits + 16);
    check_unit_interval(point);
    auto [digits, ok] = forward_digits(bb, point, n);
    if (ok) return digits;
    best = std::max(best, digits.size());
    if (beta.kind() == BetaNumber::Kind::kBall) break;
  }
  throw PrecisionExhausted("digit " + std::to_string(best + 1) +
                           " of d_beta(x) is undecided at the precision ceiling");
}

// ---------------------------------------------------------------------------
// Lexicographic conditions

std::string_view to_string(ExpansionVerdict v) {
  switch (v) {
    case ExpansionVerdict::kHolds: return "Holds";
    case ExpansionVerdict::kNotStrict: return "NotStrict";
    case ExpansionVerdict::kFails: return "Fails";
    case ExpansionVerdict::kInconclusive: return "Inconclusive";
  }
  return "";
}

namespace {

// Window long enough to decide equality of two eventually periodic words
// whose structures are known.
std::optional<std::size_t> exact_window(const DigitWord& x, const DigitWord& y) {
  if (!x.structure() || !y.structure()) return std::nullopt;
  const auto& a = *x.structure();
  const auto& b = *y.structure();
  const std::size_t lcm = std::lcm(a.period.size(), b.period.size());
  return std::max(a.preperiod.size(), b.preperiod.size()) + lcm;
}

int compare_slices(const Word& x, std::size_t xs, const Word& y, std::size_t ys, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) {
    if (x[xs + i] != y[ys + i]) return x[xs + i] < y[ys + i] ? -1 : 1;
  }
  return 0;
}

}  // namespace

// Compares sigma^n(x) with y. Equal prefixes make the window grow until `cap`;
// 0 means equal on the whole cap.
class ShiftComparer {
 public:
  ShiftComparer(DigitWord x, DigitWord y, std::size_t window, std::size_t cap)
      : x_(std::move(x)), y_(std::move(y)), window_(window), cap_(cap) {}

  int compare(std::size_t n) {
    std::size_t w = std::min(window_, cap_);
    for (;;) {
      grow(n + w, w);
      const int c = compare_slices(xp_, n, yp_, 0, w);
      if (c != 0 || w >= cap_) return c;
      w = std::min(cap_, 2 * w);
    }
  }

 private:
  void grow(std::size_t nx, std::size_t ny) {
    if (xp_.size() < nx) xp_ = x_.prefix(std::max(nx, 2 * xp_.size()));
    if (yp_.size() < ny) yp_ = y_.prefix(std::max(ny, 2 * yp_.size()));
  }

  DigitWord x_, y_;
  std::size_t window_, cap_;
  Word xp_, yp_;
};

std::size_t heuristic_cap(std::size_t depth) {
  return std::max<std::size_t>(64 * depth, std::size_t{1} << 16);
}

ExpansionCheck is_expansion_of_one(const DigitWord& s, std::size_t depth) {
  ExpansionCheck out;
  out.depth = depth;
  if (s.at(0) == 0) {
    out.verdict = ExpansionVerdict::kFails;
    return out;
  }
  const auto exact = exact_window(s, s);
  ShiftComparer cmp(s, s, exact ? *exact : 256, exact ? *exact : heuristic_cap(depth));
  for (std::size_t n = 1; n <= depth; ++n) {
    const int c = cmp.compare(n);
    if (c < 0) continue;
    out.at = n;
    if (c > 0) {
      out.verdict = ExpansionVerdict::kFails;
    } else {
      out.verdict = exact ? ExpansionVerdict::kNotStrict : ExpansionVerdict::kInconclusive;
    }
    return out;
  }
  return out;
}

DigitWord quasi_greedy(const Word& d) {
  if (d.empty() || d.back() == 0) throw PreconditionError("quasi-greedy form needs d_m >= 1");
  Word period = d;
  period.back() -= 1;
  return DigitWord::periodic({}, period);
}

AdmissibilityCheck is_admissible(const DigitWord& s, const BetaNumber& beta, std::size_t depth) {
  AdmissibilityCheck out;
  out.depth = depth;
  DigitWord bound = beta.expansion_of_one();
  if (auto fd = bound.finite_digits()) {
    bound = quasi_greedy(*fd);
    out.used_quasi_greedy = true;
  }
  const auto exact = exact_window(s, bound);
  ShiftComparer cmp(s, bound, exact ? *exact : 256, exact ? *exact : heuristic_cap(depth));
  for (std::size_t n = 0; n <= depth; ++n) {
    const int c = cmp.compare(n);
    if (c > 0) {
      out.admissible = false;
      out.rejected_at = n;
      return out;
    }
    if (c == 0 && !exact) out.inconclusive = true;
  }
  return out;
}

AdmissibilityCheck is_admissible(const Word& finite_word, const BetaNumber& beta) {
  return is_admissible(DigitWord::finite(finite_word), beta, finite_word.size());
}

// ---------------------------------------------------------------------------
// Solving for beta

namespace {

// Re-derives digits of d_beta(1) by forward iteration. Orbit points that come
// close to a jump of T_beta need extra precision, so the ladder is climbed
// until the depth is reached; a finite word necessarily stops at its last
// nonzero digit.
void verify_forward(BetaNumber::Impl& impl, const BetaNumber& beta, const DigitWord& s,
                    std::size_t depth) {
  if (depth == 0) return;
  const auto finite = s.finite_digits();
  const Word want = s.prefix(depth);
  std::size_t best = 0;
  for (unsigned bits : default_ladder().rungs_from(bits_for_digits(depth, impl.b))) {
    RealBall bb = beta.value_at(bits).with_precision(bits + 16);
    auto [digits, ok] = forward_digits(bb, RealBall(1L, bits + 16), depth);
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (digits[i] != want[i]) {
        throw NotExpansionOfOne("re-expansion of 1 differs from the word at digit " +
                                std::to_string(i + 1));
      }
    }
    best = std::max(best, digits.size());
    if (ok || (finite && digits.size() + 1 >= finite->size())) break;
  }
  impl.verified = best;
}

}  // namespace

BetaNumber solve_beta(const DigitWord& s, const SolveOptions& options) {
  const std::size_t vdepth = std::max<std::size_t>(options.verification_depth, 1);
  Word head = s.prefix(std::max<std::size_t>(vdepth, 1));
  const Digit b = head[0];
  if (b < 1) throw NotExpansionOfOne("d_beta(1) starts with floor(beta) >= 1");
  for (Digit d : s.alphabet()) {
    if (d > b) throw NotExpansionOfOne("digits of d_beta(1) never exceed its first digit");
  }
  ExpansionCheck check = is_expansion_of_one(s, vdepth);
  if (check.verdict != ExpansionVerdict::kHolds) {
    throw NotExpansionOfOne("sigma^" + std::to_string(check.at) + "(s) < s " +
                            (check.verdict == ExpansionVerdict::kInconclusive ? "is undecided"
                                                                              : "fails") +
                            " (" + std::string(to_string(check.verdict)) + ")");
  }
  if (auto fd = s.finite_digits()) {
    if (fd->size() == 1) return BetaNumber::exact(QuadraticNumber(static_cast<long>((*fd)[0])));
    if (fd->size() == 2) {
      // 1 = d1/x + d2/x^2  <=>  x^2 - d1 x - d2 = 0.
      const long d1 = (*fd)[0];
      const long d2 = (*fd)[1];
      return BetaNumber::exact(QuadraticNumber::surd(d1, 1, d1 * d1 + 4 * d2, 2));
    }
  }
  auto impl = std::make_shared<BetaNumber::Impl>();
  impl->kind = BetaNumber::Kind::kSolved;
  impl->b = b;
  impl->word = s;
  impl->max_terms = options.max_terms;
  RootSolver solver(s, b, options.max_terms);
  impl->best = solver.solve(options.bits);
  BetaNumber beta(impl);
  if (beta.value().certified_floor() != std::optional<std::int64_t>(b)) {
    throw FloorMismatch("root has integer part different from " + std::to_string(b));
  }
  verify_forward(*impl, beta, s, vdepth);
  return beta;
}

DigitWord sturmian_word(const Slope& alpha, Digit a, Digit b) {
  if (a >= b) throw PreconditionError("Sturmian digits need a < b");
  return rename(upper_mechanical(alpha), a, b);
}

BetaNumber sturmian_beta(const Slope& alpha, Digit a, Digit b, const SolveOptions& options) {
  BetaNumber beta = solve_beta(sturmian_word(alpha, a, b), options);
  if (beta.floor() != b) {
    throw FloorMismatch("floor(beta) = " + std::to_string(beta.floor()) + " but b = " + std::to_string(b));
  }
  return beta;
}

// ---------------------------------------------------------------------------
// Orbits

OrbitRecord orbit(const BetaNumber& beta, std::size_t n, unsigned bits) {
  OrbitRecord rec;
  if (n == 0) throw PreconditionError("orbit length must be positive");
  rec.points.reserve(n);
  switch (beta.kind()) {
    case BetaNumber::Kind::kExact: {
      const QuadraticNumber& b = *beta.exact_value();
      QuadraticNumber x(1);
      for (std::size_t i = 0; i < n; ++i) {
        rec.points.push_back(x.to_ball(bits));
        if (beta.is_integer() && i == 0) {
          rec.digits.push_back(static_cast<Digit>(beta.floor()));
          x = QuadraticNumber(0);
          continue;
        }
        QuadraticNumber y = b * x;
        mpz_class d = y.floor();
        rec.digits.push_back(static_cast<Digit>(d.get_ui()));
        x = y - QuadraticNumber(mpq_class(d));
      }
      break;
    }
    case BetaNumber::Kind::kSolved: {
      // T^i 1 = (s(i) + T^{i+1} 1) / beta, run backwards from [0, 1]; the
      // starting uncertainty shrinks by beta per step.
      const unsigned work = bits + 32;
      RealBall bb = beta.value_at(work).with_precision(work);
      const double lg = std::log2(bb.midpoint_double());
      const std::size_t extra = static_cast<std::size_t>(std::ceil((work + 8) / lg)) + 1;
      Word s = beta.defining_word()->prefix(n + extra);
      RealBall x = RealBall::from_bounds(0, 1, work);
      std::vector<RealBall> back(n);
      for (std::size_t i = n + extra; i-- > 0;) {
        x = (x.add_long(s[i])) / bb;
        if (i < n) back[i] = x;
      }
      // T^0 1 = 1 exactly.
      back[0] = RealBall(1L, work);
      rec.points = std::move(back);
      rec.digits.assign(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(n));
      break;
    }
    case BetaNumber::Kind::kBall: {
      RealBall bb = beta.value();
      RealBall x(1, bb.precision());
      for (std::size_t i = 0; i < n; ++i) {
        RealBall y = bb * x;
        auto d = y.certified_floor();
        if (!d) {
          rec.truncated_at = i;
          break;
        }
        rec.points.push_back(x);
        rec.digits.push_back(static_cast<Digit>(*d));
        x = y.sub_long(*d);
      }
      if (rec.points.empty()) rec.points.push_back(RealBall(1L, bb.precision()));
      break;
    }
  }
  rec.running_min = rec.points[0];
  rec.running_max = rec.points[0];
  for (const RealBall& p : rec.points) {
    rec.running_min = RealBall::min(rec.running_min, p);
    rec.running_max = RealBall::max(rec.running_max, p);
  }
  return rec;
}

RealBall diam_estimate(const OrbitRecord& record) { return record.running_max - record.running_min; }

RealBall diam_estimate(const BetaNumber& beta, std::size_t n, unsigned bits) {
  return diam_estimate(orbit(beta, n, bits));
}

// ---------------------------------------------------------------------------
// Evidence

std::optional<WordStructure> detect_eventual_period(const Word& p) {
  const std::size_t n = p.size();
  if (n < 64) return std::nullopt;
  const std::size_t start = n / 4;
  const std::size_t len = n - start;
  // Prefix function of the tail: its shortest period is len - border.
  std::vector<std::size_t> pi(len, 0);
  for (std::size_t i = 1; i < len; ++i) {
    std::size_t k = pi[i - 1];
    while (k > 0 && p[start + i] != p[start + k]) k = pi[k - 1];
    if (p[start + i] == p[start + k]) ++k;
    pi[i] = k;
  }
  const std::size_t period = len - pi[len - 1];
  if (period * 8 > len) return std::nullopt;
  std::size_t i = start;
  while (i > 0 && p[i - 1] == p[i - 1 + period]) --i;
  return WordStructure{Word(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(i)),
                       Word(p.begin() + static_cast<std::ptrdiff_t>(i),
                            p.begin() + static_cast<std::ptrdiff_t>(i + period))};
}

std::optional<Word> missing_factor(const Word& prefix, const DigitWord& dbeta1, std::size_t max_length) {
  const Digit top = dbeta1.at(0);
  const std::size_t base = static_cast<std::size_t>(top) + 1;
  Word d = dbeta1.prefix(max_length);
  constexpr std::size_t kBudget = std::size_t{1} << 20;
  std::size_t spent = 0;
  for (std::size_t len = 1; len <= max_length && len <= prefix.size(); ++len) {
    std::set<Word> present;
    for (std::size_t i = 0; i + len <= prefix.size(); ++i) {
      present.emplace(prefix.begin() + static_cast<std::ptrdiff_t>(i),
                      prefix.begin() + static_cast<std::ptrdiff_t>(i + len));
    }
    Word u(len, 0);
    for (;;) {
      if (++spent > kBudget) return std::nullopt;
      if (!present.count(u)) {
        // u 0^inf is admissible iff every suffix of u is <= the same-length prefix of d.
        bool ok = true;
        for (std::size_t k = 0; ok && k < len; ++k) {
          ok = compare_slices(u, k, d, 0, len - k) <= 0;
        }
        if (ok) return u;
      }
      std::size_t pos = len;
      while (pos > 0 && u[pos - 1] + 1u == base) u[--pos] = 0;
      if (pos == 0) break;
      ++u[pos - 1];
    }
  }
  return std::nullopt;
}

std::string_view to_string(ClassVerdict v) {
  switch (v) {
    case ClassVerdict::kC1Detected: return "C1_detected";
    case ClassVerdict::kC2Detected: return "C2_detected";
    case ClassVerdict::kC3Consistent: return "C3_consistent";
    case ClassVerdict::kC4Consistent: return "C4_consistent";
    case ClassVerdict::kC5Consistent: return "C5_consistent";
    case ClassVerdict::kInconclusive: return "inconclusive";
  }
  return "";
}

ClassEvidence classify(const BetaNumber& beta, std::size_t depth) {
  ClassEvidence out;
  out.depth = depth;
  DigitWord d = beta.expansion_of_one();
  if (auto fd = d.finite_digits()) {
    out.verdict = ClassVerdict::kC1Detected;
    out.finite_digits = *fd;
    out.note = "d_beta(1) is finite";
    return out;
  }
  if (d.structure()) {
    out.verdict = ClassVerdict::kC2Detected;
    out.period = *d.structure();
    out.note = "d_beta(1) is eventually periodic";
    return out;
  }
  Word p = d.prefix(depth);
  out.max_zero_run = max_run(p, 0);
  out.max_zero_run_first_half = max_run(Word(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(depth / 2)), 0);
  if (auto per = detect_eventual_period(p)) {
    out.verdict = ClassVerdict::kInconclusive;
    out.period = *per;
    out.note = "prefix looks eventually periodic; not certified";
    return out;
  }
  out.missing_factor = missing_factor(p, d);
  if (out.max_zero_run == out.max_zero_run_first_half) {
    out.verdict = ClassVerdict::kC3Consistent;
    out.note = "zero runs bounded to depth " + std::to_string(depth);
  } else if (out.missing_factor) {
    out.verdict = ClassVerdict::kC4Consistent;
    out.note = "zero runs still growing; an admissible word is missing";
  } else {
    out.verdict = ClassVerdict::kC5Consistent;
    out.note = "zero runs still growing; every short admissible word occurs";
  }
  return out;
}

SturmianEvidence is_sturmian_number(const BetaNumber& beta, std::size_t depth, std::size_t orbit_steps) {
  SturmianEvidence out;
  out.depth = depth;
  out.b = static_cast<Digit>(beta.floor());
  if (beta.is_integer()) {
    out.reason = "integer beta: d_beta(1) is finite";
    return out;
  }
  DigitWord d = beta.expansion_of_one();
  if (d.finite_digits()) {
    out.reason = "d_beta(1) is finite";
    return out;
  }
  if (d.structure()) {
    out.reason = "d_beta(1) is eventually periodic";
    return out;
  }
  Word p = d.prefix(depth);
  Word letters = p;
  std::sort(letters.begin(), letters.end());
  letters.erase(std::unique(letters.begin(), letters.end()), letters.end());
  if (letters.size() != 2 || letters.back() != out.b) {
    out.reason = "d_beta(1) does not use exactly two letters {a, floor(beta)}";
    return out;
  }
  out.a = letters.front();
  if (!is_balanced(p).balanced) {
    out.reason = "d_beta(1) is unbalanced";
    return out;
  }
  if (detect_eventual_period(p)) {
    out.reason = "d_beta(1) looks eventually periodic";
    return out;
  }
  out.sturmian = true;
  OrbitRecord rec = orbit(beta, std::max<std::size_t>(1, std::min(depth, orbit_steps)));
  RealBall bb = beta.value_at(128);
  RealBall lower = RealBall(1L, 128u) - bb.reciprocal();
  out.orbit_min = rec.running_min;
  out.orbit_above_lower_bound = !rec.running_min.certainly_less(lower);
  const bool letters_maximal = out.a + 1 == out.b;
  out.maximal = letters_maximal && out.orbit_above_lower_bound;
  out.reason = "balanced, two letters, no period found; consistent to depth " + std::to_string(depth);
  if (letters_maximal != out.orbit_above_lower_bound) {
    out.reason += "; orbit bound and digit test disagree";
  }
  return out;
}

}  // namespace sturmbeta
