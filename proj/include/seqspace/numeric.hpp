#pragma once

// Exact rationals, big integers and outward-rounded intervals at a
// configurable decimal precision.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace seqspace {

using BigInt = mpz_class;
using Rational = mpq_class;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (bad JSON, negative window, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// The operands have no common finite description.
class UnsupportedCombination : public Error {
 public:
  using Error::Error;
};

/// The working precision could not separate two quantities.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// A functional was asked for at a sequence outside its space.
class NonMemberError : public Error {
 public:
  using Error::Error;
};

inline constexpr int kDefaultDigits = 50;
inline constexpr int kMinDigits = 20;

/// Significant decimal digits used by every new Interval on this thread.
inline int& working_digits() {
  thread_local int digits = kDefaultDigits;
  return digits;
}

inline mpfr_prec_t bits_for_digits(int digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 8;
}

class PrecisionScope {
 public:
  explicit PrecisionScope(int digits) : saved_(working_digits()) {
    if (digits < 1) throw InvalidInput("precision must be positive");
    working_digits() = digits;
  }
  ~PrecisionScope() { working_digits() = saved_; }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  int saved_;
};

// ---------------------------------------------------------------------------
// Rational text forms: "12", "-0.25", "3/7", "1e-5", "2.5E+3".

inline BigInt parse_bigint(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw InvalidInput("empty integer literal");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) throw InvalidInput("bad integer literal '" + s + "'");
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw InvalidInput("bad integer literal '" + s + "'");
  }
  if (s[0] == '+') s.erase(0, 1);
  return BigInt(s, 10);
}

inline BigInt pow10(unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw InvalidInput("empty numeric literal");
  if (auto slash = s.find('/'); slash != std::string::npos) {
    BigInt num = parse_bigint(s.substr(0, slash));
    BigInt den = parse_bigint(s.substr(slash + 1));
    if (den == 0) throw InvalidInput("zero denominator in '" + s + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string::npos) {
    std::string exp_part = s.substr(e + 1);
    BigInt ev = parse_bigint(exp_part);
    if (!ev.fits_slong_p() || abs(ev) > 100000) throw InvalidInput("exponent out of range in '" + s + "'");
    exponent = ev.get_si();
    s.resize(e);
  }
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s.erase(0, 1);
  }
  std::string digits;
  long frac_len = 0;
  bool seen_point = false;
  for (char ch : s) {
    if (ch == '.') {
      if (seen_point) throw InvalidInput("bad numeric literal '" + std::string(text) + "'");
      seen_point = true;
    } else if (ch >= '0' && ch <= '9') {
      digits.push_back(ch);
      if (seen_point) ++frac_len;
    } else {
      throw InvalidInput("bad numeric literal '" + std::string(text) + "'");
    }
  }
  if (digits.empty()) throw InvalidInput("bad numeric literal '" + std::string(text) + "'");
  Rational q{BigInt(digits, 10)};
  long scale = exponent - frac_len;
  if (scale > 0) q *= pow10(static_cast<unsigned long>(scale));
  if (scale < 0) q /= pow10(static_cast<unsigned long>(-scale));
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

/// Exact text: a terminating decimal when the denominator is 2^a 5^b,
/// otherwise "p/q". Parses back to the same value.
inline std::string format_rational(const Rational& q) {
  BigInt den = q.get_den();
  unsigned long twos = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), BigInt(2).get_mpz_t());
  unsigned long fives = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), BigInt(5).get_mpz_t());
  if (den != 1) return q.get_num().get_str() + "/" + q.get_den().get_str();
  unsigned long places = std::max(twos, fives);
  if (places == 0) return q.get_num().get_str();
  BigInt scaled = q.get_num() * pow10(places) / q.get_den();
  bool negative = scaled < 0;
  std::string body = BigInt(abs(scaled)).get_str();
  if (body.size() <= places) body.insert(0, places - body.size() + 1, '0');
  body.insert(body.size() - places, ".");
  return negative ? "-" + body : body;
}

namespace detail {

/// Owning wrapper around one MPFR number.
class Real {
 public:
  Real() : Real(bits_for_digits(working_digits())) {}
  explicit Real(mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
  }
  Real(const Real& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  Real(Real&& other) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
  }
  Real& operator=(const Real& other) {
    if (this != &other) {
      mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

inline std::string format_real(mpfr_srcptr v, int digits, mpfr_rnd_t rnd) {
  if (mpfr_nan_p(v)) return "nan";
  if (mpfr_inf_p(v)) return mpfr_sgn(v) > 0 ? "inf" : "-inf";
  if (mpfr_zero_p(v)) return "0";
  char* buf = nullptr;
  const char* fmt = rnd == MPFR_RNDD ? "%.*RDg" : rnd == MPFR_RNDU ? "%.*RUg" : "%.*RNg";
  mpfr_asprintf(&buf, fmt, digits, v);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

}  // namespace detail

/// A closed interval [lo, hi] over the extended reals whose endpoints are
/// rounded outward on every operation, so it always encloses the exact
/// result of the computation it tracks.
class Interval {
 public:
  Interval() = default;
  explicit Interval(long v) { set_si(v); }
  explicit Interval(const BigInt& v) {
    mpfr_set_z(lo_.get(), v.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(hi_.get(), v.get_mpz_t(), MPFR_RNDU);
  }
  explicit Interval(const Rational& q) {
    mpfr_set_q(lo_.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_.get(), q.get_mpq_t(), MPFR_RNDU);
  }

  static Interval hull(const Interval& a, const Interval& b) {
    Interval r;
    mpfr_min(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_max(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return r;
  }
  static Interval between(const Rational& lo, const Rational& hi) {
    return hull(Interval(lo), Interval(hi));
  }
  static Interval positive_infinity() {
    Interval r;
    mpfr_set_inf(r.lo_.get(), 1);
    mpfr_set_inf(r.hi_.get(), 1);
    return r;
  }
  /// [lo, +inf)
  static Interval at_least(const Interval& lo) {
    Interval r = lo;
    mpfr_set_inf(r.hi_.get(), 1);
    return r;
  }
  /// Parses decimal endpoints, rounding outward.
  static Interval from_strings(const std::string& lo, const std::string& hi) {
    Interval r;
    if (mpfr_set_str(r.lo_.get(), lo.c_str(), 10, MPFR_RNDD) != 0) {
      throw InvalidInput("malformed decimal '" + lo + "'");
    }
    if (mpfr_set_str(r.hi_.get(), hi.c_str(), 10, MPFR_RNDU) != 0) {
      throw InvalidInput("malformed decimal '" + hi + "'");
    }
    if (mpfr_greater_p(r.lo_.get(), r.hi_.get())) throw InvalidInput("interval endpoints out of order");
    return r;
  }
  static Interval pi() {
    Interval r;
    mpfr_const_pi(r.lo_.get(), MPFR_RNDD);
    mpfr_const_pi(r.hi_.get(), MPFR_RNDU);
    return r;
  }
  static Interval euler_gamma() {
    Interval r;
    mpfr_const_euler(r.lo_.get(), MPFR_RNDD);
    mpfr_const_euler(r.hi_.get(), MPFR_RNDU);
    return r;
  }

  mpfr_srcptr lo() const { return lo_.get(); }
  mpfr_srcptr hi() const { return hi_.get(); }
  mpfr_ptr lo_mut() { return lo_.get(); }
  mpfr_ptr hi_mut() { return hi_.get(); }

  double lo_double() const { return mpfr_get_d(lo_.get(), MPFR_RNDD); }
  double hi_double() const { return mpfr_get_d(hi_.get(), MPFR_RNDU); }
  double mid_double() const { return 0.5 * (mpfr_get_d(lo_.get(), MPFR_RNDN) + mpfr_get_d(hi_.get(), MPFR_RNDN)); }

  std::string lo_string(int digits) const { return detail::format_real(lo_.get(), digits, MPFR_RNDD); }
  std::string hi_string(int digits) const { return detail::format_real(hi_.get(), digits, MPFR_RNDU); }
  std::string mid_string(int digits) const {
    if (mpfr_inf_p(lo_.get()) || mpfr_inf_p(hi_.get())) return hi_string(digits);
    detail::Real m(mpfr_get_prec(lo_.get()) + 2);
    mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    return detail::format_real(m.get(), digits, MPFR_RNDN);
  }

  bool is_point() const { return mpfr_equal_p(lo_.get(), hi_.get()) != 0; }
  bool hi_infinite() const { return mpfr_inf_p(hi_.get()) && mpfr_sgn(hi_.get()) > 0; }
  bool lo_infinite() const { return mpfr_inf_p(lo_.get()) && mpfr_sgn(lo_.get()) > 0; }
  bool finite() const { return mpfr_number_p(lo_.get()) && mpfr_number_p(hi_.get()); }
  bool nonnegative() const { return mpfr_sgn(lo_.get()) >= 0; }
  bool positive() const { return mpfr_sgn(lo_.get()) > 0; }

  bool contains(const Rational& q) const {
    return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), q.get_mpq_t()) >= 0;
  }
  bool contains(const Interval& o) const {
    return mpfr_lessequal_p(lo_.get(), o.lo_.get()) && mpfr_greaterequal_p(hi_.get(), o.hi_.get());
  }
  bool intersects(const Interval& o) const {
    return mpfr_lessequal_p(lo_.get(), o.hi_.get()) && mpfr_lessequal_p(o.lo_.get(), hi_.get());
  }
  /// Identical endpoints, bit for bit.
  bool identical(const Interval& o) const {
    return mpfr_equal_p(lo_.get(), o.lo_.get()) && mpfr_equal_p(hi_.get(), o.hi_.get());
  }

  /// Upper bound on hi - lo.
  Interval width() const {
    Interval r;
    mpfr_sub(r.hi_.get(), hi_.get(), lo_.get(), MPFR_RNDU);
    mpfr_set(r.lo_.get(), r.hi_.get(), MPFR_RNDD);
    return r;
  }

  /// Rational lower / upper endpoints (exact conversions of the endpoints).
  Rational lo_rational() const {
    Rational q;
    mpfr_get_q(q.get_mpq_t(), lo_.get());
    return q;
  }
  Rational hi_rational() const {
    Rational q;
    mpfr_get_q(q.get_mpq_t(), hi_.get());
    return q;
  }

  Interval operator-() const {
    Interval r;
    mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
    mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
    return r;
  }
  Interval& operator+=(const Interval& o) {
    mpfr_add(lo_.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
    mpfr_add(hi_.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
    return *this;
  }
  Interval& operator-=(const Interval& o) {
    detail::Real t(mpfr_get_prec(lo_.get()));
    mpfr_sub(t.get(), lo_.get(), o.hi_.get(), MPFR_RNDD);
    mpfr_sub(hi_.get(), hi_.get(), o.lo_.get(), MPFR_RNDU);
    mpfr_swap(lo_.get(), t.get());
    return *this;
  }
  friend Interval operator+(Interval a, const Interval& b) { return a += b; }
  friend Interval operator-(Interval a, const Interval& b) { return a -= b; }

  friend Interval operator*(const Interval& a, const Interval& b) {
    Interval r;
    if (a.nonnegative() && b.nonnegative()) {
      mpfr_mul(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
      mpfr_mul(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
      return r;
    }
    mpfr_srcptr ea[2] = {a.lo_.get(), a.hi_.get()};
    mpfr_srcptr eb[2] = {b.lo_.get(), b.hi_.get()};
    detail::Real t;
    mpfr_set_inf(r.lo_.get(), 1);
    mpfr_set_inf(r.hi_.get(), -1);
    for (auto x : ea) {
      for (auto y : eb) {
        mpfr_mul(t.get(), x, y, MPFR_RNDD);
        mpfr_min(r.lo_.get(), r.lo_.get(), t.get(), MPFR_RNDD);
        mpfr_mul(t.get(), x, y, MPFR_RNDU);
        mpfr_max(r.hi_.get(), r.hi_.get(), t.get(), MPFR_RNDU);
      }
    }
    return r;
  }

  friend Interval operator/(const Interval& a, const Interval& b) {
    if (mpfr_sgn(b.lo_.get()) <= 0 && mpfr_sgn(b.hi_.get()) >= 0) {
      throw PrecisionError("interval division by an interval containing zero");
    }
    Interval r;
    mpfr_srcptr ea[2] = {a.lo_.get(), a.hi_.get()};
    mpfr_srcptr eb[2] = {b.lo_.get(), b.hi_.get()};
    detail::Real t;
    mpfr_set_inf(r.lo_.get(), 1);
    mpfr_set_inf(r.hi_.get(), -1);
    for (auto x : ea) {
      for (auto y : eb) {
        mpfr_div(t.get(), x, y, MPFR_RNDD);
        mpfr_min(r.lo_.get(), r.lo_.get(), t.get(), MPFR_RNDD);
        mpfr_div(t.get(), x, y, MPFR_RNDU);
        mpfr_max(r.hi_.get(), r.hi_.get(), t.get(), MPFR_RNDU);
      }
    }
    return r;
  }

  friend Interval sqrt(const Interval& a) {
    if (mpfr_sgn(a.lo_.get()) < 0) throw InvalidInput("sqrt of a possibly negative interval");
    Interval r;
    mpfr_sqrt(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
    mpfr_sqrt(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
    return r;
  }
  friend Interval log(const Interval& a) {
    if (mpfr_sgn(a.lo_.get()) <= 0) throw InvalidInput("log of a possibly nonpositive interval");
    Interval r;
    mpfr_log(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
    mpfr_log(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
    return r;
  }
  friend Interval exp(const Interval& a) {
    Interval r;
    mpfr_exp(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
    mpfr_exp(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
    return r;
  }
  /// a^p for a >= 0 and p > 0.
  friend Interval pow(const Interval& a, const Interval& p) {
    if (!a.nonnegative() || !p.positive()) throw InvalidInput("pow needs a >= 0 and p > 0");
    if (mpfr_zero_p(a.hi_.get())) return Interval{};
    Interval r;
    // Monotone in both arguments on each side of 1.
    mpfr_srcptr pl = mpfr_cmp_ui(a.lo_.get(), 1) >= 0 ? p.lo_.get() : p.hi_.get();
    mpfr_srcptr ph = mpfr_cmp_ui(a.hi_.get(), 1) >= 0 ? p.hi_.get() : p.lo_.get();
    mpfr_pow(r.lo_.get(), a.lo_.get(), pl, MPFR_RNDD);
    mpfr_pow(r.hi_.get(), a.hi_.get(), ph, MPFR_RNDU);
    return r;
  }
  friend Interval max(const Interval& a, const Interval& b) {
    Interval r;
    mpfr_max(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_max(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return r;
  }
  friend Interval min(const Interval& a, const Interval& b) {
    Interval r;
    mpfr_min(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_min(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return r;
  }
  friend Interval abs(const Interval& a) {
    if (a.nonnegative()) return a;
    if (mpfr_sgn(a.hi_.get()) <= 0) return -a;
    Interval r;
    mpfr_set_zero(r.lo_.get(), 1);
    mpfr_neg(r.hi_.get(), a.lo_.get(), MPFR_RNDU);
    mpfr_max(r.hi_.get(), r.hi_.get(), a.hi_.get(), MPFR_RNDU);
    return r;
  }

  /// Every point of a is <= every point of b.
  friend bool certainly_le(const Interval& a, const Interval& b) { return mpfr_lessequal_p(a.hi_.get(), b.lo_.get()); }
  friend bool certainly_lt(const Interval& a, const Interval& b) { return mpfr_less_p(a.hi_.get(), b.lo_.get()); }

 private:
  void set_si(long v) {
    mpfr_set_si(lo_.get(), v, MPFR_RNDD);
    mpfr_set_si(hi_.get(), v, MPFR_RNDU);
  }

  detail::Real lo_;
  detail::Real hi_;
};

inline Interval interval(const Rational& q) { return Interval(q); }

/// Rounds v toward -inf (down) or +inf (up) onto a `digits`-digit binary
/// grid and returns the grid point as an exact rational.
inline Rational round_to_digits(mpfr_srcptr v, int digits, bool down) {
  detail::Real t(bits_for_digits(digits));
  mpfr_set(t.get(), v, down ? MPFR_RNDD : MPFR_RNDU);
  Rational q;
  mpfr_get_q(q.get_mpq_t(), t.get());
  return q;
}

inline Rational round_to_digits(const Interval& v, int digits, bool down) {
  return round_to_digits(down ? v.lo() : v.hi(), digits, down);
}

/// Nearest rounding of the interval midpoint.
inline Rational nearest_rational(const Interval& v, int digits) {
  detail::Real m(mpfr_get_prec(v.lo()) + 2);
  mpfr_add(m.get(), v.lo(), v.hi(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  detail::Real t(bits_for_digits(digits));
  mpfr_set(t.get(), m.get(), MPFR_RNDN);
  Rational q;
  mpfr_get_q(q.get_mpq_t(), t.get());
  return q;
}

/// True when x = base^k for some k >= 0; k receives the exponent.
inline bool exact_integer_log(const BigInt& x, const BigInt& base, unsigned long& k) {
  if (base < 2 || x < 1) return false;
  BigInt v = x;
  k = 0;
  while (v % base == 0) {
    v /= base;
    ++k;
  }
  return v == 1;
}

}  // namespace seqspace
